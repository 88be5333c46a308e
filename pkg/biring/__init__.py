"""
The biring Q_c representing the functor U_c.
"""
from biring.biring import Biring, BiringElem, BiringPoint, prime_field_algebra

__all__ = ["Biring", "BiringElem", "BiringPoint", "prime_field_algebra"]
