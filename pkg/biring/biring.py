"""
The biring Q_c = F_p[e, eta] representing U_c: a ring map f: Q_c -> D_0 is the
point (f(e), f(eta)) of U_c(D_0), and the coproducts

    coadd(e)   = e1 + e2
    coadd(eta) = eta1 + eta2 + c * C_p(e1, e2)
    comul(e)   = e1 e2
    comul(eta) = e1^p eta2 + eta1 e2^p

induce the addition and multiplication of U_c(D_0). In Q_c (x) Q_c the left
factor is (e1, eta1) and the right factor (e2, eta2).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

from algebra.fp_algebra import AlgebraElement, polynomial_algebra
from algebra.polynomial import Polynomial, PolyRing
from coefficients.carries import cp_eval
from coefficients.finite_field import FiniteField, check_prime
from coefficients.witt import W2Elem, WittRing, base_delta
from utils.errors import StructuralError
from witt_interp.interpolation import UCElem

logger = logging.getLogger("TotalP.Biring")


class BiringElem:
    """An element of Q_c: a polynomial in e, eta with no relations."""

    __slots__ = ("biring", "poly")

    def __init__(self, biring, poly):
        self.biring = biring
        self.poly = poly

    @property
    def c(self):
        return self.biring.c

    def _coerce(self, other):
        if isinstance(other, BiringElem):
            if other.biring != self.biring:
                raise StructuralError("Elements of different birings")
            return other.poly
        return self.biring.ring(other)

    def __add__(self, other):
        return BiringElem(self.biring, self.poly + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return BiringElem(self.biring, self.poly - self._coerce(other))

    def __neg__(self):
        return BiringElem(self.biring, -self.poly)

    def __mul__(self, other):
        return BiringElem(self.biring, self.poly * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        return BiringElem(self.biring, self.poly ** exponent)

    def __eq__(self, other):
        if isinstance(other, BiringElem):
            return self.biring == other.biring and self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"Q_{self.c}({self.poly})"


@dataclass(frozen=True, eq=False)
class BiringPoint:
    """A ring map Q_c -> D_0, stored as the images of e and eta."""
    target: object
    image_e: AlgebraElement
    image_eta: AlgebraElement

    def __eq__(self, other):
        if not isinstance(other, BiringPoint):
            return NotImplemented
        return (self.target.same_as(other.target) and self.image_e == other.image_e
                and self.image_eta == other.image_eta)

    def __hash__(self):
        return hash((self.image_e, self.image_eta))


class Biring:
    """
    Q_c over F_p with its coproducts, counits and antipode.

    Args:
        p: Odd prime
        c: The interpolation parameter, an element of F_p
    """

    def __init__(self, p, c=1):
        check_prime(p)
        self.p = p
        self.field = FiniteField(p)
        self.c = self.field(c)
        self.ring = PolyRing(self.field, ["e", "eta"])
        self.tensor = PolyRing(self.field, ["e1", "eta1", "e2", "eta2"])
        e1, eta1, e2, eta2 = self.tensor.gens()
        self._coadd = (e1 + e2, eta1 + eta2 + cp_eval(e1, e2, p) * self.c)
        self._comul = (e1 * e2, e1 ** p * eta2 + eta1 * e2 ** p)
        logger.debug(f"Q_{self.c} over F_{p}: coadd(eta) = {self._coadd[1]}")

    def __eq__(self, other):
        return isinstance(other, Biring) and self.p == other.p and self.c == other.c

    def __hash__(self):
        return hash((self.p, self.c))

    def __repr__(self):
        return f"Biring(p={self.p}, c={self.c})"

    def element(self, value):
        if isinstance(value, BiringElem):
            return value
        return BiringElem(self, self.ring(value))

    __call__ = element

    def e(self):
        return self.element(self.ring.var("e"))

    def eta(self):
        return self.element(self.ring.var("eta"))

    def left(self, q):
        """q (x) 1."""
        q = self.element(q)
        return Polynomial(self.tensor, {(m[0], m[1], 0, 0): c for m, c in q.poly.terms.items()})

    def right(self, q):
        """1 (x) q."""
        q = self.element(q)
        return Polynomial(self.tensor, {(0, 0, m[0], m[1]): c for m, c in q.poly.terms.items()})

    def _extend(self, q, images):
        q = self.element(q)
        return q.poly.evaluate(list(images), self.tensor.constant, self.tensor.one())

    def coadd(self, q):
        """The coaddition extended as a ring map Q_c -> Q_c (x) Q_c."""
        return self._extend(q, self._coadd)

    def comul(self, q):
        """The comultiplication extended as a ring map Q_c -> Q_c (x) Q_c."""
        return self._extend(q, self._comul)

    def counit_add(self):
        return {"e": self.ring.zero(), "eta": self.ring.zero()}

    def counit_mul(self):
        return {"e": self.ring.one(), "eta": self.ring.zero()}

    def antipode(self):
        """e |-> -e, eta |-> -eta - c * C_p(e, -e); the correction vanishes for odd p."""
        e, eta = self.ring.gens()
        return {"e": -e, "eta": -eta - cp_eval(e, -e, self.p) * self.c}

    # Points

    def point(self, target, image_e, image_eta):
        if target.is_witt:
            raise StructuralError("Points of Q_c take values in an F_q-algebra")
        if target.p != self.p:
            raise StructuralError(f"{target.name} has characteristic {target.p}, not {self.p}")
        return BiringPoint(target, target.element(image_e), target.element(image_eta))

    def _scalar(self, target):
        return lambda coefficient: target.element(int(coefficient))

    def apply(self, point, q):
        """f(q) for a point f and q in Q_c."""
        q = self.element(q)
        target = point.target
        return q.poly.evaluate([point.image_e, point.image_eta], self._scalar(target), target.one())

    def apply_pair(self, f, g, t):
        """(f (x) g)(t) for t in Q_c (x) Q_c."""
        if not f.target.same_as(g.target):
            raise StructuralError(f"Points with different targets {f.target.name} and {g.target.name}")
        target = f.target
        values = [f.image_e, f.image_eta, g.image_e, g.image_eta]
        return t.evaluate(values, self._scalar(target), target.one())

    def point_ops(self, f, g, which):
        """
        The point (f (x) g) o coproduct for which in {"add", "mul"}.

        Raises:
            StructuralError: mismatched targets or unknown operation
        """
        if which == "add":
            images = self._coadd
        elif which == "mul":
            images = self._comul
        else:
            raise StructuralError(f"Unknown point operation {which!r}; use 'add' or 'mul'")
        return BiringPoint(f.target, self.apply_pair(f, g, images[0]), self.apply_pair(f, g, images[1]))

    def _counit_point(self, target, images):
        return self.point(target, int(images["e"].constant_coefficient()),
                          int(images["eta"].constant_coefficient()))

    def zero_point(self, target):
        """The additive identity: D_0-point through the additive counit."""
        return self._counit_point(target, self.counit_add())

    def one_point(self, target):
        return self._counit_point(target, self.counit_mul())

    def negate_point(self, f):
        """f o antipode."""
        images = self.antipode()
        return BiringPoint(f.target, self.apply(f, BiringElem(self, images["e"])),
                           self.apply(f, BiringElem(self, images["eta"])))

    def evaluate(self, point):
        """f |-> (f(e), f(eta)) in U_c(D_0)."""
        return UCElem(point.image_e, point.image_eta, point.target.element(int(self.c)))

    def point_from_uc(self, a):
        """Inverse of evaluate."""
        if a.c != a.algebra.element(int(self.c)):
            raise StructuralError(f"U_{a.c} element for the biring Q_{self.c}")
        return self.point(a.algebra, a.x0, a.x1)

    def beta_structure(self, a):
        """
        The structure point a |-> (a mod p, base_delta(a, c)) of Z/p^2 -> U_c(F_p).
        """
        if not isinstance(a, W2Elem):
            a = WittRing.of(self.p)(a)
        if a.ring.field.m != 1:
            raise StructuralError("beta_structure is defined over Z/p^2")
        target = prime_field_algebra(self.p)
        return self.point(target, int(a.w0), int(base_delta(a, self.c)))


@lru_cache(maxsize=None)
def prime_field_algebra(p):
    """F_p as an algebra with no variables."""
    return polynomial_algebra(FiniteField(p), [], name=f"F{p}")
