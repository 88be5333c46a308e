"""
Čech cochains of degree 0 and 1 on a GluedScheme, valued in the structure
sheaf O or in Hom(F*Omega^1, O), and coboundary membership in a degree
window.

Degree-0 values live on the reduced charts A_i,0. Degree-1 values for a pair
a < b live on the reduced overlap ring_a,0; the value on (b, a) is the
negative. Hom-valued entries are tuples of dual-basis coefficients against
the free coordinates F*dz of the relevant coordinate system.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import pandas as pd

from algebra.polynomial import Polynomial
from utils.errors import StructuralError
from utils.helpers import format_pair
from utils.linear_algebra import kernel_mod_p, rank_mod_p, solve_mod_p

logger = logging.getLogger("TotalP.Cech")


class Sheaf(str, Enum):
    O = "O"
    HOM = "Hom(F*Omega^1, O)"


class CechClass:
    """
    A Čech cochain.

    Args:
        scheme: The GluedScheme
        degree: 0 (values per chart) or 1 (values per pair a < b)
        sheaf: Sheaf.O or Sheaf.HOM
        values: Mapping chart index or pair -> value
        window: Degree window the cochain was computed in (informational)
        name: Display name
    """

    def __init__(self, scheme, degree, sheaf, values, window=None, name=None):
        if degree not in (0, 1):
            raise StructuralError(f"Only degrees 0 and 1 are supported, got {degree}")
        self.scheme = scheme
        self.degree = degree
        self.sheaf = Sheaf(sheaf)
        self.window = window
        self.name = name or ("t" if degree == 0 else "c")
        self.values = {}
        for key in self.keys():
            self.values[key] = self._normalize(key, values.get(key))
        extra = [key for key in values if key not in self.values]
        if extra:
            raise StructuralError(f"Cochain values for unknown index {extra}")

    def keys(self):
        if self.degree == 0:
            return list(range(len(self.scheme.charts)))
        return self.scheme.pairs()

    def base(self, key):
        """The reduced ring holding the value at key."""
        if self.degree == 0:
            return self.scheme.charts[key].reduction
        return self.scheme.overlap(*key).ring_a.reduction

    def component_names(self, key):
        if self.sheaf is Sheaf.O:
            return ("1",)
        if self.degree == 0:
            coords = self.scheme.chart_coordinates(key)
        else:
            coords = self.scheme.overlap_coordinates(key, 0)
        return tuple(f"F*d{z}" for z in coords.free_variables)

    def _normalize(self, key, value):
        base = self.base(key)
        if self.sheaf is Sheaf.O:
            return base.zero() if value is None else base.element(value)
        size = len(self.component_names(key))
        if value is None:
            return tuple(base.zero() for _ in range(size))
        value = tuple(base.element(v) for v in value)
        if len(value) != size:
            raise StructuralError(f"Expected {size} coefficients at {key}, got {len(value)}")
        return value

    def components(self, key):
        value = self.values[key]
        return (value,) if self.sheaf is Sheaf.O else value

    def value(self, i, j=None):
        """Value at chart i, or at the pair (i, j) with value(j, i) = -value(i, j)."""
        if self.degree == 0:
            return self.values[i]
        if i < j:
            return self.values[(i, j)]
        value = self.values[(j, i)]
        return -value if self.sheaf is Sheaf.O else tuple(-v for v in value)

    def _combine(self, other, op):
        if not isinstance(other, CechClass):
            return NotImplemented
        if other.scheme is not self.scheme or other.degree != self.degree or other.sheaf != self.sheaf:
            raise StructuralError("Cochains of different schemes, degrees or sheaves")
        values = {}
        for key in self.keys():
            if self.sheaf is Sheaf.O:
                values[key] = op(self.values[key], other.values[key])
            else:
                values[key] = tuple(op(a, b) for a, b in zip(self.values[key], other.values[key]))
        window = max(w for w in (self.window, other.window, 0) if w is not None) or None
        return CechClass(self.scheme, self.degree, self.sheaf, values, window)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, factor):
        values = {}
        for key in self.keys():
            if self.sheaf is Sheaf.O:
                values[key] = self.values[key] * factor
            else:
                values[key] = tuple(v * factor for v in self.values[key])
        return CechClass(self.scheme, self.degree, self.sheaf, values, self.window, self.name)

    def is_zero(self):
        return all(c.is_zero() for key in self.keys() for c in self.components(key))

    def __eq__(self, other):
        if not isinstance(other, CechClass):
            return NotImplemented
        return (other.scheme is self.scheme and other.degree == self.degree and other.sheaf == self.sheaf
                and all(self.components(k) == other.components(k) for k in self.keys()))

    def __hash__(self):
        return hash((self.degree, self.sheaf, tuple(self.components(k) for k in self.keys())))

    def max_degree(self):
        return max((c.poly.degree() for key in self.keys() for c in self.components(key) if not c.is_zero()),
                   default=0)

    def is_cocycle(self):
        """
        Degree 0: d0 vanishes. Degree 1: O-valued cochains satisfy the cocycle
        condition on every supplied triple overlap. Hom-valued 1-cochains are
        not checked on triples and count as cocycles.
        """
        if self.degree == 0:
            return d0(self).is_zero()
        if self.sheaf is Sheaf.HOM:
            return True
        return all(value.is_zero() for value in d1(self).values())

    def coefficient_table(self):
        """One row per nonzero coefficient: index, component, monomial, coefficient."""
        records = []
        for key in self.keys():
            base = self.base(key)
            index = format_pair(key)
            for name, component in zip(self.component_names(key), self.components(key)):
                for monomial, coefficient in component.poly.sorted_terms():
                    records.append({
                        "index": index,
                        "component": name,
                        "monomial": format_monomial(monomial, base.variables),
                        "coefficient": str(coefficient),
                    })
        return pd.DataFrame(records, columns=["index", "component", "monomial", "coefficient"])

    def to_dict(self):
        values = {}
        for key in self.keys():
            index = format_pair(key)
            values[index] = {name: str(component) for name, component in
                             zip(self.component_names(key), self.components(key))}
        return {"name": self.name, "degree": self.degree, "sheaf": self.sheaf.value,
                "window": self.window, "values": values}

    def __repr__(self):
        pieces = []
        for key in self.keys():
            comps = ", ".join(str(c) for c in self.components(key))
            pieces.append(f"{key}: {comps}")
        return f"CechClass[{self.sheaf.value}, deg {self.degree}]({'; '.join(pieces)})"


def format_monomial(monomial, variables):
    factors = []
    for name, e in zip(variables, monomial):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def zero_cochain(scheme, degree, sheaf, window=None):
    return CechClass(scheme, degree, sheaf, {}, window)


def transport_functional(scheme, pair, chart, components):
    """
    Restrict a Hom-valued value on a chart to ring_a,0 of the pair, in ring_a's
    free coordinates.
    """
    overlap = scheme.overlap(*pair)
    restrict = overlap.from_chart0(chart)
    mapped = [restrict(c) for c in components]
    if chart == pair[0]:
        return tuple(mapped)
    rows = scheme.functional_transport(pair)
    base = overlap.ring_a.reduction
    result = []
    for row in rows:
        total = base.zero()
        for w, value in zip(row, mapped):
            if not w.is_zero() and not value.is_zero():
                total = total + w * value
        result.append(total)
    return tuple(result)


def d0(cochain):
    """(d0 t)_ab = t_b - t_a on ring_a,0."""
    if cochain.degree != 0:
        raise StructuralError("d0 applies to 0-cochains")
    scheme = cochain.scheme
    values = {}
    for pair in scheme.pairs():
        a, b = pair
        overlap = scheme.overlap(*pair)
        if cochain.sheaf is Sheaf.O:
            values[pair] = overlap.from_chart0(b)(cochain.values[b]) - overlap.from_chart0(a)(cochain.values[a])
        else:
            t_a = transport_functional(scheme, pair, a, cochain.values[a])
            t_b = transport_functional(scheme, pair, b, cochain.values[b])
            values[pair] = tuple(y - x for x, y in zip(t_a, t_b))
    return CechClass(scheme, 1, cochain.sheaf, values, cochain.window, name=f"d0({cochain.name})")


def d1(cochain):
    """
    (d1 c)_ijk = c_jk - c_ik + c_ij on each supplied triple overlap (O-valued).

    Returns:
        dict triple -> element of the reduced triple ring
    """
    if cochain.degree != 1 or cochain.sheaf is not Sheaf.O:
        raise StructuralError("d1 is implemented for O-valued 1-cochains")
    scheme = cochain.scheme
    result = {}
    for key, triple in sorted(scheme.triples.items()):
        i, j, k = key
        rho = {pair: hom.reduction() for pair, hom in triple.maps.items()}
        result[key] = (rho[(j, k)](cochain.values[(j, k)]) - rho[(i, k)](cochain.values[(i, k)])
                       + rho[(i, j)](cochain.values[(i, j)]))
    return result


class _MonomialImages:
    """Images of chart monomials under a reduced map, built by one multiplication each."""

    def __init__(self, hom0):
        self.hom0 = hom0
        self.target = hom0.target
        self.cache = {}

    def __call__(self, monomial):
        cache = self.cache
        if monomial in cache:
            return cache[monomial]
        stack = [monomial]
        while stack:
            current = stack[-1]
            if current in cache:
                stack.pop()
                continue
            index = next((i for i, e in enumerate(current) if e), None)
            if index is None:
                cache[current] = self.target.one()
                stack.pop()
                continue
            previous = current[:index] + (current[index] - 1,) + current[index + 1:]
            if previous not in cache:
                stack.append(previous)
                continue
            variable = self.hom0.source.variables[index]
            cache[current] = cache[previous] * self.hom0.images[variable]
            stack.pop()
        return cache[monomial]


@dataclass
class CoboundarySystem:
    """The linear map d0 on window-truncated 0-cochains, as sparse rows keyed by (pair, component, monomial)."""
    columns: list
    rows: list
    row_keys: list
    row_index: dict


def coboundary_system(scheme, sheaf, window):
    """
    Columns: (chart, component, staircase monomial of degree <= window).
    Rows: (pair, component, monomial of ring_a,0).
    """
    sheaf = Sheaf(sheaf)
    field = scheme.field
    zero = field.zero()
    columns = []
    for i, chart in enumerate(scheme.charts):
        count = 1 if sheaf is Sheaf.O else scheme.chart_coordinates(i).rank
        for component in range(count):
            for monomial in chart.reduction.staircase(window):
                columns.append((i, component, monomial))
    system = CoboundarySystem(columns, [], [], {})

    def add(pair, component, poly, col, sign):
        for monomial, coefficient in poly.terms.items():
            key = (pair, component, monomial)
            if key not in system.row_index:
                system.row_index[key] = len(system.rows)
                system.rows.append({})
                system.row_keys.append(key)
            row = system.rows[system.row_index[key]]
            row[col] = row.get(col, zero) + (coefficient if sign > 0 else -coefficient)

    for pair in scheme.pairs():
        a, b = pair
        overlap = scheme.overlap(*pair)
        images = {a: _MonomialImages(overlap.from_chart0(a)), b: _MonomialImages(overlap.from_chart0(b))}
        transport = scheme.functional_transport(pair) if sheaf is Sheaf.HOM else None
        for col, (chart, component, monomial) in enumerate(columns):
            if chart not in pair:
                continue
            image = images[chart](monomial)
            sign = 1 if chart == b else -1
            if sheaf is Sheaf.O or chart == a:
                add(pair, component, image.poly, col, sign)
                continue
            for z_index, row in enumerate(transport):
                weight = row[component]
                if weight.is_zero():
                    continue
                add(pair, z_index, (weight * image).poly, col, sign)
    logger.debug(f"Coboundary system for {sheaf.value} at window {window}: "
                 f"{len(system.rows)} equations, {len(columns)} unknowns")
    return system


def _witness_from_solution(scheme, sheaf, columns, solution, window):
    terms = {}
    for (chart, component, monomial), value in zip(columns, solution):
        if value.is_zero():
            continue
        terms.setdefault((chart, component), {})[monomial] = value
    values = {}
    for i, chart in enumerate(scheme.charts):
        base = chart.reduction
        if sheaf is Sheaf.O:
            values[i] = base.element(Polynomial(base.ring, terms.get((i, 0), {})))
        else:
            rank = scheme.chart_coordinates(i).rank
            values[i] = tuple(base.element(Polynomial(base.ring, terms.get((i, c), {}))) for c in range(rank))
    return CechClass(scheme, 0, sheaf, values, window, name="witness")


def solve_coboundary(cocycle, window):
    """
    Find a 0-cochain t supported in the window with d0 t = cocycle.

    Returns:
        (witness CechClass or None, rank of the truncated d0)
    """
    if cocycle.degree != 1:
        raise StructuralError("Coboundary membership is defined for 1-cochains")
    scheme = cocycle.scheme
    field = scheme.field
    system = coboundary_system(scheme, cocycle.sheaf, window)
    rows = [dict(row) for row in system.rows]
    rhs = [field.zero() for _ in rows]
    row_index = dict(system.row_index)
    for pair in scheme.pairs():
        for component, value in enumerate(cocycle.components(pair)):
            for monomial, coefficient in value.poly.terms.items():
                key = (pair, component, monomial)
                if key not in row_index:
                    row_index[key] = len(rows)
                    rows.append({})
                    rhs.append(field.zero())
                rhs[row_index[key]] = rhs[row_index[key]] + coefficient
    rank = rank_mod_p(system.rows, len(system.columns), field)
    solution = solve_mod_p(rows, rhs, len(system.columns), field)
    if solution is None:
        logger.debug(f"No coboundary witness at window {window} (rank {rank})")
        return None, rank
    witness = _witness_from_solution(scheme, cocycle.sheaf, system.columns, solution, window)
    return witness, rank


def cocycle_kernel(scheme, sheaf, window):
    """Basis of the 0-cochains in the window killed by d0, i.e. global sections."""
    system = coboundary_system(scheme, sheaf, window)
    basis = kernel_mod_p(system.rows, len(system.columns), scheme.field)
    return [_witness_from_solution(scheme, Sheaf(sheaf), system.columns, vector, window) for vector in basis]
