"""
Schemes over W_2(F_q) glued from at most three affine charts.

For a pair of charts a < b the overlap is stored twice: ring_a = A_a[1/s_ab]
in chart-a coordinates and ring_b = A_b[1/s_ba] in chart-b coordinates, with
transitions to_a: ring_b -> ring_a and to_b: ring_a -> ring_b. All cochain
values on the pair live in ring_a.
"""
import logging
from dataclasses import dataclass, field

from algebra.fp_algebra import localize
from algebra.homomorphism import AlgebraHom, compose
from differentials.coordinates import coordinate_system, is_isomorphism_on_overlap, transition_matrix
from differentials.total import dtot_expand, pullback
from utils.errors import GluingError, InconsistencyError, StructuralError

logger = logging.getLogger("TotalP.Scheme")

MAX_CHARTS = 3


@dataclass
class GluingData:
    """User description of one overlap."""
    pair: tuple
    s_first: object
    s_second: object
    to_first: dict
    to_second: dict
    inverse_names: tuple = (None, None)


@dataclass
class TripleData:
    """User description of a triple overlap: a ring plus maps from the three pair rings."""
    charts: tuple
    algebra: object
    restrictions: dict  # pair -> images of that pair's ring_a variables in the triple ring


class Overlap:
    def __init__(self, pair, ring_a, ring_b, restrict_a, restrict_b, to_a, to_b):
        self.pair = pair
        self.ring_a = ring_a
        self.ring_b = ring_b
        self.restrict_a = restrict_a
        self.restrict_b = restrict_b
        self.to_a = to_a
        self.to_b = to_b
        self._chart_maps = {}
        self._chart_maps0 = {}
        self._to_a0 = None

    def from_chart(self, chart):
        """A_chart -> ring_a (through the transition for the second chart)."""
        a, b = self.pair
        if chart not in self._chart_maps:
            if chart == a:
                self._chart_maps[chart] = self.restrict_a
            elif chart == b:
                self._chart_maps[chart] = compose(self.to_a, self.restrict_b)
            else:
                raise StructuralError(f"Chart {chart} is not part of overlap {self.pair}")
        return self._chart_maps[chart]

    @property
    def to_a0(self):
        """to_a reduced mod p: ring_b,0 -> ring_a,0."""
        if self._to_a0 is None:
            self._to_a0 = self.to_a.reduction()
        return self._to_a0

    def from_chart0(self, chart):
        if chart not in self._chart_maps0:
            self._chart_maps0[chart] = self.from_chart(chart).reduction()
        return self._chart_maps0[chart]

    def __repr__(self):
        return f"Overlap{self.pair}({self.ring_a.name} <-> {self.ring_b.name})"


@dataclass
class GlueReport:
    passed: bool
    checks: list = field(default_factory=list)

    def failures(self):
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]

    def to_dict(self):
        return {"passed": self.passed,
                "checks": [{"name": name, "ok": ok, "detail": detail} for name, ok, detail in self.checks]}


class GluedScheme:
    """
    Charts, overlaps and optional triple overlaps.

    Args:
        charts: List of FPAlgebra over W_2(F_q)
        overlaps: Mapping (a, b) with a < b -> Overlap
        triples: Mapping (i, j, k) -> TripleOverlap
        name: Display name
    """

    def __init__(self, charts, overlaps=None, triples=None, name="X"):
        if not charts:
            raise StructuralError("A glued scheme needs at least one chart")
        if len(charts) > MAX_CHARTS:
            raise StructuralError(f"At most {MAX_CHARTS} charts are supported, got {len(charts)}")
        witt = charts[0].coefficient_ring
        if any(c.coefficient_ring != witt or not c.is_witt for c in charts):
            raise StructuralError("All charts must be algebras over the same W_2(F_q)")
        self.charts = list(charts)
        self.overlaps = dict(overlaps or {})
        self.triples = dict(triples or {})
        self.name = name
        self._report = None
        self._transports = {}
        for a, b in self.overlaps:
            if not (0 <= a < b < len(self.charts)):
                raise StructuralError(f"Invalid overlap index {(a, b)}")

    @classmethod
    def from_gluing_data(cls, charts, gluings=(), triples=(), name="X"):
        """Build localizations and (unverified) transitions from user data; run glue_check afterwards."""
        overlaps = {}
        for data in gluings:
            a, b = sorted(data.pair)
            s_a, s_b = data.s_first, data.s_second
            to_a, to_b = data.to_first, data.to_second
            names = data.inverse_names
            if tuple(data.pair) != (a, b):
                s_a, s_b, to_a, to_b = s_b, s_a, to_b, to_a
                names = tuple(reversed(names))
            ring_a, restrict_a = localize(charts[a], s_a, name=f"U{a}{b}@{a}", inverse_name=names[0])
            ring_b, restrict_b = localize(charts[b], s_b, name=f"U{a}{b}@{b}", inverse_name=names[1])
            transition_a = AlgebraHom(ring_b, ring_a, to_a, verify=False, name=f"T{a}{b}")
            transition_b = AlgebraHom(ring_a, ring_b, to_b, verify=False, name=f"T{b}{a}")
            overlaps[(a, b)] = Overlap((a, b), ring_a, ring_b, restrict_a, restrict_b, transition_a, transition_b)
        scheme = cls(charts, overlaps, name=name)
        for data in triples:
            scheme.add_triple(data)
        return scheme

    def add_triple(self, data):
        i, j, k = sorted(data.charts)
        maps = {}
        for pair in ((i, j), (i, k), (j, k)):
            if pair not in self.overlaps:
                raise StructuralError(f"Triple {(i, j, k)} needs overlap {pair}")
            images = data.restrictions[pair]
            maps[pair] = AlgebraHom(self.overlaps[pair].ring_a, data.algebra, images, verify=False,
                                    name=f"rho{pair[0]}{pair[1]}")
        self.triples[(i, j, k)] = TripleOverlap((i, j, k), data.algebra, maps)
        self._report = None

    @property
    def p(self):
        return self.charts[0].p

    @property
    def field(self):
        return self.charts[0].field

    def pairs(self):
        return sorted(self.overlaps)

    def overlap(self, a, b):
        if (a, b) not in self.overlaps:
            raise StructuralError(f"No overlap between charts {a} and {b}")
        return self.overlaps[(a, b)]

    def max_relation_degree(self):
        return max(chart.max_relation_degree() for chart in self.charts)

    def default_window(self):
        """2p * (max relation degree) + 4."""
        return 2 * self.p * max(self.max_relation_degree(), 1) + 4

    def chart_coordinates(self, chart):
        return coordinate_system(self.charts[chart])

    def overlap_coordinates(self, pair, side=0):
        """Coordinate system of ring_a (side 0) or ring_b (side 1), pivots matching the chart's."""
        overlap = self.overlap(*pair)
        chart = pair[side]
        algebra = overlap.ring_a if side == 0 else overlap.ring_b
        chart_coords = self.chart_coordinates(chart)
        coords = coordinate_system(algebra, chart_coords.pivot_variables)
        if coords.free_variables != chart_coords.free_variables:
            raise InconsistencyError(f"Overlap {pair} has free coordinates {coords.free_variables}, "
                                     f"chart {chart} has {chart_coords.free_variables}")
        return coords

    def form_transport(self, pair):
        """
        Rows over ring_a,0: F*dy_k of the second chart's free coordinates written in
        the first chart's free coordinates.
        """
        key = ("form", pair)
        if key not in self._transports:
            overlap = self.overlap(*pair)
            self._transports[key] = transition_matrix(overlap.to_a, self.overlap_coordinates(pair, 1),
                                                      self.overlap_coordinates(pair, 0))
        return self._transports[key]

    def functional_transport(self, pair):
        """
        Rows over ring_a,0: row z holds the second-chart coordinates of F*dz for a
        free coordinate z of the first chart, mapped into ring_a,0.
        """
        key = ("functional", pair)
        if key in self._transports:
            return self._transports[key]
        overlap = self.overlap(*pair)
        coords_a = self.overlap_coordinates(pair, 0)
        coords_b = self.overlap_coordinates(pair, 1)
        to_a0 = overlap.to_a0
        rows = []
        for z in coords_a.free_variables:
            image = dtot_expand(overlap.to_b.images[z].poly, coords_b.module)
            rows.append(tuple(to_a0(c) for c in coords_b.frobenius_coordinates(image)))
        self._transports[key] = rows
        return rows

    def check(self):
        """Cached glue_check; raises GluingError on failure."""
        if self._report is None:
            self._report = glue_check(self)
        return self._report

    def __repr__(self):
        return f"GluedScheme({self.name}: {len(self.charts)} charts, {len(self.overlaps)} overlaps)"


class TripleOverlap:
    def __init__(self, charts, algebra, maps):
        self.charts = charts
        self.algebra = algebra
        self.maps = maps

    def __repr__(self):
        return f"TripleOverlap{self.charts}({self.algebra.name})"


def _record(checks, name, ok, detail=""):
    checks.append((name, bool(ok), detail))
    if not ok:
        logger.warning(f"Gluing check failed: {name}: {detail}")


def glue_check(scheme):
    """
    Verify charts, transitions and triple cocycle conditions.

    Returns:
        GlueReport with one entry per check

    Raises:
        GluingError: any check failed (the report is attached as failures)
    """
    checks = []
    for index, chart in enumerate(scheme.charts):
        smooth = chart.is_smooth()
        _record(checks, f"chart {index} smooth", smooth, "" if smooth else "Jacobian criterion fails")

    for pair in scheme.pairs():
        overlap = scheme.overlap(*pair)
        a, b = pair
        homs_ok = True
        for hom in (overlap.to_a, overlap.to_b):
            failures = hom.relation_failures()
            _record(checks, f"{hom.name} respects relations", not failures,
                    "; ".join(f"{g} |-> {image}" for g, image in failures))
            homs_ok = homs_ok and not failures

        round_a = compose(overlap.to_a, overlap.to_b)
        bad_a = [v for v in overlap.ring_a.variables if round_a.images[v] != overlap.ring_a.var(v)]
        _record(checks, f"T{a}{b} o T{b}{a} = id", not bad_a,
                ", ".join(f"{v} |-> {round_a.images[v]}" for v in bad_a))
        round_b = compose(overlap.to_b, overlap.to_a)
        bad_b = [v for v in overlap.ring_b.variables if round_b.images[v] != overlap.ring_b.var(v)]
        _record(checks, f"T{b}{a} o T{a}{b} = id", not bad_b,
                ", ".join(f"{v} |-> {round_b.images[v]}" for v in bad_b))

        if homs_ok and not bad_a and not bad_b:
            try:
                pullback(overlap.to_a)
                pullback(overlap.to_b)
                iso = is_isomorphism_on_overlap(
                    overlap.to_a, overlap.to_b,
                    prefer_source=scheme.chart_coordinates(b).pivot_variables,
                    prefer_target=scheme.chart_coordinates(a).pivot_variables)
                _record(checks, f"Omega^tot isomorphism on U{a}{b}", iso,
                        "" if iso else "coordinate change is not invertible")
            except InconsistencyError as e:
                _record(checks, f"Omega^tot isomorphism on U{a}{b}", False, str(e))

    for key, triple in sorted(scheme.triples.items()):
        i, j, k = key
        for pair, hom in triple.maps.items():
            failures = hom.relation_failures()
            _record(checks, f"rho{pair[0]}{pair[1]} respects relations", not failures,
                    "; ".join(f"{g} |-> {image}" for g, image in failures))
        rho_ij, rho_ik, rho_jk = triple.maps[(i, j)], triple.maps[(i, k)], triple.maps[(j, k)]
        o_ij, o_ik, o_jk = scheme.overlap(i, j), scheme.overlap(i, k), scheme.overlap(j, k)
        bad = []
        for v in scheme.charts[i].variables:
            if rho_ij(o_ij.ring_a.var(v)) != rho_ik(o_ik.ring_a.var(v)):
                bad.append(v)
        for v in scheme.charts[j].variables:
            if rho_ij(o_ij.to_a.images[v]) != rho_jk(o_jk.ring_a.var(v)):
                bad.append(v)
        for v in scheme.charts[k].variables:
            if rho_ik(o_ik.to_a.images[v]) != rho_jk(o_jk.to_a.images[v]):
                bad.append(v)
        _record(checks, f"cocycle condition on U{i}{j}{k}", not bad,
                "" if not bad else f"disagreement on {', '.join(bad)}")

    report = GlueReport(passed=all(ok for _, ok, _ in checks), checks=checks)
    if not report.passed:
        logger.error(f"{scheme.name}: {len(report.failures())} gluing check(s) failed")
        raise GluingError(f"Gluing check failed for {scheme.name}", report.failures())
    logger.info(f"{scheme.name}: {len(checks)} gluing checks passed")
    return report
