"""
Čech representatives of the classes attached to the sequence
0 -> O -> Omega^{1,tot} -> F*Omega^1 -> 0 on a glued scheme.

    kodaira_spencer    s_ab = sigma_a - sigma_b on F*Omega^1 of the overlap
    deligne_illusie    h_ab = (phi_a - phi_b) / p factored through F*d
    gauss_manin        g_ab = alpha-coordinate of lift_a(omega) - lift_b(omega)
    cup_with           (k cup omega)_ab = k_ab(omega)

Coboundary membership is decided in a degree window of the chart rings.
"""
import logging
from dataclasses import dataclass, field

from cech.cochains import CechClass, Sheaf, cocycle_kernel, d0, solve_coboundary
from differentials.splitting import find_splitting, frobenius_to_splitting, splitting_to_frobenius
from differentials.total import DiffElem, dtot_expand, frobenius_differentials, omega_tot, pullback
from utils.errors import InconsistencyError, InputError, InvalidLiftError, ObstructionError, StructuralError

logger = logging.getLogger("TotalP.Cech")


def _window(scheme, bound):
    return bound if bound is not None else scheme.default_window()


def chart_splittings(scheme, bound=None, doublings=1):
    """
    One splitting per chart.

    Raises:
        ObstructionError: a chart has no splitting at the bound
    """
    splittings = []
    for index, chart in enumerate(scheme.charts):
        splitting = find_splitting(omega_tot(chart), bound, doublings)
        if splitting is None:
            logger.error(f"Chart {index} ({chart.name}) has no Frobenius lift in the degree window")
            raise ObstructionError(f"No splitting on chart {index} ({chart.name})", chart=index)
        splittings.append(splitting)
    return splittings


def kodaira_spencer(scheme, bound=None, splittings=None, doublings=1):
    """
    The 1-cocycle s_ab(F*dz) = h_b(d^tot T_ba(z)) - h_a(d^tot z) in Hom(F*Omega^1, O).

    Args:
        scheme: GluedScheme (checked on first use)
        bound: Splitting degree bound and recorded window (default: the scheme's window)
        splittings: Optional chart splittings to use instead of searching

    Raises:
        ObstructionError: a chart without splitting at the bound
    """
    scheme.check()
    splittings = splittings or chart_splittings(scheme, bound, doublings)
    values = {}
    for pair in scheme.pairs():
        a, b = pair
        overlap = scheme.overlap(*pair)
        coords = scheme.overlap_coordinates(pair, 0)
        h_a = splittings[a].extend_to(overlap.ring_a)
        h_b = splittings[b].extend_to(overlap.ring_b)
        module_b = omega_tot(overlap.ring_b)
        entries = []
        for z in coords.free_variables:
            image = dtot_expand(overlap.to_b.images[z].poly, module_b)
            entries.append(overlap.to_a0(h_b(image)) - h_a.value(z))
        values[pair] = tuple(entries)
    kappa = CechClass(scheme, 1, Sheaf.HOM, values, _window(scheme, bound), name="kappa")
    logger.info(f"{scheme.name}: kappa computed on {len(values)} overlap(s), "
                f"{'zero' if kappa.is_zero() else 'nonzero'} as a cochain")
    return kappa


def deligne_illusie(scheme, local_lifts=None, bound=None, doublings=1):
    """
    The 1-cocycle h_ab with p * h_ab(F*dw) = phi_a(w) - T_ab(phi_b(T_ba(w))).

    Args:
        scheme: GluedScheme
        local_lifts: One FrobeniusLift per chart (default: from chart splittings)

    Raises:
        InvalidLiftError: inexact division by p or failed factoring through F*d
    """
    scheme.check()
    if local_lifts is None:
        local_lifts = [splitting_to_frobenius(s) for s in chart_splittings(scheme, bound, doublings)]
    if len(local_lifts) != len(scheme.charts):
        raise StructuralError(f"Expected {len(scheme.charts)} chart lifts, got {len(local_lifts)}")
    values = {}
    for pair in scheme.pairs():
        a, b = pair
        overlap = scheme.overlap(*pair)
        ring = overlap.ring_a
        phi_a = local_lifts[a].extend_to(ring)
        phi_b = local_lifts[b].extend_to(overlap.ring_b)
        quotients = {}
        for w in ring.variables:
            difference = phi_a(ring.var(w)) - overlap.to_a(phi_b(overlap.to_b.images[w]))
            try:
                quotients[w] = ring.divide_by_p(difference)
            except StructuralError as e:
                raise InvalidLiftError(f"phi_{a} - phi_{b} is not divisible by p at {w}: {e}")
        coords = scheme.overlap_coordinates(pair, 0)
        free = [quotients[z] for z in coords.free_variables]
        expected = coords.functional_on_variables(free)
        for w, value in expected.items():
            if value != quotients[w]:
                raise InvalidLiftError(f"(phi_{a} - phi_{b})/p does not factor through F*d at {w}: "
                                       f"{quotients[w]} != {value}")
        values[pair] = tuple(free)
    return CechClass(scheme, 1, Sheaf.HOM, values, _window(scheme, bound), name="h")


@dataclass
class ComparisonResult:
    equal: bool
    sign: int
    witness: object
    window: int
    stabilized: bool
    inconclusive: bool
    rank: int
    difference: object = None

    def to_dict(self):
        return {
            "equal": self.equal,
            "sign": self.sign,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "window": self.window,
            "stabilized": self.stabilized,
            "inconclusive": self.inconclusive,
            "rank": self.rank,
        }


def is_coboundary(cocycle, bound=None, doublings=1, stabilization_step=2):
    """Coboundary membership of a 1-cocycle; see classes_equal_up_to_sign."""
    scheme = cocycle.scheme
    start = bound if bound is not None else (cocycle.window or scheme.default_window())
    if cocycle.is_zero():
        witness = CechClass(scheme, 0, cocycle.sheaf, {}, start, name="witness")
        return ComparisonResult(True, 1, witness, start, True, False, 0, cocycle)
    witness, rank, window = None, 0, start
    for k in range(doublings + 1):
        window = start * (2 ** k)
        witness, rank = solve_coboundary(cocycle, window)
        if witness is not None:
            break
    if witness is not None:
        # a witness in a window is a witness in every larger window
        stabilized = True
    else:
        recheck, _ = solve_coboundary(cocycle, window + stabilization_step)
        stabilized = recheck is None
    inconclusive = witness is None and cocycle.max_degree() > window
    if inconclusive:
        logger.warning(f"Window {window} is below the degree {cocycle.max_degree()} of the cocycle; "
                       f"enlarge the window")
    if not stabilized:
        logger.warning(f"Verdict changed between windows {window} and {window + stabilization_step}")
    return ComparisonResult(witness is not None, 1, witness, window, stabilized, inconclusive, rank, cocycle)


def classes_equal_up_to_sign(k1, k2, bound=None, sign=-1, doublings=1, stabilization_step=2):
    """
    Decide whether k1 = sign * k2 modulo coboundaries: k1 - sign * k2 = d0(t).

    With sign = -1 this is the test k1 + k2 in im(d0).

    Returns:
        ComparisonResult carrying the 0-cochain witness t when equal
    """
    if k1.scheme is not k2.scheme or k1.sheaf != k2.sheaf or k1.degree != 1 or k2.degree != 1:
        raise StructuralError("Comparison needs two 1-cochains of the same scheme and sheaf")
    if sign not in (1, -1):
        raise StructuralError(f"sign must be +1 or -1, got {sign}")
    if bound is None:
        windows = [w for w in (k1.window, k2.window) if w is not None]
        bound = max(windows) if windows else None
    difference = k1 - k2.scale(sign)
    result = is_coboundary(difference, bound, doublings, stabilization_step)
    result.sign = sign
    logger.info(f"{k1.name} {'=' if sign > 0 else '= -'}{k2.name} modulo coboundaries: {result.equal} "
                f"(window {result.window})")
    return result


def normalize_form(scheme, omega):
    """
    Per-chart coefficient tuples on the free coordinates F*dz, as reduced chart elements.

    Raises:
        InputError: wrong number of charts or coefficients
    """
    if isinstance(omega, dict):
        omega = [omega.get(i, omega.get(str(i))) for i in range(len(scheme.charts))]
    omega = list(omega)
    if len(omega) != len(scheme.charts):
        raise InputError(f"Expected a form on each of {len(scheme.charts)} charts, got {len(omega)}")
    result = []
    for index, (chart, entries) in enumerate(zip(scheme.charts, omega)):
        coords = scheme.chart_coordinates(index)
        base = chart.reduction
        if entries is None:
            entries = [0] * coords.rank
        if isinstance(entries, dict):
            unknown = [z for z in entries if z not in coords.free_variables]
            if unknown:
                raise InputError(f"Chart {index}: {unknown} are not free coordinates {coords.free_variables}")
            entries = [entries.get(z, 0) for z in coords.free_variables]
        if len(entries) != coords.rank:
            raise InputError(f"Chart {index}: expected {coords.rank} coefficients, got {len(entries)}")
        result.append(tuple(base.element(e) for e in entries))
    return result


def form_mismatches(scheme, omega):
    """Pairs where omega_a and the transported omega_b differ on the overlap."""
    mismatches = []
    for pair in scheme.pairs():
        a, b = pair
        overlap = scheme.overlap(*pair)
        base = overlap.ring_a.reduction
        restricted = [overlap.from_chart0(a)(c) for c in omega[a]]
        transported = [base.zero() for _ in restricted]
        for coefficient, row in zip(omega[b], scheme.form_transport(pair)):
            mapped = overlap.from_chart0(b)(coefficient)
            transported = [t + mapped * r for t, r in zip(transported, row)]
        if restricted != transported:
            mismatches.append(pair)
    return mismatches


def _check_global(scheme, omega):
    omega = normalize_form(scheme, omega)
    mismatches = form_mismatches(scheme, omega)
    if mismatches:
        raise InputError(f"The form is not a global section: charts disagree on {mismatches}")
    return omega


def _default_lift(scheme, index, coefficients):
    module = omega_tot(scheme.charts[index])
    coords = scheme.chart_coordinates(index)
    entries = [module.base.zero() for _ in range(module.rank)]
    for z, c in zip(coords.free_variables, coefficients):
        entries[module.index(f"d^tot {z}")] = c
    return DiffElem(module, entries)


def _sigma_lift(scheme, index, coefficients, splitting):
    chart = scheme.charts[index]
    coords = scheme.chart_coordinates(index)
    target = frobenius_differentials(chart)
    values = dict(zip(coords.free_variables, coefficients))
    form = target.element([values.get(v, 0) for v in chart.variables])
    return splitting.sigma(form)


def gauss_manin(scheme, omega, lifts=None, splittings=None, bound=None):
    """
    The O-valued 1-cocycle g_ab = alpha-coordinate of lift_a(omega) - lift_b(omega).

    Args:
        scheme: GluedScheme
        omega: Global section of F*Omega^1, per chart (tuples or dicts on free coordinates)
        lifts: None for d^tot-coordinate lifts, "sigma" for sigma_i(omega) from
            chart splittings, or a list of Omega^{1,tot} elements, one per chart
        splittings: Chart splittings for lifts="sigma"

    Raises:
        InputError: omega is not a global section, or a lift does not map to omega
    """
    scheme.check()
    omega = _check_global(scheme, omega)
    if lifts is None:
        lifted = [_default_lift(scheme, i, omega[i]) for i in range(len(scheme.charts))]
    elif lifts == "sigma":
        splittings = splittings or chart_splittings(scheme, bound)
        lifted = [_sigma_lift(scheme, i, omega[i], splittings[i]) for i in range(len(scheme.charts))]
    else:
        lifted = list(lifts)
    for index, element in enumerate(lifted):
        if scheme.chart_coordinates(index).frobenius_coordinates(element) != omega[index]:
            raise InputError(f"The lift on chart {index} does not map to the form under beta")
    values = {}
    for pair in scheme.pairs():
        a, b = pair
        overlap = scheme.overlap(*pair)
        coords = scheme.overlap_coordinates(pair, 0)
        difference = (pullback(overlap.from_chart(a), verify=False)(lifted[a])
                      - pullback(overlap.from_chart(b), verify=False)(lifted[b]))
        dp_part, *free_part = coords.tot_coordinates(difference)
        if any(not c.is_zero() for c in free_part):
            raise InputError(f"Lifts differ outside alpha(O) on the overlap {pair}")
        values[pair] = dp_part
    return CechClass(scheme, 1, Sheaf.O, values, _window(scheme, bound), name="gm")


def cup_with(kappa, omega):
    """(kappa cup omega)_ab = sum_z omega_a,z * kappa_ab(F*dz)."""
    if kappa.degree != 1 or kappa.sheaf is not Sheaf.HOM:
        raise StructuralError("cup_with expects a Hom-valued 1-cochain")
    scheme = kappa.scheme
    omega = _check_global(scheme, omega)
    values = {}
    for pair in scheme.pairs():
        overlap = scheme.overlap(*pair)
        total = overlap.ring_a.reduction.zero()
        for c, k in zip(omega[pair[0]], kappa.values[pair]):
            total = total + overlap.from_chart0(pair[0])(c) * k
        values[pair] = total
    return CechClass(scheme, 1, Sheaf.O, values, kappa.window, name=f"{kappa.name} cup omega")


@dataclass
class GlobalLift:
    """Chart Frobenius lifts that agree on every overlap."""
    scheme: object
    lifts: list
    splittings: list
    correction: object
    window: int
    checks: list = field(default_factory=list)

    def to_dict(self):
        return {
            "window": self.window,
            "charts": {str(i): {v: str(e) for v, e in lift.images.items()} for i, lift in enumerate(self.lifts)},
            "correction": self.correction.to_dict() if self.correction is not None else None,
        }


def _functional_values(scheme, index, free_values):
    chart = scheme.charts[index]
    values = scheme.chart_coordinates(index).functional_on_variables(free_values)
    return tuple(values[v] for v in chart.variables)


def lifts_agree(scheme, lifts):
    """Pairs on which the extended chart lifts disagree."""
    failures = []
    for pair in scheme.pairs():
        a, b = pair
        overlap = scheme.overlap(*pair)
        phi_a = lifts[a].extend_to(overlap.ring_a)
        phi_b = lifts[b].extend_to(overlap.ring_b)
        for w in overlap.ring_a.variables:
            if phi_a(overlap.ring_a.var(w)) != overlap.to_a(phi_b(overlap.to_b.images[w])):
                failures.append((pair, w))
    return failures


def global_frobenius_lift(scheme, bound=None, splittings=None, doublings=1):
    """
    Search chart splittings h_i + psi_i that glue, by solving d0(psi) = -kappa in the window.

    Returns:
        GlobalLift, or None when absent at the final window
    """
    try:
        splittings = splittings or chart_splittings(scheme, bound, doublings)
    except ObstructionError as e:
        logger.info(f"{scheme.name}: no global lift, chart {e.chart} has no local lift")
        return None
    kappa = kodaira_spencer(scheme, bound, splittings)
    result = is_coboundary(-kappa, bound, doublings)
    if not result.equal:
        logger.info(f"{scheme.name}: kappa is not a coboundary up to window {result.window}, no global lift")
        return None
    psi = result.witness
    shifted = [s.shift(_functional_values(scheme, i, psi.values[i])) for i, s in enumerate(splittings)]
    lifts = [splitting_to_frobenius(s) for s in shifted]
    failures = lifts_agree(scheme, lifts)
    if failures:
        logger.error(f"Glued lifts disagree on {failures}")
        raise InconsistencyError(f"Corrected chart lifts disagree on {failures}")
    logger.info(f"{scheme.name}: global Frobenius lift found at window {result.window}")
    return GlobalLift(scheme, lifts, shifted, psi, result.window)


def global_hom_sections(scheme, bound=None):
    """Basis of the window-truncated H^0(Hom(F*Omega^1, O)) as 0-cocycles."""
    scheme.check()
    window = _window(scheme, bound)
    sections = cocycle_kernel(scheme, Sheaf.HOM, window)
    logger.info(f"{scheme.name}: {len(sections)} global sections of Hom(F*Omega^1, O) in window {window}")
    return sections


def lift_difference(first, second):
    """
    The torsor difference of two global lifts as a verified 0-cocycle of Hom(F*Omega^1, O).

    Raises:
        InconsistencyError: the chartwise differences do not glue
    """
    scheme = first.scheme
    if second.scheme is not scheme:
        raise StructuralError("Lifts of different schemes")
    values = {}
    for index, (l1, l2) in enumerate(zip(first.lifts, second.lifts)):
        chart = scheme.charts[index]
        difference = frobenius_to_splitting(l1).difference(frobenius_to_splitting(l2))
        by_variable = dict(zip(chart.variables, difference))
        values[index] = tuple(by_variable[z] for z in scheme.chart_coordinates(index).free_variables)
    section = CechClass(scheme, 0, Sheaf.HOM, values, max(first.window, second.window), name="lift difference")
    if not d0(section).is_zero():
        raise InconsistencyError("The difference of the two lifts is not a global section")
    return section
