"""
Randomized and exhaustive property suites for the algebraic structures:
Witt interpolation endpoints, U_c ring axioms, total differentials,
splittings and the biring Q_c.
"""
import logging
from dataclasses import dataclass, field
from itertools import product

import pandas as pd

from algebra.fp_algebra import FPAlgebra, localize, witt_algebra
from biring.biring import Biring, prime_field_algebra
from coefficients.carries import cp_eval
from coefficients.finite_field import FiniteField
from coefficients.witt import WittRing, base_delta
from differentials.coordinates import coordinate_system
from differentials.splitting import find_splitting, frobenius_to_splitting, splitting_to_frobenius
from differentials.total import alpha, dtot_expand, omega_tot
from utils.helpers import make_rng
from witt_interp.interpolation import UcRing, rescale_hom, uc_scalar

logger = logging.getLogger("TotalP.Axioms")


@dataclass
class AxiomResult:
    name: str
    passed: bool
    samples: int
    detail: str = ""
    failures: list = field(default_factory=list)

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "samples": self.samples, "detail": self.detail}


def truncated_line(p, degree):
    """F_p[t]/(t^degree)."""
    return FPAlgebra.from_strings(FiniteField(p), ["t"], [f"t^{degree}"], name=f"F{p}[t]/(t^{degree})")


def _result(name, samples, failures):
    passed = not failures
    detail = "ok" if passed else f"{len(failures)} failure(s), first: {failures[0]}"
    if not passed:
        logger.warning(f"Suite {name}: {detail}")
    return AxiomResult(name, passed, samples, detail, failures[:10])


def witt_endpoint(p):
    """U_1(F_p) agrees with W_2(F_p) = Z/p^2 under r |-> (r0, r1), exhaustively."""
    target = prime_field_algebra(p)
    witt = WittRing.of(p)
    elements = list(witt.elements())
    failures = []
    for r, s in product(elements, repeat=2):
        if uc_scalar(r + s, target, 1) != uc_scalar(r, target, 1) + uc_scalar(s, target, 1):
            failures.append(("add", str(r), str(s)))
        if uc_scalar(r * s, target, 1) != uc_scalar(r, target, 1) * uc_scalar(s, target, 1):
            failures.append(("mul", str(r), str(s)))
    return _result("witt_endpoint", len(elements) ** 2, failures)


def square_zero(p):
    """In U_0(F_p) the kernel I of the projection satisfies I^2 = 0 and pI = 0."""
    uc = UcRing(prime_field_algebra(p), 0)
    failures = []
    values = list(range(p))
    for x, y in product(values, repeat=2):
        a, b = uc.ideal_element(x), uc.ideal_element(y)
        if not (a * b).is_zero():
            failures.append(("I^2", x, y))
    for x in values:
        total = uc.zero()
        for _ in range(p):
            total = total + uc.ideal_element(x)
        if not total.is_zero():
            failures.append(("pI", x))
    return _result("square_zero", p * p + p, failures)


def uc_ring_axioms(p, rng, samples, degree=3):
    """Commutative ring axioms of U_c(F_p[t]/(t^degree)) for c in {0, 1, 2, t}, plus rescaling."""
    algebra = truncated_line(p, degree)
    failures = []
    for c in (0, 1, 2, algebra.var("t")):
        uc = UcRing(algebra, c)
        zero, one = uc.zero(), uc.one()
        for _ in range(samples):
            a, b, d = (uc.random_element(rng) for _ in range(3))
            checks = {
                "add assoc": (a + b) + d == a + (b + d),
                "add comm": a + b == b + a,
                "mul assoc": (a * b) * d == a * (b * d),
                "mul comm": a * b == b * a,
                "distrib": a * (b + d) == a * b + a * d,
                "identities": a + zero == a and a * one == a,
                "inverse": (a + (-a)).is_zero(),
            }
            e = algebra.random_element(rng)
            checks["rescale add"] = rescale_hom(e, a + b) == rescale_hom(e, a) + rescale_hom(e, b)
            checks["rescale mul"] = rescale_hom(e, a * b) == rescale_hom(e, a) * rescale_hom(e, b)
            failures.extend((name, str(uc.c), repr(a), repr(b)) for name, ok in checks.items() if not ok)
    return _result("uc_ring_axioms", 4 * samples, failures)


def dtot_rules(p, rng, samples):
    """The sum, product and constant rules of d^tot on affine 2-space."""
    algebra = witt_algebra(p, ["x", "y"], name="A2")
    module = omega_tot(algebra)
    witt = algebra.coefficient_ring
    failures = []
    for _ in range(samples):
        a = algebra.random_element(rng)
        b = algebra.random_element(rng)
        a0, b0 = algebra.reduce(a), algebra.reduce(b)
        da, db = dtot_expand(a, module), dtot_expand(b, module)
        expected_sum = da + db + alpha(cp_eval(a0, b0, p), module)
        if dtot_expand(a + b, module) != expected_sum:
            failures.append(("sum", str(a), str(b)))
        if dtot_expand(a * b, module) != da * (b0 ** p) + db * (a0 ** p):
            failures.append(("product", str(a), str(b)))
        r = witt.random_element(rng)
        if dtot_expand(algebra.element(r), module) != alpha(module.base.element(base_delta(r, 1)), module):
            failures.append(("constant", str(r)))
    return _result("dtot_rules", samples, failures)


def splitting_round_trips(p, rng, samples):
    """h -> phi_h -> h and phi -> h -> phi on A^1 and G_m, including shifted splittings."""
    line = witt_algebra(p, ["x"], name="A1")
    units, _ = localize(line, "x", name="Gm", inverse_name="x_inv")
    failures = []
    count = 0
    for algebra in (line, units):
        module = omega_tot(algebra)
        base = splitting = find_splitting(module)
        if splitting is None:
            failures.append(("absent", algebra.name))
            continue
        coords = coordinate_system(algebra)
        for index in range(samples):
            if index:
                free = [algebra.reduction.random_element(rng) for _ in coords.free_variables]
                values = coords.functional_on_variables(free)
                splitting = base.shift(tuple(values[v] for v in algebra.variables))
            lift = splitting_to_frobenius(splitting)
            if frobenius_to_splitting(lift) != splitting:
                failures.append(("h->phi->h", algebra.name, repr(splitting)))
            if splitting_to_frobenius(frobenius_to_splitting(lift)) != lift:
                failures.append(("phi->h->phi", algebra.name, repr(lift)))
            count += 1
    return _result("splitting_round_trips", count, failures)


def biring_points(p, rng, samples):
    """Evaluation transports the point operations of Q_c to U_c, and beta_structure is a ring map."""
    failures = []
    count = 0
    prime = prime_field_algebra(p)
    for c in (0, 1):
        biring = Biring(p, c)
        points = [biring.point(prime, e, eta) for e, eta in product(range(p), repeat=2)]
        pairs = list(product(points, repeat=2)) if p == 3 else [
            (rng.choice(points), rng.choice(points)) for _ in range(samples)]
        truncated = truncated_line(p, 4)
        pairs += [(biring.point(truncated, truncated.random_element(rng), truncated.random_element(rng)),
                   biring.point(truncated, truncated.random_element(rng), truncated.random_element(rng)))
                  for _ in range(samples)]
        for f, g in pairs:
            if biring.evaluate(biring.point_ops(f, g, "add")) != biring.evaluate(f) + biring.evaluate(g):
                failures.append(("add", int(biring.c), repr(f), repr(g)))
            if biring.evaluate(biring.point_ops(f, g, "mul")) != biring.evaluate(f) * biring.evaluate(g):
                failures.append(("mul", int(biring.c), repr(f), repr(g)))
            count += 1
        witt = WittRing.of(p)
        for r, s in product(list(witt.elements()), repeat=2):
            left_add = biring.evaluate(biring.beta_structure(r + s))
            left_mul = biring.evaluate(biring.beta_structure(r * s))
            br, bs = biring.evaluate(biring.beta_structure(r)), biring.evaluate(biring.beta_structure(s))
            if left_add != br + bs or left_mul != br * bs:
                failures.append(("beta_structure", int(biring.c), str(r), str(s)))
            count += 1
    return _result("biring_points", count, failures)


def double_point_absent(p):
    """W_2[x]/(x^2 - p) has no splitting."""
    algebra = witt_algebra(p, ["x"], ["x^2 - p"], name="double point")
    splitting = find_splitting(omega_tot(algebra))
    failures = [] if splitting is None else [("found", repr(splitting))]
    return _result("double_point_absent", 1, failures)


def run_suites(p, seed=0, samples=200):
    """
    Run every suite for the prime p.

    Args:
        p: Odd prime
        seed: Seed of the shared random generator
        samples: Random samples per configuration

    Returns:
        list of AxiomResult
    """
    rng = make_rng(seed)
    logger.info(f"Running property suites for p = {p} (seed {seed}, {samples} samples)")
    results = [
        witt_endpoint(p),
        square_zero(p),
        uc_ring_axioms(p, rng, samples),
        dtot_rules(p, rng, samples),
        splitting_round_trips(p, rng, max(2, samples // 20)),
        biring_points(p, rng, max(1, samples // 2)),
        double_point_absent(p),
    ]
    passed = sum(r.passed for r in results)
    logger.info(f"{passed}/{len(results)} suites passed")
    return results


def results_table(results):
    return pd.DataFrame([r.to_dict() for r in results], columns=["name", "passed", "samples", "detail"])
