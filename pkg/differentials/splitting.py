"""
Splittings of alpha: Omega^{1,tot}_A -> A_0 functionals h with h(d^tot p) = 1,
and the equivalent Frobenius lifts x_i |-> x_i^p + p * h(d^tot x_i).
"""
import logging

from algebra.polynomial import Polynomial
from differentials.total import DiffElem, dtot_expand, omega_tot
from utils.errors import InvalidLiftError, StructuralError
from utils.linear_algebra import solve_mod_p

logger = logging.getLogger("TotalP.Splitting")


def default_degree_bound(algebra):
    """2 * p * (max generator degree) + 2."""
    return 2 * algebra.p * max(algebra.max_relation_degree(), 1) + 2


class Splitting:
    """
    A left inverse h of alpha, stored by its values u = (1, u_1, ..., u_n).

    Raises:
        InvalidLiftError: some relation vector r has sum r_i u_i != 0
    """

    def __init__(self, module, values, verify=True):
        self.module = module
        base = module.base
        values = tuple(base.element(v) for v in values)
        if len(values) != module.rank:
            raise StructuralError(f"Expected {module.rank} values, got {len(values)}")
        if values[0] != base.one():
            raise InvalidLiftError(f"A splitting must send d^tot p to 1, got {values[0]}")
        self.values = values
        if verify:
            for relation in module.relations:
                if not self(relation).is_zero():
                    raise InvalidLiftError(f"Splitting does not vanish on relation {relation}")

    @property
    def algebra(self):
        return self.module.algebra

    def __call__(self, element):
        """h applied to an element of Omega^{1,tot}."""
        total = self.module.base.zero()
        for coefficient, value in zip(element.coeffs, self.values):
            if not coefficient.is_zero() and not value.is_zero():
                total = total + coefficient * value
        return total

    def value(self, variable):
        return self.values[1 + self.algebra.ring.index(variable)]

    def sigma(self, form):
        """Section of beta: F*dx |-> d^tot x - alpha(h(d^tot x))."""
        coeffs = form.coeffs
        correction = self.module.base.zero()
        for w, u in zip(coeffs, self.values[1:]):
            correction = correction + w * u
        return DiffElem(self.module, (-correction,) + tuple(coeffs))

    def difference(self, other):
        """h - h' as values on d^tot x_i: a functional on F*Omega^1."""
        if other.module.algebra is not self.algebra:
            raise StructuralError("Splittings of different algebras")
        return tuple(a - b for a, b in zip(self.values[1:], other.values[1:]))

    def shift(self, functional):
        """The torsor action h + psi for psi given by values on F*dx_i."""
        return Splitting(self.module, (self.values[0],) + tuple(u + v for u, v in zip(self.values[1:], functional)))

    def __eq__(self, other):
        return isinstance(other, Splitting) and self.module is other.module and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def extend_to(self, localized):
        """
        Unique extension to a localization B = A[1/s] (or a chain of them):
        h(d^tot t) = -t^p * (h of the remaining part of d^tot(s t - 1)).
        """
        chain = []
        algebra = localized
        while algebra is not self.algebra:
            if algebra.origin is None or algebra.origin.kind != "localization":
                raise StructuralError(f"{localized.name} is not a localization of {self.algebra.name}")
            chain.append(algebra)
            algebra = algebra.origin.parent
        splitting = self
        for step in reversed(chain):
            splitting = splitting._extend_once(step)
        return splitting

    def _extend_once(self, localized):
        module = omega_tot(localized)
        base = module.base
        t = localized.origin.new_variables[0]
        values = [base.one()] + [base.embed(u) for u in self.values[1:]] + [base.zero()]
        s = localized.origin.inverted
        relation = dtot_expand(s * localized.ring.var(t) - 1, module)
        rest = base.zero()
        for index, (coefficient, value) in enumerate(zip(relation.coeffs[:-1], values[:-1])):
            rest = rest + coefficient * value
        values[-1] = -(base.var(t) ** localized.p) * rest
        return Splitting(module, values)

    def __repr__(self):
        names = self.algebra.variables
        return "Splitting(" + ", ".join(f"h(d{v}) = {u}" for v, u in zip(names, self.values[1:])) + ")"


def _deepening_degrees(bound):
    degrees = [0]
    degree = 1
    while degree < bound:
        degrees.append(degree)
        degree *= 2
    degrees.append(bound)
    return degrees


def solve_splitting(module, degree):
    """Solve sum_i r_i u_i = -r_0 with u_i supported on staircase monomials of degree <= degree."""
    base = module.base
    field = base.field
    n = module.rank - 1
    stair = base.staircase(degree)
    columns = [(i, m) for i in range(n) for m in stair]
    row_index = {}
    rows = []
    rhs = []

    def row_for(key):
        if key not in row_index:
            row_index[key] = len(rows)
            rows.append({})
            rhs.append(field.zero())
        return row_index[key]

    for r_number, relation in enumerate(module.relations):
        for col, (i, m) in enumerate(columns):
            coefficient = relation[i + 1]
            if coefficient.is_zero():
                continue
            product = base.normal_form(coefficient.poly * base.ring.monomial(m))
            for monomial, value in product.terms.items():
                row = rows[row_for((r_number, monomial))]
                row[col] = row.get(col, field.zero()) + value
        for monomial, value in relation[0].poly.terms.items():
            index = row_for((r_number, monomial))
            rhs[index] = rhs[index] - value

    solution = solve_mod_p(rows, rhs, len(columns), field)
    if solution is None:
        return None
    u = [{} for _ in range(n)]
    for (i, m), value in zip(columns, solution):
        if not value.is_zero():
            u[i][m] = value
    return [base.element(Polynomial(base.ring, terms)) for terms in u]


def find_splitting(module, degree_bound=None, doublings=1):
    """
    Search for a splitting by iterative deepening up to degree_bound, then
    doubling the bound `doublings` times.

    Returns:
        Splitting, or None when absent at the final bound
    """
    bound = degree_bound if degree_bound is not None else default_degree_bound(module.algebra)
    if not module.relations:
        return Splitting(module, [1] + [0] * (module.rank - 1))
    tried = set()
    bounds = [bound * (2 ** k) for k in range(doublings + 1)]
    for current in bounds:
        for degree in _deepening_degrees(current):
            if degree in tried:
                continue
            tried.add(degree)
            u = solve_splitting(module, degree)
            if u is not None:
                logger.info(f"{module.algebra.name}: splitting found at degree {degree}")
                return Splitting(module, [module.base.one()] + u)
    logger.info(f"{module.algebra.name}: no splitting up to degree {bounds[-1]}")
    return None


class FrobeniusLift:
    """
    A ring endomorphism phi of A that is Frobenius on W_2(F_q) and reduces to
    the p-th power map modulo p, given by phi(x_i).

    Raises:
        InvalidLiftError: reduction condition or a relation fails
    """

    def __init__(self, algebra, images, verify=True):
        self.algebra = algebra
        missing = [v for v in algebra.variables if v not in images]
        if missing:
            raise StructuralError(f"No image for variable(s) {', '.join(missing)}")
        self.images = {v: algebra.element(images[v] if not hasattr(images[v], "poly") else images[v].poly)
                       for v in algebra.variables}
        if verify:
            self.verify()

    def __call__(self, value):
        """phi of an ambient polynomial, literal or element."""
        algebra = self.algebra
        poly = value.poly if hasattr(value, "poly") else algebra.ring(value)
        twisted = algebra.frobenius_coefficients(poly)
        values = [self.images[v] for v in algebra.variables]
        return twisted.evaluate(values, algebra.element, algebra.one())

    def verify(self):
        algebra = self.algebra
        p = algebra.p
        for v in algebra.variables:
            difference = self.images[v] - algebra.var(v) ** p
            if not algebra.reduce(difference).is_zero():
                raise InvalidLiftError(f"phi({v}) = {self.images[v]} does not reduce to {v}^{p}")
        for g in algebra.basis:
            image = self(g)
            if not image.is_zero():
                raise InvalidLiftError(f"phi does not respect relation {g}: image {image}")
        return True

    def __eq__(self, other):
        return isinstance(other, FrobeniusLift) and self.algebra is other.algebra and self.images == other.images

    def __hash__(self):
        return hash(tuple(self.images.values()))

    def extend_to(self, localized):
        """Extend along localizations by phi(t) = t^p (2 - phi(s) t^p)."""
        chain = []
        algebra = localized
        while algebra is not self.algebra:
            if algebra.origin is None or algebra.origin.kind != "localization":
                raise StructuralError(f"{localized.name} is not a localization of {self.algebra.name}")
            chain.append(algebra)
            algebra = algebra.origin.parent
        lift = self
        for step in reversed(chain):
            t = step.origin.new_variables[0]
            images = {v: step.embed(lift.images[v]) for v in lift.algebra.variables}
            partial = FrobeniusLift(step, {**images, t: step.var(t)}, verify=False)
            phi_s = partial(step.origin.inverted)
            t_p = step.var(t) ** step.p
            images[t] = t_p * (2 - phi_s * t_p)
            lift = FrobeniusLift(step, images)
        return lift

    def __repr__(self):
        return "FrobeniusLift(" + ", ".join(f"{v} |-> {e}" for v, e in self.images.items()) + ")"


def splitting_to_frobenius(splitting):
    """h |-> phi_h with phi_h(x_i) = x_i^p + p * lift(h(d^tot x_i))."""
    algebra = splitting.algebra
    p = algebra.p
    images = {}
    for v, u in zip(algebra.variables, splitting.values[1:]):
        images[v] = algebra.var(v) ** p + algebra.times_p(u)
    return FrobeniusLift(algebra, images)


def frobenius_to_splitting(lift):
    """phi |-> h with h(d^tot x_i) = (phi(x_i) - x_i^p) / p."""
    algebra = lift.algebra
    module = omega_tot(algebra)
    p = algebra.p
    values = [module.base.one()]
    for v in algebra.variables:
        try:
            values.append(algebra.divide_by_p(lift.images[v] - algebra.var(v) ** p))
        except StructuralError as e:
            raise InvalidLiftError(f"phi({v}) - {v}^{p} is not divisible by p: {e}")
    return Splitting(module, values)
