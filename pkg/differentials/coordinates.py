"""
Local coordinate systems for Omega^{1,tot}.

Each relation with a constant pivot coefficient, and each localization
relation d^tot(s t - 1) (pivot s^p with inverse t^p), eliminates one
generator. When every relation is used up this way, Omega^{1,tot} is free on
d^tot p plus the remaining free coordinates, and F*Omega^1 is free on the
free coordinates.
"""
import logging
from functools import lru_cache

from differentials.total import MODULE_CACHE_SIZE, DiffElem, dtot_expand, frobenius_differentials, omega_tot
from utils.errors import ChartCoordinateError

logger = logging.getLogger("TotalP.Coordinates")


class CoordinateSystem:
    """
    Pivot elimination for the presentation of Omega^{1,tot}_A.

    Args:
        algebra: A flat W_2(F_q)-algebra
        prefer: Variable names to try first as pivots

    Raises:
        ChartCoordinateError: some relation has no constant pivot
    """

    def __init__(self, algebra, prefer=()):
        self.algebra = algebra
        self.module = omega_tot(algebra)
        self.base = self.module.base
        self._pivots = []  # (column, row with 1 at column and 0 at other pivot columns)
        variables = list(algebra.variables)
        order = [v for v in prefer if v in variables] + [v for v in variables if v not in prefer]
        self._column_order = [1 + variables.index(v) for v in order]

        for t, s, row in self.module.localization_relations():
            column = 1 + variables.index(t)
            scale = self.base.var(t) ** algebra.p
            self._add_pivot(column, self._eliminate(row * scale))

        pending = list(self.module.relations)
        progress = True
        while pending and progress:
            progress = False
            remaining = []
            for row in pending:
                row = self._eliminate(row)
                if row.is_zero():
                    progress = True
                    continue
                column = self._constant_pivot(row)
                if column is None:
                    remaining.append(row)
                    continue
                inverse = row[column].poly.constant_coefficient().inverse()
                self._add_pivot(column, row * self.base.element(inverse))
                progress = True
            pending = remaining

        leftovers = [self._eliminate(row) for row in pending]
        leftovers = [row for row in leftovers if not row.is_zero()]
        if leftovers:
            raise ChartCoordinateError(
                f"{algebra.name}: no constant pivot in relation(s) " + "; ".join(str(r) for r in leftovers)
            )
        pivot_columns = {column for column, _ in self._pivots}
        self.pivot_variables = tuple(variables[c - 1] for c, _ in self._pivots)
        self.free_variables = tuple(v for v in variables if 1 + variables.index(v) not in pivot_columns)
        self._free_columns = [1 + variables.index(v) for v in self.free_variables]
        logger.debug(f"{algebra.name}: free coordinates {self.free_variables}, pivots {self.pivot_variables}")

    def _constant_pivot(self, row):
        pivot_columns = {column for column, _ in self._pivots}
        for column in self._column_order:
            if column in pivot_columns:
                continue
            coefficient = row[column]
            if not coefficient.is_zero() and coefficient.is_constant():
                return column
        return None

    def _eliminate(self, row):
        for column, pivot_row in self._pivots:
            coefficient = row[column]
            if not coefficient.is_zero():
                row = row - pivot_row * coefficient
        return row

    def _add_pivot(self, column, row):
        updated = []
        for other_column, other_row in self._pivots:
            coefficient = other_row[column]
            if not coefficient.is_zero():
                other_row = other_row - row * coefficient
            updated.append((other_column, other_row))
        updated.append((column, row))
        self._pivots = updated

    @property
    def rank(self):
        return len(self.free_variables)

    def tot_coordinates(self, element):
        """Coordinates of an Omega^{1,tot} element in the basis (d^tot p, d^tot z for free z)."""
        reduced = self._eliminate(element)
        return (reduced[0],) + tuple(reduced[c] for c in self._free_columns)

    def frobenius_coordinates(self, element):
        """Coordinates of an F*Omega^1 element (or Omega^{1,tot} element, via beta) on the free F*dz."""
        if len(element.coeffs) == self.module.rank - 1:
            element = DiffElem(self.module, (self.base.zero(),) + element.coeffs)
        reduced = self._eliminate(element)
        return tuple(reduced[c] for c in self._free_columns)

    def variable_frobenius_coordinates(self, variable):
        return self.frobenius_coordinates(self.module.d(variable))

    def functional_on_variables(self, free_values, dp_value=None):
        """
        Extend values on the free coordinates to every generator.

        With dp_value None this extends a functional on F*Omega^1 (pivot values
        -sum row[z] v_z); otherwise a functional on Omega^{1,tot} with the
        given value on d^tot p.

        Returns:
            dict variable -> value
        """
        variables = self.algebra.variables
        values = {z: self.base.element(v) for z, v in zip(self.free_variables, free_values)}
        for column, row in self._pivots:
            total = self.base.zero()
            if dp_value is not None:
                total = total + row[0] * dp_value
            for z, c in zip(self.free_variables, self._free_columns):
                total = total + row[c] * values[z]
            values[variables[column - 1]] = -total
        return values

    def frobenius_module(self):
        return frobenius_differentials(self.algebra)


def coordinate_system(algebra, prefer=()):
    """Cached CoordinateSystem of an algebra."""
    return _cached_coordinate_system(algebra, tuple(prefer))


@lru_cache(maxsize=MODULE_CACHE_SIZE)
def _cached_coordinate_system(algebra, prefer):
    return CoordinateSystem(algebra, prefer)


def transition_matrix(forward, source_coordinates, target_coordinates):
    """
    Free-coordinate matrix of F*Omega^1 along forward: B -> A.

    Row k holds the coordinates (in target_coordinates, over A_0) of
    F*d(forward(y_k)) for the k-th free coordinate y_k of B.
    """
    rows = []
    for y in source_coordinates.free_variables:
        image = dtot_expand(forward.images[y].poly, target_coordinates.module)
        rows.append(target_coordinates.frobenius_coordinates(image))
    return rows


def is_isomorphism_on_overlap(forward, backward, prefer_source=(), prefer_target=()):
    """
    Check that forward: B -> A and backward: A -> B induce mutually inverse
    maps on the free coordinates of F*Omega^1.
    """
    coords_a = coordinate_system(forward.target, prefer_target)
    coords_b = coordinate_system(forward.source, prefer_source)
    if coords_a.rank != coords_b.rank:
        return False
    forward0 = forward.reduction()
    to_a = transition_matrix(forward, coords_b, coords_a)
    to_b = transition_matrix(backward, coords_a, coords_b)
    base = coords_a.base
    for index, row in enumerate(to_b):
        composite = [base.zero() for _ in range(coords_a.rank)]
        for coefficient, image_row in zip(row, to_a):
            mapped = forward0(coefficient)
            composite = [c + mapped * e for c, e in zip(composite, image_row)]
        expected = [base.one() if k == index else base.zero() for k in range(coords_a.rank)]
        if composite != expected:
            logger.warning(f"Coordinate change {forward.name} is not invertible at row {index}")
            return False
    return True
