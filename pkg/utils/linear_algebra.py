"""
Sparse linear systems over F_q, solved by Gauss-Jordan elimination mod p.

F_q-linear systems with q = p^m are expanded to F_p-linear systems of m times
the size using the regular representation of F_q.
"""
import logging

import numpy as np

logger = logging.getLogger("TotalP.LinearAlgebra")


def rref_mod_p(matrix, p):
    """
    Reduced row echelon form over F_p.

    Args:
        matrix: 2-D integer numpy array (copied)
        p: The prime

    Returns:
        (reduced matrix, list of pivot columns)
    """
    work = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = work.shape
    pivots = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        candidates = np.nonzero(work[row:, col])[0]
        if candidates.size == 0:
            continue
        pivot_row = row + int(candidates[0])
        if pivot_row != row:
            work[[row, pivot_row]] = work[[pivot_row, row]]
        inverse = pow(int(work[row, col]), p - 2, p)
        work[row] = (work[row] * inverse) % p
        factors = work[:, col].copy()
        factors[row] = 0
        nonzero = np.nonzero(factors)[0]
        if nonzero.size:
            work[nonzero] = (work[nonzero] - np.outer(factors[nonzero], work[row])) % p
        pivots.append(col)
        row += 1
    return work, pivots


def _expand(rows, n_cols, field):
    """Dense F_p matrix of an F_q system given as a list of {column: FqElem} rows."""
    m = field.m
    matrix = np.zeros((len(rows) * m, n_cols * m), dtype=np.int64)
    for r, row in enumerate(rows):
        for col, value in row.items():
            if value.is_zero():
                continue
            if m == 1:
                matrix[r, col] = value.coeffs[0]
            else:
                block = field.multiplication_matrix(value)
                matrix[r * m:(r + 1) * m, col * m:(col + 1) * m] = block
    return matrix


def _expand_vector(values, field):
    m = field.m
    vector = np.zeros(len(values) * m, dtype=np.int64)
    for i, value in enumerate(values):
        vector[i * m:(i + 1) * m] = value.coeffs
    return vector


def _collapse(vector, field):
    m = field.m
    return [field(tuple(int(c) for c in vector[i * m:(i + 1) * m])) for i in range(len(vector) // m)]


def solve_mod_p(rows, rhs, n_cols, field):
    """
    Solve sum_col rows[r][col] * x_col = rhs[r] over F_q.

    Free variables are set to zero, so the returned solution is the one
    supported on pivot columns.

    Args:
        rows: List of {column index: FqElem}
        rhs: List of FqElem, one per row
        n_cols: Number of unknowns
        field: The FiniteField

    Returns:
        List of FqElem, or None when the system is inconsistent
    """
    if n_cols == 0:
        return [] if all(value.is_zero() for value in rhs) else None
    p = field.p
    matrix = _expand(rows, n_cols, field)
    vector = _expand_vector(rhs, field)
    augmented = np.concatenate([matrix, vector.reshape(-1, 1)], axis=1)
    reduced, pivots = rref_mod_p(augmented, p)
    last = augmented.shape[1] - 1
    if last in pivots:
        logger.debug(f"Inconsistent system: {len(rows)} equations, {n_cols} unknowns")
        return None
    solution = np.zeros(n_cols * field.m, dtype=np.int64)
    for r, col in enumerate(pivots):
        solution[col] = reduced[r, last]
    return _collapse(solution, field)


def rank_mod_p(rows, n_cols, field):
    if n_cols == 0 or not rows:
        return 0
    _, pivots = rref_mod_p(_expand(rows, n_cols, field), field.p)
    return len(pivots) // field.m


def kernel_mod_p(rows, n_cols, field):
    """
    Basis of the F_q-kernel of the system.

    Returns:
        List of kernel vectors, each a list of FqElem of length n_cols
    """
    if n_cols == 0:
        return []
    m = field.m
    if not rows:
        basis = []
        for col in range(n_cols):
            vector = [field.zero()] * n_cols
            vector[col] = field.one()
            basis.append(vector)
        return basis
    p = field.p
    reduced, pivots = rref_mod_p(_expand(rows, n_cols, field), p)
    pivot_set = set(pivots)
    basis = []
    # F_q-kernel: one vector per free F_q-column, taken at its first F_p coordinate
    for block in range(n_cols):
        free_col = block * m
        if free_col in pivot_set:
            continue
        vector = np.zeros(n_cols * m, dtype=np.int64)
        vector[free_col] = 1
        for r, col in enumerate(pivots):
            vector[col] = (-reduced[r, free_col]) % p
        basis.append(_collapse(vector, field))
    return basis
