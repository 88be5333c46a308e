"""
Unit tests for utilities module.
"""
import numpy as np

from coefficients.finite_field import FiniteField
from utils.errors import GluingError, ParseError
from utils.helpers import format_pair, make_rng, truncate_text
from utils.linear_algebra import kernel_mod_p, rank_mod_p, rref_mod_p, solve_mod_p


def test_truncate_text():
    """Test text truncation."""
    assert truncate_text("short", 10) == "short"
    assert truncate_text("a" * 20, 10) == "aaaaaaa..."
    assert truncate_text(None) == ""
    assert truncate_text(0) == "0"
    assert truncate_text(False) == "False"


def test_make_rng_is_deterministic():
    """Test that equal seeds give equal streams."""
    first, second = make_rng(7), make_rng(7)
    assert [first.randrange(100) for _ in range(10)] == [second.randrange(100) for _ in range(10)]


def test_format_pair():
    """Test overlap and chart labels."""
    assert format_pair((0, 1)) == "0-1"
    assert format_pair(2) == "2"


def test_rref_mod_p():
    """Test reduced row echelon form over F_5."""
    reduced, pivots = rref_mod_p(np.array([[2, 4], [1, 2]]), 5)
    assert pivots == [0]
    assert reduced.tolist() == [[1, 2], [0, 0]]


def test_solve_mod_p():
    """Test a consistent and an inconsistent system over F_3."""
    field = FiniteField(3)
    rows = [{0: field(1), 1: field(1)}, {1: field(2)}]
    solution = solve_mod_p(rows, [field(0), field(1)], 2, field)
    assert solution == [field(1), field(2)]
    assert solve_mod_p([{0: field(1)}, {0: field(1)}], [field(0), field(1)], 1, field) is None


def test_solve_mod_p_sets_free_variables_to_zero():
    """Test that the returned solution is supported on pivot columns."""
    field = FiniteField(3)
    solution = solve_mod_p([{0: field(1), 1: field(1)}], [field(2)], 2, field)
    assert solution == [field(2), field(0)]


def test_solve_without_unknowns():
    """Test the empty system."""
    field = FiniteField(3)
    assert solve_mod_p([], [field(0)], 0, field) == []
    assert solve_mod_p([], [field(1)], 0, field) is None


def test_solve_over_extension_field():
    """Test t * x = 1 over F_9."""
    field = FiniteField(3, 2)
    t = field.gen()
    solution = solve_mod_p([{0: t}], [field.one()], 1, field)
    assert solution == [t.inverse()]


def test_rank_and_kernel_mod_p():
    """Test rank and kernel of x + y + z = 0 over F_5."""
    field = FiniteField(5)
    rows = [{0: field(1), 1: field(1), 2: field(1)}]
    assert rank_mod_p(rows, 3, field) == 1
    kernel = kernel_mod_p(rows, 3, field)
    assert len(kernel) == 2
    for vector in kernel:
        assert sum(vector, field.zero()) == field.zero()
    assert len(kernel_mod_p([], 2, field)) == 2


def test_parse_error_location():
    """Test that ParseError appends its location to the message."""
    error = ParseError("unexpected token", line=3, column=7)
    assert str(error) == "unexpected token (line 3, column 7)"
    assert error.detail == "unexpected token"
    assert str(ParseError("empty")) == "empty"


def test_gluing_error_lists_failures():
    """Test that GluingError keeps and prints its failures."""
    error = GluingError("Gluing failed", ["cocycle on 0-1-2", "overlap 0-1"])
    assert error.failures == ["cocycle on 0-1-2", "overlap 0-1"]
    assert str(error) == "Gluing failed: cocycle on 0-1-2; overlap 0-1"
