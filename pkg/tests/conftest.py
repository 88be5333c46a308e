"""
Shared fixtures: small rings and the standard glued schemes, built once per session.
"""
import pytest

from algebra.fp_algebra import localize, witt_algebra
from cech.examples import genus_one, projective_line
from coefficients.witt import WittRing
from config.settings import Settings


@pytest.fixture
def w3():
    return WittRing.of(3)


@pytest.fixture
def line():
    return witt_algebra(3, ["x"], name="A1")


@pytest.fixture
def units(line):
    algebra, _ = localize(line, "x", name="Gm", inverse_name="x_inv")
    return algebra


@pytest.fixture(scope="session")
def p1():
    return projective_line(3)


@pytest.fixture(scope="session")
def curve():
    return genus_one()


@pytest.fixture
def settings():
    return Settings(log_file=None, axiom_samples=20)
