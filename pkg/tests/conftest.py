from fractions import Fraction

import pytest

from zmcgraph.series import (
    SeedCondition,
    SeriesCase,
    series_from_expansion,
    series_from_recursion,
)


def seed(case: str, c) -> SeedCondition:
    return SeedCondition(SeriesCase(case), Fraction(c))


@pytest.fixture(scope="session")
def recursion16():
    """Recursion-built series at order 16 for the three standard parameters."""
    out = {}
    for c in (Fraction(1), Fraction(-1), Fraction(3, 2)):
        case = "iii" if c > 0 else "ii"
        out[c] = series_from_recursion(seed(case, c), 16)
    return out


@pytest.fixture(scope="session")
def expansion16():
    out = {}
    for c in (Fraction(1), Fraction(-1), Fraction(3, 2)):
        case = "iii" if c > 0 else "ii"
        out[c] = series_from_expansion(seed(case, c), 16)
    return out


@pytest.fixture(scope="session")
def series_iii_c1_n8():
    return series_from_recursion(seed("iii", 1), 8)


@pytest.fixture(scope="session")
def series_ii_cm1_n12():
    return series_from_recursion(seed("ii", -1), 12)


@pytest.fixture(scope="session")
def series_i_c1_n8():
    return series_from_expansion(seed("i", 1), 8)
