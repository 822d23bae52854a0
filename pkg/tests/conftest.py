import mpmath
import pytest


@pytest.fixture(autouse=True)
def high_precision_comparisons():
    # comparisons in tests happen at a precision well above the tolerances used
    with mpmath.workdps(60):
        yield
