import pytest

from charmatch import exprs


@pytest.fixture(scope="session")
def test_functions():
    """The standard suite of smooth expressions used throughout the source."""
    return {
        "exp": exprs.parse("exp(x)"),
        "sin": exprs.parse("sin(x)"),
        "cos": exprs.parse("cos(x)"),
        "arctan": exprs.parse("arctan(x)"),
        "ln_x2p1": exprs.parse("ln(x^2 + 1)"),
        "sqrt_4mx2": exprs.parse("sqrt(4 - x^2)"),
    }


def rel_err(got, want, floor=1e-12):
    scale = max(abs(float(want)), floor)
    return abs(float(got) - float(want)) / scale
