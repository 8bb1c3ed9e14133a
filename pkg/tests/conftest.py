import pytest

from varsample import Field, PolySystem, RandomSource
from varsample.poly import parse_poly


def system(q, names, *polys):
    """Build a PolySystem from text: ``system(13, "xy", "x^2 + y^2 - 1")``."""
    field = Field(q)
    names = list(names)
    return PolySystem(field, len(names), [parse_poly(t, names, field) for t in polys], names=names)


@pytest.fixture
def rng():
    return RandomSource(12345)
