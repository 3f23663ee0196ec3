import pytest

from origamicert.homology import build_homology
from origamicert.perms import make_family

_MODEL_CACHE = {}


def family_model(genus, m, overrides=None):
    """Cached origami + homology model for a stairs family member."""
    key = (genus, m, overrides)
    if key not in _MODEL_CACHE:
        o = make_family(genus, m, overrides)
        _MODEL_CACHE[key] = (o, build_homology(o))
    return _MODEL_CACHE[key]


@pytest.fixture
def g5_m1():
    return family_model(5, 1)


@pytest.fixture
def g4_m1():
    return family_model(4, 1)


@pytest.fixture
def g6_m2():
    return family_model(6, 2)
