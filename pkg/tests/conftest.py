import pytest

from quasifold import Field, builtin_document, build_construction, parse_polytope, rational_field


@pytest.fixture(scope="session")
def sqrt2_field():
    return Field(("-2", "0", "1"), (1, 2))


@pytest.fixture(scope="session")
def cos_field():
    # theta = cos(pi/10), the ambient field for the regular pentagon data
    return Field(("5/16", "0", "-5/4", "0", "1"), ("9/10", 1))


@pytest.fixture(scope="session")
def rat_field():
    return rational_field()


def load_builtin(name):
    return parse_polytope(builtin_document(name))


def construct_builtin(name):
    return build_construction(load_builtin(name))
