import pytest

from trusslab import builtin_group


@pytest.fixture
def Z2():
    return builtin_group("Z2")


@pytest.fixture
def Z3():
    return builtin_group("Z3")


@pytest.fixture
def Z4():
    return builtin_group("Z4")


@pytest.fixture
def V4():
    return builtin_group("V4")


@pytest.fixture
def S3():
    return builtin_group("S3")


# a 5x5 Latin square with identity 0 that fails associativity
NONASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]
