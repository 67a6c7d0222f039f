import pytest

from krcrystals.kr import AlgebraSpec, TensorProduct

# Example data, columns listed left to right with entries increasing upward.
EX1_SHAPES = [(2, 2), (3, 1), (1, 3)]
EX1_ELEMENTS = [
    [[[1, 2]], [[1, 3, -3]], [[1], [3], [-1]]],
    [[[1, 2]], [[3, 4, -4]], [[1], [3], [-3]]],
    [[[1, 2], [1, 2]], [[-2]], [[1], [3], [-1]]],
]
EX1_SIGMA = [
    [[[-6, 6], [-6, -5]], [[5, -6, -5]], [[5], [-5], [-4]]],
    [[[-6, 6], [-6, -5]], [[5, -5, -4]], [[3], [-6], [-3]]],
    [[[-6, -5], [-6, -5]], [[5, -6, 6]], [[5], [-5], [-4]]],
]
EX1_HIGH = [[[1, 2], [1, 2]], [[1, 3, 4]], [[2], [3], [5]]]

EX2_LEFT = [[1, 2, 3, 4], [1, 2]]
EX2_RIGHT = [[3, -3, -2], [4], [-4]]
EX2_PHI = [
    [[[1, 2, 3, 4], [1, 2, 3, 4], [1, 2, 3, 4]], [[1, 2, 3], [1, 2, 5], [5, 6, -6]]],
    [[[1, 2, 3, 4], [1, 2, 3, 4], [1, 2, 3, 4]], [[1, 2, 3], [1, 2, 5], [1, 5, 6]]],
]
EX2_R_AT_MAX = [[[1, 2, 3], [1, 2, 3], [1, 2, 3]], [[1, 2, 3, 4], [1, 2, 4, 5], [1, 4, 5, 6]]]
EX2_R = [[[1, 2, 3], [1, 2, 3], [1]], [[4, -4, -3, -2], [4, -1]]]


@pytest.fixture(scope="session")
def d6():
    return AlgebraSpec("D", 6)


@pytest.fixture(scope="session")
def example1(d6):
    return TensorProduct.of(d6, EX1_SHAPES)


@pytest.fixture(scope="session")
def example2(d6):
    return TensorProduct.of(d6, [(4, 3), (3, 3)])


def small_algebras():
    return [AlgebraSpec("D", 4), AlgebraSpec("C", 2), AlgebraSpec("C", 3)]
