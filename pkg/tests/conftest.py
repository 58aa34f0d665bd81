"""Shared fixtures: fields, golden matrices, and a counting oracle that is
independent of the library's kernel path."""

from collections import Counter
from itertools import combinations

import pytest

from aontkit import MatrixGF, make_field

# Golden strong-2 matrices (encodings).  Over GF(9) = Z_3[x]/(x^2+1) the
# encoding of c0 + c1*x is c0 + 3*c1.
RANGE3_ROWS = [[1, 1], [1, 2]]
RANGE5_ROWS = [[1, 1, 1], [1, 2, 3], [1, 3, 4]]
RANGE7_ROWS = [
    [1, 1, 1, 1, 1],
    [1, 2, 3, 4, 5],
    [1, 3, 4, 5, 6],
    [1, 4, 5, 6, 2],
    [1, 5, 6, 2, 4],
]
RANGE9_ROWS = [
    [1, 1, 1, 1, 1, 1],
    [1, 2, 3, 4, 5, 6],
    [1, 3, 2, 6, 7, 4],
    [1, 4, 8, 5, 6, 7],
    [1, 5, 6, 3, 8, 2],
    [1, 6, 5, 2, 4, 3],
]

# First-two-rows restricted transforms.  The 9x9 one uses the powers of the
# canonical primitive element of GF(9) (x+1, encoding 4) in its second row.
RESTAONT1_ROWS = [
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, 2, 3, 4],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
]
RESTAONT2_ROWS = [
    [0, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 0, 1, 4, 6, 7, 2, 8, 3],
    [0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
]


@pytest.fixture(scope="session")
def gf2():
    return make_field(2)


@pytest.fixture(scope="session")
def gf3():
    return make_field(3)


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def gf5():
    return make_field(5)


@pytest.fixture(scope="session")
def gf7():
    return make_field(7)


@pytest.fixture(scope="session")
def gf8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def gf9():
    return make_field(3, 2, [1, 0, 1])


@pytest.fixture(scope="session")
def range3(gf3):
    return MatrixGF(gf3, RANGE3_ROWS)


@pytest.fixture(scope="session")
def range5(gf5):
    return MatrixGF(gf5, RANGE5_ROWS)


@pytest.fixture(scope="session")
def range7(gf7):
    return MatrixGF(gf7, RANGE7_ROWS)


@pytest.fixture(scope="session")
def range9(gf9):
    return MatrixGF(gf9, RANGE9_ROWS)


@pytest.fixture(scope="session")
def restaont1(gf5):
    return MatrixGF(gf5, RESTAONT1_ROWS)


@pytest.fixture(scope="session")
def restaont2(gf9):
    return MatrixGF(gf9, RESTAONT2_ROWS)


def oracle_unbiased(rows, labels, v):
    """Counter-based unbiasedness check, independent of the numpy/numba path.

    labels are 1-based column labels.
    """
    labels = sorted(labels)
    expected, rem = divmod(len(rows), v ** len(labels))
    if rem:
        return False
    counts = Counter(tuple(int(r[c - 1]) for c in labels) for r in rows)
    if len(counts) != v ** len(labels):
        return False
    return all(c == expected for c in counts.values())


def oracle_range_subsets(s, t1, t2):
    """Column-set family for the range property, built independently."""
    sets = [tuple(range(1, s + 1)), tuple(range(s + 1, 2 * s + 1))]
    for t in range(t1, t2 + 1):
        for inp in combinations(range(1, s + 1), t):
            for out in combinations(range(s + 1, 2 * s + 1), s - t):
                sets.append(inp + out)
    return sets


def oracle_apply_linear(field, matrix_rows, x):
    """Row-vector times matrix with scalar field ops only."""
    s = len(matrix_rows)
    width = len(matrix_rows[0])
    out = []
    for j in range(width):
        acc = 0
        for k in range(s):
            acc = field.add_enc(acc, field.mul_enc(x[k], matrix_rows[k][j]))
        out.append(acc)
    return out
