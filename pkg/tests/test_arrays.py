from itertools import combinations

import numpy as np
import pytest

from aontkit import (
    APPLY_FORWARD,
    APPLY_INVERSE,
    GFArray,
    MatrixGF,
    TransformArray,
    cauchy,
    from_linear,
    invert,
    is_unbiased,
    oa_rs,
    swap_halves,
    verify_oa,
    verify_range_aont,
    verify_rec_aont,
    verify_restricted_aont,
    verify_soa,
)
from aontkit.arrays import all_input_tuples
from aontkit.errors import (
    BadColumnSet,
    BadRestriction,
    BadSize,
    NotBijective,
    NotSquareTransform,
    SingularMatrix,
    SizeCapExceeded,
)

from conftest import oracle_apply_linear, oracle_range_subsets, oracle_unbiased


def test_all_input_tuples():
    xs = all_input_tuples(3, 2)
    assert xs.tolist() == [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2],
                           [2, 0], [2, 1], [2, 2]]


def test_from_linear_identity_forward(gf2):
    a = from_linear(MatrixGF.identity(gf2, 2), APPLY_FORWARD)
    assert a.data.tolist() == [[0, 0, 0, 0], [0, 1, 0, 1], [1, 0, 1, 0], [1, 1, 1, 1]]


def test_from_linear_inverse_matches_scalar_oracle(gf3, range3):
    a = from_linear(range3, APPLY_INVERSE)
    assert a.data.shape == (9, 4)
    inv_rows = invert(range3).row_lists()
    for row in a.data.tolist():
        x, y = row[:2], row[2:]
        assert oracle_apply_linear(gf3, inv_rows, x) == y


def test_from_linear_forward_matches_scalar_oracle(gf7):
    n = cauchy(gf7, [0, 1], [2, 3, 4])
    a = from_linear(n, APPLY_FORWARD)
    assert a.data.shape == (49, 5)
    rows = n.row_lists()
    for row in a.data.tolist():
        assert oracle_apply_linear(gf7, rows, row[:2]) == row[2:]


def test_from_linear_errors(gf3, gf5):
    with pytest.raises(SingularMatrix):
        from_linear(MatrixGF(gf5, [[1, 2], [2, 4]]), APPLY_INVERSE)
    with pytest.raises(BadSize):
        from_linear(MatrixGF(gf5, [[1], [2]]), APPLY_FORWARD)
    with pytest.raises(SizeCapExceeded):
        from_linear(MatrixGF.identity(gf3, 2), APPLY_INVERSE, cell_cap=10)
    with pytest.raises(ValueError):
        from_linear(MatrixGF.identity(gf3, 2), "sideways")


def test_is_unbiased(gf2, gf3, range3):
    a = from_linear(range3, APPLY_INVERSE)
    assert is_unbiased(a, range(1, 3))  # structural
    assert is_unbiased(a, {1, 3})
    ident = from_linear(MatrixGF.identity(gf2, 2), APPLY_INVERSE)
    assert not is_unbiased(ident, {1, 3})
    with pytest.raises(BadColumnSet):
        is_unbiased(a, set())
    with pytest.raises(BadColumnSet):
        is_unbiased(a, {0, 1})
    with pytest.raises(BadColumnSet):
        is_unbiased(a, {1, 5})
    # oversize projection cannot be unbiased (9 rows, 3^3 tuples)
    assert not is_unbiased(a, {1, 2, 3})


def test_is_unbiased_matches_oracle(gf3):
    a = oa_rs(gf3, 2, 4)
    rows = a.data.tolist()
    for d in range(1, 3):
        for labels in combinations(range(1, 5), d):
            assert is_unbiased(a, labels) == oracle_unbiased(rows, labels, 3)


def test_verify_oa(gf3):
    a = oa_rs(gf3, 2, 4)
    assert verify_oa(a, 2).verdict
    r = verify_oa(a, 3)
    assert not r.verdict
    assert r.failing_column_set == (1, 2, 3)
    with pytest.raises(BadSize):
        verify_oa(a, 5)
    single = GFArray(gf3, 1, 0, [[0], [1], [2]])
    assert verify_oa(single, 1).verdict


def test_verify_oa_against_oracle(gf3):
    a = oa_rs(gf3, 2, 4)
    rows = a.data.tolist()
    expected = all(oracle_unbiased(rows, labels, 3)
                   for labels in combinations(range(1, 5), 2))
    assert verify_oa(a, 2).verdict == expected


def test_verify_range_golden(range3, range5):
    a3 = from_linear(range3, APPLY_INVERSE)
    assert verify_range_aont(a3, 1, 2).verdict
    a5 = from_linear(range5, APPLY_INVERSE)
    assert verify_range_aont(a5, 1, 2).verdict


def test_verify_range_against_oracle(gf3):
    rng = np.random.default_rng(21)
    for _ in range(10):
        while True:
            m = MatrixGF(gf3, rng.integers(0, 3, size=(2, 2)))
            try:
                a = from_linear(m, APPLY_INVERSE)
                break
            except SingularMatrix:
                continue
        rows = a.data.tolist()
        for t1 in (1, 2):
            for t2 in range(t1, 3):
                want = all(oracle_unbiased(rows, d, 3)
                           for d in oracle_range_subsets(2, t1, t2))
                assert verify_range_aont(a, t1, t2).verdict == want


def test_verify_range_failure_witness(gf3):
    a = from_linear(MatrixGF.identity(gf3, 2), APPLY_INVERSE)
    r = verify_range_aont(a, 1, 1)
    assert not r.verdict
    assert r.failing_column_set == (1, 3)
    assert r.failing_tuple == (0, 0)
    assert (r.observed, r.expected) == (3, 1)


def test_verify_range_bad_sizes(gf3, range3):
    a = from_linear(range3, APPLY_INVERSE)
    with pytest.raises(BadSize):
        verify_range_aont(a, 0, 1)
    with pytest.raises(BadSize):
        verify_range_aont(a, 2, 1)
    with pytest.raises(BadSize):
        verify_range_aont(a, 1, 3)
    rect = from_linear(MatrixGF(gf3, [[1, 1, 1], [1, 2, 0]]), APPLY_FORWARD)
    with pytest.raises(BadSize):
        verify_range_aont(rect, 1, 1)


def test_verify_rec(gf3, gf7, range3):
    n = cauchy(gf7, [0, 1], [2, 3, 4])
    a = from_linear(n, APPLY_FORWARD)
    assert verify_rec_aont(a, 1).verdict
    # forward square matrix: t = s degenerates to plain transform semantics
    fwd = from_linear(range3, APPLY_FORWARD)
    assert verify_rec_aont(fwd, 2).verdict
    assert verify_rec_aont(fwd, 2).verdict == verify_range_aont(fwd, 2, 2).verdict
    # duplicated output columns break an s-subset of outputs
    dup = from_linear(MatrixGF(gf3, [[1, 1], [2, 2]]), APPLY_FORWARD)
    r = verify_rec_aont(dup, 1)
    assert not r.verdict
    assert all(c > 2 for c in r.failing_column_set)
    with pytest.raises(BadSize):
        verify_rec_aont(a, 3)


def test_verify_restricted(gf3, restaont1):
    a = from_linear(restaont1, APPLY_INVERSE)
    assert verify_restricted_aont(a, {1, 2}, 2).verdict
    with pytest.raises(BadRestriction):
        verify_restricted_aont(a, {1, 2}, 3)
    with pytest.raises(BadRestriction):
        verify_restricted_aont(a, {0, 2}, 1)
    with pytest.raises(BadRestriction):
        verify_restricted_aont(a, set(), 1)
    ident = from_linear(MatrixGF.identity(gf3, 2), APPLY_INVERSE)
    assert not verify_restricted_aont(ident, {1}, 1).verdict


def test_verify_restricted_subset_family(gf5, restaont1):
    # the checked family is exactly: inputs, outputs, and I + (outputs minus
    # a t-subset of the secure output labels)
    a = from_linear(restaont1, APPLY_INVERSE)
    report = verify_restricted_aont(a, {1, 2}, 2)
    assert report.verdict
    rows = a.data.tolist()
    for inp in combinations(range(1, 7), 2):
        assert oracle_unbiased(rows, inp + (9, 10, 11, 12), 5)


def test_verify_soa(gf2, range5):
    a = from_linear(range5, APPLY_INVERSE)
    assert verify_soa(a, 2, 1, 3, 3).verdict
    r = verify_soa(a, 3, 3, 3, 3)
    assert not r.verdict
    assert "not divisible" in r.notes[0]
    # one column per side listing all pairs once
    pairs = GFArray(gf2, 2, 0, [[0, 0], [0, 1], [1, 0], [1, 1]])
    assert verify_soa(pairs, 1, 1, 1, 1).verdict
    with pytest.raises(BadSize):
        verify_soa(a, 1, 1, 2, 3)


def test_swap_halves(gf3, range3):
    a = from_linear(range3, APPLY_INVERSE)
    sw = swap_halves(a)
    assert np.array_equal(swap_halves(sw).data, a.data)
    assert verify_range_aont(sw, 1, 1).verdict
    rect = from_linear(MatrixGF(gf3, [[1, 1, 1], [1, 2, 0]]), APPLY_FORWARD)
    with pytest.raises(NotSquareTransform):
        swap_halves(rect)
    # swapping a non-bijective transform is rejected
    const = TransformArray(gf3, 1, 1, [[0, 1], [1, 1], [2, 1]])
    with pytest.raises(NotBijective):
        swap_halves(const)


def test_inverse_duality_sampled(gf3):
    rng = np.random.default_rng(22)
    for _ in range(20):
        m = MatrixGF(gf3, rng.integers(0, 3, size=(3, 3)))
        try:
            a = from_linear(m, APPLY_INVERSE)
        except SingularMatrix:
            continue
        sw = swap_halves(a)
        for t in (1, 2):
            assert (verify_range_aont(a, t, t).verdict
                    == verify_range_aont(sw, 3 - t, 3 - t).verdict)


def test_range_monotonicity(range5):
    a = from_linear(range5, APPLY_INVERSE)
    assert verify_range_aont(a, 1, 2).verdict
    for t1 in (1, 2):
        for t2 in range(t1, 3):
            if t2 <= 2:
                assert verify_range_aont(a, t1, t2).verdict


def test_subset_closure(gf3):
    a = oa_rs(gf3, 2, 4)
    for d in combinations(range(1, 5), 2):
        if is_unbiased(a, d):
            for sub in combinations(d, 1):
                assert is_unbiased(a, sub)


def test_transform_array_bijection_check(gf3):
    data = [[0, 0], [0, 1], [1, 0]]
    with pytest.raises(NotBijective):
        TransformArray(gf3, 1, 1, [[0, 0], [0, 1], [1, 0]])
    raw = GFArray(gf3, 1, 1, data)
    with pytest.raises(NotBijective):
        raw.as_transform()
    ok = GFArray(gf3, 1, 1, [[0, 0], [1, 1], [2, 2]])
    assert isinstance(ok.as_transform(), TransformArray)


def test_gfarray_validation(gf3):
    with pytest.raises(BadSize):
        GFArray(gf3, 2, 1, [[0, 0, 0]])  # wrong row count
    with pytest.raises(ValueError):
        GFArray(gf3, 1, 0, [[0], [1], [3]])  # out of alphabet


def test_plain_transform_need_not_be_strong(gf3):
    # circulant with a zero diagonal: every 2x2 submatrix is invertible but
    # the zero entries break the t=1 property, so it is a 2-transform only
    m = MatrixGF(gf3, [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    from aontkit import all_submatrices_invertible, determinant
    assert determinant(m) != 0
    assert all_submatrices_invertible(m, 2).holds
    assert not all_submatrices_invertible(m, 1).holds
    a = from_linear(m, APPLY_INVERSE)
    assert verify_range_aont(a, 2, 2).verdict
    assert not verify_range_aont(a, 1, 1).verdict
    assert not verify_range_aont(a, 1, 2).verdict


def test_criterion_equivalence_gf2_exhaustive(gf2):
    # every invertible matrix over GF(2), sizes 2 and 3
    from aontkit import all_submatrices_invertible
    for size in (2, 3):
        count = 0
        for bits in np.ndindex(*([2] * (size * size))):
            m = MatrixGF(gf2, np.array(bits).reshape(size, size))
            try:
                arr = from_linear(m, APPLY_INVERSE)
            except SingularMatrix:
                continue
            count += 1
            for t in range(1, size + 1):
                assert (verify_range_aont(arr, t, t).verdict
                        == all_submatrices_invertible(m, t).holds)
        assert count == (6 if size == 2 else 168)  # |GL(size, 2)|


def test_inverse_duality_exhaustive_2x2_small_fields():
    from aontkit import make_field_of_order
    sizes = {2: 6, 3: 48, 4: 180, 5: 480}  # |GL(2, v)|
    for v, expect in sizes.items():
        f = make_field_of_order(v)
        count = 0
        for entries in np.ndindex(v, v, v, v):
            m = MatrixGF(f, np.array(entries).reshape(2, 2))
            try:
                arr = from_linear(m, APPLY_INVERSE)
            except SingularMatrix:
                continue
            count += 1
            swapped = swap_halves(arr)
            assert (verify_range_aont(arr, 1, 1).verdict
                    == verify_range_aont(swapped, 1, 1).verdict)
        assert count == expect


def test_rec_implies_soa(gf5):
    # a rectangular transform is a split orthogonal array on (t, s-t)
    rng = np.random.default_rng(23)
    hits = 0
    for _ in range(40):
        n = MatrixGF(gf5, rng.integers(0, 5, size=(2, 3)))
        arr = from_linear(n, APPLY_FORWARD)
        for t in (1, 2):
            if verify_rec_aont(arr, t).verdict:
                hits += 1
                assert verify_soa(arr, t, 2 - t, 2, 3).verdict
    assert hits  # the sample must actually exercise the implication
