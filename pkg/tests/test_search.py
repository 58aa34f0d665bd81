import numpy as np
import pytest

from aontkit import (
    APPLY_INVERSE,
    MatrixGF,
    all_submatrices_invertible,
    analytic_bounds,
    bush_upper,
    determinant,
    exists_strong,
    from_linear,
    make_field,
    max_strong,
    normalize_scaling,
    passes_range_criterion,
    shrink,
    verify_range_aont,
)
from aontkit.errors import BadOrder, BadSize

from conftest import RANGE5_ROWS


def test_bush_upper():
    assert bush_upper(1, 5) == 5
    assert bush_upper(2, 5) == 6
    assert bush_upper(1, 2) == 2


def test_analytic_bounds_q7():
    b = analytic_bounds(7)
    assert b.upper == 5
    assert b.bush == 7
    assert b.lower == 3
    assert passes_range_criterion(b.lower_witness, 1, 2)


def test_analytic_bounds_q4_tight():
    b = analytic_bounds(4)
    assert b.upper == 3
    assert b.lower == 3  # Vandermonde witness meets the bound
    assert passes_range_criterion(b.lower_witness, 1, 2)


def test_analytic_bounds_q3():
    b = analytic_bounds(3)
    assert b.upper == 2
    assert b.lower_witness is None


def test_analytic_bounds_q8_and_q9():
    assert analytic_bounds(8).upper == 7
    assert analytic_bounds(8).lower == 7
    assert analytic_bounds(9).upper == 7
    assert analytic_bounds(9).lower == 4


def test_analytic_bounds_bad_order():
    with pytest.raises(BadOrder):
        analytic_bounds(2)
    with pytest.raises(BadOrder):
        analytic_bounds(6)


def test_exists_strong_q3_s3_exhausts():
    res = exists_strong(3, 3)
    assert res.outcome == "exhausted_none"
    assert res.candidates_examined <= 16


def test_exists_strong_q5_s4_exhausts():
    res = exists_strong(5, 4)
    assert res.outcome == "exhausted_none"
    assert res.candidates_examined <= 262144


def test_exists_strong_q5_s3_finds_range5_matrix():
    res = exists_strong(5, 3)
    assert res.outcome == "found"
    assert res.witness.data.tolist() == RANGE5_ROWS
    # independent verification of the witness
    assert passes_range_criterion(res.witness, 1, 2)
    assert verify_range_aont(from_linear(res.witness, APPLY_INVERSE), 1, 2).verdict


def test_exists_strong_witnesses_verified():
    for q, s in [(3, 2), (4, 3), (5, 3), (7, 4), (8, 4)]:
        res = exists_strong(q, s)
        assert res.outcome == "found", (q, s)
        w = res.witness
        assert determinant(w) != 0
        assert all_submatrices_invertible(w, 1).holds
        assert all_submatrices_invertible(w, 2).holds
        if q ** s <= 10 ** 6:
            assert verify_range_aont(from_linear(w, APPLY_INVERSE), 1, 2).verdict


def test_exists_strong_normalized_witness():
    res = exists_strong(7, 3)
    w = res.witness
    assert w.data[0].tolist() == [1, 1, 1]
    assert w.data[:, 0].tolist() == [1, 1, 1]


def test_exists_strong_monotone_chain():
    res = exists_strong(5, 3)
    w = res.witness
    # some single row/column removal keeps the full criterion intact
    assert any(passes_range_criterion(shrink(w, r, c), 1, 2)
               for r in range(3) for c in range(3))


def test_exists_strong_cap():
    res = exists_strong(7, 6)  # 6^25 candidates, far over the default cap
    assert res.outcome == "aborted_cap"
    assert res.candidates_examined == 0
    res2 = exists_strong(5, 4, candidate_cap=50)
    assert res2.outcome == "aborted_cap"
    assert res2.candidates_examined == 0


def test_exists_strong_bad_args():
    with pytest.raises(BadSize):
        exists_strong(5, 1, t=2)
    with pytest.raises(BadOrder):
        exists_strong(6, 2)


def test_exists_strong_s1():
    res = exists_strong(5, 1, t=1)
    assert res.outcome == "found"
    assert res.witness.data.tolist() == [[1]]


def test_exists_strong_jobs_deterministic():
    seq = exists_strong(5, 3)
    par = exists_strong(5, 3, jobs=3)
    assert par.outcome == "found"
    assert par.witness == seq.witness
    seq4 = exists_strong(5, 4)
    par4 = exists_strong(5, 4, jobs=4)
    assert par4.outcome == seq4.outcome == "exhausted_none"


def test_exists_strong_t1():
    res = exists_strong(3, 2, t=1)
    assert res.outcome == "found"
    assert res.witness.data.tolist() == [[1, 1], [1, 2]]


def test_exists_strong_t3():
    # generic path: a [1,3] witness needs all 3x3 submatrices invertible too
    res = exists_strong(7, 3, t=3)
    assert res.outcome == "found"
    w = res.witness
    for t in (1, 2, 3):
        assert all_submatrices_invertible(w, t).holds
    assert determinant(w) != 0
    # over GF(3) nothing of size 3 passes even t=2, so t=3 exhausts as well
    assert exists_strong(3, 3, t=3).outcome == "exhausted_none"


def test_normalization_soundness_sampled():
    # scaling rows/columns by nonzero constants never changes the criterion
    f = make_field(5)
    rng = np.random.default_rng(31)
    for _ in range(20):
        m = MatrixGF(f, rng.integers(1, 5, size=(3, 3)))
        norm = normalize_scaling(m)
        for t in (1, 2):
            assert (all_submatrices_invertible(m, t).holds
                    == all_submatrices_invertible(norm, t).holds)
        assert (determinant(m) != 0) == (determinant(norm) != 0)


def test_max_strong_q3():
    report = max_strong(3)
    assert report.value == 2
    assert report.interval == (2, 2)
    sizes = {r.s: r for r in report.searches}
    assert sizes[3].outcome == "exhausted_none"
    assert sizes[3].candidates_examined <= 16


def test_max_strong_q5():
    report = max_strong(5)
    assert report.value == 3
    sizes = {r.s: r for r in report.searches}
    assert sizes[4].outcome == "exhausted_none"
    assert sizes[4].candidates_examined <= 262144
    assert passes_range_criterion(report.witnesses[3], 1, 2)


def test_max_strong_q7_with_external_witness(range7):
    report = max_strong(7, external_witnesses=[range7])
    assert report.value == 5
    assert report.interval == (5, 5)
    # s = 6 exhaustion is out of reach and must not have been attempted
    assert all(r.s <= 5 for r in report.searches)


def test_max_strong_q7_without_witness():
    report = max_strong(7)
    assert report.value is None
    assert report.interval == (4, 5)


def test_max_strong_q9_interval(range9):
    report = max_strong(9, external_witnesses=[range9])
    assert report.value is None
    assert report.interval == (6, 7)
    assert not report.searches  # 8^36 candidates: no search is feasible


def test_max_strong_q4_q8_mersenne():
    r4 = max_strong(4)
    assert r4.value == 3
    r8 = max_strong(8)
    assert r8.value == 7  # witness meets the bound; s=8 space is over cap
    assert r8.interval == (7, 7)


def test_max_strong_rejects_bad_witness(gf7, gf5):
    with pytest.raises(BadOrder):
        max_strong(7, external_witnesses=[MatrixGF(gf5, [[1]])])
    with pytest.raises(BadSize):
        max_strong(7, external_witnesses=[MatrixGF.identity(gf7, 2)])


def test_max_strong_respects_bounds():
    for q in (3, 4, 5, 7, 8, 9):
        report = max_strong(q, candidate_cap=10 ** 6)
        bounds = analytic_bounds(q)
        assert report.lower <= report.upper <= bounds.upper <= bush_upper(1, q)
