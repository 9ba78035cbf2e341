import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ryserlab import oracles
from ryserlab.core import ExactMatrix, LatinError, LatinRectangle, LatinSquare, ZeroOneMatrix
from ryserlab.matching import (SDR, HallViolator, SetSystem, birkhoff_decompose, completable_rs, complete_rectangle,
                               deficiency_matrix, find_sdr, max_matching, min_line_cover, regular_01_decompose)
from ryserlab.permanents import random_doubly_stochastic

EXAMPLE = [[1, 0, 1, 1], [0, 1, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]]

zero_one = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_example_matching_and_cover():
    A = ZeroOneMatrix.from_lists(EXAMPLE)
    m = max_matching(A)
    assert len(m) == 3
    assert all(EXAMPLE[i][j] for i, j in m.cells)
    cover = min_line_cover(A)
    assert (cover.rows, cover.cols) == ((0,), (0, 1))
    assert cover.covers(A)


def test_zero_and_identity():
    assert len(max_matching(ZeroOneMatrix(3, 3, (0, 0, 0)))) == 0
    assert len(min_line_cover(ZeroOneMatrix(3, 3, (0, 0, 0)))) == 0
    assert len(max_matching(ZeroOneMatrix.identity(5))) == 5
    assert len(min_line_cover(ZeroOneMatrix.identity(5))) == 5


@given(zero_one)
@settings(max_examples=200, deadline=None)
def test_konig_against_exhaustive_oracles(rows):
    A = ZeroOneMatrix.from_lists(rows)
    m = max_matching(A)
    cover = min_line_cover(A)
    assert len({i for i, _ in m.cells}) == len({j for _, j in m.cells}) == len(m)
    assert all(rows[i][j] for i, j in m.cells)
    assert cover.covers(A)
    assert len(m) == len(cover) == oracles.min_cover_size(rows) == oracles.max_matching_size(rows)


def test_sdr_pigeonhole_violator():
    res = find_sdr(SetSystem.of([{0}, {0}]))
    assert isinstance(res, HallViolator)
    assert len(res.union) < len(res.indices)


def test_sdr_full_sets():
    res = find_sdr(SetSystem.of([set(range(4))] * 4))
    assert isinstance(res, SDR) and sorted(res.representatives) == [0, 1, 2, 3]


@given(st.lists(st.sets(st.integers(0, 5), max_size=6), min_size=1, max_size=5))
@settings(max_examples=200, deadline=None)
def test_sdr_exists_iff_oracle_counts_one(sets):
    system = SetSystem.of(sets, 6)
    res = find_sdr(system)
    if oracles.sdr_count(sets):
        assert isinstance(res, SDR)
        reps = res.representatives
        assert len(set(reps)) == len(sets) and all(x in s for x, s in zip(reps, sets))
    else:
        assert isinstance(res, HallViolator)
        assert set().union(*(sets[i] for i in res.indices)) == res.union
        assert len(res.union) < len(res.indices)


def test_birkhoff_two_by_two_coefficients_forced():
    x = Fraction(1, 3)
    dec = birkhoff_decompose(ExactMatrix([[x, 1 - x], [1 - x, x]]))
    assert sorted(dec.terms) == [(Fraction(1, 3), (0, 1)), (Fraction(2, 3), (1, 0))]


def test_birkhoff_permutation_and_uniform():
    assert birkhoff_decompose(ExactMatrix.permutation((2, 0, 1))).terms == ((Fraction(1), (2, 0, 1)),)
    J3 = ExactMatrix.ones(3).scale(Fraction(1, 3))
    dec = birkhoff_decompose(J3)
    assert dec.reconstruct().rows == J3.rows


def test_birkhoff_rejects_non_stochastic():
    with pytest.raises(ValueError):
        birkhoff_decompose(ExactMatrix([[1, 1], [0, 1]]))


@given(st.integers(1, 6), st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_birkhoff_reconstructs_exactly(n, seed):
    A = random_doubly_stochastic(n, random.Random(seed))
    dec = birkhoff_decompose(A)
    assert dec.reconstruct().rows == A.rows
    assert sum(c for c, _ in dec.terms) == 1
    assert all(c > 0 for c, _ in dec.terms)
    assert len(dec) <= n * n - 2 * n + 2


def test_regular_decomposition_of_j3():
    perms = regular_01_decompose(ZeroOneMatrix.ones(3))
    assert len(perms) == 3
    cells = {(i, j) for p in perms for i, j in enumerate(p)}
    assert len(cells) == 9


def test_regular_decomposition_rejects_irregular():
    with pytest.raises(ValueError):
        regular_01_decompose(ZeroOneMatrix.from_lists([[1, 1], [0, 1]]))


def _two_row_rectangles(n):
    for p in permutations(range(n)):
        if all(p[j] != j for j in range(n)):
            yield LatinRectangle((tuple(range(n)), p), n)


def test_every_normalized_two_by_five_rectangle_completes():
    for R in _two_row_rectangles(5):
        D = deficiency_matrix(R)
        assert D.row_sums() == [3] * 5 and D.col_sums() == [3] * 5
        sq = complete_rectangle(R)
        assert sq.entries[:2] == R.entries
        assert oracles.completions(R) > 0


def test_deficiency_sets_of_two_by_four_have_sdr():
    for R in _two_row_rectangles(4):
        D = deficiency_matrix(R)
        res = find_sdr(SetSystem.of([D.row_support(i) for i in range(4)], 4))
        assert isinstance(res, SDR)
        assert len(regular_01_decompose(D)) == 2


def test_complete_small_cases():
    assert complete_rectangle(LatinRectangle(((0, 1),), 2)).entries == ((0, 1), (1, 0))
    sq = complete_rectangle(LatinRectangle(((0, 1, 2),), 3))
    assert isinstance(sq, LatinSquare)
    with pytest.raises(LatinError):
        complete_rectangle(LatinRectangle(((0, 1),), 3))


def test_partial_rectangle_criterion():
    ok, sq = completable_rs(LatinRectangle(((0,),), 2))
    assert ok and sq.entries[0][0] == 0
    R = LatinRectangle(((0, 1), (1, 2)), 3)
    ok, sq = completable_rs(R)
    assert ok
    assert all(sq.entries[i][j] == R.entries[i][j] for i in range(2) for j in range(2))
    # symbol 0 is absent but needs N(0) >= 2 + 2 - 3
    ok, sq = completable_rs(LatinRectangle(((1, 2), (2, 1)), 3))
    assert not ok and sq is None


@given(st.integers(2, 4), st.integers(0, 2**32))
@settings(max_examples=80, deadline=None)
def test_completable_agrees_with_brute_force(n, seed):
    rng = random.Random(seed)
    r, s = rng.randint(1, n), rng.randint(1, n)
    rows = []
    # random r x s Latin rectangle on n symbols
    for _ in range(200):
        rows = []
        for _ in range(r):
            for _ in range(50):
                cand = rng.sample(range(n), s)
                if all(cand[j] != row[j] for row in rows for j in range(s)):
                    rows.append(tuple(cand))
                    break
        if len(rows) == r:
            break
    if len(rows) != r:
        return
    R = LatinRectangle(tuple(rows), n)
    ok, sq = completable_rs(R)
    assert ok == _brute_completable(rows, n)
    if ok:
        assert all(sq.entries[i][j] == rows[i][j] for i in range(r) for j in range(s))


def _brute_completable(rows, n):
    r, s = len(rows), len(rows[0])
    for square in oracles.latin_rectangles(n, n):
        if all(square[i][j] == rows[i][j] for i in range(r) for j in range(s)):
            return True
    return False
