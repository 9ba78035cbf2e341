import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ryserlab import oracles
from ryserlab.core import LatinSquare, iter_reduced_squares, random_latin_square
from ryserlab.data import parker, parker_swapped
from ryserlab.mols import are_orthogonal
from ryserlab.transversals import (MAX_ORDER, OrderTooLarge, check_parity_conjecture, count_decompositions,
                                   count_decompositions_fast, count_transversals, enumerate_transversals,
                                   find_decomposition, find_transversal, iter_decompositions, mate_from_decomposition,
                                   naive_transversal_count, symmetric_diagonal_check)

squares = st.builds(lambda n, seed: random_latin_square(n, random.Random(seed)),
                    st.integers(1, 7), st.integers(0, 2**32))


@given(squares)
@settings(max_examples=80, deadline=None)
def test_count_matches_permutation_scan(sq):
    k = count_transversals(sq)
    assert k == naive_transversal_count(sq) == oracles.transversal_count(sq)
    ts = enumerate_transversals(sq)
    assert len(ts) == k
    assert len({t.cells for t in ts}) == k
    perms = [t.permutation() for t in ts]
    assert perms == sorted(perms)


def test_parker_counts():
    assert count_transversals(parker()) == 5504
    assert count_transversals(parker_swapped()) == 0
    assert find_transversal(parker_swapped()) is None


def test_parallel_count_equals_serial():
    sq = parker()
    assert count_transversals(sq, workers=2) == count_transversals(sq)
    a = enumerate_transversals(LatinSquare.cyclic(7), workers=2)
    b = enumerate_transversals(LatinSquare.cyclic(7))
    assert a.transversals == b.transversals


def test_even_cyclic_has_none():
    for n in (2, 4, 6, 8):
        assert count_transversals(LatinSquare.cyclic(n)) == 0


def test_order_limit():
    with pytest.raises(OrderTooLarge):
        count_transversals(LatinSquare.cyclic(MAX_ORDER + 1))


def test_parity_orders_four_and_five():
    assert all(check_parity_conjecture(sq).consistent for sq in iter_reduced_squares(4))
    verdicts = [check_parity_conjecture(sq) for sq in iter_reduced_squares(5)]
    assert all(v.count > 0 for v in verdicts)


def test_parity_counterexample_at_order_seven():
    rng = random.Random(1)
    for _ in range(500):
        v = check_parity_conjecture(random_latin_square(7, rng))
        if v.verdict == "counterexample":
            assert v.count % 2 == 0
            return
    pytest.fail("no even count among 500 random order-7 squares")


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
def test_symmetric_odd_diagonal(n):
    t = symmetric_diagonal_check(LatinSquare.cyclic(n))
    assert t.permutation() == tuple(range(n))


def test_symmetric_diagonal_rejects_even():
    with pytest.raises(ValueError):
        symmetric_diagonal_check(LatinSquare.cyclic(4))


def test_order_three_mate():
    sq = LatinSquare.cyclic(3)
    dec = find_decomposition(sq)
    mate = mate_from_decomposition(sq, dec)
    assert mate.entries == ((0, 1, 2), (2, 0, 1), (1, 2, 0))
    assert are_orthogonal(sq, mate)


@given(st.integers(1, 5), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_decomposition_exists_iff_mate_exists(n, seed):
    sq = random_latin_square(n, random.Random(seed))
    dec = find_decomposition(sq)
    if n <= 4:
        assert (dec is not None) == oracles.has_orthogonal_mate(sq)
    if dec is not None:
        assert are_orthogonal(sq, mate_from_decomposition(sq, dec))


@given(st.integers(1, 7), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_compiled_decomposition_count_matches_python(n, seed):
    sq = random_latin_square(n, random.Random(seed))
    count, finished = count_decompositions_fast(sq)
    assert finished
    assert count == count_decompositions(sq) == sum(1 for _ in iter_decompositions(sq))


def test_decomposition_counts_known():
    assert count_decompositions(LatinSquare.cyclic(3)) == 1
    assert count_decompositions_fast(LatinSquare.cyclic(5)) == (count_decompositions(LatinSquare.cyclic(5)), True)
    assert count_decompositions_fast(LatinSquare.cyclic(6)) == (0, True)


def test_decomposition_limit():
    count, finished = count_decompositions_fast(parker(), 500)
    assert count >= 500 and not finished
    assert count_decompositions(parker(), limit=50) == 50


def test_no_reduced_order_six_square_has_mate_sample():
    for k, sq in enumerate(iter_reduced_squares(6)):
        if k % 97 == 0:
            assert find_decomposition(sq) is None
