import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ryserlab import oracles
from ryserlab.core import (ExactMatrix, LatinError, LatinRectangle, LatinSquare, MatrixFormatError, Path, Transversal,
                           ZeroOneMatrix, from_cube, is_reduced, is_symmetric, iter_reduced_squares, normalization_witness,
                           normalize, parse_matrix, parse_square, parse_squares, parse_zero_one, permute_square,
                           random_isotope, random_latin_square, serialize, to_cube)
from ryserlab.data import BOXED_CELLS, PARKER_TEXT, parker, parker_swapped

squares = st.builds(lambda n, seed: random_latin_square(n, random.Random(seed)),
                    st.integers(1, 8), st.integers(0, 2**32))


def test_rejects_repeated_symbol_in_row():
    with pytest.raises(LatinError):
        LatinSquare(((0, 0), (1, 1)), 2)


def test_rejects_repeated_symbol_in_column():
    with pytest.raises(LatinError):
        LatinRectangle(((0, 1), (0, 2)), 3)


def test_parse_letters_keeps_token_names():
    sq = parse_square("a b c\nb c a\nc a b\n")
    assert isinstance(sq, LatinSquare)
    assert sq.tokens[:3] == ("a", "b", "c")
    assert serialize(sq) == "a b c\nb c a\nc a b\n"


def test_parse_rectangle_with_explicit_order():
    R = parse_square("0 1\n1 2\n", order=3)
    assert isinstance(R, LatinRectangle) and not isinstance(R, LatinSquare)
    assert R.order == 3 and R.rows == 2 and R.cols == 2


def test_parse_ragged_rows():
    with pytest.raises(LatinError):
        parse_square("0 1\n1\n")


@given(squares)
@settings(max_examples=60, deadline=None)
def test_serialize_round_trip(sq):
    again = parse_square(serialize(sq))
    assert [[again.tokens[x] for x in row] for row in again.entries] == [[str(x) for x in row] for row in sq.entries]


@given(squares)
@settings(max_examples=60, deadline=None)
def test_cube_round_trip(sq):
    cube = to_cube(sq)
    assert len(cube.ones()) == sq.n ** 2
    assert from_cube(cube).entries == sq.entries


@given(squares, st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_normalize_is_reduced_and_isotopic(sq, seed):
    red = normalize(sq)
    assert is_reduced(red)
    cols, rows = normalization_witness(sq)
    assert permute_square(sq, rows, cols).entries == red.entries
    iso = random_isotope(sq, random.Random(seed))
    assert is_reduced(normalize(iso))


def test_normalize_idempotent_on_reduced():
    for sq in iter_reduced_squares(4):
        assert normalize(sq).entries == sq.entries


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)])
def test_reduced_square_generator_matches_brute_force(n, expected):
    got = list(iter_reduced_squares(n))
    assert len(got) == expected == oracles.count_reduced_squares(n)
    assert all(is_reduced(s) for s in got)
    assert [s.entries for s in got] == sorted(s.entries for s in got)


def test_cyclic_is_symmetric():
    assert is_symmetric(LatinSquare.cyclic(5))


def test_path_and_transversal():
    sq = LatinSquare.cyclic(3)
    p = Path.from_permutation((0, 2, 1))
    assert p.permutation() == (0, 2, 1)
    t = Transversal.on(sq, (0, 1, 2))
    assert t.symbols == (0, 2, 1)
    with pytest.raises(ValueError):
        Transversal.on(sq, (0, 2, 1))
    with pytest.raises(ValueError):
        Path(((0, 0), (1, 0)))


def test_zero_one_parsing_formats():
    a = parse_zero_one("101\n010\n")
    b = parse_zero_one("2 3\n1 0 1\n0 1 0\n")
    assert a == b
    assert a.row_sums() == [2, 1] and a.col_sums() == [1, 1, 1]
    with pytest.raises(MatrixFormatError):
        parse_zero_one("102\n")


def test_matrix_parsing_and_exact_arithmetic():
    A = parse_matrix("2 2\n1/2 1/2\n1/2 1/2\n")
    assert A.is_doubly_stochastic()
    assert (A @ A).rows == A.rows
    assert serialize(A) == "2 2\n1/2 1/2\n1/2 1/2\n"
    with pytest.raises(MatrixFormatError):
        parse_matrix("2 2\n1 2\n")
    with pytest.raises(MatrixFormatError):
        parse_matrix("1 1\n1/0\n")


def test_exact_matrix_identities():
    I = ExactMatrix.identity(3)
    J = ExactMatrix.ones(3)
    assert (J - I + I).rows == J.rows
    assert J.scale(Fraction(1, 3)).is_doubly_stochastic()
    assert ZeroOneMatrix.identity(3).to_exact().rows == I.rows


def test_parse_squares_blank_separated():
    text = serialize([LatinSquare.cyclic(3), LatinSquare.cyclic(3)])
    assert len(parse_squares(text)) == 2


def test_parker_square_transcription():
    sq = parker()
    assert sq.n == 10
    assert PARKER_TEXT.splitlines()[0].split() == [str(x) for x in sq.entries[0]]


def test_swapped_variant_changes_only_boxed_cells():
    a, b = parker(), parker_swapped()
    changed = {(i, j) for i in range(10) for j in range(10) if a.entries[i][j] != b.entries[i][j]}
    assert changed == set(BOXED_CELLS)
    swap = {0: 5, 5: 0, 2: 7, 7: 2}
    assert all(b.entries[i][j] == swap[a.entries[i][j]] for i, j in BOXED_CELLS)
