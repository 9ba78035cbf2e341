from itertools import combinations, product

import pytest

from ryserlab.core import LatinSquare, ZeroOneMatrix
from ryserlab.mols import (ConstructionError, OrthogonalSystem, Schema, are_orthogonal, build_field, complete_system,
                           factor_prime_powers, first_bad_column_pair, is_irreducible, macneish_mols, macneish_product,
                           macneish_t, plane_from_system, prime_power, schema_to_system, smallest_irreducible,
                           system_from_plane, system_to_schema, trivial_schema, verify_plane)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


def _system(n):
    if n == 2:
        return OrthogonalSystem((LatinSquare.cyclic(2),))
    return complete_system(build_field(*prime_power(n)))


def _has_root(poly, p):
    return any(sum(c * x**k for k, c in enumerate(poly)) % p == 0 for x in range(p))


@pytest.mark.parametrize("p, a", FIELDS)
def test_field_axioms(p, a):
    F = build_field(p, a)
    assert F.n == p**a
    assert F.check_axioms()
    assert all(F.mul[x][F.inv(x)] == 1 for x in range(1, F.n))


@pytest.mark.parametrize("p, a, modulus", [(2, 2, (1, 1, 1)), (2, 3, (1, 1, 0, 1)), (3, 2, (1, 0, 1)),
                                           (2, 4, (1, 1, 0, 0, 1))])
def test_smallest_irreducible(p, a, modulus):
    assert tuple(smallest_irreducible(p, a)) == modulus


def test_irreducible_against_root_test_in_low_degree():
    for p in (2, 3, 5):
        for d in (2, 3):
            for coeffs in product(range(p), repeat=d):
                poly = list(coeffs) + [1]
                assert is_irreducible(poly, p) == (not _has_root(poly, p))


def test_field_errors():
    with pytest.raises(ValueError):
        build_field(4)
    with pytest.raises(ValueError):
        build_field(17)


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 9])
def test_complete_systems(n):
    S = _system(n)
    assert S.t == n - 1 and S.is_complete()
    for a, b in combinations(S.squares, 2):
        assert are_orthogonal(a, b)
    schema = system_to_schema(S)
    assert first_bad_column_pair(n, schema.rows) is None
    assert [s.entries for s in schema_to_system(schema).squares] == [s.entries for s in S.squares]


def test_order_three_pair_matches_display_up_to_relabeling():
    S = _system(3)
    assert S.squares[0].entries == ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    assert S.squares[1].entries == ((0, 1, 2), (2, 0, 1), (1, 2, 0))


def test_complete_system_needs_order_three():
    with pytest.raises(ConstructionError):
        complete_system(build_field(2))


def test_system_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        OrthogonalSystem((LatinSquare.cyclic(3), LatinSquare.cyclic(3)))


def test_schema_rejects_bad_pair():
    with pytest.raises(ValueError):
        Schema(2, ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)))


def test_prime_power_factoring():
    assert factor_prime_powers(12) == [4, 3]
    assert factor_prime_powers(360) == [8, 9, 5]
    assert prime_power(9) == (3, 2) and prime_power(12) is None and prime_power(1) is None


@pytest.mark.parametrize("n, t", [(12, 2), (9, 8), (20, 3), (15, 2), (21, 2)])
def test_macneish(n, t):
    assert macneish_t(n) == t
    S = macneish_mols(n)
    assert S.t == t and S.n == n
    assert first_bad_column_pair(n, system_to_schema(S).rows) is None


@pytest.mark.parametrize("n", [2, 6, 10, 1])
def test_macneish_excluded_orders(n):
    with pytest.raises(ConstructionError):
        macneish_mols(n)


def test_macneish_product_with_trivial_schema_is_relabel():
    B = system_to_schema(_system(3))
    P = macneish_product(B, trivial_schema(B.width))
    assert P.rows == B.rows


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 8, 9])
def test_plane_round_trip(n):
    plane = plane_from_system(_system(n))
    A = plane.matrix
    m = n * n + n + 1
    assert A.m == A.n == m
    assert verify_plane(A, n)
    gram = A.gram()
    assert all(gram[i][j] == (n + 1 if i == j else 1) for i in range(m) for j in range(m))
    back = system_from_plane(plane)
    assert back.is_complete() if n > 2 else back.t == 1
    assert verify_plane(plane_from_system(back).matrix, n)


def test_fano_plane_dimensions():
    A = plane_from_system(_system(2)).matrix
    assert A.row_sums() == [3] * 7


def test_verify_plane_rejects_perturbation():
    A = plane_from_system(_system(3)).matrix
    rows = list(A.rows)
    rows[0] ^= 1 << 5
    assert not verify_plane(ZeroOneMatrix(A.m, A.n, tuple(rows)), 3)
