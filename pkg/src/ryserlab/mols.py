"""Orthogonal Latin squares: finite fields, complete systems, schemas, MacNeish products, planes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .core import LatinSquare, ZeroOneMatrix


class ConstructionError(ValueError):
    pass


def are_orthogonal(A: LatinSquare, B: LatinSquare) -> bool:
    """True iff superimposing A and B yields all n^2 ordered pairs."""
    if A.n != B.n:
        raise ValueError(f"order mismatch: {A.n} vs {B.n}")
    n = A.n
    pairs = {(A.entries[i][j], B.entries[i][j]) for i in range(n) for j in range(n)}
    return len(pairs) == n * n


# ---------------------------------------------------------------------------
# finite fields


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, a) with n = p**a, or None."""
    if n < 2:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return (p, a) if n == 1 else None


def factor_prime_powers(n: int) -> list[int]:
    """Prime-power factors of n in increasing prime order, e.g. 12 -> [4, 3]."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            out.append(q)
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # coefficient lists, lowest degree first; den is monic
    num = num[:]
    while len(num) >= len(den):
        c = num[-1] % p
        shift = len(num) - len(den)
        if c:
            for k, d in enumerate(den):
                num[shift + k] = (num[shift + k] - c * d) % p
        num.pop()
    return num


def _monic_polys(degree: int, p: int):
    """Monic polynomials of a given degree, lexicographic in (c_{d-1}, ..., c_0)."""
    for high_first in product(range(p), repeat=degree):
        yield list(reversed(high_first)) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg/2 divides poly."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not any(_poly_mod(poly, f, p)):
                return False
    return True


def smallest_irreducible(p: int, a: int) -> list[int]:
    return next(f for f in _monic_polys(a, p) if is_irreducible(f, p))


@dataclass(frozen=True)
class FiniteField:
    """GF(p^a) on elements 0..n-1; element x encodes the polynomial with base-p digits of x."""

    p: int
    a: int
    modulus: tuple[int, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.p**self.a

    def neg(self, x: int) -> int:
        return self.add[x].index(0)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.mul[x].index(1)

    def check_axioms(self) -> bool:
        n, add, mul = self.n, self.add, self.mul
        els = range(n)
        for x in els:
            if add[0][x] != x or mul[1][x] != x:
                return False
            if 0 not in add[x] or (x and 1 not in mul[x]):
                return False
            for y in els:
                if add[x][y] != add[y][x] or mul[x][y] != mul[y][x]:
                    return False
                for z in els:
                    if add[add[x][y]][z] != add[x][add[y][z]]:
                        return False
                    if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                        return False
                    if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
                        return False
        return True


def build_field(p: int, a: int = 1, max_size: int = 16) -> FiniteField:
    """GF(p^a) via arithmetic modulo the smallest monic irreducible of degree a."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if a < 1:
        raise ValueError("exponent must be positive")
    n = p**a
    if n > max_size:
        raise ValueError(f"field size {n} exceeds {max_size}")
    modulus = smallest_irreducible(p, a)

    def digits(x):
        return [(x // p**k) % p for k in range(a)]

    def value(coeffs):
        return sum((c % p) * p**k for k, c in enumerate(coeffs))

    add = tuple(tuple(value([u + v for u, v in zip(digits(x), digits(y))]) for y in range(n)) for x in range(n))
    mul = []
    for x in range(n):
        row = []
        for y in range(n):
            dx, dy = digits(x), digits(y)
            prod = [0] * (2 * a - 1)
            for i, u in enumerate(dx):
                for j, v in enumerate(dy):
                    prod[i + j] += u * v
            row.append(value(_poly_mod([c % p for c in prod], modulus, p)))
        mul.append(tuple(row))
    return FiniteField(p, a, tuple(modulus), add, tuple(mul))


# ---------------------------------------------------------------------------
# orthogonal systems and schemas


@dataclass(frozen=True)
class OrthogonalSystem:
    squares: tuple[LatinSquare, ...]

    def __post_init__(self):
        sq = self.squares
        if not sq:
            raise ValueError("empty system")
        n = sq[0].n
        if any(s.n != n for s in sq):
            raise ValueError("squares have different orders")
        for a, b in combinations(range(len(sq)), 2):
            if not are_orthogonal(sq[a], sq[b]):
                raise ValueError(f"squares {a} and {b} are not orthogonal")
        if len(sq) >= 2 and n >= 3 and len(sq) > n - 1:
            raise AssertionError(f"{len(sq)} orthogonal squares of order {n} exceed n - 1")

    @property
    def n(self) -> int:
        return self.squares[0].n

    @property
    def t(self) -> int:
        return len(self.squares)

    def is_complete(self) -> bool:
        return self.t == self.n - 1

    def __len__(self):
        return self.t

    def __iter__(self):
        return iter(self.squares)


@dataclass(frozen=True)
class Schema:
    """n^2 x (t+2) array: every pair of columns contains each ordered pair once."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = self.n
        if len(rows) != n * n:
            raise ValueError(f"schema has {len(rows)} rows, expected {n * n}")
        width = len(rows[0])
        if width < 2 or any(len(r) != width for r in rows):
            raise ValueError("schema rows have inconsistent width")
        if any(not 0 <= x < n for r in rows for x in r):
            raise ValueError("schema entry out of range")
        bad = first_bad_column_pair(n, rows)
        if bad is not None:
            raise ValueError(f"columns {bad} do not contain every ordered pair")

    @property
    def width(self) -> int:
        return len(self.rows[0])

    @property
    def t(self) -> int:
        return self.width - 2


def first_bad_column_pair(n: int, rows) -> tuple[int, int] | None:
    width = len(rows[0])
    for a, b in combinations(range(width), 2):
        if len({(r[a], r[b]) for r in rows}) != n * n:
            return a, b
    return None


def system_to_schema(system: OrthogonalSystem) -> Schema:
    n = system.n
    rows = [(i, j) + tuple(s.entries[i][j] for s in system) for i in range(n) for j in range(n)]
    return Schema(n, tuple(rows))


def schema_to_system(schema: Schema) -> OrthogonalSystem:
    """Read columns 0 and 1 as cell coordinates and each remaining column as a square."""
    n = schema.n
    squares = []
    for col in range(2, schema.width):
        grid = [[-1] * n for _ in range(n)]
        for r in schema.rows:
            grid[r[0]][r[1]] = r[col]
        squares.append(LatinSquare(tuple(tuple(g) for g in grid), n))
    return OrthogonalSystem(tuple(squares))


def complete_system(field: FiniteField) -> OrthogonalSystem:
    """Squares A_e[i][j] = e*i + j for every nonzero field element e."""
    n = field.n
    if n < 3:
        raise ConstructionError("complete systems from fields need n >= 3")
    squares = []
    for e in range(1, n):
        sq = LatinSquare(tuple(tuple(field.add[field.mul[e][i]][j] for j in range(n)) for i in range(n)), n)
        squares.append(sq)
    system = OrthogonalSystem(tuple(squares))
    assert system.is_complete()
    return system


def trivial_schema(width: int) -> Schema:
    """Order-1 schema: one row of zeros."""
    return Schema(1, ((0,) * width,))


def macneish_product(B: Schema, B2: Schema) -> Schema:
    """Direct product of two schemas with equal width.

    Row (r, r2) has entries (x, x2) flattened to x * n2 + x2.
    """
    if B.width != B2.width:
        raise ValueError(f"schema widths differ: {B.width} vs {B2.width}")
    n2 = B2.n
    rows = tuple(tuple(x * n2 + y for x, y in zip(r, r2)) for r in B.rows for r2 in B2.rows)
    return Schema(B.n * n2, rows)


def macneish_t(n: int) -> int:
    return min(q - 1 for q in factor_prime_powers(n)) if n > 1 else 0


def macneish_mols(n: int) -> OrthogonalSystem:
    """min(q - 1) MOLS of order n, q over the prime-power factors of n."""
    if n < 3:
        raise ConstructionError("order must be at least 3")
    t = macneish_t(n)
    if t < 2:
        raise ConstructionError(f"n = {n} is 2 mod 4; the product construction gives fewer than 2 squares")
    schema = trivial_schema(t + 2)
    for q in factor_prime_powers(n):
        p, a = prime_power(q)
        system = complete_system(build_field(p, a, max_size=q))
        part = OrthogonalSystem(system.squares[:t])
        schema = macneish_product(schema, system_to_schema(part))
    return schema_to_system(schema)


# ---------------------------------------------------------------------------
# projective planes


@dataclass(frozen=True)
class PlaneIncidence:
    """Rows are points, columns are lines."""

    n: int
    matrix: ZeroOneMatrix

    @property
    def size(self) -> int:
        return self.n * self.n + self.n + 1


def plane_from_system(system: OrthogonalSystem) -> PlaneIncidence:
    """Incidence matrix of the plane built from a complete system.

    Points are the n^2 schema rows plus n + 1 ideal points (index n^2 + j for
    schema column j).  Line (v, j), indexed j*n + v, holds the schema rows
    with value v in column j and ideal point j; the last line holds the ideal
    points.
    """
    n = system.n
    if system.t != n - 1:
        raise ConstructionError(f"system has {system.t} squares, a plane needs {n - 1}")
    schema = system_to_schema(system)
    m = n * n + n + 1
    rows = [0] * m
    for k, row in enumerate(schema.rows):
        for j, v in enumerate(row):
            rows[k] |= 1 << (j * n + v)
    ideal_line = n * (n + 1)
    for j in range(n + 1):
        point = n * n + j
        for v in range(n):
            rows[point] |= 1 << (j * n + v)
        rows[point] |= 1 << ideal_line
    plane = PlaneIncidence(n, ZeroOneMatrix(m, m, tuple(rows)))
    if not verify_plane(plane.matrix, n):
        raise AssertionError("constructed incidence matrix fails A A^T = nI + J")
    return plane


def verify_plane(A: ZeroOneMatrix, n: int) -> bool:
    """Exact check of A A^T = nI + J and of all row and column sums being n + 1."""
    m = n * n + n + 1
    if A.m != m or A.n != m:
        raise ValueError(f"expected a {m} x {m} matrix for order {n}")
    gram = A.gram()
    for i in range(m):
        for j in range(m):
            if gram[i][j] != (n + 1 if i == j else 1):
                return False
    return all(s == n + 1 for s in A.row_sums()) and all(s == n + 1 for s in A.col_sums())


def system_from_plane(A: ZeroOneMatrix | PlaneIncidence, n: int | None = None) -> OrthogonalSystem:
    """Recover a complete system from a plane incidence matrix (rows points, columns lines).

    Fix line 0.  Its points P_0..P_n are the schema columns; the other n^2
    points Q are the schema rows.  The n lines through each P_j other than
    line 0 are numbered 0..n-1 by ascending index, and entry (Q, P_j) is
    the number of the line joining them.
    """
    if isinstance(A, PlaneIncidence):
        A, n = A.matrix, A.n
    if n is None:
        raise ValueError("order required")
    if not verify_plane(A, n):
        raise ValueError("matrix is not a projective plane incidence matrix")
    m = A.m
    base = 0
    on_base = [p for p in range(m) if (A.rows[p] >> base) & 1]
    off_base = [p for p in range(m) if not (A.rows[p] >> base) & 1]
    numbering = []
    for P in on_base:
        lines = [L for L in range(m) if L != base and (A.rows[P] >> L) & 1]
        numbering.append({L: k for k, L in enumerate(lines)})
    rows = []
    for Q in off_base:
        row = []
        for P, labels in zip(on_base, numbering):
            (L,) = [L for L in labels if (A.rows[Q] >> L) & 1]
            row.append(labels[L])
        rows.append(tuple(row))
    return schema_to_system(Schema(n, tuple(rows)))
