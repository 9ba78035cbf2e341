"""Bipartite matching and everything built on it.

Maximum matchings use augmenting paths with a fixed row scan order, so the
result is deterministic.  Minimum line covers come from the alternating
reachability construction, Hall violators from the same search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ExactMatrix, LatinError, LatinRectangle, LatinSquare, ZeroOneMatrix


@dataclass(frozen=True)
class Matching:
    cells: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True)
class LineCover:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __len__(self):
        return len(self.rows) + len(self.cols)

    def covers(self, A: ZeroOneMatrix) -> bool:
        rows = set(self.rows)
        colmask = sum(1 << j for j in self.cols)
        return all(i in rows or (r & ~colmask) == 0 for i, r in enumerate(A.rows))


@dataclass(frozen=True)
class SetSystem:
    sets: tuple[frozenset[int], ...]
    ground: int

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        for s in self.sets:
            if any(not 0 <= x < self.ground for x in s):
                raise ValueError("set element outside the ground set")

    @classmethod
    def of(cls, sets, ground: int | None = None) -> "SetSystem":
        sets = [frozenset(s) for s in sets]
        if ground is None:
            ground = max((max(s) for s in sets if s), default=-1) + 1
        return cls(tuple(sets), ground)

    def incidence(self) -> ZeroOneMatrix:
        return ZeroOneMatrix(len(self.sets), self.ground, tuple(sum(1 << x for x in s) for s in self.sets))


@dataclass(frozen=True)
class SDR:
    representatives: tuple[int, ...]


@dataclass(frozen=True)
class HallViolator:
    """Indices of sets whose union is smaller than their number."""

    indices: tuple[int, ...]
    union: frozenset[int]


@dataclass(frozen=True)
class BirkhoffDecomposition:
    terms: tuple[tuple[Fraction, tuple[int, ...]], ...]

    def __len__(self):
        return len(self.terms)

    def reconstruct(self) -> ExactMatrix:
        n = len(self.terms[0][1])
        acc = [[Fraction(0)] * n for _ in range(n)]
        for c, perm in self.terms:
            for i, j in enumerate(perm):
                acc[i][j] += c
        return ExactMatrix(acc)


def _augment(adj: Sequence[Sequence[int]], ncols: int):
    """Kuhn's algorithm.  Returns (row -> col or -1, col -> row or -1)."""
    m = len(adj)
    match_row = [-1] * m
    match_col = [-1] * ncols

    def try_row(i, seen):
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_col[j] < 0 or try_row(match_col[j], seen):
                match_row[i] = j
                match_col[j] = i
                return True
        return False

    for i in range(m):
        try_row(i, [False] * ncols)
    return match_row, match_col


def _alternating_reach(adj, match_row, match_col, starts):
    """Rows and columns reachable from ``starts`` by alternating paths."""
    rows = set(starts)
    cols: set[int] = set()
    stack = list(starts)
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j in cols:
                continue
            cols.add(j)
            k = match_col[j]
            if k >= 0 and k not in rows:
                rows.add(k)
                stack.append(k)
    return rows, cols


def _adjacency(A: ZeroOneMatrix) -> list[list[int]]:
    return [A.row_support(i) for i in range(A.m)]


def max_matching(A: ZeroOneMatrix) -> Matching:
    """Maximum set of ones, no two on a common line."""
    match_row, _ = _augment(_adjacency(A), A.n)
    return Matching(tuple((i, j) for i, j in enumerate(match_row) if j >= 0))


def min_line_cover(A: ZeroOneMatrix) -> LineCover:
    """Minimum set of rows and columns containing every 1 (König's construction).

    Start from the columns a maximum matching leaves free and follow
    alternating paths; the cover is the reached rows plus the unreached
    columns.
    """
    adj = _adjacency(A)
    match_row, match_col = _augment(adj, A.n)
    col_adj = [[i for i in range(A.m) if (A.rows[i] >> j) & 1] for j in range(A.n)]
    free = [j for j in range(A.n) if match_col[j] < 0]
    zcols, zrows = _alternating_reach(col_adj, match_col, match_row, free)
    cover = LineCover(tuple(sorted(zrows)), tuple(j for j in range(A.n) if j not in zcols))
    assert len(cover) == sum(1 for j in match_row if j >= 0)
    assert cover.covers(A)
    return cover


def find_sdr(system: SetSystem) -> SDR | HallViolator:
    adj = [sorted(s) for s in system.sets]
    match_row, match_col = _augment(adj, system.ground)
    unmatched = [i for i, j in enumerate(match_row) if j < 0]
    if not unmatched:
        return SDR(tuple(match_row))
    rows, cols = _alternating_reach(adj, match_row, match_col, [unmatched[0]])
    union = frozenset().union(*(system.sets[i] for i in rows))
    assert union == cols and len(union) < len(rows)
    return HallViolator(tuple(sorted(rows)), union)


def _perfect_matching(support: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    match_row, _ = _augment(support, n)
    if any(j < 0 for j in match_row):
        raise ValueError("support has no perfect matching")
    return tuple(match_row)


def birkhoff_decompose(A: ExactMatrix) -> BirkhoffDecomposition:
    """Write a doubly stochastic matrix as a convex combination of permutation matrices.

    Each step picks a permutation inside the positive support and subtracts
    it with weight equal to the smallest selected entry, which zeroes at
    least one more entry.
    """
    if not A.is_square():
        raise ValueError("matrix is not square")
    if not A.is_doubly_stochastic():
        raise ValueError("matrix is not doubly stochastic")
    n = A.n
    rest = [list(row) for row in A.rows]
    terms = []
    remaining = Fraction(1)
    while remaining > 0:
        support = [[j for j in range(n) if rest[i][j] > 0] for i in range(n)]
        perm = _perfect_matching(support, n)
        c = min(rest[i][perm[i]] for i in range(n))
        for i in range(n):
            rest[i][perm[i]] -= c
        remaining -= c
        terms.append((c, perm))
        if len(terms) > n * n - 2 * n + 2:
            raise AssertionError("decomposition exceeded n^2 - 2n + 2 terms")
    dec = BirkhoffDecomposition(tuple(terms))
    assert dec.reconstruct() == A
    return dec


def regular_01_decompose(A: ZeroOneMatrix) -> list[tuple[int, ...]]:
    """Split a d-regular square zero-one matrix into d permutation matrices."""
    if A.m != A.n:
        raise ValueError("matrix is not square")
    sums = set(A.row_sums()) | set(A.col_sums())
    if len(sums) > 1:
        raise ValueError("row and column sums are not all equal")
    n = A.n
    rows = list(A.rows)
    perms = []
    while any(rows):
        support = [[j for j in range(n) if (rows[i] >> j) & 1] for i in range(n)]
        perm = _perfect_matching(support, n)
        for i, j in enumerate(perm):
            rows[i] &= ~(1 << j)
        perms.append(perm)
    return perms


def deficiency_matrix(R: LatinRectangle) -> ZeroOneMatrix:
    """Row i marks the symbols missing from column i (an r x n rectangle gives an (n-r)-regular matrix)."""
    n = R.order
    full = (1 << n) - 1
    rows = []
    for j in range(R.cols):
        present = sum(1 << R.entries[i][j] for i in range(R.rows))
        rows.append(full & ~present)
    return ZeroOneMatrix(R.cols, n, tuple(rows))


def complete_rectangle(R: LatinRectangle) -> LatinSquare:
    """Complete an r x n Latin rectangle to a Latin square of order n.

    The deficiency matrix is (n-r)-regular; each permutation matrix of its
    decomposition supplies one new row.
    """
    n = R.order
    if R.cols != n:
        raise LatinError(f"rectangle has {R.cols} columns, need {n}")
    rows = [list(row) for row in R.entries]
    if R.rows < n:
        for perm in regular_01_decompose(deficiency_matrix(R)):
            rows.append(list(perm))
    sq = LatinSquare(tuple(tuple(r) for r in rows), n, R.tokens)
    assert sq.entries[: R.rows] == R.entries
    return sq


def completable_rs(R: LatinRectangle) -> tuple[bool, LatinSquare | None]:
    """Test N(i) >= r + s - n for every symbol; complete the rectangle when it holds.

    Columns are added one at a time.  A new column must give every row a
    symbol that row lacks, and must use every symbol whose count is tight.
    That is an SDR problem once n - r dummy rows, each allowed any non-tight
    symbol, soak up the symbols the column leaves out.
    """
    r, s, n = R.rows, R.cols, R.order
    counts = R.symbol_counts()
    if any(c < r + s - n for c in counts):
        return False, None
    rows = [list(row) for row in R.entries]
    for col in range(s, n):
        tight = {x for x in range(n) if counts[x] == r + col - n}
        sets = [set(range(n)) - set(row) for row in rows]
        sets += [set(range(n)) - tight for _ in range(n - r)]
        result = find_sdr(SetSystem.of(sets, n))
        if not isinstance(result, SDR):
            raise AssertionError(f"column {col} cannot be extended although the count condition holds")
        for i in range(r):
            x = result.representatives[i]
            rows[i].append(x)
            counts[x] += 1
    full = LatinRectangle(tuple(tuple(row) for row in rows), n, R.tokens)
    return True, complete_rectangle(full)
