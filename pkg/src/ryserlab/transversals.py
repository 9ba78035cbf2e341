"""Transversals of Latin squares: counting, enumeration, decompositions, orthogonal mates."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from .core import LatinSquare, Transversal, is_symmetric
from .exactcover import count_exact_covers, exact_covers, first_exact_cover

MAX_ORDER = 16


class OrderTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class TransversalSet:
    square: LatinSquare
    transversals: tuple[Transversal, ...]

    def __len__(self):
        return len(self.transversals)

    def __iter__(self):
        return iter(self.transversals)


@dataclass(frozen=True)
class Decomposition:
    """n disjoint transversals, listed in order of their row-0 column."""

    square: LatinSquare
    transversals: tuple[Transversal, ...]

    def __post_init__(self):
        n = self.square.n
        cells = [c for t in self.transversals for c in t.cells]
        if len(self.transversals) != n or len(set(cells)) != n * n:
            raise ValueError("transversals do not partition the cells")
        for t in self.transversals:
            if tuple(self.square.entries[i][j] for i, j in t.cells) != t.symbols:
                raise ValueError("transversal symbols disagree with the square")


@dataclass(frozen=True)
class ParityVerdict:
    order: int
    count: int

    @property
    def consistent(self) -> bool:
        return self.count % 2 == self.order % 2

    @property
    def verdict(self) -> str:
        return "consistent" if self.consistent else "counterexample"


def _check_order(sq: LatinSquare):
    if sq.n > MAX_ORDER:
        raise OrderTooLarge(f"order {sq.n} exceeds the packed-mask limit of {MAX_ORDER}")


def _row_options(sq: LatinSquare):
    # per row: (column bit, symbol bit, column) in column order
    return [[(1 << j, 1 << x, j) for j, x in enumerate(row)] for row in sq.entries]


def _count_from(options, i, cols, syms):
    n = len(options)
    if i == n:
        return 1
    if i == n - 1:
        free_col = ~cols
        return sum(1 for cb, sb, _ in options[i] if cb & free_col and not sb & syms)
    total = 0
    for cb, sb, _ in options[i]:
        if not (cols & cb or syms & sb):
            total += _count_from(options, i + 1, cols | cb, syms | sb)
    return total


def _count_branch(args):
    sq, j = args
    options = _row_options(sq)
    cb, sb, _ = options[0][j]
    return _count_from(options, 1, cb, sb)


def _map_branches(fn, sq: LatinSquare, workers: int):
    branches = [(sq, j) for j in range(sq.n)]
    if workers <= 1 or sq.n < 2:
        return [fn(b) for b in branches]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, branches))


def count_transversals(sq: LatinSquare, workers: int = 1) -> int:
    """Exact number of transversals.

    Backtracks row by row carrying masks of used columns and used symbols.
    With ``workers > 1`` the row-0 choices run in separate processes; the sum
    is the same either way.
    """
    _check_order(sq)
    if sq.n == 0:
        return 0
    return sum(_map_branches(_count_branch, sq, workers))


def _perms_from(options, i, cols, syms, stack):
    n = len(options)
    if i == n:
        yield tuple(stack)
        return
    for cb, sb, j in options[i]:
        if not (cols & cb or syms & sb):
            stack.append(j)
            yield from _perms_from(options, i + 1, cols | cb, syms | sb, stack)
            stack.pop()


def _list_branch(args):
    sq, j = args
    options = _row_options(sq)
    cb, sb, _ = options[0][j]
    return list(_perms_from(options, 1, cb, sb, [j]))


def transversal_permutations(sq: LatinSquare):
    """Column permutations of all transversals, lexicographic."""
    _check_order(sq)
    return _perms_from(_row_options(sq), 0, 0, 0, [])


def enumerate_transversals(sq: LatinSquare, workers: int = 1) -> TransversalSet:
    _check_order(sq)
    if workers > 1:
        perms = [p for chunk in _map_branches(_list_branch, sq, workers) for p in chunk]
    else:
        perms = list(transversal_permutations(sq))
    return TransversalSet(sq, tuple(Transversal.on(sq, p) for p in perms))


def naive_transversal_count(sq: LatinSquare) -> int:
    """n!-scan oracle."""
    n = sq.n
    return sum(1 for p in permutations(range(n)) if len({sq.entries[i][p[i]] for i in range(n)}) == n)


def find_transversal(sq: LatinSquare) -> Transversal | None:
    p = next(transversal_permutations(sq), None)
    return None if p is None else Transversal.on(sq, p)


def check_parity_conjecture(sq: LatinSquare) -> ParityVerdict:
    """Is the transversal count congruent to the order mod 2?"""
    return ParityVerdict(sq.n, count_transversals(sq))


def symmetric_diagonal_check(sq: LatinSquare) -> Transversal:
    """The main diagonal of a symmetric square of odd order is a transversal.

    Checks the counting argument symbol by symbol: off-diagonal occurrences
    pair up across the diagonal, so each symbol sits on the diagonal an odd
    number of times, hence at least once.
    """
    n = sq.n
    if not is_symmetric(sq):
        raise ValueError("square is not symmetric")
    if n % 2 == 0:
        raise ValueError("order is even")
    for k in range(n):
        below = sum(1 for i in range(n) for j in range(i) if sq.entries[i][j] == k)
        on_diag = sum(1 for i in range(n) if sq.entries[i][i] == k)
        if on_diag != n - 2 * below or on_diag < 1:
            raise AssertionError(f"symbol {k}: diagonal count {on_diag}, below-diagonal count {below}")
    return Transversal.on(sq, range(n))


def _cover_problem(sq: LatinSquare, tset: TransversalSet):
    n = sq.n
    items = [i * n + j for i in range(n) for j in range(n)]
    subsets = [[i * n + j for i, j in t.cells] for t in tset]
    return items, subsets


def _as_decomposition(sq, tset, chosen) -> Decomposition:
    ts = sorted((tset.transversals[k] for k in chosen), key=lambda t: t.cells[0][1])
    return Decomposition(sq, tuple(ts))


def find_decomposition(sq: LatinSquare, tset: TransversalSet | None = None) -> Decomposition | None:
    """First partition of the cells into n transversals, or None."""
    tset = tset or enumerate_transversals(sq)
    if len(tset) < sq.n:
        return None
    chosen = first_exact_cover(*_cover_problem(sq, tset))
    return None if chosen is None else _as_decomposition(sq, tset, chosen)


def iter_decompositions(sq: LatinSquare, tset: TransversalSet | None = None):
    tset = tset or enumerate_transversals(sq)
    if len(tset) < sq.n:
        return
    for chosen in exact_covers(*_cover_problem(sq, tset)):
        yield _as_decomposition(sq, tset, chosen)


def count_decompositions(sq: LatinSquare, limit: int | None = None) -> int:
    """Number of unordered partitions of the cells into transversals.

    Each partition gives n! orthogonal mates, one per assignment of symbols
    to its transversals.
    """
    tset = enumerate_transversals(sq)
    if len(tset) < sq.n:
        return 0
    return count_exact_covers(*_cover_problem(sq, tset), limit=limit)


def mate_from_decomposition(sq: LatinSquare, dec: Decomposition) -> LatinSquare:
    """Put symbol k on every cell of the k-th transversal."""
    from .mols import are_orthogonal

    if dec.square != sq:
        raise ValueError("decomposition belongs to a different square")
    n = sq.n
    grid = [[-1] * n for _ in range(n)]
    for k, t in enumerate(dec.transversals):
        for i, j in t.cells:
            grid[i][j] = k
    mate = LatinSquare(tuple(tuple(r) for r in grid), n)
    assert are_orthogonal(sq, mate)
    return mate


def count_decompositions_fast(sq: LatinSquare, limit: int = 0) -> tuple[int, bool]:
    """Compiled version of :func:`count_decompositions`; returns (count, finished)."""
    import numpy as np

    from ._kernels import count_transversal_partitions

    n = sq.n
    if n == 1:
        return 1, True
    tset = enumerate_transversals(sq)
    if len(tset) < n:
        return 0, True
    words = (n * n + 63) // 64
    masks = np.zeros((len(tset), words), np.uint64)
    cells = np.zeros((len(tset), n), np.int64)
    for t, tr in enumerate(tset):
        for k, (i, j) in enumerate(tr.cells):
            c = i * n + j
            cells[t, k] = c
            masks[t, c >> 6] |= np.uint64(1) << np.uint64(c & 63)
    count, finished = count_transversal_partitions(masks, cells, n * n, limit)
    return int(count), bool(finished)
