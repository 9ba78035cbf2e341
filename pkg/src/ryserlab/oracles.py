"""Brute-force reference implementations.

Each function here is deliberately naive and shares no code with the fast
paths it is used to check.  Only suitable for small inputs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

from .core import LatinRectangle, LatinSquare


def permanent_by_permutations(rows) -> Fraction:
    """Sum over all injections of rows into columns of the entry products."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    total = Fraction(0)
    for cols in permutations(range(n), m):
        p = Fraction(1)
        for i, j in enumerate(cols):
            p *= Fraction(rows[i][j])
            if not p:
                break
        total += p
    return total


def sdr_count(sets) -> int:
    """Number of systems of distinct representatives, by direct product."""
    return sum(1 for choice in product(*[sorted(s) for s in sets]) if len(set(choice)) == len(choice))


def max_matching_size(rows) -> int:
    """Largest set of ones with no two in a line, by trying every row subset size."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    for size in range(min(m, n), 0, -1):
        for rs in combinations(range(m), size):
            for cs in permutations(range(n), size):
                if all(rows[i][j] for i, j in zip(rs, cs)):
                    return size
    return 0


def min_cover_size(rows) -> int:
    """Fewest lines containing every one, over all 2^(m+n) line sets."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    ones = [(i, j) for i in range(m) for j in range(n) if rows[i][j]]
    best = m + n
    for mask in range(1 << (m + n)):
        size = bin(mask).count("1")
        if size >= best:
            continue
        if all(mask >> i & 1 or mask >> (m + j) & 1 for i, j in ones):
            best = size
    return best if ones else 0


def latin_rectangles(r: int, n: int):
    """Every Latin r x n rectangle on symbols 0..n-1, row by row from all permutations."""
    perms = list(permutations(range(n)))

    def extend(rows):
        if len(rows) == r:
            yield tuple(rows)
            return
        for p in perms:
            if all(p[j] != row[j] for row in rows for j in range(n)):
                rows.append(p)
                yield from extend(rows)
                rows.pop()

    yield from extend([])


def count_latin_rectangles(r: int, n: int) -> int:
    return sum(1 for _ in latin_rectangles(r, n))


def count_reduced_squares(n: int) -> int:
    """Rows are permutations; row i must start with i and row 0 is the identity."""
    by_first = {i: [p for p in permutations(range(n)) if p[0] == i] for i in range(n)}

    def extend(rows):
        if len(rows) == n:
            return 1
        return sum(extend(rows + [p]) for p in by_first[len(rows)]
                   if all(p[j] != row[j] for row in rows for j in range(n)))

    return extend([tuple(range(n))]) if n else 0


def transversal_count(sq: LatinSquare) -> int:
    n = sq.n
    return sum(1 for p in permutations(range(n)) if len({sq.entries[i][p[i]] for i in range(n)}) == n)


def has_orthogonal_mate(sq: LatinSquare) -> bool:
    """Search every Latin square of the same order for an orthogonal partner."""
    n = sq.n
    for rows in latin_rectangles(n, n):
        if len({(sq.entries[i][j], rows[i][j]) for i in range(n) for j in range(n)}) == n * n:
            return True
    return False


def completions(R: LatinRectangle) -> int:
    """Number of ways to extend a Latin rectangle to a full square."""
    n = R.order
    rows = [tuple(r) for r in R.entries]
    count = 0

    def extend(rows):
        nonlocal count
        if len(rows) == n:
            count += 1
            return
        for p in permutations(range(n)):
            if all(p[j] != row[j] for row in rows for j in range(n)):
                extend(rows + [p])

    extend(rows)
    return count
