"""Algorithm X over dict-of-sets (the dancing-links idea without the linked lists).

Items are chosen by fewest candidate subsets, ties broken by the smallest
item, and candidates are tried in ascending index order, so the solution
order is deterministic.
"""

from __future__ import annotations

from typing import Hashable, Iterator, Sequence


def _build(items: Sequence[Hashable], subsets: Sequence[Sequence[Hashable]]):
    cols: dict = {x: set() for x in items}
    for k, sub in enumerate(subsets):
        for x in sub:
            if x not in cols:
                raise ValueError(f"subset {k} mentions unknown item {x!r}")
            cols[x].add(k)
    return cols


def _select(cols, subsets, k):
    removed = []
    for x in subsets[k]:
        for other in cols[x]:
            for y in subsets[other]:
                if y != x:
                    cols[y].discard(other)
        removed.append(cols.pop(x))
    return removed


def _deselect(cols, subsets, k, removed):
    for x in reversed(subsets[k]):
        cols[x] = removed.pop()
        for other in cols[x]:
            for y in subsets[other]:
                if y != x:
                    cols[y].add(other)


def exact_covers(items: Sequence[Hashable], subsets: Sequence[Sequence[Hashable]]) -> Iterator[list[int]]:
    """Yield every set of subset indices covering each item exactly once."""
    cols = _build(items, subsets)
    rank = {x: i for i, x in enumerate(items)}
    subsets = [list(s) for s in subsets]
    partial: list[int] = []

    def search():
        if not cols:
            yield list(partial)
            return
        x = min(cols, key=lambda c: (len(cols[c]), rank[c]))
        for k in sorted(cols[x]):
            partial.append(k)
            removed = _select(cols, subsets, k)
            yield from search()
            _deselect(cols, subsets, k, removed)
            partial.pop()

    yield from search()


def first_exact_cover(items, subsets) -> list[int] | None:
    return next(exact_covers(items, subsets), None)


def count_exact_covers(items, subsets, limit: int | None = None) -> int:
    """Number of exact covers, stopping early once ``limit`` is reached."""
    count = 0
    for _ in exact_covers(items, subsets):
        count += 1
        if limit is not None and count >= limit:
            break
    return count
