"""Embedded test squares."""

from __future__ import annotations

from .core import LatinSquare, parse_square

# Parker's order-10 square.  The boxed cells are the 0/5 and 2/7 entries in
# rows 0, 2, 5, 7 and columns 0, 2, 5, 7.
PARKER_TEXT = """\
5 1 7 3 4 0 6 2 8 9
1 2 3 4 5 6 7 8 9 0
7 3 4 5 6 2 8 9 0 1
3 4 5 6 7 8 9 0 1 2
4 5 6 7 8 9 0 1 2 3
0 6 2 8 9 5 1 7 3 4
6 7 8 9 0 1 2 3 4 5
2 8 9 0 1 7 3 4 5 6
8 9 0 1 2 3 4 5 6 7
9 0 1 2 3 4 5 6 7 8
"""

BOXED_CELLS = (
    (0, 0), (0, 2), (0, 5), (0, 7),
    (2, 0), (2, 5),
    (5, 0), (5, 2), (5, 5), (5, 7),
    (7, 0), (7, 5),
)

_SWAP = {"0": "5", "5": "0", "2": "7", "7": "2"}


def _swapped_text() -> str:
    rows = [ln.split() for ln in PARKER_TEXT.splitlines()]
    for i, j in BOXED_CELLS:
        rows[i][j] = _SWAP[rows[i][j]]
    return "".join(" ".join(r) + "\n" for r in rows)


PARKER_SWAPPED_TEXT = _swapped_text()

# tokens "0".."9" map to symbols 0..9 so the digits shown are the symbols
_DIGITS = tuple(str(d) for d in range(10))


def _load(text: str) -> LatinSquare:
    parsed = parse_square(text)
    entries = tuple(tuple(int(parsed.tokens[x]) for x in row) for row in parsed.entries)
    return LatinSquare(entries, 10, _DIGITS)


def parker() -> LatinSquare:
    return _load(PARKER_TEXT)


def parker_swapped() -> LatinSquare:
    return _load(PARKER_SWAPPED_TEXT)


DATASETS = {"parker": parker, "parker-swapped": parker_swapped}
