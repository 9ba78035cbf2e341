"""Latin rectangles, squares, cubes and the matrix types the rest of the package uses.

Symbols are stored internally as ``0..n-1``.  When a square is parsed from
text the original tokens are kept in ``tokens`` so that serialization can
write them back unchanged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class LatinError(ValueError):
    """Input does not satisfy the Latin property (or is malformed)."""


class MatrixFormatError(ValueError):
    pass


Grid = tuple[tuple[int, ...], ...]


def _as_grid(rows: Iterable[Iterable[int]]) -> Grid:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class LatinRectangle:
    entries: Grid
    order: int
    tokens: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        entries = _as_grid(self.entries)
        object.__setattr__(self, "entries", entries)
        r = len(entries)
        s = len(entries[0]) if r else 0
        n = self.order
        if any(len(row) != s for row in entries):
            raise LatinError("ragged rows")
        if r > n or s > n:
            raise LatinError(f"{r}x{s} rectangle does not fit order {n}")
        for i, row in enumerate(entries):
            for x in row:
                if not 0 <= x < n:
                    raise LatinError(f"symbol {x} outside 0..{n - 1}")
            if len(set(row)) != s:
                raise LatinError(f"repeated symbol in row {i}")
        for j in range(s):
            col = [entries[i][j] for i in range(r)]
            if len(set(col)) != r:
                raise LatinError(f"repeated symbol in column {j}")
        if self.tokens is not None and len(self.tokens) < n:
            raise LatinError("token map shorter than order")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def symbol_counts(self) -> list[int]:
        """N(i): how often each symbol occurs."""
        counts = [0] * self.order
        for row in self.entries:
            for x in row:
                counts[x] += 1
        return counts

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def is_square(self) -> bool:
        return self.rows == self.cols == self.order


@dataclass(frozen=True)
class LatinSquare(LatinRectangle):
    order: int = -1

    def __post_init__(self):
        if self.order < 0:
            object.__setattr__(self, "order", len(self.entries))
        super().__post_init__()
        if not (self.rows == self.cols == self.order):
            raise LatinError(f"{self.rows}x{self.cols} array is not a square of order {self.order}")

    @property
    def n(self) -> int:
        return self.order

    @classmethod
    def cyclic(cls, n: int) -> "LatinSquare":
        """Addition table of Z_n."""
        return cls(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def as_square(obj) -> LatinSquare:
    if isinstance(obj, LatinSquare):
        return obj
    if isinstance(obj, LatinRectangle):
        return LatinSquare(obj.entries, obj.order, obj.tokens)
    return LatinSquare(_as_grid(obj))


@dataclass(frozen=True)
class Path:
    """n cells meeting every row and every column once."""

    cells: tuple[tuple[int, int], ...]

    def __post_init__(self):
        cells = tuple((int(i), int(j)) for i, j in self.cells)
        object.__setattr__(self, "cells", cells)
        n = len(cells)
        if sorted(i for i, _ in cells) != list(range(n)) or sorted(j for _, j in cells) != list(range(n)):
            raise LatinError("cells do not form a path")

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> "Path":
        return cls(tuple((i, c) for i, c in enumerate(perm)))

    def permutation(self) -> tuple[int, ...]:
        perm = [0] * len(self.cells)
        for i, j in self.cells:
            perm[i] = j
        return tuple(perm)


@dataclass(frozen=True)
class Transversal:
    path: Path
    symbols: tuple[int, ...]

    def __post_init__(self):
        n = len(self.path.cells)
        if sorted(self.symbols) != list(range(n)):
            raise LatinError("path does not carry every symbol exactly once")

    @classmethod
    def on(cls, sq: LatinSquare, perm: Sequence[int]) -> "Transversal":
        path = Path.from_permutation(perm)
        return cls(path, tuple(sq.entries[i][j] for i, j in path.cells))

    @property
    def cells(self) -> tuple[tuple[int, int], ...]:
        return self.path.cells

    def permutation(self) -> tuple[int, ...]:
        return self.path.permutation()


@dataclass(frozen=True)
class LatinCube:
    """Zero-one n x n x n array with exactly one 1 on every axis-parallel line."""

    order: int
    bits: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        n = self.order
        bits = self.bits
        if len(bits) != n or any(len(p) != n or any(len(line) != n for line in p) for p in bits):
            raise LatinError("cube has wrong shape")
        for a in range(n):
            for b in range(n):
                lines = (
                    [bits[a][b][k] for k in range(n)],
                    [bits[a][k][b] for k in range(n)],
                    [bits[k][a][b] for k in range(n)],
                )
                for line in lines:
                    if any(x not in (0, 1) for x in line) or sum(line) != 1:
                        raise LatinError("cube line does not hold exactly one 1")

    def ones(self) -> list[tuple[int, int, int]]:
        n = self.order
        return [(i, j, k) for i in range(n) for j in range(n) for k in range(n) if self.bits[i][j][k]]


@dataclass(frozen=True)
class ZeroOneMatrix:
    """Zero-one matrix with rows packed into ints (bit j of ``rows[i]`` is entry (i, j))."""

    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.m:
            raise MatrixFormatError(f"expected {self.m} rows, got {len(rows)}")
        limit = 1 << self.n
        if any(r < 0 or r >= limit for r in rows):
            raise MatrixFormatError("row has bits outside the column range")

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[int]]) -> "ZeroOneMatrix":
        m = len(data)
        n = len(data[0]) if m else 0
        packed = []
        for row in data:
            if len(row) != n:
                raise MatrixFormatError("ragged rows")
            bits = 0
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise MatrixFormatError(f"entry {x!r} is not 0 or 1")
                if x:
                    bits |= 1 << j
            packed.append(bits)
        return cls(m, n, tuple(packed))

    @classmethod
    def identity(cls, n: int) -> "ZeroOneMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, m: int, n: int | None = None) -> "ZeroOneMatrix":
        n = m if n is None else n
        return cls(m, n, ((1 << n) - 1,) * m)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "ZeroOneMatrix":
        return cls(len(perm), len(perm), tuple(1 << c for c in perm))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def row_sums(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def col_sums(self) -> list[int]:
        return [sum((r >> j) & 1 for r in self.rows) for j in range(self.n)]

    def row_support(self, i: int) -> list[int]:
        r = self.rows[i]
        return [j for j in range(self.n) if (r >> j) & 1]

    def transpose(self) -> "ZeroOneMatrix":
        return ZeroOneMatrix.from_lists([list(col) for col in zip(*self.to_lists())]) if self.m else ZeroOneMatrix(self.n, 0, (0,) * self.n)

    def gram(self) -> list[list[int]]:
        """A A^T as integers."""
        return [[(a & b).bit_count() for b in self.rows] for a in self.rows]

    def to_exact(self) -> "ExactMatrix":
        return ExactMatrix(self.to_lists())


class ExactMatrix:
    """Dense matrix of Fractions.

    Fractions are always stored in lowest terms with a positive denominator,
    so equality is structural.
    """

    __slots__ = ("_rows", "m", "n")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        m = len(data)
        n = len(data[0]) if m else 0
        if any(len(row) != n for row in data):
            raise MatrixFormatError("ragged rows")
        self._rows = data
        self.m = m
        self.n = n

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, m: int, n: int | None = None) -> "ExactMatrix":
        return cls([[1] * (m if n is None else n) for _ in range(m)])

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "ExactMatrix":
        n = len(perm)
        return cls([[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        return f"ExactMatrix([{body}])"

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def scale(self, c) -> "ExactMatrix":
        c = Fraction(c)
        return ExactMatrix([[c * x for x in row] for row in self._rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.n != other.m:
            raise ValueError("shape mismatch")
        cols = list(zip(*other._rows))
        return ExactMatrix([[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self._rows])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self._rows)) if self.m else ExactMatrix([])

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self._rows]

    def col_sums(self) -> list[Fraction]:
        return [sum(col, Fraction(0)) for col in zip(*self._rows)]

    def is_square(self) -> bool:
        return self.m == self.n

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self._rows for x in row)

    def is_zero_one(self) -> bool:
        return all(x in (0, 1) for row in self._rows for x in row)

    def is_doubly_stochastic(self) -> bool:
        return (
            self.is_square()
            and self.is_nonnegative()
            and all(s == 1 for s in self.row_sums())
            and all(s == 1 for s in self.col_sums())
        )

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "ExactMatrix":
        """Entry (i, j) of the result is entry (row_perm[i], col_perm[j]) of self."""
        return ExactMatrix([[self._rows[r][c] for c in col_perm] for r in row_perm])

    def to_zero_one(self) -> ZeroOneMatrix:
        if not self.is_zero_one():
            raise MatrixFormatError("matrix has entries other than 0 and 1")
        return ZeroOneMatrix.from_lists([[int(x) for x in row] for row in self._rows])

    def to_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self._rows]


# ---------------------------------------------------------------------------
# parsing / serialization


def _content_lines(text: str | bytes) -> list[str]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]


def parse_square(text: str | bytes, order: int | None = None) -> LatinRectangle:
    """Parse whitespace-separated rows into a rectangle (a LatinSquare when r = s = n).

    Distinct tokens become symbols 0, 1, ... in order of first appearance.
    Without ``order`` the order is the larger of the row length and the
    number of distinct tokens.
    """
    rows = [ln.split() for ln in _content_lines(text) if ln.strip()]
    if not rows:
        raise LatinError("no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise LatinError("ragged rows")
    tokens: dict[str, int] = {}
    for row in rows:
        for tok in row:
            tokens.setdefault(tok, len(tokens))
    n = max(width, len(tokens)) if order is None else order
    if len(tokens) > n:
        raise LatinError(f"{len(tokens)} distinct symbols exceed order {n}")
    names = list(tokens)
    # pad the token map with unused placeholder names so every symbol has a name
    taken = set(names)
    k = 0
    while len(names) < n:
        cand = str(k)
        if cand not in taken:
            names.append(cand)
            taken.add(cand)
        k += 1
    entries = tuple(tuple(tokens[t] for t in row) for row in rows)
    if len(rows) == width == n:
        return LatinSquare(entries, n, tuple(names))
    return LatinRectangle(entries, n, tuple(names))


def parse_squares(text: str | bytes) -> list[LatinSquare]:
    """Blank-line separated squares (the serialized form of an orthogonal system).

    Each square keeps its own token map.
    """
    blocks: list[list[str]] = [[]]
    for ln in _content_lines(text):
        if ln.strip():
            blocks[-1].append(ln)
        elif blocks[-1]:
            blocks.append([])
    return [as_square(parse_square("\n".join(b))) for b in blocks if b]


def parse_matrix(text: str | bytes) -> ExactMatrix:
    """Header line ``m n`` followed by m rows of n rationals (``p/q`` or integers)."""
    lines = [ln.split() for ln in _content_lines(text) if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise MatrixFormatError("first line must be 'm n'")
    try:
        m, n = int(lines[0][0]), int(lines[0][1])
    except ValueError as exc:
        raise MatrixFormatError("bad dimension header") from exc
    body = lines[1:]
    if len(body) != m or any(len(r) != n for r in body):
        raise MatrixFormatError(f"expected {m} rows of {n} entries")
    try:
        return ExactMatrix([[Fraction(tok) for tok in row] for row in body])
    except (ValueError, ZeroDivisionError) as exc:
        raise MatrixFormatError(str(exc)) from exc


def parse_zero_one(text: str | bytes) -> ZeroOneMatrix:
    """Either the ``m n`` matrix format or bare rows of 0/1 digits."""
    lines = [ln.split() for ln in _content_lines(text) if ln.strip()]
    if len(lines) > 1 and len(lines[0]) == 2 and all(t.isdigit() for t in lines[0]):
        m, n = int(lines[0][0]), int(lines[0][1])
        if m == len(lines) - 1 and all(len(r) == n for r in lines[1:]):
            return parse_matrix(text).to_zero_one()
    rows = []
    for toks in lines:
        digits = toks if len(toks) > 1 else list(toks[0])
        try:
            rows.append([int(d) for d in digits])
        except ValueError as exc:
            raise MatrixFormatError(f"bad zero-one row {' '.join(toks)!r}") from exc
    return ZeroOneMatrix.from_lists(rows)


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize(obj, fmt: str = "text") -> str:
    """Deterministic text form of any core object; re-parseable by the matching parser."""
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, LatinRectangle):
        names = obj.tokens or tuple(str(k) for k in range(obj.order))
        width = max(len(t) for t in names[: obj.order])
        return "".join(" ".join(names[x].rjust(width) for x in row) + "\n" for row in obj.entries)
    if isinstance(obj, ZeroOneMatrix):
        return "".join("".join(str(x) for x in row) + "\n" for row in obj.to_lists())
    if isinstance(obj, ExactMatrix):
        out = [f"{obj.m} {obj.n}\n"]
        out += [" ".join(_fmt_frac(x) for x in row) + "\n" for row in obj.rows]
        return "".join(out)
    if isinstance(obj, LatinCube):
        layers = []
        for k in range(obj.order):
            layers.append("".join("".join(str(obj.bits[i][j][k]) for j in range(obj.order)) + "\n" for i in range(obj.order)))
        return "\n".join(layers)
    if isinstance(obj, Transversal):
        return " ".join(f"({i},{j})" for i, j in obj.cells) + "\n"
    if isinstance(obj, (list, tuple)) and all(isinstance(x, LatinRectangle) for x in obj):
        return "\n".join(serialize(x) for x in obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# square operations


def normalization_witness(sq: LatinSquare) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Column and row permutations that bring ``sq`` to reduced form.

    With ``cols, rows = normalization_witness(sq)`` the reduced square has
    entry ``sq[rows'[i], cols[j]]`` at (i, j), where ``rows'`` indexes the
    column-permuted square.
    """
    n = sq.n
    cols = [0] * n
    for j, x in enumerate(sq.entries[0]):
        cols[x] = j
    first_col = [sq.entries[i][cols[0]] for i in range(n)]
    rows = [0] * n
    for i, x in enumerate(first_col):
        rows[x] = i
    return tuple(cols), tuple(rows)


def normalize(sq: LatinSquare) -> LatinSquare:
    cols, rows = normalization_witness(sq)
    entries = tuple(tuple(sq.entries[r][c] for c in cols) for r in rows)
    return LatinSquare(entries, sq.n, sq.tokens)


def is_reduced(sq: LatinRectangle) -> bool:
    return list(sq.entries[0]) == list(range(sq.cols)) and [row[0] for row in sq.entries] == list(range(sq.rows))


def permute_square(sq: LatinSquare, row_perm: Sequence[int] = None, col_perm: Sequence[int] = None,
                   sym_perm: Sequence[int] = None) -> LatinSquare:
    """Isotope of ``sq``: entry (i, j) becomes sym_perm[sq[row_perm[i], col_perm[j]]]."""
    n = sq.n
    rp = row_perm or range(n)
    cp = col_perm or range(n)
    sp = sym_perm or list(range(n))
    return LatinSquare(tuple(tuple(sp[sq.entries[r][c]] for c in cp) for r in rp), n)


def is_symmetric(sq: LatinSquare) -> bool:
    n = sq.n
    return all(sq.entries[i][j] == sq.entries[j][i] for i in range(n) for j in range(i + 1, n))


def to_cube(sq: LatinSquare) -> LatinCube:
    n = sq.n
    bits = tuple(tuple(tuple(1 if sq.entries[i][j] == k else 0 for k in range(n)) for j in range(n)) for i in range(n))
    return LatinCube(n, bits)


def from_cube(cube: LatinCube) -> LatinSquare:
    n = cube.order
    return LatinSquare(tuple(tuple(cube.bits[i][j].index(1) for j in range(n)) for i in range(n)), n)


def iter_reduced_squares(n: int) -> Iterator[LatinSquare]:
    """All reduced Latin squares of order n, in lexicographic order."""
    if n < 1:
        return
    grid = [[-1] * n for _ in range(n)]
    rowmask = [0] * n
    colmask = [0] * n
    for j in range(n):
        grid[0][j] = j
        rowmask[0] |= 1 << j
        colmask[j] |= 1 << j
    for i in range(1, n):
        grid[i][0] = i
        rowmask[i] |= 1 << i
        colmask[0] |= 1 << i
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    full = (1 << n) - 1

    def fill(pos):
        if pos == len(cells):
            yield LatinSquare(tuple(tuple(r) for r in grid), n)
            return
        i, j = cells[pos]
        avail = full & ~(rowmask[i] | colmask[j])
        while avail:
            low = avail & -avail
            avail ^= low
            s = low.bit_length() - 1
            grid[i][j] = s
            rowmask[i] |= low
            colmask[j] |= low
            yield from fill(pos + 1)
            rowmask[i] ^= low
            colmask[j] ^= low
        grid[i][j] = -1

    yield from fill(0)


def random_latin_square(n: int, rng: random.Random) -> LatinSquare:
    """Random Latin square built row by row with randomized backtracking.

    Not uniformly distributed; good enough for searches and property tests.
    """
    full = (1 << n) - 1
    colmask = [0] * n
    rows: list[list[int]] = []
    for _ in range(n):
        row = [-1] * n
        order = list(range(n))

        def place(j, used):
            if j == n:
                return True
            rng.shuffle(order)
            for s in list(order):
                bit = 1 << s
                if used & bit or colmask[j] & bit:
                    continue
                row[j] = s
                if place(j + 1, used | bit):
                    return True
            return False

        if not place(0, 0):  # Hall guarantees a compatible row exists
            raise AssertionError("no compatible row")
        for j, s in enumerate(row):
            colmask[j] |= 1 << s
        rows.append(row)
    assert all(c == full for c in colmask)
    return LatinSquare(_as_grid(rows), n)


def random_isotope(sq: LatinSquare, rng: random.Random) -> LatinSquare:
    n = sq.n
    perms = [rng.sample(range(n), n) for _ in range(3)]
    return permute_square(sq, *perms)

