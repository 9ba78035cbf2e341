"""Hypothesis checkers for two zero-one matrix problems.

Problem 1: if every entry of A^T A is positive and A has no 3 x 3 submatrix
equal to J - P (P a permutation matrix), then A has a row of ones.

Problem 2: a symmetric A with A A^T = (k - lambda) I + lambda J,
0 < lambda < k < v - 1 and k - lambda not a square has trace k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import isqrt

from .core import ZeroOneMatrix


@dataclass(frozen=True)
class DesignParams:
    v: int
    k: int
    lam: int

    def violations(self) -> list[str]:
        out = []
        if not 0 < self.lam:
            out.append("lambda > 0")
        if not self.lam < self.k:
            out.append("lambda < k")
        if not self.k < self.v - 1:
            out.append("k < v - 1")
        return out


@dataclass(frozen=True)
class Problem1Result:
    kind: str  # all_ones_row | zero_in_gram | forbidden_submatrix | no_all_ones_row
    row: int | None = None
    witness: tuple = ()

    @property
    def consistent(self) -> bool:
        return self.kind != "no_all_ones_row"


def gram_zero(A: ZeroOneMatrix) -> tuple[int, int] | None:
    """First (j, k) with (A^T A)[j][k] == 0, i.e. columns j and k share no row."""
    cols = [sum(((A.rows[i] >> j) & 1) << i for i in range(A.m)) for j in range(A.n)]
    for j in range(A.n):
        for k in range(j, A.n):
            if not cols[j] & cols[k]:
                return j, k
    return None


def forbidden_submatrix(A: ZeroOneMatrix) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Lexicographically first row/column triples whose minor has all line sums 2.

    A 3 x 3 zero-one minor with every row and column sum equal to 2 is
    exactly J_3 minus a permutation matrix.
    """
    for rows in combinations(range(A.m), 3):
        for cols in combinations(range(A.n), 3):
            minor = [[(A.rows[i] >> j) & 1 for j in cols] for i in rows]
            if all(sum(r) == 2 for r in minor) and all(sum(c) == 2 for c in zip(*minor)):
                return rows, cols
    return None


def problem1_analyze(A: ZeroOneMatrix) -> Problem1Result:
    z = gram_zero(A)
    if z is not None:
        return Problem1Result("zero_in_gram", witness=z)
    f = forbidden_submatrix(A)
    if f is not None:
        return Problem1Result("forbidden_submatrix", witness=f)
    full = (1 << A.n) - 1
    for i, r in enumerate(A.rows):
        if r == full:
            return Problem1Result("all_ones_row", row=i)
    return Problem1Result("no_all_ones_row")


@dataclass(frozen=True)
class Problem2Result:
    k: int
    failed: tuple[str, ...]
    trace: int
    row_sums_ok: bool

    @property
    def premises_hold(self) -> bool:
        return not self.failed

    @property
    def consistent(self) -> bool:
        """Whenever the premises hold, the trace must equal k."""
        return not self.premises_hold or (self.trace == self.k and self.row_sums_ok)


def is_square_number(x: int) -> bool:
    return x >= 0 and isqrt(x) ** 2 == x


def design_equation_holds(A: ZeroOneMatrix, k: int, lam: int) -> bool:
    gram = A.gram()
    return all(gram[i][j] == (k if i == j else lam) for i in range(A.m) for j in range(A.m))


def problem2_analyze(A: ZeroOneMatrix, params: DesignParams) -> Problem2Result:
    v, k, lam = params.v, params.k, params.lam
    failed = params.violations()
    if A.m != A.n or A.m != v:
        failed.append(f"A is {v} x {v}")
    elif A.to_lists() != A.transpose().to_lists():
        failed.append("A symmetric")
    if is_square_number(k - lam):
        failed.append("k - lambda not a square")
    if A.m == A.n and not design_equation_holds(A, k, lam):
        failed.append("A A^T = (k - lambda) I + lambda J")
    trace = sum((A.rows[i] >> i) & 1 for i in range(min(A.m, A.n)))
    row_sums_ok = all(s == k for s in A.row_sums())
    return Problem2Result(k, tuple(failed), trace, row_sums_ok)
