"""Exact permanents, the identities and bounds around them, and Latin rectangle counts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial, lcm, prod

import mpmath

from .core import ExactMatrix, ZeroOneMatrix


@dataclass(frozen=True)
class PermanentResult:
    value: Fraction
    method: str
    terms: int


@dataclass(frozen=True)
class RowColProfile:
    R: tuple[Fraction, ...]
    S: tuple[Fraction, ...]

    def __post_init__(self):
        if sum(self.R) != sum(self.S):
            raise ValueError("row and column sums have different totals")

    @classmethod
    def of(cls, A: ExactMatrix) -> "RowColProfile":
        return cls(tuple(A.row_sums()), tuple(A.col_sums()))


def _as_exact(A) -> ExactMatrix:
    if isinstance(A, ExactMatrix):
        return A
    if isinstance(A, ZeroOneMatrix):
        return A.to_exact()
    return ExactMatrix(A)


def _integer_rows(A: ExactMatrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns (rows, product of the row scales)."""
    rows = []
    scale = 1
    for row in A.rows:
        d = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * d) for x in row])
        scale *= d
    return rows, scale


def _ryser_int(a: list[list[int]]) -> tuple[int, int]:
    """Inclusion-exclusion over kept column sets, visited in Gray-code order.

    per = sum over nonempty kept sets K of (-1)^(n-|K|) * prod_i sum_{j in K} a_ij.
    Consecutive Gray codes differ in one column, so the row sums update in O(n).
    """
    n = len(a)
    if n == 0:
        return 1, 0
    sums = [0] * n
    total = 0
    size = 0
    prev = 0
    terms = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        diff = gray ^ prev
        j = diff.bit_length() - 1
        if gray & diff:
            size += 1
            for i in range(n):
                sums[i] += a[i][j]
        else:
            size -= 1
            for i in range(n):
                sums[i] -= a[i][j]
        prev = gray
        p = 1
        for s in sums:
            p *= s
            if not p:
                break
        terms += 1
        total += -p if (n - size) & 1 else p
    return total, terms


def _naive(A: ExactMatrix) -> tuple[Fraction, int]:
    n = A.n
    total = Fraction(0)
    terms = 0
    for perm in permutations(range(n), A.m):
        p = Fraction(1)
        for i, j in enumerate(perm):
            p *= A.rows[i][j]
            if not p:
                break
        total += p
        terms += 1
    return total, terms


def _rectangular(A: ExactMatrix) -> tuple[Fraction, int]:
    """Sum over injective row -> column maps, memoized on the set of used columns."""
    rows, scale = _integer_rows(A)
    m, n = A.m, A.n

    @lru_cache(maxsize=None)
    def go(i, used):
        if i == m:
            return 1
        return sum(rows[i][j] * go(i + 1, used | (1 << j)) for j in range(n) if not used >> j & 1 and rows[i][j])

    value = Fraction(go(0, 0), scale)
    return value, comb(n, m) * factorial(m)


def permanent(A, method: str | None = None) -> PermanentResult:
    """Exact permanent of an m x n matrix with m <= n.

    Square matrices default to Ryser's formula; rectangular ones use the
    definition (injective choices of a column per row).
    """
    A = _as_exact(A)
    if A.m > A.n:
        raise ValueError(f"permanent needs m <= n, got {A.m} x {A.n}")
    if method is None:
        method = "ryser" if A.m == A.n else "naive"
    if method == "ryser":
        if A.m != A.n:
            raise ValueError("Ryser's formula needs a square matrix")
        rows, scale = _integer_rows(A)
        value, terms = _ryser_int(rows)
        return PermanentResult(Fraction(value, scale), "ryser", terms)
    if method == "naive":
        if A.m == A.n:
            value, terms = _naive(A)
        else:
            value, terms = _rectangular(A)
        return PermanentResult(value, "naive", terms)
    raise ValueError(f"unknown method {method!r}")


def per(A) -> Fraction:
    return permanent(A).value


# ---------------------------------------------------------------------------
# identities


def derangement(n: int) -> int:
    """D_n = n! * sum_k (-1)^k / k!, summed as integers n!/k!."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum((-1) ** k * (factorial(n) // factorial(k)) for k in range(n + 1))


def j_minus_i(n: int) -> ExactMatrix:
    return ExactMatrix([[0 if i == j else 1 for j in range(n)] for i in range(n)])


@dataclass(frozen=True)
class DerangementIdentity:
    n: int
    derangements: int
    permanent: int
    corrected_sum: int
    exponent_r_sum: int

    @property
    def agrees(self) -> bool:
        return self.derangements == self.permanent == self.corrected_sum


def derangement_identity_check(n: int) -> DerangementIdentity:
    """Compare D_n, per(J - I) and the inclusion-exclusion sum for per(J - I).

    Deleting r columns of J - I leaves r rows summing to n - r and n - r rows
    summing to n - r - 1, so the sum is
    sum_r (-1)^r C(n, r) (n - r)^r (n - r - 1)^(n - r).
    The variant with exponent r on the second factor is evaluated as well.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    corrected = sum((-1) ** r * comb(n, r) * (n - r) ** r * (n - r - 1) ** (n - r) for r in range(n))
    variant = sum((-1) ** r * comb(n, r) * (n - r) ** r * (n - r - 1) ** r for r in range(n))
    p = per(j_minus_i(n))
    assert p.denominator == 1
    return DerangementIdentity(n, derangement(n), int(p), corrected, variant)


def circulant(n: int, x, y) -> ExactMatrix:
    """x on the diagonal, y on the cyclic superdiagonal."""
    x, y = Fraction(x), Fraction(y)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] += x
        rows[i][(i + 1) % n] += y
    return ExactMatrix(rows)


def kaplansky(n: int, r: int) -> int:
    """Ways to choose r pairwise non-adjacent objects on a circle of n."""
    if r == 0:
        return 1
    if r > n // 2:
        return 0
    a = Fraction(n, n - r) * comb(n - r, r)
    assert a.denominator == 1
    return int(a)


@dataclass(frozen=True)
class CirculantIdentity:
    n: int
    x: Fraction
    y: Fraction
    permanent: Fraction
    closed_form: Fraction
    expansion: Fraction
    coefficients: tuple[int, ...]

    @property
    def agrees(self) -> bool:
        return self.permanent == self.closed_form == self.expansion


def circulant_identity_check(n: int, x, y) -> CirculantIdentity:
    if n < 2:
        raise ValueError("n must be at least 2")
    x, y = Fraction(x), Fraction(y)
    coeffs = tuple(kaplansky(n, r) for r in range(n // 2 + 1))
    expansion = sum(((-1) ** r * a * (x * y) ** r * (x + y) ** (n - 2 * r) for r, a in enumerate(coeffs)), Fraction(0))
    return CirculantIdentity(n, x, y, per(circulant(n, x, y)), x**n + y**n, expansion, coeffs)


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class Bound:
    name: str
    kind: str  # "lower" or "upper"
    value: str
    verdict: str  # holds | boundary | violated | skipped
    note: str = ""


@dataclass(frozen=True)
class BoundReport:
    permanent: Fraction
    bounds: tuple[Bound, ...] = field(default_factory=tuple)

    def violated(self) -> list[Bound]:
        return [b for b in self.bounds if b.verdict == "violated"]

    def by_name(self, name: str) -> Bound:
        return next(b for b in self.bounds if b.name == name)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decimal(x, digits: int = 20) -> str:
    with mpmath.workdps(digits + 5):
        return mpmath.nstr(x, digits)


def _compare(value: Fraction, bound: Fraction, kind: str) -> str:
    if value == bound:
        return "boundary"
    ok = value > bound if kind == "lower" else value < bound
    return "holds" if ok else "violated"


def _root_product(factors: list[tuple[int | Fraction, Fraction]]) -> mpmath.mpf:
    with mpmath.workdps(40):
        return mpmath.fprod(mpmath.power(mpmath.mpf(b.numerator) / b.denominator if isinstance(b, Fraction) else b,
                                         mpmath.mpf(e.numerator) / e.denominator) for b, e in factors)


def _power_compare(value: Fraction, factors: list[tuple[Fraction, Fraction]], kind: str) -> str:
    """Compare value with prod base**exp exactly by raising both sides to the lcm of the exponent denominators."""
    L = lcm(*(e.denominator for _, e in factors)) if factors else 1
    rhs = Fraction(1)
    for b, e in factors:
        rhs *= Fraction(b) ** int(e * L)
    return _compare(value**L, rhs, kind)


def bound_report(A) -> BoundReport:
    """Evaluate every permanent bound whose hypothesis the matrix meets."""
    A = _as_exact(A)
    value = per(A)
    out: list[Bound] = []
    n = A.n
    square = A.is_square()
    nonneg = A.is_nonnegative()
    zero_one = A.is_zero_one()
    rows = A.row_sums()
    cols = A.col_sums()

    if square and A.is_doubly_stochastic():
        b = Fraction(factorial(n), n**n)
        out.append(Bound("van_der_waerden", "lower", _fmt(b), _compare(value, b, "lower"),
                         "equality expected only for J/n"))
    else:
        out.append(Bound("van_der_waerden", "lower", "-", "skipped", "not doubly stochastic"))

    regular = zero_one and square and len(set(rows) | set(cols)) == 1 and rows and rows[0] >= 1
    if regular:
        k = int(rows[0])
        b = Fraction(factorial(k))
        out.append(Bound("hall", "lower", _fmt(b), _compare(value, b, "lower"), f"{k}-regular"))
    else:
        out.append(Bound("hall", "lower", "-", "skipped", "not a regular zero-one matrix"))

    if zero_one and square:
        r = [int(x) for x in rows]
        b = prod((Fraction(x + 1, 2) for x in r), start=Fraction(1))
        out.append(Bound("minc", "upper", _fmt(b), _compare(value, b, "upper")))
        if 0 in r:
            out.append(Bound("bregman", "upper", "0", "boundary" if value == 0 else "violated", "zero row"))
        else:
            factors = [(Fraction(factorial(x)), Fraction(1, x)) for x in r]
            out.append(Bound("bregman", "upper", _decimal(_root_product(factors)),
                             _power_compare(value, factors, "upper"), "compared exactly via integer powers"))
        factors = []
        for x in r:
            factors.append((Fraction(factorial(x)), Fraction(1, n)))
            factors.append((Fraction(x + 1, 2), Fraction(n - x, n)))
        verdict = _power_compare(value, factors, "upper")
        out.append(Bound("minc_double", "upper", _decimal(_root_product(factors)), verdict,
                         "conjectural; a violation is a finding"))
    else:
        for name in ("minc", "bregman", "minc_double"):
            out.append(Bound(name, "upper", "-", "skipped", "not a square zero-one matrix"))

    if square and nonneg:
        b = prod((min(x, y) for x, y in zip(sorted(rows), sorted(cols))), start=Fraction(1))
        out.append(Bound("row_col_min", "upper", _fmt(b), _compare(value, b, "upper"), "sorted row/column sums"))
    else:
        out.append(Bound("row_col_min", "upper", "-", "skipped", "not a nonnegative square matrix"))
    return BoundReport(value, tuple(out))


def marcus_minc_diagonal(A: ExactMatrix) -> tuple[tuple[int, ...], Fraction]:
    """Permutation with the largest diagonal product (exhaustive with pruning)."""
    A = _as_exact(A)
    if not A.is_doubly_stochastic():
        raise ValueError("matrix is not doubly stochastic")
    n = A.n
    rows = A.rows
    row_max = [max(r) for r in rows]
    # suffix[i] = product of row maxima of rows i..n-1
    suffix = [Fraction(1)] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * row_max[i]
    best = [Fraction(-1), None]
    perm = [0] * n

    def go(i, used, p):
        if p * suffix[i] <= best[0]:
            return
        if i == n:
            best[0], best[1] = p, tuple(perm)
            return
        for j in sorted(range(n), key=lambda c: -rows[i][c]):
            if used >> j & 1 or not rows[i][j]:
                continue
            perm[i] = j
            go(i + 1, used | 1 << j, p * rows[i][j])

    go(0, 0, Fraction(1))
    sigma, product = best[1], best[0]
    assert product >= Fraction(1, n**n), "diagonal product below 1/n^n"
    return sigma, product


def random_doubly_stochastic(n: int, rng: random.Random, terms: int | None = None, denom: int = 12) -> ExactMatrix:
    """Random convex combination of random permutation matrices with rational weights."""
    terms = terms or rng.randint(1, n + 1)
    weights = [Fraction(rng.randint(1, denom)) for _ in range(terms)]
    total = sum(weights)
    acc = [[Fraction(0)] * n for _ in range(n)]
    for w in weights:
        sigma = rng.sample(range(n), n)
        for i, j in enumerate(sigma):
            acc[i][j] += w / total
    return ExactMatrix(acc)


# ---------------------------------------------------------------------------
# counterexamples

JURKAT_A = ExactMatrix([[11, 5, 8], [13, 11, 0], [0, 8, 16]]).scale(Fraction(1, 24))
JURKAT_B = ExactMatrix([[1, 1, 0], [1, 1, 0], [0, 0, 2]]).scale(Fraction(1, 2))
NEWMAN_A = ExactMatrix([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]]).scale(Fraction(1, 2))


@dataclass(frozen=True)
class CounterexampleReport:
    jurkat_per_a: Fraction
    jurkat_per_b: Fraction
    jurkat_per_ab: Fraction
    newman_per_a: Fraction
    newman_per_aat: Fraction

    @property
    def jurkat_refutes(self) -> bool:
        """per(AB) <= min(per A, per B) fails."""
        return self.jurkat_per_ab > min(self.jurkat_per_a, self.jurkat_per_b)

    @property
    def newman_refutes(self) -> bool:
        """per(A A^T) < per(A) fails."""
        return self.newman_per_aat > self.newman_per_a

    def rows(self) -> list[tuple[str, Fraction]]:
        return [
            ("jurkat per(A)", self.jurkat_per_a),
            ("jurkat per(B)", self.jurkat_per_b),
            ("jurkat per(AB)", self.jurkat_per_ab),
            ("newman per(A)", self.newman_per_a),
            ("newman per(AA^T)", self.newman_per_aat),
        ]


def counterexample_suite() -> CounterexampleReport:
    report = CounterexampleReport(
        per(JURKAT_A),
        per(JURKAT_B),
        per(JURKAT_A @ JURKAT_B),
        per(NEWMAN_A),
        per(NEWMAN_A @ NEWMAN_A.transpose()),
    )
    assert report.jurkat_refutes and report.newman_refutes
    return report


# ---------------------------------------------------------------------------
# counting Latin squares and rectangles


def count_reduced_rectangles(r: int, n: int) -> int:
    """r x n rectangles with first row and first column in natural order."""
    from ._kernels import count_reduced_rectangles as kernel

    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if r == n:
        r = n - 1  # the last row of a square is forced
    return int(kernel(max(r, 1), n))


def count_reduced_squares(n: int) -> int:
    """l(n), the number of reduced Latin squares of order n."""
    if n < 1:
        raise ValueError("n must be positive")
    return 1 if n == 1 else count_reduced_rectangles(n, n)


def count_rectangles(r: int, n: int, normalized: bool = False) -> int:
    """Latin r x n rectangles on n symbols; ``normalized`` fixes only the first row.

    Relabelling symbols (fixing 0) and undoing it on the columns permutes the
    possible first columns transitively, so each of the (n-1)!/(n-r)! first
    columns is shared by the same number of first-row-normalized rectangles.
    """
    if r > n:
        raise ValueError(f"r = {r} exceeds n = {n}")
    if r < 1:
        raise ValueError("r must be positive")
    first_row_fixed = count_reduced_rectangles(r, n) * (factorial(n - 1) // factorial(n - r))
    return first_row_fixed if normalized else factorial(n) * first_row_fixed


@dataclass(frozen=True)
class SandwichVerdict:
    r: int
    n: int
    count: int
    lower: Fraction
    upper: str
    upper_no_factorial: str
    lower_verdict: str
    upper_verdict: str
    upper_no_factorial_verdict: str

    @property
    def holds(self) -> bool:
        return self.lower_verdict != "violated" and self.upper_verdict != "violated"


def rectangle_sandwich_check(r: int, n: int) -> SandwichVerdict:
    """Bracket L(r, n) between the van der Waerden and Brègman products.

    Row j + 1 can be appended in per(M) ways for an (n - j)-regular zero-one
    matrix M, so L(r, n) lies between prod_j (n!/n^n) (n+1-j)^n and
    prod_j ((n+1-j)!)^(n/(n+1-j)).  The upper product without the factorial
    is evaluated too, for comparison.
    """
    count = count_rectangles(r, n)
    lower = Fraction(factorial(n), n**n) ** r * prod(((n + 1 - j) ** n for j in range(1, r + 1)), start=1)
    upper = [(Fraction(factorial(n + 1 - j)), Fraction(n, n + 1 - j)) for j in range(1, r + 1)]
    no_factorial = [(Fraction(n + 1 - j), Fraction(n, n + 1 - j)) for j in range(1, r + 1)]
    return SandwichVerdict(
        r, n, count, lower,
        _decimal(_root_product(upper)),
        _decimal(_root_product(no_factorial)),
        _compare(Fraction(count), lower, "lower"),
        _power_compare(Fraction(count), upper, "upper"),
        _power_compare(Fraction(count), no_factorial, "upper"),
    )

