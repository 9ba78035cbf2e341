"""Acceptance suite: every headline number and property, each with a time budget.

``run_suite("quick")`` skips the long-running items; ``run_suite("full")``
includes l(7) and the order-6 orthogonal-mate sweep.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import factorial

from . import oracles
from .core import LatinSquare, ZeroOneMatrix, iter_reduced_squares, random_latin_square
from .data import parker, parker_swapped
from .matching import SetSystem, max_matching, min_line_cover
from .mols import (OrthogonalSystem, are_orthogonal, build_field, complete_system, first_bad_column_pair, macneish_mols,
                   plane_from_system, prime_power, system_from_plane, system_to_schema, verify_plane)
from .permanents import (bound_report, circulant_identity_check, counterexample_suite, count_reduced_squares,
                         derangement, derangement_identity_check, j_minus_i, marcus_minc_diagonal, per, permanent,
                         random_doubly_stochastic, rectangle_sandwich_check)
from .transversals import (count_decompositions_fast, count_transversals, find_decomposition, find_transversal)

SCALES = ("quick", "full")
PARKER_MATES_FIGURE = 12_265_168
SEED = 20240601


@dataclass
class Outcome:
    number: int
    title: str
    ok: bool | None  # None: exploratory or skipped at this scale
    budget: float | None
    seconds: float = 0.0
    checks: list[tuple[str, bool | None, str]] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.ok is None:
            return "INFO"
        return "PASS" if self.ok else "FAIL"

    def line(self) -> str:
        budget = f" (budget {self.budget:g}s)" if self.budget else ""
        return f"[{self.status}] criterion {self.number}: {self.title} - {self.seconds:.2f}s{budget}"


class _Criterion:
    """Collects sub-checks and times the whole criterion."""

    def __init__(self, number, title, budget):
        self.out = Outcome(number, title, None, budget)
        self.any_checked = False

    def check(self, name: str, ok: bool | None, detail: str = ""):
        self.out.checks.append((name, ok, detail))
        if ok is not None:
            self.any_checked = True

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.out.seconds = time.perf_counter() - self.t0
        if self.any_checked:
            within = self.out.budget is None or self.out.seconds <= self.out.budget
            if not within:
                self.check("within time budget", False, f"{self.out.seconds:.1f}s > {self.out.budget:g}s")
            self.out.ok = all(ok is not False for _, ok, _ in self.out.checks)
        return False


def reduced_square_counts(scale):
    budget = 60 if scale == "quick" else 3600
    with _Criterion(1, "reduced Latin square counts", budget) as c:
        for n, want in ((5, 56), (6, 9408)):
            got = count_reduced_squares(n)
            c.check(f"l({n}) = {want}", got == want, f"got {got}")
        got4 = count_reduced_squares(4)
        c.check("l(4) = 4 (not 1)", got4 == 4 == oracles.count_reduced_squares(4), f"got {got4}")
        if scale == "full":
            got = count_reduced_squares(7)
            c.check("l(7) = 16942080", got == 16_942_080, f"got {got}")
        else:
            c.check("l(7) = 16942080", None, "skipped at quick scale")
    return c.out


def parker_transversals(scale):
    with _Criterion(2, "Parker square transversals", 20) as c:
        t0 = time.perf_counter()
        got = count_transversals(parker())
        c.check("Parker square has 5504 transversals", got == 5504, f"got {got}, {time.perf_counter() - t0:.2f}s")
        t0 = time.perf_counter()
        got = count_transversals(parker_swapped())
        c.check("swapped variant has 0 transversals", got == 0, f"got {got}, {time.perf_counter() - t0:.2f}s")
    return c.out


def euler_order_six(scale):
    with _Criterion(3, "no reduced order-6 square has an orthogonal mate", 900) as c:
        if scale != "full":
            c.check("order-6 mate sweep", None, "skipped at quick scale")
            return c.out
        seen = 0
        with_mate = []
        for sq in iter_reduced_squares(6):
            seen += 1
            if find_decomposition(sq) is not None:
                with_mate.append(sq)
        c.check("9408 reduced squares examined", seen == 9408, f"got {seen}")
        c.check("none decomposes into 6 disjoint transversals", not with_mate, f"{len(with_mate)} decompose")
    return c.out


def parity(scale, seed=SEED):
    with _Criterion(4, "transversal count parity", 60 if scale == "quick" else 600) as c:
        orders = (4, 6) if scale == "full" else (4,)
        for n in orders:
            odd = [sq for sq in iter_reduced_squares(n) if count_transversals(sq) % 2]
            c.check(f"every reduced order-{n} square has an even count", not odd, f"{len(odd)} odd")
        if scale != "full":
            c.check("every reduced order-6 square has an even count", None, "skipped at quick scale")
        rng = random.Random(seed)
        found = None
        for attempt in range(1, 5001):
            sq = random_latin_square(7, rng)
            k = count_transversals(sq)
            if k % 2 == 0:
                found = (attempt, k, sq)
                break
        detail = "none found" if found is None else f"attempt {found[0]}, {found[1]} transversals"
        c.check("an order-7 square with an even transversal count", found is not None, detail)
    return c.out


def odd_order_five(scale):
    with _Criterion(5, "every reduced order-5 square has a transversal", 5) as c:
        squares = list(iter_reduced_squares(5))
        missing = [sq for sq in squares if find_transversal(sq) is None]
        c.check("56 reduced order-5 squares", len(squares) == 56, f"got {len(squares)}")
        c.check("each has a transversal", not missing, f"{len(missing)} without")
    return c.out


def counterexamples(scale):
    with _Criterion(6, "Jurkat and Newman permanents", 1) as c:
        r = counterexample_suite()
        c.check("Jurkat per(A) = 3808/13824", r.jurkat_per_a == Fraction(3808, 13824), str(r.jurkat_per_a))
        c.check("Jurkat per(AB) = 3840/13824", r.jurkat_per_ab == Fraction(3840, 13824), str(r.jurkat_per_ab))
        c.check("Newman per(A) = 8/64", r.newman_per_a == Fraction(8, 64), str(r.newman_per_a))
        c.check("Newman per(AA^T) = 9/64", r.newman_per_aat == Fraction(9, 64), str(r.newman_per_aat))
    return c.out


def derangements(scale):
    with _Criterion(7, "per(J - I) = D_n and the inclusion-exclusion sum", 5) as c:
        bad = []
        variant_bad = []
        for n in range(1, 13):
            d = derangement_identity_check(n)
            if not d.agrees or per(j_minus_i(n)) != derangement(n):
                bad.append(n)
            if d.exponent_r_sum != d.derangements:
                variant_bad.append(n)
        c.check("D_n = per(J - I) = corrected sum for n <= 12", not bad, f"disagree at {bad}" if bad else "")
        c.check("sum with exponent r on (n-r-1)", None, f"disagrees at n in {variant_bad}")
    return c.out


def circulants(scale, seed=SEED):
    with _Criterion(8, "circulant permanent identity", 5) as c:
        rng = random.Random(seed)
        bad = []
        for _ in range(5):
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            y = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            for n in range(2, 11):
                if not circulant_identity_check(n, x, y).agrees:
                    bad.append((n, x, y))
        c.check("per(xI + yP) = x^n + y^n = Kaplansky expansion, n <= 10, 5 rational pairs", not bad, str(bad[:3]))
    return c.out


def mols_systems(scale):
    with _Criterion(9, "complete orthogonal systems and MacNeish", 30) as c:
        for n in (3, 4, 5, 7, 8, 9):
            p, a = prime_power(n)
            system = complete_system(build_field(p, a))
            pairwise = all(are_orthogonal(x, y) for i, x in enumerate(system.squares) for y in system.squares[i + 1:])
            schema = system_to_schema(system)
            c.check(f"order {n}: {n - 1} pairwise orthogonal squares, schema valid",
                    system.t == n - 1 and pairwise and first_bad_column_pair(n, schema.rows) is None)
        m12 = macneish_mols(12)
        c.check("MacNeish gives 2 orthogonal squares of order 12",
                m12.t == 2 and are_orthogonal(*m12.squares)
                and first_bad_column_pair(12, system_to_schema(m12).rows) is None)
    return c.out


def planes(scale):
    with _Criterion(10, "projective planes from complete systems", 30) as c:
        for n in (2, 3, 4, 5, 7, 8, 9):
            system = _complete(n)
            plane = plane_from_system(system)
            ok = verify_plane(plane.matrix, n)
            back = system_from_plane(plane)
            c.check(f"order {n}: AA^T = nI + J and round trip gives a complete system",
                    ok and back.t == n - 1 and back.n == n)
    return c.out


def _complete(n):
    if n == 2:
        return OrthogonalSystem((LatinSquare.cyclic(2),))
    p, a = prime_power(n)
    return complete_system(build_field(p, a))


EXAMPLE_5 = [[1, 0, 1, 1], [0, 1, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]]


def konig(scale, seed=SEED, trials=1000):
    with _Criterion(11, "matching size equals line cover size", 60) as c:
        A = ZeroOneMatrix.from_lists(EXAMPLE_5)
        m, cover = max_matching(A), min_line_cover(A)
        c.check("example: matching 3, cover 3 (one row, two columns)",
                len(m) == 3 and len(cover) == 3 and len(cover.rows) == 1, f"rows {cover.rows} cols {cover.cols}")
        rng = random.Random(seed)
        bad = []
        exhaustive = 0
        for _ in range(trials):
            rows, cols = rng.randint(1, 8), rng.randint(1, 8)
            dens = rng.random()
            data = [[int(rng.random() < dens) for _ in range(cols)] for _ in range(rows)]
            A = ZeroOneMatrix.from_lists(data)
            m, cover = max_matching(A), min_line_cover(A)
            ok = len(m) == len(cover) and cover.covers(A)
            if rows <= 6 and cols <= 6:
                exhaustive += 1
                ok = ok and oracles.min_cover_size(data) == len(cover) == oracles.max_matching_size(data)
            if not ok:
                bad.append(data)
        c.check(f"{trials} random matrices up to 8x8 ({exhaustive} checked exhaustively)", not bad,
                f"{len(bad)} failures")
    return c.out


def _random_matrix(rng, n):
    return [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if rng.random() < 0.8 else Fraction(0)
             for _ in range(n)] for _ in range(n)]


def property_suites(scale, seed=SEED):
    with _Criterion(12, "property suites", 300) as c:
        rng = random.Random(seed)

        bad = 0
        for k in range(500):
            n = 1 + k % 7
            rows = _random_matrix(rng, n)
            if permanent(rows, "ryser").value != oracles.permanent_by_permutations(rows):
                bad += 1
        c.check("Ryser = definition on 500 matrices, n <= 7", bad == 0, f"{bad} mismatches")

        bad = 0
        for _ in range(300):
            m = rng.randint(1, 5)
            ground = rng.randint(m, 6)
            sets = [set(x for x in range(ground) if rng.random() < 0.5) for _ in range(m)]
            A = SetSystem.of(sets, ground).incidence()
            if per(A.to_exact()) != oracles.sdr_count(sets):
                bad += 1
        c.check("number of SDRs = per(incidence), m <= 5", bad == 0, f"{bad} mismatches")

        bad = 0
        for _ in range(200):
            n = rng.randint(1, 5)
            A = random_doubly_stochastic(n, rng)
            if per(A) < Fraction(factorial(n), n**n) or bound_report(A).by_name("van_der_waerden").verdict == "violated":
                bad += 1
        c.check("per >= n!/n^n on random doubly stochastic, n <= 5", bad == 0, f"{bad} violations")

        bad = 0
        for _ in range(200):
            n = rng.randint(1, 4)
            A = random_doubly_stochastic(n, rng)
            sigma, prod_ = marcus_minc_diagonal(A)
            best = max(_diag(A.rows, p) for p in permutations(range(n)))
            if prod_ != best or prod_ < Fraction(1, n**n) or _diag(A.rows, sigma) != prod_:
                bad += 1
        c.check("some diagonal product >= 1/n^n, n <= 4", bad == 0, f"{bad} failures")

        counts = {"minc": 0, "bregman": 0, "row_col_min": 0, "hall": 0}
        findings = 0
        total = 0
        for A in _zero_one_class(4):
            rep = bound_report(A)
            total += 1
            for name in counts:
                if rep.by_name(name).verdict == "violated":
                    counts[name] += 1
            findings += rep.by_name("minc_double").verdict == "violated"
        c.check(f"Minc, Bregman, min(r, s) and Hall bounds on {total} zero-one matrices n <= 4",
                not any(counts.values()), str(counts))
        c.check("conjectured double bound", None, f"{findings} violations among {total}")

        bad = []
        variant_bad = []
        for n in range(1, 7):
            for r in range(1, n + 1):
                s = rectangle_sandwich_check(r, n)
                if not s.holds:
                    bad.append((r, n))
                if s.upper_no_factorial_verdict == "violated":
                    variant_bad.append((r, n))
        c.check("L(r, n) between the product bounds, r <= n <= 6", not bad, str(bad))
        c.check("upper product without the factorial", None, f"exceeded by L(r, n) at {len(variant_bad)} of 21 (r, n)")
    return c.out


def _diag(rows, p):
    out = Fraction(1)
    for i, j in enumerate(p):
        out *= rows[i][j]
    return out


def _zero_one_class(nmax):
    """Every square zero-one matrix up to order nmax, rows in nonincreasing order.

    The permanent and every bound checked are invariant under row permutations,
    so one representative per row multiset suffices.
    """
    for n in range(1, nmax + 1):
        for rows in combinations_with_replacement(range((1 << n) - 1, -1, -1), n):
            yield ZeroOneMatrix(n, n, rows).to_exact()


def parker_decompositions(scale, limit: int | None = None):
    """Exploratory: never pass/fail."""
    if limit is None:
        limit = 20_000 if scale == "quick" else 0
    with _Criterion(13, "Parker square decompositions (exploratory)", None) as c:
        count, finished = count_decompositions_fast(parker(), limit)
        what = f"{count} decompositions" if finished else f"at least {count} decompositions (stopped at limit)"
        c.check("decompositions into 10 disjoint transversals", None, what)
        mates = count * factorial(10)
        if finished:
            same = "equals" if count == PARKER_MATES_FIGURE else "differs from"
            note = f"the decomposition count {same} {PARKER_MATES_FIGURE}; mates = decompositions x 10! = {mates}"
        else:
            note = f"at least {mates} mates as decompositions x 10!"
        c.check("quoted mate figure", None,
                f"{PARKER_MATES_FIGURE} is not a multiple of 10! = {factorial(10)}, so it cannot count "
                f"mates as decompositions x 10!; {note}")
    return c.out


CRITERIA = (reduced_square_counts, parker_transversals, euler_order_six, parity, odd_order_five, counterexamples,
            derangements, circulants, mols_systems, planes, konig, property_suites, parker_decompositions)


def run_suite(scale: str = "quick", only=None, decomp_limit: int | None = None, progress=None) -> list[Outcome]:
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    out = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        o = fn(scale, limit=decomp_limit) if fn is parker_decompositions else fn(scale)
        out.append(o)
        if progress:
            progress(o)
    return out
