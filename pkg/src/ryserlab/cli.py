"""Command-line entry point: ``ryserlab <command> [verb] [flags]``.

Exit status is 0 on success, 1 when a computed result contradicts a theorem
or a checked bound, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import acceptance
from .core import (LatinError, LatinSquare, MatrixFormatError, ZeroOneMatrix, as_square, parse_matrix, parse_square,
                   parse_squares, parse_zero_one, serialize)
from .data import DATASETS
from .matching import (SDR, SetSystem, birkhoff_decompose, completable_rs, find_sdr, max_matching, min_line_cover)
from .mols import (ConstructionError, OrthogonalSystem, build_field, complete_system, macneish_mols,
                   plane_from_system, prime_power, system_from_plane, verify_plane)
from .permanents import (bound_report, circulant_identity_check, counterexample_suite, count_rectangles,
                         count_reduced_squares, derangement_identity_check, permanent, rectangle_sandwich_check)
from .problems import DesignParams, problem1_analyze, problem2_analyze
from .report import RunReport, digest
from .transversals import (OrderTooLarge, count_decompositions, count_decompositions_fast, count_transversals,
                           enumerate_transversals, find_decomposition, find_transversal, mate_from_decomposition)

COMMON_DEFAULTS = {"format": "text", "threads": 1, "data": None, "figures": None}


class InputError(Exception):
    pass


def _common(parser: argparse.ArgumentParser) -> None:
    # defaults are suppressed so the flags work before or after the subcommand
    g = parser.add_argument_group("common options")
    g.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS,
                   help="human-readable text or one JSON record per line")
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes (default 1)")
    g.add_argument("--data", choices=sorted(DATASETS), default=argparse.SUPPRESS,
                   help="use an embedded square instead of a file")
    g.add_argument("--figures", metavar="DIR", default=argparse.SUPPRESS, help="also write figures into DIR")


def _read(args) -> bytes:
    path = getattr(args, "input", None)
    if path is None:
        raise InputError("an input file is required")
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _square(args, report: RunReport) -> LatinSquare:
    if args.data:
        report.inputs_digest = digest("data", args.data)
        return DATASETS[args.data]()
    raw = _read(args)
    report.inputs_digest = digest(raw)
    return as_square(parse_square(raw))


def _zero_one(args, report) -> ZeroOneMatrix:
    raw = _read(args)
    report.inputs_digest = digest(raw)
    return parse_zero_one(raw)


def _matrix(args, report):
    raw = _read(args)
    report.inputs_digest = digest(raw)
    return parse_matrix(raw)


def _figure_dir(args) -> Path | None:
    return Path(args.figures) if args.figures else None


# ---------------------------------------------------------------------------
# matching


def cmd_match(args, rep):
    A = _zero_one(args, rep)
    m = max_matching(A)
    rep.add("size", len(m))
    rep.add("cells", [list(c) for c in m.cells])


def cmd_cover(args, rep):
    A = _zero_one(args, rep)
    cover = min_line_cover(A)
    rep.add("size", len(cover))
    rep.add("rows", list(cover.rows))
    rep.add("cols", list(cover.cols))
    rep.verdict("cover size equals matching size", len(cover) == len(max_matching(A)) and cover.covers(A))


def cmd_sdr(args, rep):
    A = _zero_one(args, rep)
    system = SetSystem.of([A.row_support(i) for i in range(A.m)], A.n)
    result = find_sdr(system)
    if isinstance(result, SDR):
        rep.add("sdr", list(result.representatives))
    else:
        rep.add("hall_violator", list(result.indices))
        rep.add("union", sorted(result.union))


def cmd_birkhoff(args, rep):
    A = _matrix(args, rep)
    if not A.is_doubly_stochastic():
        raise InputError("matrix is not doubly stochastic")
    dec = birkhoff_decompose(A)
    rep.add("terms", len(dec))
    for c, perm in dec.terms:
        rep.add("term", [c, list(perm)])
    rep.verdict("terms reconstruct the matrix exactly", dec.reconstruct().rows == A.rows)


def cmd_complete(args, rep):
    raw = _read(args)
    rep.inputs_digest = digest(raw, str(args.order))
    R = parse_square(raw, args.order)
    ok, sq = completable_rs(R)
    rep.add("completable", ok)
    if ok:
        rep.text = serialize(sq)


# ---------------------------------------------------------------------------
# transversals


def cmd_transversals(args, rep):
    sq = _square(args, rep)
    if args.verb == "count":
        rep.add("", count_transversals(sq, workers=args.threads))
    elif args.verb == "list":
        ts = enumerate_transversals(sq, workers=args.threads)
        rep.add("count", len(ts))
        rep.text = "".join(serialize(t) for t in ts)
    elif args.verb == "parity":
        k = count_transversals(sq, workers=args.threads)
        rep.add("order", sq.n)
        rep.add("transversals", k)
        same = k % 2 == sq.n % 2
        rep.add("verdict", "consistent" if same else "counterexample")
    else:
        t = find_transversal(sq)
        if t is None:
            rep.add("transversal", "none")
        else:
            rep.text = serialize(t)
            if _figure_dir(args):
                from .figures import square_plot
                square_plot(sq, _figure_dir(args) / "transversal.png", t)


def cmd_decompose(args, rep):
    sq = _square(args, rep)
    dec = find_decomposition(sq)
    if dec is None:
        rep.add("decomposition", "none")
        return
    rep.text = "".join(serialize(t) for t in dec.transversals)


def cmd_mate(args, rep):
    sq = _square(args, rep)
    dec = find_decomposition(sq)
    if dec is None:
        rep.add("mate", "none")
        return
    mate = mate_from_decomposition(sq, dec)
    rep.text = serialize(mate)
    if _figure_dir(args):
        from .figures import square_plot
        square_plot(sq, _figure_dir(args) / "square.png")
        square_plot(mate, _figure_dir(args) / "mate.png")


def cmd_decompositions_count(args, rep):
    sq = _square(args, rep)
    if args.engine == "python":
        count = count_decompositions(sq, limit=args.limit or None)
        finished = not args.limit or count < args.limit
    else:
        count, finished = count_decompositions_fast(sq, args.limit)
    rep.add("decompositions", count)
    rep.add("complete", finished)


# ---------------------------------------------------------------------------
# orthogonal systems and planes


def _field_system(p, a) -> OrthogonalSystem:
    if (p, a) == (2, 1):
        return OrthogonalSystem((LatinSquare.cyclic(2),))
    return complete_system(build_field(p, a))


def cmd_mols(args, rep):
    if args.verb == "gf":
        rep.inputs_digest = digest("gf", str(args.p), str(args.a))
        system = complete_system(build_field(args.p, args.a))
    else:
        rep.inputs_digest = digest("macneish", str(args.n))
        system = macneish_mols(args.n)
    rep.add("order", system.n)
    rep.add("squares", system.t)
    rep.text = serialize(list(system.squares))


def cmd_plane(args, rep):
    if args.verb == "build":
        pa = prime_power(args.n)
        if pa is None:
            raise InputError(f"{args.n} is not a prime power")
        if args.input:
            raw = _read(args)
            rep.inputs_digest = digest(raw)
            system = OrthogonalSystem(tuple(parse_squares(raw)))
        else:
            rep.inputs_digest = digest("plane", str(args.n))
            system = _field_system(*pa)
        plane = plane_from_system(system)
        ok = verify_plane(plane.matrix, plane.n)
        rep.text = serialize(plane.matrix)
        rep.verdict("AA^T = nI + J", ok)
        return
    A = _zero_one(args, rep)
    n = args.n
    if A.m != n * n + n + 1 or A.n != A.m:
        raise InputError(f"expected a {n * n + n + 1} x {n * n + n + 1} matrix for order {n}")
    if args.verb == "verify":
        rep.verdict("AA^T = nI + J", None, "holds" if verify_plane(A, n) else "does not hold")
        rep.add("plane", verify_plane(A, n))
    else:
        if not verify_plane(A, n):
            raise InputError("matrix is not a plane incidence matrix")
        system = system_from_plane(A, n)
        rep.add("squares", system.t)
        rep.text = serialize(list(system.squares))


# ---------------------------------------------------------------------------
# permanents and counting


def cmd_perm(args, rep):
    if args.verb == "compute":
        A = _matrix(args, rep)
        res = permanent(A, args.method)
        rep.add("permanent", res.value)
        rep.add("method", res.method)
    elif args.verb == "bounds":
        A = _matrix(args, rep)
        br = bound_report(A)
        rep.add("permanent", br.permanent)
        for b in br.bounds:
            rep.add(b.name, f"{b.kind} {b.value} {b.verdict}" + (f" ({b.note})" if b.note else ""))
        hard = [b for b in br.violated() if b.name != "minc_double"]
        rep.verdict("proven bounds hold", not hard, ", ".join(b.name for b in hard))
    elif args.verb == "counterexamples":
        rep.inputs_digest = digest("counterexamples")
        r = counterexample_suite()
        for key, value in r.rows():
            rep.add(key, value)
        rep.verdict("per(AB) > min(per A, per B) (Jurkat)", r.jurkat_refutes)
        rep.verdict("per(AA^T) > per(A) (Newman)", r.newman_refutes)
    else:
        rep.inputs_digest = digest("identity", str(args.n), str(args.x), str(args.y))
        d = derangement_identity_check(args.n)
        rep.add("derangements", d.derangements)
        rep.add("per(J-I)", d.permanent)
        rep.add("inclusion_exclusion", d.corrected_sum)
        rep.add("exponent_r_variant", d.exponent_r_sum)
        rep.verdict("D_n = per(J - I) = inclusion-exclusion sum", d.agrees)
        if args.n >= 2:
            c = circulant_identity_check(args.n, Fraction(args.x), Fraction(args.y))
            rep.add("per(xI+yP)", c.permanent)
            rep.add("x^n+y^n", c.closed_form)
            rep.add("kaplansky", list(c.coefficients))
            rep.verdict("circulant identity", c.agrees)


def cmd_count(args, rep):
    rep.inputs_digest = digest("count", args.verb, str(args.r), str(args.n), str(args.normalized))
    if args.verb == "squares":
        rep.add("reduced", count_reduced_squares(args.n))
    elif args.verb == "rectangles":
        r = args.r or args.n
        rep.add("rectangles", count_rectangles(r, args.n, normalized=args.normalized))
    else:
        rs = [args.r] if args.r else range(1, args.n + 1)
        verdicts = [rectangle_sandwich_check(r, args.n) for r in rs]
        for v in verdicts:
            rep.add(f"r={v.r}", f"lower {v.lower} count {v.count} upper {v.upper} "
                    f"[{v.lower_verdict}/{v.upper_verdict}] no-factorial upper {v.upper_no_factorial} "
                    f"[{v.upper_no_factorial_verdict}]")
        rep.verdict("lower <= L(r, n) <= upper", all(v.holds for v in verdicts))
        if _figure_dir(args):
            from .figures import sandwich_plot
            sandwich_plot(verdicts, _figure_dir(args) / f"sandwich_n{args.n}.png")


# ---------------------------------------------------------------------------
# problems


def cmd_problem1(args, rep):
    A = _zero_one(args, rep)
    res = problem1_analyze(A)
    rep.add("outcome", res.kind)
    if res.row is not None:
        rep.add("row", res.row)
    if res.witness:
        rep.add("witness", [list(w) if isinstance(w, tuple) else w for w in res.witness])
    rep.verdict("conclusion holds whenever hypotheses hold", res.consistent)


def cmd_problem2(args, rep):
    A = _zero_one(args, rep)
    rep.inputs_digest = digest(rep.inputs_digest, str(args.v), str(args.k), str(args.lam))
    res = problem2_analyze(A, DesignParams(args.v, args.k, args.lam))
    rep.add("premises_hold", res.premises_hold)
    if res.failed:
        rep.add("failed_premises", list(res.failed))
    rep.add("trace", res.trace)
    rep.verdict("trace = k whenever premises hold", res.consistent)


# ---------------------------------------------------------------------------
# acceptance


def _print_outcome(o):
    print(o.line(), file=sys.stderr, flush=True)


def cmd_acceptance(args, rep):
    only = set(args.only) if args.only else None
    rep.inputs_digest = digest("acceptance", args.scale, str(sorted(only or ())), str(args.decomp_limit))
    progress = _print_outcome if args.format == "text" else None
    outcomes = acceptance.run_suite(args.scale, only=only, decomp_limit=args.decomp_limit, progress=progress)
    for o in outcomes:
        for name, ok, detail in o.checks:
            rep.verdict(f"{o.number}. {name}", ok, detail)
        rep.add(f"criterion {o.number}", f"{o.status} {o.title}")
        rep.timing[f"criterion {o.number}"] = o.seconds
    if _figure_dir(args):
        from .figures import timing_plot
        timing_plot(outcomes, _figure_dir(args) / "acceptance_timing.png")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ryserlab", description="Latin squares, matchings and permanents, computed exactly.")
    _common(p)
    sub = p.add_subparsers(dest="command", required=True)

    def leaf(parent, name, fn, help, input_arg=True, **kw):
        sp = parent.add_parser(name, help=help, **kw)
        _common(sp)
        if input_arg:
            sp.add_argument("input", nargs="?", help="input file, '-' for stdin")
        sp.set_defaults(func=fn)
        return sp

    leaf(sub, "match", cmd_match, "maximum matching of a zero-one matrix")
    leaf(sub, "cover", cmd_cover, "minimum line cover of a zero-one matrix")
    leaf(sub, "sdr", cmd_sdr, "distinct representatives for the rows of an incidence matrix")
    leaf(sub, "birkhoff", cmd_birkhoff, "permutation-matrix decomposition of a doubly stochastic matrix")
    sp = leaf(sub, "complete", cmd_complete, "complete a Latin rectangle to a square")
    sp.add_argument("--order", type=int, help="order of the square (default: row length or symbol count)")

    tr = sub.add_parser("transversals", help="transversals of a Latin square")
    trs = tr.add_subparsers(dest="verb", required=True)
    for verb, help in (("count", "number of transversals"), ("list", "every transversal"),
                       ("parity", "transversal count against the order mod 2"), ("find", "first transversal")):
        leaf(trs, verb, cmd_transversals, help)
    leaf(sub, "decompose", cmd_decompose, "partition into disjoint transversals")
    leaf(sub, "mate", cmd_mate, "an orthogonal mate, if one exists")
    sp = leaf(sub, "decompositions-count", cmd_decompositions_count, "count partitions into transversals")
    sp.add_argument("--limit", type=int, default=0, help="stop after this many (0: no limit)")
    sp.add_argument("--engine", choices=("compiled", "python"), default="compiled")

    mo = sub.add_parser("mols", help="mutually orthogonal Latin squares")
    mos = mo.add_subparsers(dest="verb", required=True)
    sp = leaf(mos, "gf", cmd_mols, "complete system from GF(p^a)", input_arg=False)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--a", type=int, default=1)
    sp = leaf(mos, "macneish", cmd_mols, "direct-product system of order n", input_arg=False)
    sp.add_argument("--n", type=int, required=True)

    pl = sub.add_parser("plane", help="projective plane incidence matrices")
    pls = pl.add_subparsers(dest="verb", required=True)
    for verb, help in (("build", "plane from a complete system (file, or the field system of order n)"),
                       ("verify", "check AA^T = nI + J"), ("extract", "complete system from a plane")):
        sp = leaf(pls, verb, cmd_plane, help)
        sp.add_argument("--n", type=int, required=True)

    pe = sub.add_parser("perm", help="permanents")
    pes = pe.add_subparsers(dest="verb", required=True)
    sp = leaf(pes, "compute", cmd_perm, "exact permanent")
    sp.add_argument("--method", choices=("ryser", "naive"))
    leaf(pes, "bounds", cmd_perm, "evaluate every applicable bound")
    leaf(pes, "counterexamples", cmd_perm, "the Jurkat and Newman matrices", input_arg=False)
    sp = leaf(pes, "identity", cmd_perm, "derangement and circulant identities", input_arg=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", default="1")
    sp.add_argument("--y", default="1")

    co = sub.add_parser("count", help="count Latin squares and rectangles")
    cos = co.add_subparsers(dest="verb", required=True)
    for verb, help in (("squares", "reduced squares of order n"), ("rectangles", "Latin r x n rectangles"),
                       ("sandwich", "rectangle count against its product bounds")):
        sp = leaf(cos, verb, cmd_count, help, input_arg=False)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--r", type=int)
        sp.add_argument("--normalized", action="store_true", help="first row fixed")

    leaf(sub, "problem1", cmd_problem1, "row of ones from positive A^T A and no J - P minor")
    sp = leaf(sub, "problem2", cmd_problem2, "trace of a symmetric design matrix")
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", type=int, required=True)

    sp = leaf(sub, "acceptance", cmd_acceptance, "run the acceptance suite", input_arg=False)
    sp.add_argument("--scale", choices=acceptance.SCALES, default="quick")
    sp.add_argument("--only", type=int, nargs="+", metavar="K", help="run only these criteria")
    sp.add_argument("--decomp-limit", type=int, default=None,
                    help="cap for the exploratory decomposition count (0: count all)")
    return p


def _command_name(args) -> str:
    verb = getattr(args, "verb", None)
    return f"{args.command} {verb}" if verb else args.command


def _execute(argv) -> tuple[int, RunReport | None, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None, "text"
    for k, v in COMMON_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.threads < 1:
        print("ryserlab: --threads must be at least 1", file=sys.stderr)
        return 2, None, args.format
    rep = RunReport(_command_name(args))
    t0 = time.perf_counter()
    try:
        args.func(args, rep)
    except (InputError, LatinError, MatrixFormatError, ConstructionError, OrderTooLarge, ValueError) as exc:
        print(f"ryserlab: {exc}", file=sys.stderr)
        return 2, None, args.format
    rep.timing["total"] = time.perf_counter() - t0
    return (1 if rep.failed else 0), rep, args.format


def run(argv=None) -> tuple[int, RunReport | None]:
    code, rep, _ = _execute(argv)
    return code, rep


def main(argv=None) -> int:
    code, rep, fmt = _execute(argv)
    if rep is not None:
        sys.stdout.write(rep.render(fmt))
        if rep.failed:
            print("ryserlab: failed: " + ", ".join(v.name for v in rep.failed), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
