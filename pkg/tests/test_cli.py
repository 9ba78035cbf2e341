import json
import subprocess
import sys

import pytest

from ryserlab.cli import main, run

EXAMPLE = "1011\n0100\n1000\n1000\n"


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _records(out):
    return [json.loads(line) for line in out.splitlines()]


def _strip_timing(out):
    return "".join(line + "\n" for line in out.splitlines()
                   if not line.startswith("# time") and '"type": "timing"' not in line)


def test_parker_count(capsys):
    code, out, _ = _run(capsys, "transversals", "count", "--data", "parker")
    assert code == 0 and out.splitlines()[0] == "5504"


def test_parker_swapped_count(capsys):
    code, out, _ = _run(capsys, "transversals", "count", "--data", "parker-swapped")
    assert code == 0 and out.splitlines()[0] == "0"


def test_counterexamples(capsys):
    code, out, _ = _run(capsys, "perm", "counterexamples")
    assert code == 0
    for value in ("119/432", "5/18", "1/8", "9/64"):
        assert value in out


def test_global_flags_before_or_after(capsys):
    _, a, _ = _run(capsys, "--format", "records", "transversals", "count", "--data", "parker")
    _, b, _ = _run(capsys, "transversals", "count", "--data", "parker", "--format", "records")
    assert _strip_timing(a) == _strip_timing(b)
    recs = _records(a)
    assert recs[0]["type"] == "run" and recs[0]["command"] == "transversals count"
    assert any(r.get("value") == 5504 for r in recs)


@pytest.mark.parametrize("argv", [
    ["transversals", "parity", "--data", "parker"],
    ["mols", "gf", "--p", "2", "--a", "2"],
    ["perm", "identity", "--n", "6", "--x", "1/2", "--y", "3"],
    ["count", "sandwich", "--n", "4"],
])
@pytest.mark.parametrize("fmt", ["text", "records"])
def test_deterministic_apart_from_timing(capsys, argv, fmt):
    _, a, _ = _run(capsys, *argv, "--format", fmt)
    _, b, _ = _run(capsys, *argv, "--format", fmt)
    assert _strip_timing(a) == _strip_timing(b)
    assert a != "" and _strip_timing(a) != a


def test_threads_flag_same_answer(capsys):
    _, a, _ = _run(capsys, "transversals", "count", "--data", "parker")
    _, b, _ = _run(capsys, "transversals", "count", "--data", "parker", "--threads", "2")
    assert _strip_timing(a) == _strip_timing(b)


def test_cover_and_match(tmp_path, capsys):
    f = tmp_path / "a.txt"
    f.write_text(EXAMPLE)
    code, out, _ = _run(capsys, "cover", str(f))
    assert code == 0 and "size: 3" in out and "rows: [0]" in out and "cols: [0, 1]" in out
    code, out, _ = _run(capsys, "match", str(f))
    assert code == 0 and "size: 3" in out


def test_sdr_violator(tmp_path, capsys):
    f = tmp_path / "a.txt"
    f.write_text(EXAMPLE)
    code, out, _ = _run(capsys, "sdr", str(f))
    assert code == 0 and "hall_violator" in out


def test_birkhoff(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("2 2\n1/3 2/3\n2/3 1/3\n")
    code, out, _ = _run(capsys, "birkhoff", str(f))
    assert code == 0 and "terms: 2" in out
    f.write_text("2 2\n1 1\n0 1\n")
    code, _, err = _run(capsys, "birkhoff", str(f))
    assert code == 2 and "doubly stochastic" in err


def test_complete(tmp_path, capsys):
    f = tmp_path / "r.txt"
    f.write_text("0 1\n1 2\n")
    code, out, _ = _run(capsys, "complete", str(f), "--order", "3")
    assert code == 0 and "completable: True" in out
    f.write_text("1 2\n2 1\n")
    code, out, _ = _run(capsys, "complete", str(f), "--order", "3")
    assert code == 0 and "completable: False" in out


def test_mate_and_figures(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text("0 1 2\n1 2 0\n2 0 1\n")
    code, out, _ = _run(capsys, "mate", str(f), "--figures", str(tmp_path / "fig"))
    assert code == 0 and out.startswith("0 1 2\n2 0 1\n1 2 0\n")
    assert (tmp_path / "fig" / "mate.png").exists()


def test_mate_none_for_even_cyclic(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text("0 1\n1 0\n")
    code, out, _ = _run(capsys, "mate", str(f))
    assert code == 0 and "mate: none" in out


def test_plane_build_verify_extract(tmp_path, capsys):
    code, out, _ = _run(capsys, "plane", "build", "--n", "3")
    assert code == 0
    body = "".join(line + "\n" for line in out.splitlines() if line and line[0] in "01")
    f = tmp_path / "p.txt"
    f.write_text(body)
    code, out, _ = _run(capsys, "plane", "verify", str(f), "--n", "3")
    assert code == 0 and "plane: True" in out
    code, out, _ = _run(capsys, "plane", "extract", str(f), "--n", "3")
    assert code == 0 and "squares: 2" in out
    code, _, _ = _run(capsys, "plane", "verify", str(f), "--n", "4")
    assert code == 2


def test_bounds_exit_codes(tmp_path, capsys):
    f = tmp_path / "m.txt"
    f.write_text("3 3\n1 1 1\n1 1 1\n1 1 1\n")
    code, out, _ = _run(capsys, "perm", "bounds", str(f))
    assert code == 0 and "hall: lower 6 boundary" in out


def test_problem2_exit_codes(tmp_path, capsys):
    rows = ["".join("1" if (i + j) % 7 in (1, 2, 4) else "0" for j in range(7)) for i in range(7)]
    f = tmp_path / "d.txt"
    f.write_text("\n".join(rows) + "\n")
    code, out, _ = _run(capsys, "problem2", str(f), "--v", "7", "--k", "3", "--lambda", "1")
    assert code == 0 and "trace: 3" in out


def test_problem1(tmp_path, capsys):
    f = tmp_path / "a.txt"
    f.write_text("111\n100\n010\n")
    code, out, _ = _run(capsys, "problem1", str(f))
    assert code == 0 and "all_ones_row" in out


def test_count_commands(capsys):
    assert "reduced: 56" in _run(capsys, "count", "squares", "--n", "5")[1]
    assert "rectangles: 216" in _run(capsys, "count", "rectangles", "--r", "2", "--n", "4")[1]
    assert "rectangles: 9" in _run(capsys, "count", "rectangles", "--r", "2", "--n", "4", "--normalized")[1]


def test_sandwich_figure(tmp_path, capsys):
    code, _, _ = _run(capsys, "count", "sandwich", "--n", "5", "--figures", str(tmp_path))
    assert code == 0 and (tmp_path / "sandwich_n5.png").exists()


def test_decompositions_count(capsys):
    code, out, _ = _run(capsys, "decompositions-count", "--data", "parker", "--limit", "100")
    assert code == 0 and "decompositions: 100" in out and "complete: False" in out


@pytest.mark.parametrize("argv", [["bogus"], ["transversals"], ["cover", "/nonexistent/file"],
                                  ["mols", "gf", "--p", "6"], ["mols", "macneish", "--n", "10"],
                                  ["transversals", "count"], ["--threads", "0", "perm", "counterexamples"]])
def test_input_errors_exit_two(capsys, argv):
    code, _, _ = _run(capsys, *argv)
    assert code == 2


def test_malformed_square(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text("0 1\n0 1\n")
    code, _, err = _run(capsys, "transversals", "count", str(f))
    assert code == 2 and err.startswith("ryserlab:")


def test_violation_exits_one(monkeypatch, tmp_path, capsys):
    import ryserlab.cli as cli
    from ryserlab.permanents import Bound, BoundReport

    fake = BoundReport(1, (Bound("minc", "upper", "0", "violated"),))
    monkeypatch.setattr(cli, "bound_report", lambda A: fake)
    f = tmp_path / "m.txt"
    f.write_text("1 1\n1\n")
    code, _, err = _run(capsys, "perm", "bounds", str(f))
    assert code == 1 and "failed" in err


def test_run_returns_report():
    code, rep = run(["perm", "counterexamples"])
    assert code == 0 and rep.command == "perm counterexamples"
    assert rep.render("text", timing=False) == run(["perm", "counterexamples"])[1].render("text", timing=False)


def test_stdin_input():
    proc = subprocess.run([sys.executable, "-m", "ryserlab.cli", "cover", "-"], input=EXAMPLE,
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "size: 3" in proc.stdout


def test_acceptance_subset(tmp_path, capsys):
    code, out, err = _run(capsys, "acceptance", "--only", "6", "7", "--figures", str(tmp_path))
    assert code == 0
    assert "[PASS] criterion 6" in err and "[PASS] criterion 7" in err
    assert (tmp_path / "acceptance_timing.png").exists()
