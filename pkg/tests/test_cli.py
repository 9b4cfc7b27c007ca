import subprocess
import sys

import pytest

from rbred import cli, fast


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, line",
    [
        (["compute", "--n", "23", "--method", "closed"], "r(23) = 15"),
        (["compute", "--n", "3", "--method", "oracle", "--min"], "s(3) = 0"),
        (["compute", "--n", "0", "--method", "closed"], "r(0) = 0"),
        (["compute", "--n", "10", "--method", "dp"], "r(10) = 6"),
        (["compute", "--n", "4", "--method", "dp", "--min"], "s(4) = 1"),
        (["compute", "--n", "12", "--method", "triangle"], "r(12) = 7"),
        (["compute", "--n", "9", "--method", "rec"], "r(9) = 5"),
    ],
)
def test_compute(capsys, argv, line):
    assert run(capsys, *argv) == (0, line + "\n", "")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["compute", "--n", "5", "--method", "closed", "--min"], 2),
        (["compute", "--n", "-1"], 2),
        (["compute", "--n", "x"], 2),
        (["compute", "--n", "5", "--method", "nope"], 2),
        (["frobnicate"], 2),
        (["table", "--rows", "21"], 2),
        (["compute", "--n", "11", "--method", "oracle"], 3),
        (["compute", "--n", "300", "--method", "dp", "--dp-cap", "256"], 3),
        (["compute", "--n", str(2**62)], 3),
        (["build", "--n", "20", "--builder-cap", "10"], 3),
        (["bench", "--methods", "dp", "--n", "5000"], 3),
        (["bench", "--methods", "warp"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert out == ""
    assert err


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--rows", "4")
    assert code == 0
    assert out.splitlines() == ["0", "1,1", "2,2,3,4", "5,4,5,6,7,7,8,9"]
    assert run(capsys, "table", "--rows", "1")[1] == "0\n"
    assert run(capsys, "table", "--rows", "0")[1] == ""


def test_table_row_lengths(capsys):
    out = run(capsys, "table", "--rows", "12")[1].splitlines()
    assert [len(line.split(",")) for line in out] == [2**i for i in range(12)]


def test_build_text(capsys):
    assert run(capsys, "build", "--n", "1")[1] == "(1R()())\n"
    assert run(capsys, "build", "--n", "3", "--format", "text")[1] == "(2B(1R()())(3R()()))\n"


def test_build_dot(capsys):
    out = run(capsys, "build", "--n", "9", "--format", "dot")[1]
    assert out.startswith("digraph rbt {\n  node [style=filled];\n")
    assert out.count("fillcolor=") == 9
    assert out.count("fillcolor=red") == 5
    assert out.count("->") == 8


def test_verify_ok(capsys):
    assert run(capsys, "verify", "--lo", "1", "--hi", "10") == (0, "OK 10 values\n", "")
    assert run(capsys, "verify", "--lo", "1", "--hi", "512", "--oracle-cap", "0") == (0, "OK 512 values\n", "")


def test_verify_beyond_dp_cap(capsys):
    code, out, _ = run(capsys, "verify", "--lo", "90", "--hi", "140", "--dp-cap", "100", "--oracle-cap", "0")
    assert (code, out) == (0, "OK 51 values\n")


def test_verify_reports_injected_fault(capsys, monkeypatch):
    def broken(n):
        return fast.r_rec(n) + (n == 6)

    monkeypatch.setitem(cli.METHODS, "rec", broken)
    code, out, _ = run(capsys, "verify", "--lo", "1", "--hi", "10")
    assert code == 1
    assert out == "MISMATCH n=6 closed=4 rec=5\n"


def test_verify_bad_range(capsys):
    assert run(capsys, "verify", "--lo", "5", "--hi", "4")[0] == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--methods", "closed,rec", "--n", "7", str(10**18), "--reps", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "method,n,nanoseconds"
    assert [line.rsplit(",", 1)[0] for line in lines[1:]] == [
        "closed,7",
        f"closed,{10**18}",
        "rec,7",
        f"rec,{10**18}",
    ]
    assert all(int(line.rsplit(",", 1)[1]) >= 0 for line in lines[1:])


def test_bench_empty(capsys):
    assert run(capsys, "bench", "--methods", "closed,dp") == (0, "method,n,nanoseconds\n", "")


def test_outputs_are_deterministic(capsys):
    for argv in (["table", "--rows", "6"], ["build", "--n", "50", "--format", "dot"], ["compute", "--n", "99"]):
        assert run(capsys, *argv) == run(capsys, *argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rbred", "compute", "--n", "23"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "r(23) = 15\n"
