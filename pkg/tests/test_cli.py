import io
import json
import subprocess
import sys

import pytest

from revstruct.cli import main
from revstruct.syntax import parse_structure, parse_trace

JOIN = "<a> | <b> | [^a.b > c]\n"
DONE = "<c> | [a.b > c^]\n"


def cli(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "join.rs": JOIN,
        "done.rs": DONE,
        "dup.rs": "2*<a>|[^a>b]\n",
        "bad.rs": "<a> | [a >> b]\n",
        "proc.acs": "a! | a?.(b! | c?.d!) | c!\n",
        "nonlinear.acs": "a?.b! | a?.c!\n",
        "gates.rs": "<a>|<b>|<c>|<d>|[^a>e]|[^b>f]|[^c>g]|[^d>h]\n",
    }.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


def test_reach_join(files, tmp_path):
    witness = tmp_path / "w.tr"
    code, out, _ = cli("reach", "--from", files["join.rs"], "--to", files["done.rs"], "--witness", str(witness))
    assert code == 0
    assert "reachable" in out and "witness length: 3" in out
    trace = parse_trace(witness.read_text())
    assert trace.final == parse_structure(DONE)


def test_reach_exit_codes(files):
    assert cli("reach", "--from", files["join.rs"], "--to", files["join.rs"], "--oracle")[0] == 0
    code, _, err = cli("reach", "--from", files["dup.rs"], "--to", files["dup.rs"])
    assert code == 1 and "not coherent" in err
    code, out, _ = cli("reach", "--from", files["gates.rs"], "--to", files["join.rs"], "--oracle", "--max-states", "5")
    assert code == 2 and out.startswith("inconclusive")


def test_reach_unreachable(files, tmp_path):
    other = tmp_path / "other.rs"
    other.write_text("<a> | [^a.b > c]\n")
    code, out, _ = cli("reach", "--from", str(other), "--to", files["done.rs"])
    assert code == 1 and out.strip() == "unreachable"


def test_coherent_duplicate(files):
    code, out, _ = cli("coherent", files["dup.rs"])
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "incoherent" and any(l.startswith("violation") for l in lines[1:])
    assert cli("coherent", files["join.rs"])[0] == 0


def test_run_forward_join(files):
    code, out, _ = cli("run", files["join.rs"], "--policy=forward", "--fuel=10")
    assert code == 0
    assert "final: <c> | [a.b > c^]" in out


def test_run_emit_trace_round_trip(files, tmp_path):
    trace = tmp_path / "run.tr"
    code, _, _ = cli("run", files["join.rs"], "--policy=random:7", "--fuel=8", "--emit-trace", str(trace))
    assert code == 0
    assert cli("standardize", str(trace))[0] == 0
    assert cli("equiv", str(trace), str(trace))[0] == 0


def test_run_interactive(files):
    code, out, _ = cli("run", files["join.rs"], "--policy=interactive", "--fuel=5", stdin="0\nx\n0\nq\n")
    assert code == 0
    assert "[0] fwd [^a.b > c]" in out
    assert "steps: 2 (user)" in out


def test_step_lists_labels(files):
    code, out, _ = cli("step", files["join.rs"])
    assert code == 0 and out.splitlines() == ["fwd [^a.b > c]"]


def test_parse_and_errors(files):
    code, out, _ = cli("parse", "-", stdin="[^a.b>c]|<b>|<a>")
    assert code == 0 and out.strip() == "<a> | <b> | [^a.b > c]"
    code, _, err = cli("parse", files["bad.rs"])
    assert code == 1 and "1:" in err
    assert cli("parse", str(files["dir"] / "missing.rs"))[0] == 1


def test_print_kinds(files):
    assert cli("print", "--kind", "process", files["proc.acs"])[1].strip() == "a! | a?.(b! | c?.d!) | c!"


def test_usage_errors(files):
    assert cli("frobnicate")[0] == 64
    assert cli("parse", files["join.rs"], "--bogus")[0] == 64
    assert cli("run", files["join.rs"], "--policy=sideways")[0] == 64
    assert cli("run", files["join.rs"], "--fuel=-3")[0] == 64
    assert cli("reach", "--from", files["join.rs"])[0] == 64


def test_nf(files):
    code, out, _ = cli("nf", "-", stdin=DONE)
    assert code == 0 and out.splitlines()[0] == "nf: <a> | <b> | [^a.b > c]"
    assert len(out.splitlines()) == 4


def test_standardize_reports_stuck(tmp_path):
    t = tmp_path / "s.tr"
    t.write_text("init: [ > ^a] | [b > a^]\nfwd [ > ^a]\nbwd [b > a^]\n")
    code, out, _ = cli("standardize", str(t))
    assert code == 0 and "# stuck adjacency at steps 1,2" in out


def test_equiv_verdicts(tmp_path):
    a = tmp_path / "a.tr"
    b = tmp_path / "b.tr"
    a.write_text("init: 2*<a> | [^a>b] | [^a>c]\nfwd [^a>b]\n")
    b.write_text("init: 2*<a> | [^a>b] | [^a>c]\nfwd [^a>c]\n")
    code, out, _ = cli("equiv", str(a), str(b))
    assert code == 1 and out.strip() == "not-equivalent"


def test_compile_and_correspond(files, tmp_path):
    target = tmp_path / "enc.rs"
    code, out, _ = cli("compile", files["proc.acs"], "-o", str(target))
    assert code == 0 and "trigger t0 -> c?" in out
    assert parse_structure(target.read_text()) == parse_structure("<a> | <c> | [^a > t0.b] | [^t0.c > d]")
    code, out, _ = cli("correspond", files["proc.acs"])
    assert code == 0 and out.startswith("pass")
    code, _, err = cli("correspond", files["nonlinear.acs"])
    assert code == 1 and "a" in err
    assert cli("correspond", files["proc.acs"], "--max-states", "2")[0] == 2


def test_json_format(files):
    code, out, _ = cli("reach", "--from", files["join.rs"], "--to", files["done.rs"], "--format", "json")
    record = json.loads(out)
    assert code == 0 and record["command"] == "reach" and record["verdict"] == "reachable"
    assert record["witness_length"] == 3
    code, out, _ = cli("coherent", files["dup.rs"], "--format=json")
    record = json.loads(out)
    assert record["verdict"] == "incoherent" and record["violations"]


def test_bench_small():
    code, out, _ = cli("bench", "--sizes", "10,20,40", "--repeat", "1", "--kernel", "both")
    assert code == 0 and "log-log slope" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("run", "join.rs", "--policy=random:42", "--fuel=6"),
        ("correspond", "proc.acs", "--format=json"),
        ("reach", "--from", "join.rs", "--to", "done.rs", "--format=json"),
    ],
)
def test_deterministic_output(files, argv):
    argv = [files.get(a, a) for a in argv]
    assert cli(*argv) == cli(*argv)


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "revstruct", "coherent", files["join.rs"]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "coherent"
