"""End-to-end checks of the command-line interface via subprocess.

Exit code contract: 0 success, 2 failure/usage, 3 budget exhausted,
4 unparsable input.
"""

import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def run(*args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "repet2d.cli", *args],
        capture_output=True, text=True, timeout=300, **kw,
    )


def test_gen_and_measure_pipeline(tmp_path):
    out = tmp_path / "m.txt"
    r = run("gen", "--family", "diagpad", "--params", "4", "6", "--out", str(out))
    assert r.returncode == 0, r.stderr
    assert out.read_text().startswith("2d 4 6")

    r = run("measure", "--in", str(out))
    assert r.returncode == 0, r.stderr
    assert "delta" in r.stdout and "rows" in r.stdout

    csv_out = tmp_path / "m.csv"
    r = run("measure", "--in", str(out), "--gamma-exact", "--cell-limit", "24",
            "--csv", str(csv_out))
    assert r.returncode == 0, r.stderr
    lines = csv_out.read_text().splitlines()
    assert lines[0] == "measure,value"
    vals = dict(line.split(",", 1) for line in lines[1:])
    assert vals["gamma"] == "5"

    r = run("measure", "--in", str(out), "--pm", "2", "2")
    assert r.returncode == 0 and "factors_2x2" in r.stdout


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("2d 2 2\na b\n")
    assert run("measure", "--in", str(bad)).returncode == 4

    big = tmp_path / "big.txt"
    r = run("gen", "--family", "identity", "--params", "12", "--out", str(big))
    assert r.returncode == 0
    assert run("measure", "--in", str(big), "--budget", "10").returncode == 3

    assert run("measure", "--in", str(tmp_path / "missing.txt")).returncode == 2
    assert run("gen", "--family", "nosuch", "--params", "1").returncode == 2
    assert run("experiment", "--name", "nosuch").returncode == 2


def test_grammar_subcommands(tmp_path):
    gpath = tmp_path / "g.txt"
    r = run("grammar", "family", "--name", "ek", "--param", "3", "--out", str(gpath))
    assert r.returncode == 0, r.stderr
    assert run("grammar", "validate", "--in", str(gpath)).returncode == 0
    r = run("grammar", "expand", "--in", str(gpath))
    assert r.returncode == 0 and r.stdout.startswith("2d 3 8")
    r = run("grammar", "tree", "--in", str(gpath))
    assert r.returncode == 0

    mpath = tmp_path / "m.txt"
    run("gen", "--family", "alt", "--params", "4", "6", "--out", str(mpath))
    r = run("grammar", "minimize", "--in", str(mpath), "--runs")
    assert r.returncode == 0 and "8" in r.stdout


def test_access_verify(tmp_path):
    gpath = tmp_path / "g.txt"
    run("grammar", "family", "--name", "zeros", "--param", "16", "--out", str(gpath))
    r = run("access", "--grammar", str(gpath), "--query", "3", "5")
    assert r.returncode == 0 and "0" in r.stdout
    r = run("access", "--grammar", str(gpath), "--verify-all")
    assert r.returncode == 0, r.stderr
    r = run("access", "--grammar", str(gpath), "--query", "99", "1")
    assert r.returncode == 2


def test_macro_roundtrip(tmp_path):
    mpath = tmp_path / "m.txt"
    run("gen", "--family", "zeros", "--params", "3", "3", "--out", str(mpath))
    spath = tmp_path / "s.txt"
    r = run("macro", "minimize", "--in", str(mpath), "--out", str(spath))
    assert r.returncode == 0, r.stderr
    assert run("macro", "validate", "--in", str(spath)).returncode == 0
    r = run("macro", "decode", "--in", str(spath))
    assert r.returncode == 0
    assert r.stdout.strip() == mpath.read_text().strip()


def test_blocktree_and_linearize(tmp_path):
    mpath = tmp_path / "m.txt"
    run("gen", "--family", "identity", "--params", "8", "--out", str(mpath))
    r = run("blocktree", "--in", str(mpath))
    assert r.returncode == 0 and "level" in r.stdout
    r = run("linearize", "--in", str(mpath), "--method", "hilbert")
    assert r.returncode == 0 and r.stdout.startswith("2d 1 64")
    r = run("linearize", "--in", str(mpath), "--method", "row")
    assert r.returncode == 0 and r.stdout.startswith("2d 1 64")
    # curve scan needs a power-of-two square
    run("gen", "--family", "zeros", "--params", "3", "5", "--out", str(mpath))
    assert run("linearize", "--in", str(mpath), "--method", "hilbert").returncode == 2


def test_nd_subcommands(tmp_path):
    npath = tmp_path / "x.nd"
    r = run("nd", "gen", "--family", "bdk", "--params", "3", "2", "--out", str(npath))
    assert r.returncode == 0, r.stderr
    assert npath.read_text().startswith("nd 3 5 5 5")
    r = run("nd", "measure", "--in", str(npath))
    assert r.returncode == 0 and "delta" in r.stdout
    r = run("nd", "grammar", "--family", "bdk", "--params", "3", "2")
    assert r.returncode == 0 and "64" in r.stdout


def test_experiment_csv_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        r = run("experiment", "--name", "gap-g-vs-delta", "--out", str(path))
        assert r.returncode == 0, r.stderr
    assert a.read_bytes() == b.read_bytes()
    header = a.read_text().splitlines()[0]
    assert header.split(",")[0] == "k"

    r = run("experiment", "--name", "linearization-hilbert", "--params")
    assert r.returncode == 0
    assert len(r.stdout.splitlines()) == 1  # header only for an empty range

    r = run("experiment", "--list")
    assert r.returncode == 0
    for name in ("gap-gamma-vs-delta", "b-vs-grl-identity", "bsq-vs-b"):
        assert name in r.stdout


def test_selftest_quick_reports_known_failure():
    r = run("selftest", "--quick")
    assert r.returncode == 2
    lines = [l for l in r.stdout.splitlines() if l.startswith("criterion")]
    assert len(lines) == 9
    assert sum(1 for l in lines if l.endswith("PASS")) == 8
    assert any(l.startswith("criterion 2") and l.endswith("FAIL") for l in lines)


def test_docs_list_every_experiment():
    import re

    import repet2d.experiments as E

    readme = (ROOT / "README.md").read_text()
    registry = set(E.experiment_names())
    for name in registry:
        assert name in readme, f"{name} missing from README"
    # and the README's experiment table never advertises an unknown one
    tabled = set(re.findall(r"^\| `([a-z0-9-]+)` \|", readme, re.MULTILINE))
    assert tabled == registry, tabled.symmetric_difference(registry)
