import os
import subprocess
import sys
from pathlib import Path

import pytest

from pbdd.cli import main

GOLDEN = Path(__file__).parent / "golden"
RUN_OPB = "* running example\n+2 x1 +3 x2 +5 x3 <= 6 ;\n"


def run_cli(args):
    proc = subprocess.run(
        [sys.executable, "-m", "pbdd.cli", *args],
        capture_output=True, text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def run_opb(tmp_path):
    path = tmp_path / "run.opb"
    path.write_text(RUN_OPB)
    return str(path)


def test_encode_bdd1_matches_golden(run_opb, tmp_path):
    out = tmp_path / "out.cnf"
    assert main(["encode", "--method", "bdd1", "--in", run_opb,
                 "--out", str(out)]) == 0
    assert out.read_text() == (GOLDEN / "running_bdd1.cnf").read_text()


def test_encode_bdd3_matches_golden(run_opb, tmp_path):
    out = tmp_path / "out.cnf"
    assert main(["encode", "--method", "bdd3", "--in", run_opb,
                 "--out", str(out)]) == 0
    assert out.read_text() == (GOLDEN / "running_bdd3.cnf").read_text()


def test_encode_aux_alive_after_simplification(run_opb, tmp_path):
    out = tmp_path / "out.cnf"
    main(["encode", "--method", "bdd1", "--in", run_opb, "--out", str(out)])
    lits = {
        abs(int(tok))
        for line in out.read_text().splitlines()
        if line and line[0] not in "cp"
        for tok in line.split()[:-1]
    }
    assert len({v for v in lits if v > 3}) == 3


def test_encode_map_sidecar(run_opb, tmp_path):
    out, sidecar = tmp_path / "out.cnf", tmp_path / "vars.map"
    main(["encode", "--method", "bdd1", "--in", run_opb,
          "--out", str(out), "--map", str(sidecar)])
    assert sidecar.read_text() == "x1 1\nx2 2\nx3 3\n"


def test_encode_multi_constraint_disjoint_aux_ranges(tmp_path):
    path = tmp_path / "two.opb"
    path.write_text("+2 x1 +3 x2 +5 x3 <= 6 ;\n+1 x1 +1 x2 = 1 ;\n")
    out = tmp_path / "out.cnf"
    assert main(["encode", "--method", "bdd1", "--in", str(path),
                 "--out", str(out)]) == 0
    body = [l for l in out.read_text().splitlines() if l and l[0] not in "cp"]
    # three diagrams (the equality splits in two) and no clause mixes
    # auxiliaries from different ranges
    seen_ranges = set()
    for line in body:
        aux = {abs(int(t)) for t in line.split()[:-1] if abs(int(t)) > 3}
        if not aux:
            continue
        lo, hi = min(aux), max(aux)
        for known_lo, known_hi in seen_ranges:
            assert hi < known_lo or lo > known_hi or \
                (known_lo <= lo and hi <= known_hi) or \
                (lo <= known_lo and known_hi <= hi)
    assert len(body) == 5 + 3 + 3  # running constraint + two cardinality halves


def test_encode_parallel_jobs_identical_output(tmp_path):
    path = tmp_path / "many.opb"
    lines = [f"+{i + 1} x1 +{i + 2} x2 +{i + 3} x3 <= {2 * i + 3} ;" for i in range(6)]
    path.write_text("\n".join(lines) + "\n")
    one, two = tmp_path / "one.cnf", tmp_path / "two.cnf"
    assert main(["encode", "--method", "bdd2", "--in", str(path),
                 "--out", str(one)]) == 0
    assert main(["encode", "--method", "bdd2", "--in", str(path),
                 "--out", str(two), "--jobs", "2"]) == 0
    assert one.read_text() == two.read_text()


def test_encode_small_naive_flag(run_opb, tmp_path):
    out = tmp_path / "out.cnf"
    main(["encode", "--method", "bdd1", "--in", run_opb, "--out", str(out),
          "--small-naive", "3"])
    body = [l for l in out.read_text().splitlines() if l and l[0] not in "cp"]
    # aux-free: the two minimal conflict clauses over inputs only
    assert sorted(body) == ["-1 -3 0", "-2 -3 0"]


def test_stats_reports_rows(run_opb, capsys):
    assert main(["stats", "--method", "bdd1", "--in", run_opb]) == 0
    out = capsys.readouterr().out
    assert "method: bdd1" in out
    row = next(l for l in out.splitlines() if l.startswith("row\t"))
    fields = row.split("\t")
    # method, index, inputs, aux, binary, ternary, other, clauses,
    # decision nodes, nodes incl. terminals
    assert fields[1:11] == ["bdd1", "1", "3", "3", "3", "0", "2", "5", "3", "5"]
    assert fields[12] == "1,1,1"


def test_verify_ok_exit_code(capsys):
    assert main(["verify", "--method", "bdd3", "--max-n", "6", "--seeds", "20"]) == 0
    out = capsys.readouterr().out
    assert "0 violation(s)" in out and "consistency+GAC" in out
    assert main(["verify", "--method", "ite6", "--max-n", "4", "--seeds", "8"]) == 0
    assert "consistency, method ite6" in capsys.readouterr().out


def test_gen_hosaka(capsys):
    assert main(["gen", "--family", "hosaka", "--n", "1"]) == 0
    out = capsys.readouterr().out
    assert "+5 x1 +6 x2 +9 x3 +10 x4 <= 15 ;" in out


def test_gen_roundtrips_through_parser(tmp_path, capsys):
    from pbdd import bailleux_family, normalize, parse_opb

    path = tmp_path / "fam.opb"
    assert main(["gen", "--family", "bailleux", "--n", "6", "--a", "127",
                 "--b", "2", "--out", str(path)]) == 0
    inst = parse_opb(path.read_text())
    assert normalize(inst.constraints[0]) == [bailleux_family(127, 2, 6)]


def test_gen_random_deterministic(tmp_path):
    a, b = tmp_path / "a.opb", tmp_path / "b.opb"
    for target in (a, b):
        assert main(["gen", "--family", "random", "--n", "5", "--seed", "9",
                     "--out", str(target)]) == 0
    assert a.read_text() == b.read_text()


def test_equiv_command(tmp_path, capsys):
    f6 = tmp_path / "a.opb"
    f5 = tmp_path / "b.opb"
    f7 = tmp_path / "c.opb"
    f6.write_text("+2 x1 +3 x2 +5 x3 <= 6 ;\n")
    f5.write_text("+2 x1 +3 x2 +5 x3 <= 5 ;\n")
    f7.write_text("+2 x1 +3 x2 +5 x3 <= 7 ;\n")
    assert main(["equiv", str(f6), str(f5)]) == 0
    assert capsys.readouterr().out.strip() == "equivalent"
    assert main(["equiv", str(f6), str(f7)]) == 0
    assert capsys.readouterr().out.strip() == "different"


def test_equiv_rejects_equality_and_mismatch(tmp_path, capsys):
    eq = tmp_path / "eq.opb"
    eq.write_text("+1 x1 +1 x2 = 1 ;\n")
    other = tmp_path / "o.opb"
    other.write_text("+1 x1 +1 x2 <= 1 ;\n")
    assert main(["equiv", str(eq), str(other)]) == 3
    renamed = tmp_path / "r.opb"
    renamed.write_text("+1 x1 +1 x9 <= 1 ;\n")
    assert main(["equiv", str(other), str(renamed)]) == 3


def test_exit_codes(tmp_path):
    code, _, err = run_cli(["encode", "--method", "bdd1", "--in", "/no/such.opb"])
    assert code == 3
    bad = tmp_path / "bad.opb"
    bad.write_text("min: +1 x1 ;\n")
    code, _, err = run_cli(["encode", "--method", "bdd1", "--in", str(bad)])
    assert code == 3 and "objective" in err
    code, _, _ = run_cli(["encode", "--method", "nope", "--in", str(bad)])
    assert code == 2
    big = tmp_path / "big.opb"
    big.write_text("+3 x1 +5 x2 +7 x3 +11 x4 +13 x5 <= 20 ;\n")
    code, _, err = run_cli(["encode", "--method", "bdd1", "--in", str(big),
                            "--node-budget", "1"])
    assert code == 4 and "budget" in err


def test_node_budget_env_override(tmp_path):
    big = tmp_path / "big.opb"
    big.write_text("+3 x1 +5 x2 +7 x3 +11 x4 +13 x5 <= 20 ;\n")
    env = dict(os.environ, PBDD_NODE_BUDGET="1")
    proc = subprocess.run(
        [sys.executable, "-m", "pbdd.cli", "encode", "--method", "bdd1",
         "--in", str(big)],
        capture_output=True, text=True, env=env,
    )
    assert proc.returncode == 4
