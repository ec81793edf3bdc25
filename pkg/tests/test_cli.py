"""Command-line behaviour: outputs, exit codes, and determinism."""

import csv
import json

import pytest

from polyrank.cli import main
from polyrank.docio import dump, load
from polyrank.families import gen_01_segment, gen_pk_qk, gen_qt
from polyrank.lattice import line_free
from polyrank.polyhedron import Polyhedron


@pytest.fixture()
def files(tmp_path):
    paths = {}
    paths["segment"] = tmp_path / "segment01_2d.json"
    dump(gen_01_segment(2), paths["segment"])
    paths["qt3"] = tmp_path / "qt_3.json"
    dump(gen_qt(3), paths["qt3"])
    paths["triangle"] = tmp_path / "triangle.json"
    dump(Polyhedron.from_vrep([(0, 0), (2, 0), (0, 2)]), paths["triangle"])
    paths["tmp"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rcgr_segment_byte_exact(capsys, files):
    code, out, _ = run(capsys, "rcgr", "-i", files["segment"])
    assert code == 0
    assert out == "INFINITE witness=(1,0)\n"


def test_rcgr_finite_with_level(capsys, files):
    code, out, _ = run(capsys, "rcgr", "-i", files["triangle"])
    assert code == 0
    assert out == "FINITE level=2\n"


def test_rcgr_json_reverifies(capsys, files):
    code, out, _ = run(capsys, "rcgr", "-i", files["segment"], "--json")
    assert code == 0
    verdict = json.loads(out)
    assert verdict["outcome"] == "infinite"
    v = tuple(verdict["witness"])
    assert line_free(gen_01_segment(2), v)


def test_rcgr_cap_exceeded_exit_code(capsys, files):
    path = files["tmp"] / "tetra.json"
    dump(Polyhedron.from_vrep([(0, 0, 0), (3, 1, 0), (2, 3, 0), (3, 2, 2)]), path)
    code, out, _ = run(capsys, "rcgr", "-i", path, "--max-norm", "1", "--max-k", "1")
    assert code == 3
    assert out.startswith("CAP-EXCEEDED last_norm=1 last_k=1")


def test_rcgr_rejects_fractional_vertices(capsys, files):
    code, _, err = run(capsys, "rcgr", "-i", files["qt3"])
    assert code == 2
    assert "integral" in err


def test_rank_outputs(capsys, files):
    code, out, _ = run(capsys, "rank", "-i", files["qt3"])
    assert code == 0
    assert int(out) >= 3
    code, out, _ = run(capsys, "rank", "-i", files["triangle"])
    assert (code, out) == (0, "0\n")


def test_rank_cap_flag(capsys, files):
    code, _, err = run(capsys, "rank", "-i", files["qt3"], "--cap", "2")
    assert code == 3
    assert "2" in err


def test_rank_env_cap(capsys, files, monkeypatch):
    monkeypatch.setenv("POLYRANK_CAP", "1")
    code, _, _ = run(capsys, "rank", "-i", files["qt3"])
    assert code == 3
    # explicit flag beats the environment
    monkeypatch.setenv("POLYRANK_CAP", "1")
    code, out, _ = run(capsys, "rank", "-i", files["qt3"], "--cap", "50")
    assert code == 0 and int(out) >= 3


def test_closure_writes_output(capsys, files):
    out_path = files["tmp"] / "closed.json"
    code, _, _ = run(capsys, "closure", "-i", files["qt3"], "-o", out_path)
    assert code == 0
    got = load(out_path)
    assert got.contains((0, 0)) and gen_qt(3).contains_poly(got)


def test_closure_oracle_flag(capsys, files):
    code, out, _ = run(capsys, "closure", "-i", files["qt3"], "-o",
                       files["tmp"] / "c.json", "--oracle", "8")
    assert code == 0
    assert "oracle(B=8): match" in out


def test_hull_command(capsys, files):
    out_path = files["tmp"] / "hull.json"
    code, _, _ = run(capsys, "hull", "-i", files["qt3"], "-o", out_path)
    assert code == 0
    assert load(out_path) == Polyhedron.from_vrep([(0, 0), (0, 1)])


def test_points_command(capsys, files):
    code, out, _ = run(capsys, "points", "-i", files["triangle"])
    assert code == 0
    rows = {tuple(map(int, line.split())) for line in out.splitlines()}
    assert rows == {(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)}
    code, out, _ = run(capsys, "points", "-i", files["triangle"], "--relint")
    assert code == 0
    assert out.strip() == ""


def test_gen_commands(capsys, files):
    out_path = files["tmp"] / "gen.json"
    code, _, _ = run(capsys, "gen", "qt", "--t", "4", "-o", out_path)
    assert code == 0
    assert load(out_path) == gen_qt(4)
    code, _, _ = run(capsys, "gen", "pkqk", "--k", "3", "--part", "p", "-o", out_path)
    assert code == 0
    assert load(out_path) == gen_pk_qk(3)[0]
    code, _, _ = run(capsys, "gen", "qalpha", "--alpha", "2", "-i",
                     files["segment"], "--direction", "1,0", "-o", out_path)
    assert code == 0
    assert (2, load(out_path).vertices[-1][1] * 2) == (2, 1)  # apex at y = 1/2
    code, _, _ = run(capsys, "gen", "segment01", "--n", "3", "-o", out_path)
    assert code == 0
    assert load(out_path) == gen_01_segment(3)


def test_sweep_csv_format(capsys, files):
    csv_path = files["tmp"] / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "qt", "--from", "1", "--to", "3",
                     "--csv", csv_path)
    assert code == 0
    text = csv_path.read_text()
    assert text.splitlines()[0] == "param,rank,cch_bound,closure_iters,wall_ms"
    rows = list(csv.DictReader(text.splitlines()))
    assert [r["param"] for r in rows] == ["1", "2", "3"]
    for r in rows:
        assert int(r["rank"]) >= int(r["cch_bound"])
        assert r["rank"] == r["closure_iters"]


def test_deterministic_output(capsys, files):
    first = run(capsys, "rcgr", "-i", files["segment"])
    second = run(capsys, "rcgr", "-i", files["segment"])
    assert first == second


def test_invalid_documents_exit_two(capsys, files):
    bad = files["tmp"] / "bad.json"
    bad.write_text('{"vrep": {"vertices": [["0", "1/0"]]}}')
    code, _, err = run(capsys, "rcgr", "-i", bad)
    assert code == 2 and "1/0" in err
    bad.write_text('{"vrep": {"vertices": [[0.5, 0]]}}')
    code, _, err = run(capsys, "points", "-i", bad)
    assert code == 2 and "float" in err
    code, _, err = run(capsys, "rank", "-i", files["tmp"] / "missing.json")
    assert code == 2
