import csv
import io
import json
import subprocess
import sys

import pytest

from polyarea.cli import main
from polyarea.generators import hull_size_instance, uniform_instance
from polyarea.geom import convex_hull, twice_signed_area
from polyarea.instance import parse_solution, write_instance
from polyarea.solver import solve

from conftest import P4I, T3, make, random_instance


@pytest.fixture
def p4i_file(tmp_path, p4i):
    path = tmp_path / "p4i.json"
    path.write_text(write_instance(p4i))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_examples(capsys, tmp_path, p4i_file):
    sol, svg = tmp_path / "sol.json", tmp_path / "p.svg"
    code, out, _ = run(capsys, "solve", "--instance", p4i_file, "--objective", "min", "--preset", "tri-v1",
                       "--out", sol, "--svg", svg)
    assert code == 0 and "status=optimal" in out and "twice_area=12 area=6" in out
    rec = parse_solution(sol.read_text())
    assert rec.status == "optimal" and rec.twice_area == rec.bound == 12 and rec.preset == "tri-v1"
    assert svg.read_text().count("<circle") == 4
    code, out, _ = run(capsys, "solve", "--instance", p4i_file, "--objective", "max", "--preset", "edge-v2")
    assert code == 0 and "twice_area=30" in out
    code, out, _ = run(capsys, "solve", "--instance", p4i_file, "--objective", "max", "--start", sol)
    assert code == 0 and "twice_area=30" in out


def test_unknown_preset_is_usage_error(capsys, p4i_file):
    with pytest.raises(SystemExit) as err:
        main(["solve", "--instance", str(p4i_file), "--objective", "min", "--preset", "edge-v9"])
    assert err.value.code == 64


def test_missing_instance_fails(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "--instance", tmp_path / "nope.json", "--objective", "min")
    assert code == 3 and "error" in err


def test_limit_exit_code(capsys, tmp_path):
    path = tmp_path / "r.json"
    path.write_text(write_instance(random_instance(10, 5)))
    code, out, _ = run(capsys, "solve", "--instance", path, "--objective", "min", "--preset", "tri-v1",
                       "--time-limit", 0)
    assert code == 2 and "status=limit" in out


def test_oracle(capsys, tmp_path, p4i_file):
    code, out, _ = run(capsys, "oracle", "--instance", p4i_file)
    assert code == 0 and out.splitlines()[:1] == ["count=3"] and "min=12" in out and "max=30" in out
    tri = tmp_path / "t3.json"
    tri.write_text(write_instance(make(T3)))
    assert run(capsys, "oracle", "--instance", tri)[1].startswith("count=1")
    big = tmp_path / "big.json"
    big.write_text(write_instance(random_instance(11, 1)))
    code, _, err = run(capsys, "oracle", "--instance", big)
    assert code == 3 and "refused" in err


def test_validate(capsys, tmp_path, p4i_file):
    sol = tmp_path / "sol.json"
    run(capsys, "solve", "--instance", p4i_file, "--objective", "min", "--out", sol)
    code, out, _ = run(capsys, "validate", "--instance", p4i_file, "--solution", sol)
    assert code == 0 and out.strip() == "OK twice_area=12"
    # same record checked against a square, where [0, 1, 3, 2] crosses itself
    sq = tmp_path / "sq.json"
    sq.write_text(write_instance(make([(0, 0), (2, 0), (2, 2), (0, 2)], "p4i")))
    data = json.loads(sol.read_text())
    data["order"] = [0, 1, 3, 2]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", "--instance", sq, "--solution", bad)
    assert code == 3 and out.startswith("INVALID crossing")
    other = tmp_path / "other.json"
    other.write_text(write_instance(make(P4I, "renamed")))
    code, out, err = run(capsys, "validate", "--instance", other, "--solution", sol)
    assert code == 0 and "warning" in err


def test_bench_rows(capsys, tmp_path):
    out_csv = tmp_path / "b.csv"
    code, _, _ = run(capsys, "bench", "--n", 8, "--count", 5, "--presets", "edge-v2,tri-v1", "--time-limit", 60,
                     "--workers", 2, "--out", out_csv)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out_csv.read_text())))
    assert len(rows) == 20
    assert {r["status"] for r in rows} == {"optimal"}
    for name in {r["instance"] for r in rows}:
        for obj in ("min", "max"):
            assert len({r["twice_area"] for r in rows if r["instance"] == name and r["objective"] == obj}) == 1
    json.loads(rows[0]["cuts_by_family"])


def test_bench_is_deterministic(capsys, tmp_path):
    texts = []
    for k in range(2):
        path = tmp_path / f"b{k}.csv"
        run(capsys, "bench", "--n", 6, "--count", 2, "--presets", "edge-v3", "--workers", 1, "--out", path)
        texts.append([{c: v for c, v in r.items() if c != "runtime_s"}
                      for r in csv.DictReader(io.StringIO(path.read_text()))])
    assert texts[0] == texts[1]


def test_bench_rejects_unknown_preset(capsys):
    assert run(capsys, "bench", "--n", 5, "--count", 1, "--presets", "bogus")[0] == 64


def test_generators():
    conv = hull_size_instance(8, 8, seed=3)
    assert len(convex_hull(conv.points)) == 8
    out = solve(conv, "max")
    hull = twice_signed_area([conv.points[i] for i in convex_hull(conv.points)])
    assert out.result.objective == hull == solve(conv, "min").result.objective
    k3 = hull_size_instance(8, 3, seed=4)
    assert len(convex_hull(k3.points)) == 3 and k3.n == 8
    assert uniform_instance(9, 7).points == uniform_instance(9, 7).points
    assert uniform_instance(9, 7).points != uniform_instance(9, 8).points
    with pytest.raises(ValueError):
        hull_size_instance(5, 6, seed=0)


def test_module_entry_point(tmp_path, p4i_file):
    res = subprocess.run([sys.executable, "-m", "polyarea", "oracle", "--instance", str(p4i_file)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("count=3")
