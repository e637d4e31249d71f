import csv
import json
import os
import subprocess

import pytest

CLI = os.environ.get("ULTRAPLANAR_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="ULTRAPLANAR_CLI not set")


def cli(*args, check=True):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(proc.stderr)
    return proc


def single_edge(path):
    doc = {
        "format": "ultraplanar-instance",
        "version": 1,
        "num_vertices": 2,
        "edges": [{"u": 0, "v": 1, "theta": 3.0}],
        "rotation": [[0], [0]],
        "levels": [1.0],
    }
    path.write_text(json.dumps(doc))
    return path


def test_single_edge_summary(tmp_path):
    inst = single_edge(tmp_path / "edge.json")
    cli("solve", inst, "--out", tmp_path / "out")
    summary = json.loads((tmp_path / "out" / "summary.json").read_text())
    assert summary["status"] == "converged"
    assert summary["lb"] == pytest.approx(-5) and summary["ub"] == pytest.approx(-5)
    for name in ["hierarchy.json", "ultrametric.csv", "trace.csv", "timing.csv"]:
        assert (tmp_path / "out" / name).exists()


def test_oracle_optimum_reproduced_by_solve(tmp_path):
    inst = tmp_path / "g.json"
    cli("gen", "--rows", 3, "--cols", 3, "--levels", 2, "--noise", 0.5, "--seed", 8, "-o", inst)
    cli("oracle", inst, "--out", tmp_path / "o")
    cli("solve", inst, "--out", tmp_path / "s")
    opt = json.loads((tmp_path / "o" / "oracle.json").read_text())["value"]
    ub = json.loads((tmp_path / "s" / "summary.json").read_text())["ub"]
    assert ub == pytest.approx(opt, abs=1e-6)


def test_eval_reports_both_ratio_orientations(tmp_path):
    dirs = []
    for seed in range(3):
        inst = tmp_path / f"g{seed}.json"
        cli("gen", "--rows", 5, "--cols", 5, "--levels", 3, "--noise", 0.7, "--seed", seed, "-o", inst)
        out = tmp_path / f"run{seed}"
        cli("baseline", inst, "--out", out)
        dirs.append(out)
    cli("eval", *dirs, "--out", tmp_path / "eval")
    with open(tmp_path / "eval" / "eval.csv") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 3
    for row in rows:
        assert float(row["cost_ratio_solver_over_baseline"]) >= 1 - 1e-9
        assert float(row["cost_ratio_baseline_over_solver"]) <= 1 + 1e-9
    assert (tmp_path / "eval" / "eval_traces.csv").read_text().startswith("instance,iter,")


def test_ablate_and_dump_lp(tmp_path):
    inst = tmp_path / "r.json"
    cli("gen", "--kind", "random", "--vertices", 7, "--levels", 3, "--seed", 1, "-o", inst)
    cli("ablate", inst, "--out", tmp_path / "a")
    abl = json.loads((tmp_path / "a" / "ablation.json").read_text())
    assert len(abl["layers"]) == 3
    for layer in abl["layers"]:
        assert layer["independent_cost"] <= layer["hierarchical_cost"] + 1e-7
    cli("solve", inst, "--out", tmp_path / "s", "--dump-lp", tmp_path / "final.lp")
    text = (tmp_path / "final.lp").read_text()
    assert text.startswith("\\") and "Maximize" in text and text.rstrip().endswith("End")


def test_errors_are_json_records(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    proc = cli("solve", bad, check=False)
    assert proc.returncode == 2
    record = json.loads(proc.stderr.strip().splitlines()[-1])
    assert record["error"] == "InvalidInput"
    proc = cli("solve", single_edge(tmp_path / "e.json"), "--tau", "-1", check=False)
    assert proc.returncode == 2
    proc = cli("gen", "--rows", 3, "--cols", 3, "--levels", 2, "--seed", 1, "-o", tmp_path / "g.json")
    proc = cli("solve", tmp_path / "g.json", "--max-iter", 1, "--out", tmp_path / "x", check=False)
    assert proc.returncode in (0, 3)


def test_output_dir_from_environment(tmp_path):
    inst = single_edge(tmp_path / "edge.json")
    env = dict(os.environ, ULTRAPLANAR_OUT_DIR=str(tmp_path / "envout"))
    subprocess.run([CLI, "solve", str(inst)], check=True, capture_output=True, env=env)
    assert (tmp_path / "envout" / "summary.json").exists()
