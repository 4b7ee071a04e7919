import os
import shutil
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("SERPENT_CLI") or shutil.which("serpent")
SCENARIOS = Path(os.environ.get("SERPENT_SCENARIO_DIR", Path(__file__).resolve().parents[2] / "scenarios"))

pytestmark = pytest.mark.skipif(CLI is None, reason="serpent executable not found")


def serpent(*args, out=None, cwd=None):
    env = dict(os.environ)
    env.pop("SERPENT_OUTPUT_DIR", None)
    if out is not None:
        env["SERPENT_OUTPUT_DIR"] = str(out)
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=env, cwd=cwd)


def write_trajectory(path, rows):
    path.write_text("t,x,y\n" + "".join(f"{t},{x},{y}\n" for t, x, y in rows))


def test_help_exits_zero():
    assert serpent("--help").returncode == 0


def test_missing_subcommand_is_an_input_error():
    assert serpent().returncode == 1


def test_run_writes_four_outputs(tmp_path):
    res = serpent("run", SCENARIOS / "single_waypoint.cfg", out=tmp_path)
    assert res.returncode == 0, res.stderr
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "summary.txt", "tracking.svg", "tracking_status.csv", "trajectory.csv"]
    header = (tmp_path / "trajectory.csv").read_text().splitlines()[0]
    assert header.startswith("t,x,y,")


def test_runs_are_byte_identical(tmp_path):
    for name in ("a", "b"):
        assert serpent("run", SCENARIOS / "star.cfg", out=tmp_path / name).returncode == 0
    for f in ("trajectory.csv", "tracking_status.csv", "summary.txt"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_config_output_dir_is_used_without_override(tmp_path):
    cfg = tmp_path / "s.cfg"
    text = (SCENARIOS / "single_waypoint.cfg").read_text()
    lines = [l for l in text.splitlines() if not l.startswith("output_dir")]
    cfg.write_text("output_dir = from_config\n" + "\n".join(lines) + "\n")
    assert serpent("run", cfg, cwd=tmp_path).returncode == 0
    assert (tmp_path / "from_config" / "trajectory.csv").exists()


def test_duplicate_key_is_an_input_error(tmp_path):
    cfg = tmp_path / "dup.cfg"
    cfg.write_text("seed = 1\nseed = 2\n[waypoints]\nwp1 = 0, 0, 0\n")
    res = serpent("run", cfg, out=tmp_path / "o")
    assert res.returncode == 1
    assert "dup.cfg:2: duplicate key 'seed'" in res.stderr


def test_missing_config_is_an_input_error(tmp_path):
    assert serpent("run", tmp_path / "none.cfg", out=tmp_path).returncode == 1


def test_timeout_exits_two(tmp_path):
    cfg = tmp_path / "short.cfg"
    cfg.write_text("duration = 2\n[start]\nx = -2\n[waypoints]\nwp1 = 0, 0, 0\n")
    assert serpent("run", cfg, out=tmp_path / "o").returncode == 2


def test_batch_needs_a_positive_count(tmp_path):
    assert serpent("batch", SCENARIOS / "single_waypoint.cfg", "--starts", 0, out=tmp_path).returncode == 1


def test_batch_converges_and_ignores_jobs(tmp_path):
    for jobs in (1, 4):
        res = serpent("batch", SCENARIOS / "single_waypoint.cfg", "--starts", 13, "--jobs", jobs,
                      out=tmp_path / str(jobs))
        assert res.returncode == 0, res.stdout + res.stderr
        assert "13/13 runs converged" in res.stdout
    assert (tmp_path / "1" / "batch_summary.csv").read_bytes() == (tmp_path / "4" / "batch_summary.csv").read_bytes()


def test_eval_against_itself_is_zero(tmp_path):
    assert serpent("run", SCENARIOS / "single_waypoint.cfg", out=tmp_path).returncode == 0
    traj = tmp_path / "trajectory.csv"
    res = serpent("eval", traj, traj, "--out", tmp_path / "e")
    assert res.returncode == 0, res.stderr
    assert "max: 0\n" in res.stdout and "rmse: 0\n" in res.stdout
    assert (tmp_path / "e" / "errors.csv").exists()


def test_eval_reports_a_constant_offset(tmp_path):
    ref = [(0.1 * i, 0.02 * i, 0.0) for i in range(50)]
    write_trajectory(tmp_path / "ref.csv", ref)
    write_trajectory(tmp_path / "est.csv", [(t, x + 0.05, y) for t, x, y in ref])
    res = serpent("eval", tmp_path / "est.csv", tmp_path / "ref.csv", "--out", tmp_path)
    assert res.returncode == 0, res.stderr
    assert "mean: 0.05\n" in res.stdout
    aligned = serpent("eval", tmp_path / "est.csv", tmp_path / "ref.csv", "--align", "--out", tmp_path)
    mean = float(aligned.stdout.split("mean: ")[1].split()[0])
    assert mean < 1e-9


def test_eval_without_overlap_is_an_input_error(tmp_path):
    write_trajectory(tmp_path / "a.csv", [(i, 0, 0) for i in range(5)])
    write_trajectory(tmp_path / "b.csv", [(i + 100, 0, 0) for i in range(5)])
    assert serpent("eval", tmp_path / "a.csv", tmp_path / "b.csv").returncode == 1


def test_eval_rejects_malformed_csv(tmp_path):
    (tmp_path / "bad.csv").write_text("t,x,y\n0,1\n")
    res = serpent("eval", tmp_path / "bad.csv", tmp_path / "bad.csv")
    assert res.returncode == 1
    assert "bad.csv:2:" in res.stderr
