import io
import json

import pytest

from satake_bounds.cli import main


def run(args, env=None):
    out = io.StringIO()
    code = main(args, stdout=out, environ=env or {})
    return code, out.getvalue()


def test_constants():
    code, out = run(["constants", "--n", "4"])
    assert code == 0
    assert json.loads(out)["c_n"] == "576"


def test_falsification_exit_and_replay(tmp_path):
    code, out = run(["verify-bound", "--n", "2", "--start-j", "2", "--trials", "100",
                     "--seed", "1", "--max-modulus", "10"])
    assert code == 1
    doc = json.loads(out)
    cx = doc["counterexample"]
    assert cx["class"]["n"] == 2 and cx["max_modulus_sq"] > cx["bound"] == 4
    # the counterexample is a reciprocal-conjugate pair diag(t, 1/conj t)
    a, b = (complex(float.fromhex(x), float.fromhex(y)) for x, y in cx["class"]["values"])
    assert abs(a * b.conjugate() - 1) < 1e-9
    path = tmp_path / "report.json"
    path.write_text(out)
    code, out = run(["verify-bound", "--replay", str(path)])
    assert code == 1 and json.loads(out)["violated"]


def test_verify_bound_passes_with_first_trace():
    code, out = run(["verify-bound", "--n", "3", "--trials", "200", "--seed", "4"])
    assert code == 0
    assert json.loads(out)["failures"] == 0


def test_cauchy_rank_one():
    code, out = run(["cauchy", "--n", "1", "--r", "5", "--seed", "0"])
    doc = json.loads(out)
    assert code == 0 and doc["agree"]
    a, b = complex(*doc["alpha"][0]), complex(*doc["beta"][0])
    assert complex(*doc["schur_side"]) == pytest.approx((a * b) ** 5)
    assert complex(*doc["euler_side"]) == pytest.approx((a * b) ** 5)


def test_cauchy_exact():
    code, out = run(["cauchy", "--n", "3", "--r", "4", "--seed", "2", "--exact"])
    doc = json.loads(out)
    assert code == 0 and doc["schur_side"] == doc["euler_side"] and doc["relative_error"] == 0


def test_bootstrap_records():
    code, out = run(["bootstrap", "--series", "2:2,3:1.5", "--xmax", "100000", "--eps", "0.05",
                     "--iters", "auto"])
    assert code == 0
    recs = json.loads(out)
    assert [r["iter"] for r in recs] == list(range(len(recs)))
    assert {"iter", "measured_exponent", "constant"} <= set(recs[0])
    assert recs[-1]["measured_exponent"] < 0.05


def test_bootstrap_fixed_iterations():
    code, out = run(["bootstrap", "--series", "2:4", "--xmax", "1000", "--iters", "2"])
    assert code == 0 and len(json.loads(out)) == 3


def test_lrs_and_sample():
    code, out = run(["lrs", "--n", "2", "--np", "4"])
    assert code == 0 and json.loads(out)["threshold"] == pytest.approx(1.515717, abs=5e-7)
    code, out = run(["sample", "--n", "3", "--count", "2", "--seed", "5"])
    assert code == 0 and len(json.loads(out)) == 2


def test_seed_precedence(tmp_path):
    base = run(["sample", "--n", "4", "--seed", "9"])[1]
    assert run(["sample", "--n", "4"], env={"SATAKE_SEED": "9"})[1] == base
    assert run(["sample", "--n", "4", "--seed", "9"], env={"SATAKE_SEED": "1"})[1] == base
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nseed = 9\nn=4\n")
    assert run(["sample", "--config", str(cfg)], env={"SATAKE_SEED": "1"})[1] == base
    assert run(["sample", "--config", str(cfg), "--seed", "1"])[1] != base


def test_determinism_byte_identical():
    args = ["report", "--criteria", "1,3,4,11", "--trials", "300"]
    assert run(args)[1] == run(args)[1]


def test_report_skips_with_zero_trials():
    code, out = run(["report", "--trials", "0"])
    rows = json.loads(out)
    assert code == 0
    assert len(rows) == 11 and {r["status"] for r in rows} == {"skip"}


def test_report_csv_format():
    code, out = run(["report", "--criteria", "1,11", "--format", "csv"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].startswith("criterion,check,status,worst_margin")
    assert len(lines) == 3


def test_report_timings_flag():
    rows = json.loads(run(["report", "--criteria", "11", "--timings"])[1])
    assert "runtime_s" in rows[0]
    rows = json.loads(run(["report", "--criteria", "11"])[1])
    assert "runtime_s" not in rows[0]


def test_report_failure_exit_code():
    code, out = run(["report", "--criteria", "10"])
    assert code == 1 and json.loads(out)[0]["status"] == "fail"


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["constants", "--n", "1"],
        ["constants", "--n", "65"],
        ["constants", "--bogus"],
        ["verify-bound", "--start-j", "3"],
        ["verify-bound", "--max-modulus", "0.5"],
        ["bootstrap", "--series", "4:1"],
        ["bootstrap", "--eps", "0"],
        ["bootstrap", "--iters", "many"],
        ["report", "--criteria", "12"],
        ["sample", "--format", "xml"],
        ["verify-bound", "--replay", "/nonexistent/file.json"],
    ],
)
def test_usage_errors_exit_2(args):
    assert run(args)[0] == 2


def test_bad_config_is_usage_error(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("trials = lots\n")
    assert run(["verify-bound", "--config", str(cfg)])[0] == 2
    cfg.write_text("unknown = 1\n")
    assert run(["constants", "--config", str(cfg)])[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "satake_bounds", "constants", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["c_n"] == "4"
