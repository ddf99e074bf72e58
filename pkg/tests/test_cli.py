"""CLI front end: exit codes, JSON/CSV validity, determinism."""

import json
import math

import numpy as np
import pytest

from heteroexp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_threshold_order_stat(capsys):
    code, out, _ = run(capsys, "threshold", "--rates", "1,2,3", "--k", "2")
    assert code == 0
    d = json.loads(out)
    assert d["critical_gamma"] == pytest.approx(1.9148542155126762, rel=1e-12)
    assert d["method"] == "eq1"


def test_threshold_homogeneous_trivial(capsys):
    code, out, _ = run(capsys, "threshold", "--rates", "2,2,2", "--k", "2")
    assert code == 0
    assert json.loads(out)["critical_gamma"] == pytest.approx(2.0)


def test_threshold_spacing(capsys):
    code, out, _ = run(capsys, "threshold", "--rates", "1,2,3", "--m", "1", "--k", "3")
    assert code == 0
    d = json.loads(out)
    assert d["critical_gamma"] == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert d["method"] == "eq2"


def test_threshold_malformed_config(capsys):
    code, _, err = run(capsys, "threshold", "--rates", "1,-2", "--k", "2")
    assert code == 2
    assert "rates" in err
    code, _, err = run(capsys, "threshold", "--rates", "1,2,3")
    assert code == 2
    assert "k" in err


def test_check_star_holds(capsys):
    code, out, _ = run(capsys, "check", "--rates", "1,2,3", "--k", "2",
                       "--gamma", "1.0", "--relation", "star")
    assert code == 0
    d = json.loads(out)
    assert d["holds"] is True
    assert d["relation"] == "star"


def test_check_hr_below_threshold_fails_with_witness(capsys):
    crit = 1.9148542155126762
    code, out, _ = run(capsys, "check", "--rates", "1,2,3", "--k", "2",
                       "--gamma", repr(0.9 * crit), "--relation", "hr")
    assert code == 1
    d = json.loads(out)
    assert d["holds"] is False
    assert d["witness"] is not None
    assert d["margin"] < 0


def test_check_st_self_trivial(capsys):
    code, out, _ = run(capsys, "check", "--rates", "2,2,2", "--k", "2",
                       "--gamma", "2.0", "--relation", "st")
    assert code == 0
    d = json.loads(out)
    assert d["holds"] is True
    assert abs(d["margin"]) < 1e-9


def test_check_bad_relation(capsys):
    code, _, err = run(capsys, "check", "--rates", "1,2", "--k", "1",
                       "--gamma", "1.6", "--relation", "st")
    assert code == 0  # gamma above the critical rate 1.5
    with pytest.raises(SystemExit) as e:
        main(["check", "--rates", "1,2", "--k", "1", "--gamma", "1",
              "--relation", "bogus"])
    assert e.value.code == 2
    capsys.readouterr()


def test_curve_monotone_columns(capsys):
    code, out, _ = run(capsys, "curve", "--rates", "1,2,3", "--k", "2",
                       "--grid", "64")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,cdf,pdf,hazard"
    rows = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    assert rows.shape == (64, 4)
    assert np.all(np.diff(rows[:, 0]) > 0)
    assert np.all(np.diff(rows[:, 1]) > 0)
    assert np.all(rows[:, 2] >= 0)


def test_curve_homogeneous_hazard_nondecreasing(capsys):
    # iid order statistics are IFR
    code, out, _ = run(capsys, "curve", "--rates", "2,2,2,2", "--k", "3",
                       "--grid", "128")
    assert code == 0
    haz = np.array([float(ln.split(",")[3]) for ln in out.strip().split("\n")[1:]])
    assert np.all(np.diff(haz) >= -1e-10 * haz[:-1])


def test_curve_expo_three_points(capsys):
    code, out, _ = run(capsys, "curve", "--rates", "1", "--k", "1", "--grid", "3")
    assert code == 0
    rows = [ln.split(",") for ln in out.strip().split("\n")[1:]]
    cdfs = [float(r[1]) for r in rows]
    assert cdfs == sorted(cdfs)


def test_sample_summary(capsys):
    code, out, _ = run(capsys, "sample", "--rates", "1,2", "--k", "2",
                       "--draws", "20000", "--seed", "3")
    assert code == 0
    d = json.loads(out)
    assert d["ks_passed"] is True
    assert d["mean"] == pytest.approx(d["exact_mean"], rel=0.05)


def test_byte_identical_output(capsys):
    args = ("threshold", "--rates", "0.3,1.7,4.2", "--k", "2")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_config_file_with_inline_override(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"rates": [1.0, 2.0, 3.0], "k": 3}))
    code, out, _ = run(capsys, "threshold", "--config", str(cfg), "--k", "2")
    assert code == 0
    assert json.loads(out)["k"] == 2


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "rep.json"
    code = main(["threshold", "--rates", "1,2,3", "--k", "2", "--out", str(dest)])
    capsys.readouterr()
    assert code == 0
    assert json.loads(dest.read_text())["critical_gamma"] > 0


def test_verify_paper_unknown_suite(capsys):
    code, _, err = run(capsys, "verify-paper", "--suite", "nope")
    assert code == 2
    assert "suite" in err


def test_verify_paper_small_run(capsys):
    code, out, _ = run(capsys, "verify-paper", "--suite", "lemma2",
                       "--instances", "5", "--max-n", "5", "--seed", "1")
    assert code == 0
    d = json.loads(out)
    assert d["all_passed"] is True
    assert d["suites"][0]["suite"] == "lemma2"
