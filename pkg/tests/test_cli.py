import csv
import io
import json
import math
import os
import subprocess
import sys

import pytest

from rigidsphere.cli import main
from rigidsphere.series import MultiSeries
from rigidsphere.surfaces import expand_surface
from rigidsphere.parameters import NormalFormCoeffs, coeffs_to_twist

SQRT2 = math.sqrt(2)


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def run_json(capsys, *argv):
    rc, out, _ = run(capsys, *argv)
    return rc, json.loads(out)


# ----------------------------------------------------------------------
# classify
def test_classify_unreachable(capsys):
    rc, r = run_json(capsys, "classify", "--c22", "0", "--c23-re", "2", "--c33", "-4")
    assert rc == 0 and r["stanton_reachable"] is False and r["stanton_witness"] is None
    assert len(r["roots"]) >= 1


def test_classify_boundary_reachable(capsys):
    rc, r = run_json(capsys, "classify", "--c22", "0", "--c23-re", "2", "--c33", "-2")
    assert rc == 0 and r["stanton_reachable"] is True
    w = r["stanton_witness"]
    assert math.hypot(w["b_re"], w["b_im"]) == pytest.approx(1.0, abs=1e-9)


def test_classify_heisenberg(capsys):
    rc, r = run_json(capsys, "classify", "--c22", "0", "--c23-re", "0", "--c33", "0")
    assert rc == 0 and r["heisenberg"] is True
    assert len(r["roots"]) == 1 and r["roots"][0]["phi"] == 0


def test_classify_worked_example(capsys):
    rc, r = run_json(capsys, "classify", "--c22", "0", "--c23-re", "-2.8284271247461903", "--c33", "-4",
                     "--root-index", "0")
    assert rc == 0 and r["selected_root_index"] == 0
    assert any(abs(t["theta"] + 3) < 1e-9 and abs(t["r2"] + 3) < 1e-9 for t in r["roots"])


def test_classify_bad_root_index(capsys):
    rc, _, err = run(capsys, "classify", "--c22", "0", "--root-index", "7")
    assert rc == 2 and "root index" in err


# ----------------------------------------------------------------------
# expand
def test_expand_stanton_b0(capsys):
    rc, r = run_json(capsys, "expand", "--source", "stanton", "--r", "1", "--theta", "1", "--cap", "8")
    assert rc == 0
    c = r["coeffs"]
    assert c["c22"] == pytest.approx(-2, abs=1e-10)
    assert abs(complex(c["c23_re"], c["c23_im"])) < 1e-10
    assert c["c33"] == pytest.approx(2 / 3 + 6, abs=1e-10)


def test_expand_heisenberg_series(capsys):
    rc, r = run_json(capsys, "expand", "--source", "twist", "--cap", "6", "--drop-below", "1e-14")
    assert rc == 0
    S = MultiSeries.from_json(json.dumps(r["series"]))
    assert [d for d, _ in S.terms(1e-14)] == [(1, 1)]


def test_expand_generic_stanton_matches_formulas(capsys):
    rc, r = run_json(capsys, "expand", "--source", "stanton", "--b-re", "0.3", "--b-im", "-0.2",
                     "--r", "0.8", "--theta", "-0.5", "--cap", "8")
    b, rr, th = complex(0.3, -0.2), 0.8, -0.5
    b2 = abs(b) ** 2
    c = r["coeffs"]
    assert c["c22"] == pytest.approx(6 * b2 - 2 * th, abs=1e-9)
    c23 = 2 * (rr - 1j * th) * b + 4j * b * b2
    assert complex(c["c23_re"], c["c23_im"]) == pytest.approx(c23, abs=1e-9)
    assert c["c33"] == pytest.approx(2 / 3 * rr ** 2 + 6 * th ** 2 + 56 * b2 ** 2 - 112 / 3 * th * b2, abs=1e-9)


def test_params_file_and_precedence(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"c22": 1.0, "c23_re": 0.5, "c33": 2.0}))
    rc, a = run_json(capsys, "classify", "--params-file", str(f))
    assert rc == 0 and a["coeffs"]["c22"] == 1.0 and a["coeffs"]["c23_re"] == 0.5
    rc, b = run_json(capsys, "classify", "--params-file", str(f), "--c22", "3")
    assert rc == 0 and b["coeffs"]["c22"] == 3.0 and b["coeffs"]["c33"] == 2.0


def test_bad_params_file(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text("{not json")
    rc, _, _ = run(capsys, "classify", "--params-file", str(f))
    assert rc == 2
    rc, _, _ = run(capsys, "classify", "--params-file", str(tmp_path / "missing.json"))
    assert rc == 2


# ----------------------------------------------------------------------
# sample
def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sample_heisenberg(capsys):
    rc, out, _ = run(capsys, "sample", "--source", "twist", "--radius", "0.3", "--n-radial", "3", "--n-angular", "3")
    rows = read_csv(out)
    assert rc == 0 and len(rows) == 9
    for row in rows:
        z = complex(float(row["re_z"]), float(row["im_z"]))
        assert row["status"] == "ok" and float(row["v"]) == pytest.approx(abs(z) ** 2, abs=1e-14)


def test_sample_worked_example(capsys):
    rc, out, _ = run(capsys, "sample", "--c23-re", str(-2 * SQRT2), "--c33", "-4", "--root-index", "0",
                     "--radius", "0.1", "--n-radial", "2", "--n-angular", "4")
    rows = read_csv(out)
    assert rc == 0 and float(rows[0]["v"]) == 0
    t = coeffs_to_twist(NormalFormCoeffs(0, -2 * SQRT2, -4))[0]
    V = expand_surface(t, 14).V
    for row in rows[4:]:
        z = complex(float(row["re_z"]), float(row["im_z"]))
        assert float(row["v"]) == pytest.approx(V.evaluate(z=z, zbar=z.conjugate()).real, abs=1e-9)


def test_sample_usage_error(capsys):
    rc, _, _ = run(capsys, "sample", "--radius", "-1")
    assert rc == 2


# ----------------------------------------------------------------------
# verify
@pytest.mark.parametrize("suite", ["tubes", "curvature", "map", "normalization", "circular"])
def test_verify_suites_pass(capsys, suite):
    rc, r = run_json(capsys, "verify", "--suite", suite, "--cap", "8", "--seed", "1")
    assert rc == 0 and r["passed"] and r["suites"][suite]["passed"]


def test_verify_tubes_four(capsys):
    rc, r = run_json(capsys, "verify", "--suite", "tubes")
    assert rc == 0 and len(r["suites"]["tubes"]["tubes"]) == 4


def test_verify_all_deterministic(capsys):
    rc1, out1, _ = run(capsys, "verify", "--suite", "all", "--cap", "8", "--seed", "42")
    rc2, out2, _ = run(capsys, "verify", "--suite", "all", "--cap", "8", "--seed", "42")
    assert rc1 == rc2 == 0 and out1 == out2


def test_verify_aliases(capsys):
    rc, r = run_json(capsys, "verify-map", "--cap", "6", "--seed", "3", "--samples", "1")
    assert rc == 0 and list(r["suites"]) == ["map"]
    rc, r = run_json(capsys, "verify-curvature", "--cap", "8", "--seed", "3", "--samples", "1")
    assert rc == 0 and list(r["suites"]) == ["curvature"]


def test_verify_perturbed_defect_scaling(capsys):
    ratios = {}
    for delta in ("1e-3", "1e-4"):
        rc, r = run_json(capsys, "verify", "--suite", "map", "--cap", "8", "--seed", "5", "--samples", "1",
                         "--perturb-phi", delta)
        assert rc == 0
        ratios[delta] = [c["perturbed"]["residual_over_defect"] for c in r["suites"]["map"]["cases"]
                         if c["kind"] == "twisted"]
    for a, b in zip(ratios["1e-3"], ratios["1e-4"]):
        assert abs(a / b - 1) < 0.1


def test_verify_failure_exit_code(capsys, tmp_path):
    zz = MultiSeries.var("z", 10, ("z", "zbar")) * MultiSeries.var("zbar", 10, ("z", "zbar"))
    f = tmp_path / "h.json"
    f.write_text((zz + zz ** 3).to_json())
    rc, r = run_json(capsys, "verify-curvature", "--series-file", str(f))
    assert rc == 1 and r["passed"] is False
    assert r["suites"]["curvature"]["reports"][0]["verdict"].startswith("nonzero_at_degree")
    f.write_text((zz + 0.25 * zz * zz).to_json())
    rc, r = run_json(capsys, "verify-curvature", "--series-file", str(f))
    assert rc == 1
    f.write_text(MultiSeries(("z", "zbar"), 8).to_json())
    rc, r = run_json(capsys, "verify-curvature", "--series-file", str(f), "--series-kind", "f")
    assert rc == 0


@pytest.mark.parametrize("argv", [
    ["verify", "--cap", "3"],
    ["verify", "--cap", "40"],
    ["verify", "--tol", "-1"],
    ["verify", "--suite", "bogus"],
    ["expand", "--source", "nowhere"],
    ["expand", "--c22", "abc"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    rc, _, _ = run(capsys, *argv)
    assert rc == 2


# ----------------------------------------------------------------------
# normalize
def test_normalize_arctan(capsys):
    rc, r = run_json(capsys, "normalize", "--c22", "1", "--cap", "8")
    assert rc == 0 and max(r["residuals"]) < 1e-12
    h = MultiSeries.from_json(json.dumps(r["h"]))
    # h = (2/3) arctan(3u/2)
    assert h.coeff(u=1) == pytest.approx(1) and h.coeff(u=3) == pytest.approx(-0.75)


def test_normalize_stanton_data(capsys):
    rc, r = run_json(capsys, "normalize", "--source", "stanton", "--b-re", "0.2", "--r", "0.7",
                     "--theta", "0.1", "--stanton-data", "--cap", "8")
    assert rc == 0 and max(r["residuals"]) < 1e-10
    p = MultiSeries.from_json(json.dumps(r["p"]))
    h = MultiSeries.from_json(json.dumps(r["h"]))
    assert p.coeff(u=1) == pytest.approx(0.2) and 2 * h.coeff(u=2) == pytest.approx(-1.4)


# ----------------------------------------------------------------------
# entry point and environment
def test_env_cap_and_entry_point():
    env = dict(os.environ, RIGID_SPHERE_CAP="6")
    out = subprocess.run([sys.executable, "-m", "rigidsphere.cli", "expand", "--source", "twist"],
                         capture_output=True, text=True, env=env, check=True)
    assert json.loads(out.stdout)["series"]["cap"] == 6
    env["RIGID_SPHERE_CAP"] = "banana"
    bad = subprocess.run([sys.executable, "-m", "rigidsphere.cli", "expand"], capture_output=True, text=True, env=env)
    assert bad.returncode == 2


def test_floats_round_trip(capsys):
    x = 0.1 + 2 ** -50
    rc, r = run_json(capsys, "classify", "--c22", repr(x))
    assert rc == 0 and r["coeffs"]["c22"] == x
    rc, out, _ = run(capsys, "sample", "--source", "twist", "--radius", "0.3", "--n-radial", "2", "--n-angular", "3")
    row = read_csv(out)[-1]
    assert len(row["re_z"].replace("-", "").replace(".", "").lstrip("0")) >= 15
