import json
import os
import subprocess

import jsonschema
import numpy as np
import pytest

import mppdg


def test_problem_listing():
    names = {p["name"] if isinstance(p, dict) else p[0] for p in mppdg.list_problems()}
    assert {"linear-1d", "porous-medium", "vortex-patch"} <= names


def test_run_matches_report_schema():
    out = mppdg.run("linear-1d", order=2, cells=32, tfinal=0.5, mpp=True)
    jsonschema.validate(out.report, mppdg.schema("report"))
    assert out.report["min"] >= 0.0
    assert out.averages.shape == (32,)
    assert out.y_center is None
    assert out.report["errors"]["l1"] < 1e-3


def test_parameters_and_errors():
    out = mppdg.run("porous-medium", {"m": 3}, order=1, cells=20, tfinal=0.05, tvb=1)
    assert out.report["params"]["m"] == 3
    with pytest.raises(ValueError):
        mppdg.run("linear-1d", order=9)
    with pytest.raises(KeyError):
        mppdg.run("no-such-problem")


def test_convergence_schema_and_order():
    table, csv = mppdg.converge("linear-1d", [16, 32, 64], order=2)
    jsonschema.validate(table, mppdg.schema("convergence"))
    assert abs(table["rows"][-1]["l1_order"] - 3.0) < 0.3
    assert "cells,l1,l1_order" in csv


def test_bounds_schema(tmp_path):
    suite = mppdg.bounds("vortex", [8], tmp_path)
    jsonschema.validate(suite, mppdg.schema("bounds"))
    assert (tmp_path / "table.csv").exists()


def test_primitives():
    nodes, weights = mppdg.gauss_rule(3)
    assert np.isclose(sum(weights), 2.0)
    assert np.isclose(sum(w * x**4 for x, w in zip(nodes, weights)), 0.4)
    u = mppdg.ssprk3_scalar(lambda t, v: -v, 1.0, 0.0, 0.1)
    assert abs(u - (1 - 0.1 + 0.005 - 0.001 / 6)) < 1e-14
    assert mppdg.minmod(1.0, 2.0, 3.0) == 1.0
    assert mppdg.minmod(1.0, -2.0, 3.0) == 0.0


def test_limiter_keeps_update_in_bounds():
    rng = np.random.default_rng(4)
    n = 6
    ubar = rng.uniform(0, 1, n)
    low = np.append(np.roll(ubar, 1), ubar[-1])
    high = low + rng.uniform(-1, 1, n + 1)
    high[-1] = high[0]
    flux, theta, limited = mppdg.mpp_limit_1d(list(high), list(low), list(ubar), 0.0, 1.0, 0.5)
    new = ubar - 0.5 * np.diff(flux)
    assert np.all(new >= -1e-12) and np.all(new <= 1 + 1e-12)
    assert np.all((np.asarray(theta) >= 0) & (np.asarray(theta) <= 1))


@pytest.mark.skipif("MPPDG_CLI" not in os.environ, reason="CLI not built")
def test_cli_outputs(tmp_path):
    cli = os.environ["MPPDG_CLI"]
    subprocess.run(
        [cli, "run", "--problem", "swirling", "--cells", "8", "--tfinal", "0.02", "--out", str(tmp_path)],
        check=True,
    )
    report = json.loads((tmp_path / "report.json").read_text())
    jsonschema.validate(report, mppdg.schema("report"))
    lines = (tmp_path / "solution.csv").read_text().splitlines()
    assert "x_center,y_center,u_bar" in lines
    assert len([l for l in lines if l and not l.startswith("#")]) == 65

    conv = tmp_path / "conv"
    subprocess.run([cli, "converge", "--problem", "linear-1d", "--meshes", "16", "32", "--out", str(conv)],
                   check=True)
    jsonschema.validate(json.loads((conv / "report.json").read_text()), mppdg.schema("convergence"))
    assert (conv / "table.csv").read_text().count("\n") >= 3

    bad = subprocess.run([cli, "run", "--cells", "0"], capture_output=True, text=True)
    assert bad.returncode != 0
    assert "mppdg:" in bad.stderr
