import math
import os
import subprocess

import pytest

import mcbounds

TWO_STATE = {
    "type": "finite",
    "id": "two-state",
    "Q": [[0.9, 0.1], [0.2, 0.8]],
    "V": [math.e, math.e**3],
    "g": [1, -2],
}

CERT = {"lambda": 0.5, "b": 1, "d": 9, "m": 1, "eps": 0.5}


def test_geometric_rate():
    r = mcbounds.geometric_rate(0.5, 1, 9, 1, 0.5)
    want = math.log(0.5) * math.log(0.7) / math.log(0.35 / 9.5)
    assert r["log_rho"] == pytest.approx(want, rel=1e-13)
    assert r["c"] == pytest.approx(104.0, abs=0.05)


def test_contraction_rate_roots():
    r = mcbounds.contraction_rate(0.5, 1, 9, 1, 0.5, pi_V=2.0)
    assert r["delta_star"] == pytest.approx(-1.15 + math.sqrt(1.15**2 + 1.5), abs=1e-10)
    d = mcbounds.contraction_rate(0.5, 1, 9, 1, 0.9, pi_V=2.0)
    assert d["degenerate"] and d["delta_star"] == 0.0


def test_combinatorics():
    assert mcbounds.gaussian_moment(3) == 15
    exact, log_value = mcbounds.b_coefficient(0, 2, 3)
    assert exact == 2125440
    assert log_value == pytest.approx(math.log(2125440))
    assert mcbounds.b_coefficient(0.5, 1, 2)[0] is None
    assert mcbounds.b_coefficient_upper_log(0, 2, 3) == pytest.approx(math.log(2488320))


def test_stationary_and_moments():
    pi = mcbounds.stationary([[0.9, 0.1], [0.2, 0.8]])
    assert pi == pytest.approx([2 / 3, 1 / 3])
    m = mcbounds.exact_sn_moments(TWO_STATE["Q"], TWO_STATE["V"], TWO_STATE["g"], 1, 2)
    assert m[0] == pytest.approx(1.0)
    assert m[1] == pytest.approx(0.0, abs=1e-14)
    assert m[2] == pytest.approx(2 / 3 * 1 + 1 / 3 * 4)


def test_constants_and_bound():
    c = mcbounds.constants({"model": TWO_STATE})
    assert c["pi"] == pytest.approx([2 / 3, 1 / 3])
    assert 0 < c["vgeom"]["rho"] < 1
    reports = mcbounds.bound({"model": TWO_STATE, "theorems": ["T1"], "cell": {"n": 20, "q": 1}})
    assert reports[0]["raw"] == pytest.approx(reports[0]["inputs"]["var_Sn"], rel=1e-12)


def test_sweep_dominates_and_is_deterministic():
    cfg = {
        "model": TWO_STATE,
        "theorems": ["T1", "T5"],
        "grid": {"n": [10, 20], "q": [1, 2], "t": [30]},
        "replicas": 2000,
        "seed": 5,
    }
    rows, violated, errors = mcbounds.sweep(cfg)
    assert len(rows) == 6
    assert violated == 0 and errors == 0
    assert all(r["status"] == "dominates" for r in rows)
    assert mcbounds.sweep(cfg, workers=3)[0] == rows


def test_simulate_coupled_sgd():
    rows = mcbounds.simulate({"model": {"type": "sgd"}, "steps": 5, "coupled": {}, "seed": 2})
    assert len(rows) == 6
    assert set(rows[0]) == {"step", "x0", "x1", "xp0", "xp1"}


def test_errors_map_to_exceptions():
    with pytest.raises(mcbounds.ConfigError):
        mcbounds.constants({"modle": {}})
    with pytest.raises(ValueError):
        mcbounds.geometric_rate(1.5, 1, 9, 1, 0.5)


@pytest.mark.skipif("MCBOUNDS_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_constants(tmp_path):
    p = tmp_path / "c.json"
    p.write_text('{"certificate": {"lambda": 0.5, "b": 1, "d": 9, "m": 1, "eps": 0.5}}')
    out = subprocess.run([os.environ["MCBOUNDS_CLI"], "constants", "-c", str(p)],
                         capture_output=True, text=True, check=True)
    assert '"degenerate": false' in out.stdout
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    rc = subprocess.run([os.environ["MCBOUNDS_CLI"], "constants", "-c", str(bad)],
                        capture_output=True, text=True)
    assert rc.returncode == 2
    assert "line" in rc.stderr and "column" in rc.stderr


def test_configs_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import json
    import pathlib

    root = pathlib.Path(__file__).resolve().parents[2]
    schema = json.loads((root / "schema" / "config.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    configs = sorted((root / "configs").glob("*.json"))
    assert configs
    for path in configs:
        config = json.loads(path.read_text())
        validator.validate(config)
        # The native validator accepts what the schema accepts.
        if "model" in config or "certificate" in config:
            mcbounds.constants({k: v for k, v in config.items() if k != "output"})
    bad = {"model": {"type": "sgd", "step": 0.1}}
    assert not validator.is_valid(bad)
    with pytest.raises(mcbounds.ConfigError):
        mcbounds.constants(bad)
