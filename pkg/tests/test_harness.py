import csv
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from prodhardy.estimators import LpNorm
from prodhardy.field import read_field
from prodhardy.harness import (
    EXPERIMENT_IDS,
    ConfigError,
    ExperimentConfig,
    ExperimentError,
    load_config,
    parse_config_text,
    run_experiment,
    write_report,
)
from prodhardy.harness import experiments
from prodhardy.harness.cli import main
from prodhardy.harness.experiments import ORACLES, report_csv, run_oracle, spread_pass, summarise

SMALL = {"grid": "n=64,L=8", "count": 3, "n_cf": 0}


def test_parse_config_text():
    text = """
    # comment line
    inequality = hls   # trailing comment
    grid = n=128,L=8
    p=0.7
    """
    raw = parse_config_text(text)
    assert raw == {"inequality": "hls", "grid": "n=128,L=8", "p": "0.7"}
    with pytest.raises(ConfigError, match="expected key"):
        parse_config_text("just words")


def test_load_config_file_and_overrides(tmp_path):
    path = tmp_path / "exp.cfg"
    path.write_text("inequality = hls\ngrid = n=128,L=8\np = 0.7\nalpha = 0.4\nseed = 3\n")
    cfg = load_config(path)
    assert (cfg.n, cfg.L, cfg.p, cfg.seed, cfg.d) == (128, 8.0, 0.7, 3, 2)
    cfg = load_config(path, {"p": 0.6, "grid": "n=64", "seed": None})
    assert (cfg.n, cfg.L, cfg.p, cfg.seed) == (64, 8.0, 0.6, 3)
    assert math.isclose(load_config(path, {"p": 0.8, "alpha": 0.5}).q, 1.0)
    with pytest.raises(ConfigError, match="exceeds 1"):
        load_config(path, {"p": 0.9})
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "missing.cfg")
    with pytest.raises(ConfigError, match="unknown config key"):
        load_config(None, {"colour": "red"}, "hls")
    with pytest.raises(ConfigError, match="no inequality"):
        load_config(None, {})
    with pytest.raises(ConfigError, match="bad grid"):
        load_config(None, {"grid": "n=100"}, "hls")
    with pytest.raises(ConfigError):
        load_config(None, {"grid": "m=64"}, "hls")


def test_defaults():
    for i in EXPERIMENT_IDS:
        cfg = ExperimentConfig(i).resolved()
        assert cfg.gate > 0
    hls = ExperimentConfig("hls").resolved()
    assert (hls.d, hls.n, hls.L, hls.p, hls.alpha, hls.q, hls.gate) == (2, 256, 16.0, 0.8, 0.5, 1.0, 1e3)
    assert ExperimentConfig("uchiyama").resolved().d == 1
    assert ExperimentConfig("sq-vs-max").resolved().gate == 50


@pytest.mark.parametrize(
    "over",
    [
        {"alpha": 2.5},  # alpha outside (0, d)
        {"alpha": 1.0},  # q = 4/3 > 1
        {"p": 1.5},
        {"d": 4},
        {"gate": -1.0},
        {"mode": "diagonal"},
    ],
)
def test_rejected_configs(over):
    with pytest.raises(ConfigError):
        ExperimentConfig("hls", **over).resolved()


def test_one_dimensional_ids_need_d1():
    with pytest.raises(ConfigError):
        ExperimentConfig("uchiyama", d=2).resolved()
    with pytest.raises(ConfigError):
        ExperimentConfig("nonsense").resolved()


def test_summary_and_gate():
    s = summarise(np.array([2.0, 1.0, 4.0]))
    assert s == {"min": 1.0, "median": 2.0, "max": 4.0, "spread": 4.0}
    assert spread_pass(np.array([1.0, 4.0]), 4.0)
    assert not spread_pass(np.array([1.0, 4.0]), 3.9)
    assert not spread_pass(np.array([1.0, np.inf]), 1e9)
    assert not spread_pass(np.array([]), 1e9)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=20), st.floats(1.0, 1e4), st.floats(1.0, 10.0))
def test_gate_monotonicity(ratios, gate, factor):
    r = np.array(ratios)
    if spread_pass(r, gate):
        assert spread_pass(r, gate * factor)


def test_three_member_report(tmp_path):
    rep = run_experiment(load_config(None, SMALL, "majorization"))
    assert len(rep.rows) == 3
    s = rep.summary
    assert s["max"] >= s["median"] >= s["min"]
    assert all(r.ratio <= 1.0 for r in rep.rows)
    assert rep.passed
    assert rep.config["oracle"]["ok"]
    csv_path, json_path = write_report(rep, tmp_path / "out")
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "id,lhs,rhs,ratio" and len(lines) == 4
    row = next(csv.DictReader(csv_path.open()))
    assert float(row["ratio"]) == rep.rows[0].ratio
    assert row["lhs"] == f"{rep.rows[0].lhs:.17g}"
    data = json.loads(json_path.read_text())
    assert data["pass"] is True and data["rows"] == 3 and data["config"]["inequality"] == "majorization"


def test_failing_gate(tmp_path):
    rep = run_experiment(load_config(None, {**SMALL, "gate": 1.0 + 1e-9}, "majorization"))
    assert not rep.passed


def test_nan_member_aborts(monkeypatch):
    class Broken(LpNorm):
        def _transform_one(self, f):
            return float("nan")

    monkeypatch.setattr(experiments, "_estimators", lambda cfg: (Broken(p=cfg.p), LpNorm(p=cfg.p)))
    with pytest.raises(ExperimentError, match="rect-000"):
        run_experiment(load_config(None, SMALL, "majorization"))


def test_counterexample_experiment():
    rep = run_experiment(ExperimentConfig("counterexample"))
    assert len(rep.rows) == 1
    row = rep.rows[0]
    assert abs(row.lhs - 2 * math.log(2)) <= 1e-4
    assert row.rhs == 16.0 / 4096
    assert rep.passed and rep.extra["integral_f"] <= row.rhs


@pytest.mark.parametrize("inequality", sorted(ORACLES))
def test_every_id_has_a_passing_oracle(inequality):
    out = run_oracle(inequality)
    assert out["ok"], out


@pytest.mark.parametrize("inequality", [i for i in EXPERIMENT_IDS if i not in ("counterexample",)])
def test_small_runs(inequality):
    over = dict(SMALL)
    if inequality == "uchiyama":
        over = {"grid": "n=256,L=16", "count": 4}
    rep = run_experiment(load_config(None, over, inequality))
    assert len(rep.rows) == (4 if inequality == "uchiyama" else 3)
    assert all(np.isfinite([r.ratio for r in rep.rows]))


def test_three_dimensional_strong_experiment():
    rep = run_experiment(load_config(None, {"d": 3, "grid": "n=32,L=4", "count": 3, "n_cf": 1}, "hardy-littlewood-strong"))
    assert len(rep.rows) == 4 and all(np.isfinite([r.ratio for r in rep.rows]))
    assert ExperimentConfig("hardy-littlewood-strong", d=3).resolved().n == 64


def test_uchiyama_square_estimator():
    rep = run_experiment(load_config(None, {"grid": "n=256,L=16", "count": 4, "estimator": "square"}, "uchiyama"))
    assert rep.config["estimator"] == "square" and rep.passed


# -- command line -------------------------------------------------------------------------


def test_cli_verify_and_report(tmp_path, capsys):
    out = tmp_path / "o"
    args = ["--out", str(out), "--grid", "n=64,L=8", "--count", "3"]
    assert main(["verify", "majorization", *args]) == 0
    assert "PASS majorization" in capsys.readouterr().out
    assert main(["verify", "majorization", *args, "--gate", "1.0000001"]) == 1
    assert main(["report", "--out", str(out)]) == 1
    assert main(["verify", "majorization", *args]) == 0
    assert main(["report", "--out", str(out)]) == 0
    assert main(["report", "--out", str(tmp_path / "empty")]) == 1


def test_cli_config_file_and_errors(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("grid = n=64,L=8\ncount = 3\nn_cf = 0\n")
    assert main(["verify", "sq-vs-max", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
    assert main(["verify", "hls", "--alpha", "1.0", "--out", str(tmp_path / "o")]) == 2
    assert "exceeds 1" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["verify", "not-an-id"])


def test_cli_gen_corpus(tmp_path):
    out = tmp_path / "corpus"
    assert main(["gen-corpus", "--out", str(out), "--grid", "n=64,L=8", "--d", "2", "--seed", "11"]) == 0
    lines = (out / "corpus.jsonl").read_text().splitlines()
    assert len(lines) == 40
    first = json.loads(lines[0])
    assert set(first) == {"id", "kind", "p", "geometry", "seed", "field"}
    f = read_field(out / first["field"])
    assert f.spec.n == (64, 64)
    first_bytes = (out / "corpus.jsonl").read_bytes()
    assert main(["gen-corpus", "--out", str(out), "--grid", "n=64,L=8", "--d", "2", "--seed", "11"]) == 0
    assert (out / "corpus.jsonl").read_bytes() == first_bytes


def test_cli_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert main(["verify", "iterated-hilbert", "--out", str(out), "--grid", "n=64,L=8", "--count", "3"]) == 0
    for name in ("iterated-hilbert.csv", "iterated-hilbert.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
