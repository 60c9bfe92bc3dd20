"""
Experiment runner.

Each inequality id maps to a pair of norm estimators (lhs, rhs) evaluated on
every corpus member, plus an oracle check that exercises the numerical path
the experiment depends on against an independent reference. Boundedness is
judged by the spread ``max / min`` of the per-member ratios.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Callable

import numpy as np
from sklearn.pipeline import Pipeline

from .. import oracles
from ..atoms import build_corpus, counterexample_field
from ..cesaro import hardy_cesaro
from ..estimators import (
    CesaroHardyNorm,
    HardyLittlewood,
    HardyNorm,
    HilbertSubsetNorm,
    HilbertTransform,
    LpNorm,
    ProductFractionalIntegral,
    SquareNorm,
    UchiyamaNorm,
)
from ..field import make_grid, sample_fn
from ..hardy import ScaleLadder, maximal
from ..potentials import DCEnergyWarning, riesz_axis
from ..spectral import forward_ft, hilbert_axis
from .config import ExperimentConfig

__all__ = ["Row", "ExperimentReport", "ExperimentError", "run_experiment", "write_report", "ORACLES"]


class ExperimentError(RuntimeError):
    pass


@dataclass(frozen=True)
class Row:
    id: str
    lhs: float
    rhs: float
    ratio: float


@dataclass
class ExperimentReport:
    id: str
    rows: list[Row]
    config: dict[str, Any]
    passed: bool
    extra: dict[str, Any] = dc_field(default_factory=dict)

    @property
    def ratios(self) -> np.ndarray:
        return np.array([r.ratio for r in self.rows])

    @property
    def summary(self) -> dict[str, float]:
        return summarise(self.ratios)

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "pass": self.passed,
            "rows": len(self.rows),
            "summary": self.summary,
            "config": self.config,
            **self.extra,
        }


def summarise(ratios: np.ndarray) -> dict[str, float]:
    r = np.asarray(ratios, dtype=float)
    lo, hi = float(r.min()), float(r.max())
    return {"min": lo, "median": float(np.median(r)), "max": hi, "spread": hi / lo if lo > 0 else math.inf}


def spread_pass(ratios: np.ndarray, gate: float) -> bool:
    r = np.asarray(ratios, dtype=float)
    if r.size == 0 or not np.all(np.isfinite(r)) or np.any(r <= 0):
        return False
    return bool(r.max() / r.min() <= gate)


# -- oracles ------------------------------------------------------------------------------


def _bump(x):
    return (1.0 - 2.0 * np.pi * x * x) * np.exp(-np.pi * x * x)


def _oracle_riesz() -> dict:
    g = make_grid(1, 4096, 32.0)
    f = sample_fn(g, _bump)
    R = riesz_axis(f, 0, 0.25)
    x = g.coords(0)
    idx = [1024, 1800, 2048, 2300, 3000]
    ref = np.array([oracles.riesz_quadrature(_bump, float(x[i]), 0.25) for i in idx])
    err = float(np.max(np.abs(R.values[idx] - ref)) / np.max(np.abs(ref)))
    return {"name": "riesz-quadrature", "error": err, "tol": 1e-3}


def _oracle_gaussian_ft() -> dict:
    g = make_grid(1, 1024, 16.0)
    F = forward_ft(sample_fn(g, lambda x: np.exp(-np.pi * x * x)))
    ref = oracles.gaussian_ft(F.freqs(0))
    err = float(np.max(np.abs(F.coeffs - ref)) / np.max(np.abs(ref)))
    return {"name": "gaussian-ft", "error": err, "tol": 1e-10}


def _oracle_cesaro() -> dict:
    g = make_grid(1, 4096, 8.0)
    val = float(hardy_cesaro(counterexample_field(g)).integral())
    return {"name": "cesaro-2ln2", "error": abs(val - oracles.counterexample_cesaro_integral()), "tol": 1e-4}


def _oracle_hilbert() -> dict:
    g = make_grid(1, 4096, 64.0)
    H = hilbert_axis(sample_fn(g, lambda x: 1.0 / (1.0 + x * x)), 0, pad=4)
    x = g.coords(0)
    err = float(np.max(np.abs(H.values - x / (1.0 + x * x))))
    return {"name": "hilbert-closed-form", "error": err, "tol": 1e-3}


def _oracle_poisson_maximal() -> dict:
    g = make_grid(1, 4096, 256.0)
    ladder = ScaleLadder(-8, 8, 16)
    M = maximal(sample_fn(g, lambda x: oracles.poisson_kernel(1.0, x)), ladder, "radial")
    x = g.coords(0)
    keep = np.abs(x) <= 4.0
    err = float(np.max(np.abs(M.values[keep] - oracles.poisson_maximal_closed_form(x[keep]))))
    return {"name": "poisson-maximal-closed-form", "error": err, "tol": 1e-4}


def _oracle_s_function() -> dict:
    from ..square import ConeQuadrature, build_psi, s_function

    g = make_grid(1, 256, 16.0)
    f = sample_fn(g, _bump)
    psi = build_psi(1)
    quad = ConeQuadrature.for_grid(g)
    S = s_function(f, psi, quad)
    idx = (131,)
    ref = oracles.s_function_point(f.values, g.h, psi, quad.apertures, idx)
    return {"name": "s-function-brute-force", "error": abs(float(S.values[idx]) - ref) / ref, "tol": 1e-10}


ORACLES: dict[str, Callable[[], dict]] = {
    "hls": _oracle_riesz,
    "hardy-littlewood": _oracle_gaussian_ft,
    "hardy-littlewood-strong": _oracle_gaussian_ft,
    "cesaro-hardy": _oracle_cesaro,
    "cesaro-lp": _oracle_cesaro,
    "iterated-hilbert": _oracle_hilbert,
    "uchiyama": _oracle_hilbert,
    "majorization": _oracle_poisson_maximal,
    "counterexample": _oracle_cesaro,
    "sq-vs-max": _oracle_s_function,
}


def run_oracle(inequality: str) -> dict:
    out = ORACLES[inequality]()
    out["ok"] = bool(out["error"] <= out["tol"])
    return out


# -- experiments --------------------------------------------------------------------------


def _hardy(cfg: ExperimentConfig, p: float) -> HardyNorm:
    lad = cfg.ladder()
    return HardyNorm(p=p, mode=cfg.mode, j_min=lad.j_min, j_max=lad.j_max, per_octave=lad.per_octave)


def _estimators(cfg: ExperimentConfig):
    """(lhs, rhs) estimators for ``cfg.inequality``."""
    p = cfg.p
    i = cfg.inequality
    if i == "hls":
        lhs = Pipeline([("integral", ProductFractionalIntegral(alpha=cfg.alpha)), ("norm", _hardy(cfg, cfg.q))])
        return lhs, _hardy(cfg, p)
    if i == "hardy-littlewood":
        return HardyLittlewood(p=p), _hardy(cfg, p)
    if i == "hardy-littlewood-strong":
        return HardyLittlewood(p=p), HilbertSubsetNorm(p=p)
    if i == "cesaro-hardy":
        return CesaroHardyNorm(p=p, mode="on_fourier"), _hardy(cfg, p)
    if i == "cesaro-lp":
        return CesaroHardyNorm(p=p, mode="direct"), _hardy(cfg, p)
    if i == "iterated-hilbert":
        return Pipeline([("hilbert", HilbertTransform()), ("norm", _hardy(cfg, p))]), _hardy(cfg, p)
    if i == "uchiyama":
        lhs = SquareNorm(p=p) if cfg.estimator == "square" else _hardy(cfg, p)
        return lhs, UchiyamaNorm(p=p)
    if i == "majorization":
        return LpNorm(p=p), _hardy(cfg, p)
    if i == "sq-vs-max":
        return SquareNorm(p=p), _hardy(cfg, p)
    raise ExperimentError(f"no estimators for {i!r}")


def _counterexample(cfg: ExperimentConfig, oracle: dict) -> ExperimentReport:
    g = cfg.grid()
    f = counterexample_field(g)
    h = g.h[0]
    lhs = abs(float(hardy_cesaro(f).integral()))
    mean_f = abs(float(f.integral()))
    if not math.isfinite(lhs):
        raise ExperimentError("member counterexample: non-finite Hardy--Cesaro integral")
    row = Row("counterexample", lhs, h, lhs / h)
    passed = lhs > 1.0 and mean_f <= h
    config = cfg.echo() | {"oracle": oracle}
    return ExperimentReport(cfg.inequality, [row], config, passed, {"integral_f": mean_f})


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Evaluate lhs and rhs on every corpus member, then gate the ratio spread."""
    cfg = cfg.resolved()
    oracle = run_oracle(cfg.inequality)
    if cfg.inequality == "counterexample":
        return _counterexample(cfg, oracle)

    members = build_corpus(cfg.corpus(), cfg.grid())
    fields = [m.field for m in members]
    lhs_est, rhs_est = _estimators(cfg)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DCEnergyWarning)
        lhs = lhs_est.fit(fields).transform(fields).ravel()
        rhs = rhs_est.fit(fields).transform(fields).ravel()
    dc_warnings = sum(issubclass(w.category, DCEnergyWarning) for w in caught)

    rows = []
    for m, a, b in zip(members, lhs, rhs):
        r = a / b if b != 0 else math.inf
        if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(r)):
            raise ExperimentError(f"member {m.id}: non-finite value (lhs={a}, rhs={b})")
        rows.append(Row(m.id, float(a), float(b), float(r)))
    passed = spread_pass(np.array([r.ratio for r in rows]), cfg.gate)
    config = cfg.echo() | {"oracle": oracle}
    return ExperimentReport(cfg.inequality, rows, config, passed, {"dc_warnings": dc_warnings})


# -- output -------------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def report_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "lhs", "rhs", "ratio"])
    for r in report.rows:
        w.writerow([r.id, _fmt(r.lhs), _fmt(r.rhs), _fmt(r.ratio)])
    return buf.getvalue()


def report_json(report: ExperimentReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"


def write_report(report: ExperimentReport, out_dir) -> tuple[Path, Path]:
    """Write ``<out>/<id>.csv`` and ``<out>/<id>.json``; returns both paths."""
    out = Path(out_dir)
    csv_path = out / f"{report.id}.csv"
    json_path = out / f"{report.id}.json"
    for path, text in ((csv_path, report_csv(report)), (json_path, report_json(report))):
        try:
            out.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
        except OSError as e:
            raise OSError(f"cannot write report {path}: {e}") from e
    return csv_path, json_path
