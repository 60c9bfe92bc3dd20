"""
Experiment configuration.

Config files are plain ``key = value`` lines; ``#`` starts a comment. Recognised
keys match the :class:`ExperimentConfig` fields, plus ``grid`` in the form
``n=256,L=16`` (``n`` and ``L`` may also be given separately).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..atoms import CorpusConfig
from ..field import Exponents, GridSpec, make_grid
from ..hardy import ScaleLadder

__all__ = [
    "EXPERIMENT_IDS",
    "ConfigError",
    "ExperimentConfig",
    "parse_config_text",
    "load_config",
    "parse_grid",
]

EXPERIMENT_IDS = (
    "hls",
    "hardy-littlewood",
    "hardy-littlewood-strong",
    "cesaro-hardy",
    "cesaro-lp",
    "iterated-hilbert",
    "uchiyama",
    "majorization",
    "counterexample",
    "sq-vs-max",
)

# ratio-spread gates
DEFAULT_GATES = {
    "hls": 1e3,
    "hardy-littlewood": 1e2,
    "hardy-littlewood-strong": 1e2,
    "cesaro-hardy": 1e3,
    "cesaro-lp": 1e3,
    "iterated-hilbert": 1e3,
    "uchiyama": 1e2,
    "majorization": 1e3,
    "counterexample": math.inf,
    "sq-vs-max": 50.0,
}

ONE_DIMENSIONAL = ("uchiyama", "counterexample")


class ConfigError(ValueError):
    pass


def _default_grid(inequality: str, d: int) -> tuple[int, float]:
    if inequality == "counterexample":
        return 4096, 8.0
    if d == 1:
        return 1024, 16.0
    if d == 2:
        return 256, 16.0
    return 64, 4.0


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything that determines an experiment's output.

    ``None`` for ``d``, ``n``, ``L`` or ``gate`` means "use the default for this
    inequality"; :meth:`resolved` fills them in.
    """

    inequality: str
    d: int | None = None
    p: float = 0.8
    alpha: float = 0.5
    n: int | None = None
    L: float | None = None
    j_min: int | None = None
    j_max: int | None = None
    per_octave: int = 1
    mode: str = "product"
    estimator: str = "maximal"
    seed: int = 7
    count: int = 32
    scales: int = 4
    aspects: int = 4
    n_cf: int = 8
    gate: float | None = None

    def resolved(self) -> "ExperimentConfig":
        if self.inequality not in EXPERIMENT_IDS:
            raise ConfigError(f"unknown inequality id {self.inequality!r}; choose from {', '.join(EXPERIMENT_IDS)}")
        d = self.d
        if d is None:
            d = 1 if self.inequality in ONE_DIMENSIONAL else 2
        n0, L0 = _default_grid(self.inequality, d)
        cfg = dataclasses.replace(
            self,
            d=d,
            n=n0 if self.n is None else self.n,
            L=L0 if self.L is None else float(self.L),
            gate=DEFAULT_GATES[self.inequality] if self.gate is None else float(self.gate),
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.d not in (1, 2, 3):
            raise ConfigError(f"d must be 1, 2 or 3, got {self.d}")
        if self.inequality in ONE_DIMENSIONAL and self.d != 1:
            raise ConfigError(f"{self.inequality} is a one-dimensional experiment, got d={self.d}")
        if not 0 < self.p <= 1:
            raise ConfigError(f"p must lie in (0, 1], got {self.p}")
        if self.inequality == "hls":
            try:
                ex = Exponents(self.p, self.alpha, self.d)
            except ValueError as e:
                raise ConfigError(f"incompatible exponents: {e}") from None
            if ex.q > 1 + 1e-12:
                raise ConfigError(f"q = {ex.q:g} exceeds 1, outside the Hardy estimator range")
        if self.mode not in ("product", "radial"):
            raise ConfigError(f"mode must be product or radial, got {self.mode!r}")
        if self.estimator not in ("maximal", "square"):
            raise ConfigError(f"estimator must be maximal or square, got {self.estimator!r}")
        if self.gate is not None and not self.gate > 0:
            raise ConfigError("gate must be positive")
        if self.count < 1:
            raise ConfigError("count must be >= 1")
        try:
            self.grid()
        except ValueError as e:
            raise ConfigError(f"bad grid: {e}") from None

    @property
    def q(self) -> float | None:
        if self.inequality != "hls":
            return None
        return Exponents(self.p, self.alpha, self.d).q

    def grid(self) -> GridSpec:
        return make_grid(self.d, self.n, self.L)

    def ladder(self) -> ScaleLadder:
        spec = self.grid()
        base = ScaleLadder.for_grid(spec, self.per_octave)
        ladder = ScaleLadder(
            base.j_min if self.j_min is None else self.j_min,
            base.j_max if self.j_max is None else self.j_max,
            self.per_octave,
        )
        ladder.check(spec)
        return ladder

    def corpus(self) -> CorpusConfig:
        return CorpusConfig(
            d=self.d, p=self.p, seed=self.seed, count=self.count, scales=self.scales, aspects=self.aspects, n_cf=self.n_cf
        )

    def echo(self) -> dict[str, Any]:
        out = dataclasses.asdict(self)
        out["q"] = self.q
        if out["gate"] == math.inf:
            out["gate"] = "inf"
        return out

    def with_overrides(self, values: Mapping[str, Any]) -> "ExperimentConfig":
        return dataclasses.replace(self, **coerce(values))


_FIELDS = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
_INT_KEYS = {"d", "n", "j_min", "j_max", "per_octave", "seed", "count", "scales", "aspects", "n_cf"}
_FLOAT_KEYS = {"p", "alpha", "L", "gate"}


def parse_grid(text: str) -> dict[str, Any]:
    """``"n=256,L=16"`` -> ``{"n": 256, "L": 16.0}``."""
    out: dict[str, Any] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, val = part.partition("=")
        if not sep or key.strip() not in ("n", "L"):
            raise ConfigError(f"bad grid item {part!r}; expected n=<int> or L=<float>")
        out[key.strip()] = val.strip()
    return coerce(out)


def coerce(values: Mapping[str, Any]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, val in values.items():
        if key == "grid":
            out.update(parse_grid(val) if isinstance(val, str) else val)
            continue
        if key not in _FIELDS:
            raise ConfigError(f"unknown config key {key!r}")
        if val is None or (isinstance(val, str) and val.lower() in ("", "none", "default")):
            out[key] = None
            continue
        try:
            if key in _INT_KEYS:
                out[key] = int(val)
            elif key in _FLOAT_KEYS:
                out[key] = float(val)
            else:
                out[key] = str(val)
        except (TypeError, ValueError):
            raise ConfigError(f"bad value {val!r} for {key}") from None
    return out


def parse_config_text(text: str, source: str = "<config>") -> dict[str, Any]:
    """Parse ``key = value`` lines into a raw (string-valued) mapping."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ConfigError(f"{source}:{lineno}: expected key = value, got {raw.strip()!r}")
        # grid values contain '=' themselves, so only the first one splits
        out[key.strip()] = val.strip()
    return out


def load_config(path: str | Path | None, overrides: Mapping[str, Any] | None = None, inequality: str | None = None):
    """Build an :class:`ExperimentConfig` from a file plus overrides (overrides win)."""
    values: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from None
        values.update(parse_config_text(text, str(path)))
    values = coerce(values)
    if overrides:
        values.update(coerce({k: v for k, v in overrides.items() if v is not None}))
    if inequality is not None:
        values["inequality"] = inequality
    if "inequality" not in values:
        raise ConfigError("no inequality id given")
    return ExperimentConfig(**values).resolved()
