"""
Atom generators for one-dimensional and product Hardy spaces, including
Chang--Fefferman atoms over finite disjoint unions of dyadic rectangles.
Also builds the Hardy--Cesaro counterexample and deterministic labelled corpora.

Every support must lie in the central half of the grid box so that circular
transforms downstream see no wrap-around. Generators are pure functions of
their spec and seed.

The validators at the bottom recompute every atom condition from the samples
alone and share no code with the generators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

import numpy as np
from numpy.polynomial import legendre

from .field import Field, GridSpec
from .square import required_moment_order

__all__ = [
    "AtomSpec1D",
    "CFAtomSpec",
    "AtomValidationError",
    "CorpusConfig",
    "CorpusMember",
    "make_hp_atom_1d",
    "make_rect_atom",
    "make_cf_atom",
    "counterexample_field",
    "build_corpus",
    "validate_hp_atom_1d",
    "validate_rect_atom",
    "validate_cf_atom",
    "validate_member",
    "derive_seeds",
]

Interval = tuple[float, float]
Rect = tuple[Interval, ...]


class AtomValidationError(ValueError):
    pass


@dataclass(frozen=True)
class AtomSpec1D:
    p: float
    center: float
    radius: float
    seed: int = 0

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")

    @property
    def interval(self) -> Interval:
        return (self.center - self.radius, self.center + self.radius)


@dataclass(frozen=True)
class CFAtomSpec:
    p: float
    rectangles: tuple[Rect, ...]
    seed: int = 0

    def __post_init__(self):
        if not self.rectangles:
            raise ValueError("a Chang-Fefferman atom needs at least one rectangle")
        rects = tuple(tuple((float(a), float(b)) for a, b in R) for R in self.rectangles)
        object.__setattr__(self, "rectangles", rects)


def derive_seeds(seed: int, index: int, count: int) -> tuple[int, ...]:
    """Fixed splitting rule for child seeds."""
    ss = np.random.SeedSequence([int(seed), int(index)])
    return tuple(int(s) for s in ss.generate_state(count, dtype=np.uint32))


def _check_central(lo: float, hi: float, L: float):
    if lo < -L / 2 - 1e-12 or hi > L / 2 + 1e-12:
        raise ValueError(f"support [{lo}, {hi}] leaves the central half [-{L / 2}, {L / 2}]")


def _profile(x: np.ndarray, lo: float, hi: float, p: float, seed: int) -> np.ndarray:
    """Seeded random polynomial on ``(lo, hi)`` with discrete moments ``0..[1/p-1]`` removed."""
    N = required_moment_order(p)
    inside = (x > lo) & (x < hi)
    m = int(inside.sum())
    if m < N + 3:
        raise ValueError(f"interval ({lo}, {hi}) holds {m} samples, too few for {N + 1} moments")
    c, r = 0.5 * (lo + hi), 0.5 * (hi - lo)
    t = (x[inside] - c) / r
    rng = np.random.default_rng(seed)
    prof = legendre.legval(t, rng.standard_normal(N + 7))
    # discrete least-squares projection off the polynomials of degree <= N
    V = legendre.legvander(t, N)
    Q, _ = np.linalg.qr(V)
    prof = prof - Q @ (Q.T @ prof)
    peak = np.max(np.abs(prof))
    if not peak > 1e-12 * math.sqrt(m):
        raise ValueError("profile degenerated to zero after moment projection")
    out = np.zeros_like(x)
    out[inside] = prof / peak
    return out


def make_hp_atom_1d(spec: AtomSpec1D, grid: GridSpec) -> Field:
    """H^p atom on ``B = [c - r, c + r]`` with ``||a||_inf = |B|^(-1/p)``."""
    if grid.d != 1:
        raise ValueError("make_hp_atom_1d needs a one-dimensional grid")
    lo, hi = spec.interval
    _check_central(lo, hi, grid.L[0])
    prof = _profile(grid.coords(0), lo, hi, spec.p, spec.seed)
    return Field(grid, prof * (hi - lo) ** (-1.0 / spec.p))


def _rect_volume(R: Rect) -> float:
    return float(np.prod([b - a for a, b in R]))


def make_rect_atom(p: float, R: Rect, seeds: Sequence[int], grid: GridSpec) -> Field:
    """Tensor product of per-axis atoms on ``R``, scaled to ``||a||_2^2 = |R|^(1 - 2/p)``."""
    R = tuple(tuple(map(float, side)) for side in R)
    if len(R) != grid.d or len(seeds) != grid.d:
        raise ValueError("rectangle / seeds do not match the grid dimension")
    vals = np.ones(1)
    for ax, ((a, b), s) in enumerate(zip(R, seeds)):
        _check_central(a, b, grid.L[ax])
        prof = _profile(grid.coords(ax), a, b, p, s)
        shape = [1] * grid.d
        shape[ax] = -1
        vals = vals * prof.reshape(shape)
    vals = np.broadcast_to(vals, grid.n)
    l2sq = np.sum(vals**2) * grid.cell_volume
    target = _rect_volume(R) ** (1.0 - 2.0 / p)
    return Field(grid, vals * math.sqrt(target / l2sq))


def _is_dyadic(a: float, b: float) -> bool:
    s = b - a
    if s <= 0:
        return False
    j = math.log2(s)
    if abs(j - round(j)) > 1e-12:
        return False
    k = a / s
    return abs(k - round(k)) < 1e-9


def _overlap(R: Rect, S: Rect) -> bool:
    return all(min(b1, b2) > max(a1, a2) for (a1, b1), (a2, b2) in zip(R, S))


def make_cf_atom(spec: CFAtomSpec, grid: GridSpec) -> Field:
    """Sum of rectangle atoms with random positive weights, scaled to the CF budget.

    ``sum_R ||a_R||_2^2 = |Omega|^(1 - 2/p)`` with ``|Omega| = sum_R |R|``.
    """
    rects = spec.rectangles
    for R in rects:
        if len(R) != grid.d:
            raise ValueError("rectangle dimension does not match the grid")
        if not all(_is_dyadic(a, b) for a, b in R):
            raise ValueError(f"rectangle {R} is not dyadic")
    for R, S in itertools.combinations(rects, 2):
        if _overlap(R, S):
            raise ValueError(f"rectangles {R} and {S} overlap")
    wrng = np.random.default_rng(derive_seeds(spec.seed, 1 << 20, 1)[0])
    weights = wrng.uniform(0.5, 1.5, size=len(rects)) if len(rects) > 1 else np.ones(1)
    total = np.zeros(grid.n)
    budget = 0.0
    for i, (R, w) in enumerate(zip(rects, weights)):
        aR = make_rect_atom(spec.p, R, derive_seeds(spec.seed, i, grid.d), grid)
        total += w * aR.values
        budget += w * w * np.sum(aR.values**2) * grid.cell_volume
    omega = sum(_rect_volume(R) for R in rects)
    target = omega ** (1.0 - 2.0 / spec.p)
    return Field(grid, total * math.sqrt(target / budget))


def counterexample_field(grid: GridSpec) -> Field:
    """Samples of ``chi_(0,1] - chi_(1,2]``."""
    if grid.d != 1:
        raise ValueError("counterexample_field needs a one-dimensional grid")
    if grid.L[0] / 2 < 2.0:
        raise ValueError("domain too small: [0, 2] must lie in the central half")
    x = grid.coords(0)
    return Field(grid, np.where((x > 0) & (x <= 1), 1.0, 0.0) - np.where((x > 1) & (x <= 2), 1.0, 0.0))


# -- corpora ----------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusConfig:
    """Parameters of a deterministic atom corpus.

    For ``d = 1`` the corpus holds ``count`` H^p atoms on dyadic intervals. For
    ``d >= 2`` it holds ``count`` rectangular atoms cycling through ``scales``
    dyadic short sides and ``aspects`` dyadic aspect ratios (1, 2, 4, ...),
    followed by ``n_cf`` Chang--Fefferman atoms with 2..8 rectangles.
    """

    d: int
    p: float
    seed: int = 7
    count: int = 32
    scales: int = 4
    aspects: int = 4
    n_cf: int = 8
    min_cells: int = 4


@dataclass(frozen=True, eq=False)
class CorpusMember:
    id: str
    kind: str
    p: float
    geometry: Any
    seed: int
    field: Field = dc_field(repr=False)

    def manifest(self, path: str | None = None) -> dict:
        return {"id": self.id, "kind": self.kind, "p": self.p, "geometry": self.geometry, "seed": self.seed, "field": path}


def _side_range(grid: GridSpec, cfg: CorpusConfig) -> tuple[int, int]:
    h = max(grid.h)
    u_min = math.ceil(math.log2(cfg.min_cells * h) - 1e-12)
    u_max = math.floor(math.log2(min(grid.L) / 4) + 1e-12)
    return u_min, u_max


def _shapes(cfg: CorpusConfig, u_min: int, u_max: int) -> list[tuple[int, ...]]:
    """Side exponents, one entry per axis, short side ``2^u`` and one long axis."""
    out = []
    short = range(u_min, min(u_min + cfg.scales, u_max + 1))
    for u in short:
        for D in range(cfg.aspects):
            if u + D > u_max:
                continue
            if D == 0:
                out.append((u,) * cfg.d)
                continue
            for long_ax in range(cfg.d):
                out.append(tuple(u + D if ax == long_ax else u for ax in range(cfg.d)))
    return out


def _place(rng, exps: Sequence[int]) -> Rect:
    # dyadic intervals [k s, (k + 1) s) with k in {-2, -1, 0, 1}: near the origin,
    # inside [-2 s, 2 s]
    R = []
    for u in exps:
        s = 2.0**u
        k = int(rng.integers(-2, 2))
        R.append((k * s, (k + 1) * s))
    return tuple(R)


def build_corpus(cfg: CorpusConfig, grid: GridSpec) -> list[CorpusMember]:
    """Deterministic labelled atom corpus; every member passes its validator."""
    if grid.d != cfg.d:
        raise ValueError("corpus dimension does not match the grid")
    rng = np.random.default_rng(cfg.seed)
    u_min, u_max = _side_range(grid, cfg)
    if u_min > u_max:
        raise ValueError("grid too coarse for the requested minimum atom size")
    members: list[CorpusMember] = []

    if cfg.d == 1:
        exps = list(range(u_min, min(u_min + cfg.scales, u_max + 1)))
        for i in range(cfg.count):
            u = exps[i % len(exps)]
            ((a, b),) = _place(rng, (u,))
            seed = int(derive_seeds(cfg.seed, i, 1)[0])
            spec = AtomSpec1D(cfg.p, 0.5 * (a + b), 0.5 * (b - a), seed)
            members.append(
                CorpusMember(f"hp1d-{i:03d}", "hp1d", cfg.p, {"interval": [a, b]}, seed, make_hp_atom_1d(spec, grid))
            )
    else:
        shapes = _shapes(cfg, u_min, u_max)
        for i in range(cfg.count):
            R = _place(rng, shapes[i % len(shapes)])
            seeds = derive_seeds(cfg.seed, i, cfg.d)
            members.append(
                CorpusMember(
                    f"rect-{i:03d}",
                    "rect",
                    cfg.p,
                    {"rectangle": [list(s) for s in R], "seeds": list(seeds)},
                    int(seeds[0]),
                    make_rect_atom(cfg.p, R, seeds, grid),
                )
            )
        cf_hi = max(u_min, u_max - 1)
        for i in range(cfg.n_cf):
            k = 2 + i % 7
            rects: list[Rect] = []
            tries = 0
            while len(rects) < k:
                tries += 1
                if tries > 10_000:
                    raise RuntimeError("could not place disjoint rectangles")
                exps = tuple(int(rng.integers(u_min, cf_hi + 1)) for _ in range(cfg.d))
                R = _place(rng, exps)
                if not any(_overlap(R, S) for S in rects):
                    rects.append(R)
            seed = int(derive_seeds(cfg.seed, 10_000 + i, 1)[0])
            spec = CFAtomSpec(cfg.p, tuple(rects), seed)
            members.append(
                CorpusMember(
                    f"cf-{i:03d}",
                    "cf",
                    cfg.p,
                    {"rectangles": [[list(s) for s in R] for R in spec.rectangles]},
                    seed,
                    make_cf_atom(spec, grid),
                )
            )
    for m in members:
        validate_member(m)
    return members


# -- validators (independent of the generators) -----------------------------------------


def _fail(msg):
    raise AtomValidationError(msg)


def _moment_ok(x: np.ndarray, v: np.ndarray, k: int, h: float, tol: float) -> bool:
    # v: samples along the last axis; x: coordinates of that axis
    w = x.astype(float) ** k
    mom = (v * w).sum(axis=-1) * h
    scale = (np.abs(v) * np.abs(w)).sum(axis=-1) * h
    return bool(np.all(np.abs(mom) <= tol * np.maximum(scale, 1e-300)))


def validate_hp_atom_1d(a: Field, p: float, interval: Interval, tol: float = 1e-8) -> None:
    lo, hi = interval
    x = a.spec.coords(0)
    v = a.values
    outside = (x <= lo) | (x >= hi)
    if np.any(v[outside] != 0):
        _fail("support leaves B")
    if np.max(np.abs(v)) > (hi - lo) ** (-1.0 / p) * (1 + tol):
        _fail("sup bound |B|^(-1/p) violated")
    for k in range(int(1.0 / p - 1.0 + 1e-12) + 1):
        if not _moment_ok(x, v, k, a.spec.h[0], tol):
            _fail(f"moment {k} does not vanish")


def _rect_checks(v: np.ndarray, grid: GridSpec, p: float, R: Rect, tol: float):
    mask = np.ones(grid.n, dtype=bool)
    for ax, (lo, hi) in enumerate(R):
        x = grid.coords(ax)
        shape = [1] * grid.d
        shape[ax] = -1
        mask &= ((x > lo) & (x < hi)).reshape(shape)
    if np.any(v[~mask] != 0):
        _fail(f"support leaves {R}")
    order = int(1.0 / p - 1.0 + 1e-12)
    for ax in range(grid.d):
        moved = np.moveaxis(v, ax, -1)
        for k in range(order + 1):
            if not _moment_ok(grid.coords(ax), moved, k, grid.h[ax], tol):
                _fail(f"moment {k} along axis {ax} does not vanish on every line")


def validate_rect_atom(a: Field, p: float, R: Rect, tol: float = 1e-8) -> None:
    _rect_checks(a.values, a.spec, p, R, tol)
    l2sq = float(np.sum(np.abs(a.values) ** 2) * a.spec.cell_volume)
    vol = math.prod(b - lo for lo, b in R)
    if l2sq > vol ** (1.0 - 2.0 / p) * (1 + tol):
        _fail("L2 budget |R|^(1-2/p) exceeded")


def validate_cf_atom(a: Field, p: float, rects: Sequence[Rect], tol: float = 1e-8) -> None:
    grid = a.spec
    covered = np.zeros(grid.n, dtype=int)
    budget = 0.0
    for R in rects:
        mask = np.ones(grid.n, dtype=bool)
        for ax, (lo, hi) in enumerate(R):
            x = grid.coords(ax)
            shape = [1] * grid.d
            shape[ax] = -1
            mask &= ((x > lo) & (x < hi)).reshape(shape)
        covered += mask
        piece = np.where(mask, a.values, 0.0)
        _rect_checks(piece, grid, p, R, tol)
        budget += float(np.sum(np.abs(piece) ** 2) * grid.cell_volume)
    if np.any(covered > 1):
        _fail("rectangles overlap")
    if np.any(a.values[covered == 0] != 0):
        _fail("support leaves Omega")
    omega = sum(math.prod(b - lo for lo, b in R) for R in rects)
    if budget > omega ** (1.0 - 2.0 / p) * (1 + tol):
        _fail("CF budget |Omega|^(1-2/p) exceeded")


def validate_member(m: CorpusMember) -> None:
    g = m.geometry
    if m.kind == "hp1d":
        validate_hp_atom_1d(m.field, m.p, tuple(g["interval"]))
    elif m.kind == "rect":
        validate_rect_atom(m.field, m.p, tuple(tuple(s) for s in g["rectangle"]))
    elif m.kind == "cf":
        validate_cf_atom(m.field, m.p, [tuple(tuple(s) for s in R) for R in g["rectangles"]])
    else:
        _fail(f"unknown member kind {m.kind!r}")
