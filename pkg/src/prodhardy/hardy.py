"""
Poisson smoothing and the radial/product Poisson maximal functions, with the
Hardy (quasi-)norm estimators built on them. Also holds the Fourier-side
Hardy--Littlewood functionals and the one-dimensional ``||f||_p + ||Hf||_p``.

The supremum over smoothing scales is taken over a finite :class:`ScaleLadder`
of dyadic scales together with the identity (scale zero), so the discrete
maximal function always dominates ``|f|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Literal

import numpy as np
import scipy.fft as sfft

from .field import Field, GridSpec, as_tuple, lp_quasinorm
from .spectral import MultiplierSpec, apply_multiplier, forward_ft, hilbert_axis, iterated_hilbert

__all__ = [
    "ScaleLadder",
    "poisson_multiplier",
    "poisson_smooth",
    "maximal",
    "hardy_norm_estimate",
    "hardy_littlewood_functional",
    "uchiyama_rhs",
    "hilbert_subset_sum",
]

Mode = Literal["radial", "product"]


@dataclass(frozen=True)
class ScaleLadder:
    """Smoothing scales ``2^(j / per_octave)`` for ``j_min <= j / per_octave <= j_max``.

    ``per_octave=1`` is the plain dyadic ladder.
    """

    j_min: int
    j_max: int
    per_octave: int = 1

    def __post_init__(self):
        if not self.j_min < self.j_max:
            raise ValueError(f"need j_min < j_max, got {self.j_min}, {self.j_max}")
        if self.per_octave < 1:
            raise ValueError("per_octave must be >= 1")

    @property
    def scales(self) -> np.ndarray:
        k = self.per_octave
        return 2.0 ** (np.arange(self.j_min * k, self.j_max * k + 1) / k)

    def __len__(self) -> int:
        return (self.j_max - self.j_min) * self.per_octave + 1

    def check(self, spec: GridSpec) -> None:
        """Reject a ladder that does not span grid spacing to domain size."""
        if 2.0**self.j_min > min(spec.h) * (1 + 1e-12):
            raise ValueError(f"ladder bottom 2^{self.j_min} exceeds the grid spacing {min(spec.h)}")
        if 2.0**self.j_max < max(spec.L) * (1 - 1e-12):
            raise ValueError(f"ladder top 2^{self.j_max} is below the half-width {max(spec.L)}")

    @classmethod
    def for_grid(cls, spec: GridSpec, per_octave: int = 1) -> "ScaleLadder":
        """Smallest dyadic ladder valid for ``spec``."""
        return cls(math.floor(math.log2(min(spec.h))), math.ceil(math.log2(max(spec.L))), per_octave)


def _poisson_1d(n: int, h: float, t: float) -> np.ndarray:
    # FFT-ordered exp(-2 pi t |xi|)
    return np.exp(-2.0 * np.pi * t * np.abs(sfft.fftfreq(n, d=h)))


def poisson_multiplier(t) -> MultiplierSpec:
    """``prod_i exp(-2 pi t_i |xi_i|)``; keeps the dc bin, so mass is preserved."""
    t = tuple(float(v) for v in np.atleast_1d(t))

    def ev(xi):
        m = 1.0
        for ti, x in zip(t, xi):
            if ti:
                m = m * np.exp(-2.0 * np.pi * ti * np.abs(x))
        return m

    return MultiplierSpec(ev, None, None)


def poisson_smooth(f: Field, t) -> Field:
    """Convolve with the product Poisson kernel ``prod_i P_{t_i}(x_i)``.

    ``t`` is a scalar or per-axis sequence of scales; ``t_i = 0`` leaves axis
    ``i`` untouched.
    """
    t = as_tuple(t, f.d)
    if any(ti < 0 for ti in t):
        raise ValueError(f"Poisson scales must be >= 0, got {t}")
    if not any(t):
        return f
    return apply_multiplier(f, poisson_multiplier(t))


def _abs(y: np.ndarray, real: bool) -> np.ndarray:
    return np.abs(y.real) if real else np.abs(y)


def maximal(f: Field, ladder: ScaleLadder, mode: Mode = "product") -> Field:
    """Discrete Poisson maximal function over ``{0} U ladder``.

    ``radial`` uses equal scales on every axis; ``product`` takes the supremum
    over every per-axis combination of scales (``(len(ladder) + 1)^d`` of them).
    The scale-zero term is ``|f|`` itself, so the result dominates ``|f|``
    pointwise.
    """
    if mode not in ("radial", "product"):
        raise ValueError(f"unknown mode {mode!r}")
    spec = f.spec
    ladder.check(spec)
    real = not f.is_complex
    out = np.abs(f.values).copy()
    X = sfft.fftn(f.values)
    scales = ladder.scales

    if mode == "radial":
        for t in scales:
            m = 1.0
            for ax in range(spec.d):
                shape = [1] * spec.d
                shape[ax] = -1
                m = m * _poisson_1d(spec.n[ax], spec.h[ax], t).reshape(shape)
            np.maximum(out, _abs(sfft.ifftn(X * m), real), out=out)
        return Field(spec, out)

    # nested per-axis passes: undo one axis at a time so every prefix of scale
    # choices is shared between its completions
    per_axis = [[0.0, *scales] for _ in range(spec.d)]

    def rec(Y, ax):
        if ax == spec.d:
            np.maximum(out, _abs(Y, real), out=out)
            return
        shape = [1] * spec.d
        shape[ax] = -1
        for t in per_axis[ax]:
            Z = Y if t == 0.0 else Y * _poisson_1d(spec.n[ax], spec.h[ax], t).reshape(shape)
            rec(sfft.ifft(Z, axis=ax), ax + 1)

    rec(X, 0)
    return Field(spec, out)


def hardy_norm_estimate(f: Field, p: float, ladder: ScaleLadder | None = None, mode: Mode = "product") -> float:
    """``lp_quasinorm(maximal(f, ladder, mode), p)``; estimates ``||f||_{H^p}``."""
    if ladder is None:
        ladder = ScaleLadder.for_grid(f.spec)
    return lp_quasinorm(maximal(f, ladder, mode), p)


def hardy_littlewood_functional(f: Field, p: float, mode: Literal["product", "classical"] = "product") -> float:
    """Weighted Fourier quasi-norm ``(int |f^|^p / w)^(1/p)``.

    ``w = prod_i |xi_i|^(2-p)`` in ``product`` mode and ``|xi|^((2-p) d)`` in
    ``classical`` mode. Bins on the singular set of ``w`` are left out.
    """
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    F = forward_ft(f)
    spec = f.spec
    xi = spec.freq_mesh()
    with np.errstate(divide="ignore"):
        if mode == "product":
            logw = sum((2.0 - p) * np.log(np.abs(x)) for x in xi)
        elif mode == "classical":
            r2 = sum(x**2 for x in xi)
            logw = 0.5 * (2.0 - p) * spec.d * np.log(r2)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    logw = np.broadcast_to(logw, spec.n)
    keep = np.isfinite(logw)
    a = np.abs(F.coeffs)[keep]
    total = np.sum(a**p * np.exp(-logw[keep])) * np.prod(F.dxi)
    return float(total ** (1.0 / p))


def uchiyama_rhs(f: Field, p: float) -> float:
    """``||f||_p + ||H f||_p`` for a one-dimensional field."""
    if f.d != 1:
        raise ValueError("uchiyama_rhs is defined for one-dimensional fields")
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    return lp_quasinorm(f, p) + lp_quasinorm(hilbert_axis(f, 0), p)


def hilbert_subset_sum(f: Field, p: float) -> float:
    """``sum over axis subsets S`` of ``||H_S f||_p^p`` (``H_empty = identity``)."""
    total = 0.0
    for mask in iproduct((0, 1), repeat=f.d):
        axes = [a for a, on in enumerate(mask) if on]
        total += lp_quasinorm(iterated_hilbert(f, axes), p) ** p
    return total
