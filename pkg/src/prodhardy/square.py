"""
Analyzing wavelet and the (product) Lusin area integral.

For a field on R^d the area integral is

    S(f)(x)^2 = int_{Gamma_d} ... int_{Gamma_1} |f *_1 psi_{rho_1} ... *_d psi_{rho_d}|^2 (x - s)
                prod_i ds_i drho_i / rho_i^2,

with cones ``Gamma_i = {(s, rho) : |s| < rho}`` and ``psi_rho = psi(./rho) / rho``.
Apertures are dyadic, ``rho_j = 2^j``, each carrying the weight ``ln 2 / rho_j``
(the ``drho / rho^2`` mass of one octave, taken at its lower end). Shift
integrals are grid sums over ``|k h| < rho``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft
from numpy.polynomial import polynomial as P

from .field import Field, GridSpec, lp_quasinorm

__all__ = [
    "AnalyzingWavelet",
    "ConeQuadrature",
    "build_psi",
    "s_function",
    "sq_norm_estimate",
    "required_moment_order",
]

MOMENT_TOL = 1e-8


def required_moment_order(p: float) -> int:
    """``[1/p - 1]``, the vanishing-moment order needed at exponent ``p``."""
    # a hair of slack so that 1/p - 1 landing on an integer is not lost to rounding
    return int(math.floor(1.0 / p - 1.0 + 1e-12))


@dataclass(frozen=True, eq=False)
class AnalyzingWavelet:
    """Even wavelet supported in ``[-1, 1]`` with vanishing moments ``0..N``.

    ``psi(x) = Q(x^2)`` on ``[-1, 1]``; ``samples`` holds psi on a fine grid over
    ``[-2, 2]`` and is what the invariants are checked against.
    """

    N: int
    derivative_order: int
    q_coeffs: np.ndarray
    samples: Field

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u = x * x
        return np.where(u <= 1.0, P.polyval(u, self.q_coeffs), 0.0)

    def dilated(self, rho: float, x) -> np.ndarray:
        return self(np.asarray(x) / rho) / rho


def _check_wavelet(w: AnalyzingWavelet) -> None:
    s = w.samples
    x = s.spec.coords(0)
    v = s.values
    if np.any(v[np.abs(x) > 1.0] != 0.0):
        raise ValueError("wavelet samples leak outside [-1, 1]")
    if not np.array_equal(v, v[::-1]):
        raise ValueError("wavelet samples are not even")
    h = s.spec.h[0]
    for k in range(w.N + 1):
        mk = np.sum(x**k * v) * h
        scale = np.sum(np.abs(x**k * v)) * h
        if abs(mk) > MOMENT_TOL * scale:
            raise ValueError(f"moment {k} of the wavelet is {mk:.3g}, not negligible")


def build_psi(N: int = 1, resolution: int = 1024) -> AnalyzingWavelet:
    """Wavelet ``psi = d^(2m)/dx^(2m) (1 - x^2)^(2m + 6)``, sup-normalised.

    ``2m`` is the smallest even integer ``>= N + 1``; integrating by parts kills
    every moment below ``2m``, and the bump vanishes to order 6 beyond that at
    ``+-1``, which keeps the sampled moments at rounding level.
    """
    if N < 0:
        raise ValueError(f"moment order must be >= 0, got {N}")
    two_m = 2 * ((N + 2) // 2)
    bump = P.polypow([1.0, 0.0, -1.0], two_m + 6)
    d = P.polyder(bump, two_m)
    odd = d[1::2]
    if np.any(odd != 0.0):
        raise RuntimeError("derivative of an even bump came out with odd terms")
    q = d[0::2]
    q = q / np.max(np.abs(P.polyval(np.linspace(0, 1, 4097), q)))
    grid = GridSpec((resolution,), (2.0,))
    x = grid.coords(0)
    u = x * x
    vals = np.where(u <= 1.0, P.polyval(u, q), 0.0)
    w = AnalyzingWavelet(N, two_m, q, Field(grid, vals))
    _check_wavelet(w)
    return w


@dataclass(frozen=True)
class ConeQuadrature:
    """Dyadic apertures ``2^j`` for ``j_min <= j <= j_max``."""

    j_min: int
    j_max: int

    def __post_init__(self):
        if self.j_min > self.j_max:
            raise ValueError("need j_min <= j_max")

    @property
    def apertures(self) -> np.ndarray:
        return 2.0 ** np.arange(self.j_min, self.j_max + 1)

    @property
    def weights(self) -> np.ndarray:
        return math.log(2.0) / self.apertures

    def check(self, spec: GridSpec) -> None:
        if 2.0**self.j_min < 2.0 * max(spec.h) * (1 - 1e-12):
            raise ValueError("smallest aperture must cover at least two grid cells")
        if 2.0**self.j_max > min(spec.L) * (1 + 1e-12):
            raise ValueError("largest aperture must not exceed the half-width")

    @classmethod
    def for_grid(cls, spec: GridSpec) -> "ConeQuadrature":
        return cls(math.ceil(math.log2(2.0 * max(spec.h))), math.floor(math.log2(min(spec.L))) - 1)


class _AxisKernels:
    """FFT'd wavelet and box kernels for one axis, keyed by aperture."""

    def __init__(self, n: int, h: float, psi: AnalyzingWavelet, apertures):
        offs = sfft.fftfreq(n, d=1.0 / n) * h  # k h in FFT order
        self.psi = {}
        self.box = {}
        for rho in apertures:
            self.psi[rho] = sfft.fft(psi.dilated(rho, offs) * h)
            self.box[rho] = sfft.fft(np.where(np.abs(offs) < rho, h, 0.0))


def s_function(f: Field, psi: AnalyzingWavelet, quad: ConeQuadrature | None = None) -> Field:
    """Discretised product area integral of ``f`` (single-parameter when d = 1)."""
    spec = f.spec
    if quad is None:
        quad = ConeQuadrature.for_grid(spec)
    quad.check(spec)
    rhos = [float(r) for r in quad.apertures]
    wts = [float(w) for w in quad.weights]
    kern = [_AxisKernels(spec.n[ax], spec.h[ax], psi, rhos) for ax in range(spec.d)]
    real = not f.is_complex

    def conv(a, k, ax):
        shape = [1] * spec.d
        shape[ax] = -1
        out = sfft.ifft(sfft.fft(a, axis=ax) * k.reshape(shape), axis=ax)
        return out.real if real else out

    def rec(g, ax):
        if ax == spec.d:
            return np.abs(g) ** 2
        acc = np.zeros(spec.n)
        for rho, w in zip(rhos, wts):
            inner = rec(conv(g, kern[ax].psi[rho], ax), ax + 1)
            acc += w * np.maximum(conv(inner, kern[ax].box[rho], ax).real, 0.0)
        return acc

    s2 = rec(f.values, 0)
    # box sums of nonnegative data can dip below zero by rounding only
    return Field(spec, np.sqrt(np.maximum(s2, 0.0)))


def sq_norm_estimate(f: Field, p: float, psi: AnalyzingWavelet, quad: ConeQuadrature | None = None) -> float:
    """``||S(f)||_p``, the square-function estimate of ``||f||_{H^p}``."""
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    need = required_moment_order(p)
    if psi.N < need:
        raise ValueError(f"wavelet has {psi.N} vanishing moments, p={p} needs {need}")
    return lp_quasinorm(s_function(f, psi, quad), p)
