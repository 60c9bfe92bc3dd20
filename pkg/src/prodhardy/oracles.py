"""
Slow reference implementations used to validate the fast spectral paths.

Nothing here calls into the FFT machinery. Everything is a direct quadrature
or sum, or a closed form, kept deliberately independent.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

__all__ = [
    "riesz_quadrature",
    "hilbert_pv_quadrature",
    "poisson_kernel",
    "poisson_maximal_closed_form",
    "poisson_maximal_on_ladder",
    "s_function_point",
    "counterexample_cesaro_integral",
    "gaussian_ft",
]


def riesz_quadrature(f, x: float, beta: float, reach: float = 12.0) -> float:
    """``int f(x - y) |y|^(beta-1) dy`` for a smooth ``f`` concentrated near the origin.

    The ``y = 0`` singularity is handled by QUADPACK's algebraic weight; away
    from it the bump around ``y = x`` is integrated separately.
    """
    total = 0.0
    R = abs(x) + reach
    for sgn in (1.0, -1.0):
        g = lambda y, s=sgn: f(x - s * y)
        if abs(x) > reach / 2 + 0.5:
            pts = [0.0, abs(x) - reach / 2, abs(x) + reach / 2, R]
        else:
            pts = [0.0, R]
        for a, b in zip(pts[:-1], pts[1:]):
            if a == 0.0:
                v, _ = quad(g, a, b, weight="alg", wvar=(beta - 1.0, 0.0), limit=400, epsabs=1e-13)
            else:
                v, _ = quad(lambda y: g(y) * y ** (beta - 1.0), a, b, limit=400, epsabs=1e-13)
            total += v
    return total


def hilbert_pv_quadrature(f, x: float) -> float:
    """Principal value ``(1/pi) p.v. int f(x - y) / y dy`` via the symmetric fold."""
    g = lambda y: (f(x - y) - f(x + y)) / y if y > 0 else 0.0
    v1, _ = quad(g, 0.0, 1.0 + abs(x), limit=400, epsabs=1e-13)
    v2, _ = quad(g, 1.0 + abs(x), np.inf, limit=400, epsabs=1e-13)
    return (v1 + v2) / math.pi


def poisson_kernel(t: float, x):
    return t / (np.pi * (t * t + np.asarray(x) ** 2))


def poisson_maximal_closed_form(x):
    """``sup_{t >= 1} P_t(x)`` = ``sup_{s >= 0} (P_s * P_1)(x)``."""
    x = np.abs(np.asarray(x, dtype=float))
    return np.where(x <= 1.0, poisson_kernel(1.0, x), 1.0 / (2.0 * np.pi * np.maximum(x, 1e-300)))


def poisson_maximal_on_ladder(x, scales):
    """``max(P_1(x), max_{delta in scales} P_{1 + delta}(x))``."""
    x = np.asarray(x, dtype=float)
    best = poisson_kernel(1.0, x)
    for s in scales:
        best = np.maximum(best, poisson_kernel(1.0 + s, x))
    return best


def s_function_point(values: np.ndarray, h, psi, apertures, index) -> float:
    """Area integral at one grid point by direct (circular) summation.

    ``values`` has one axis per dimension; ``h`` and ``index`` are per-axis.
    For every aperture combination the convolution is formed with dense
    circulant matrices (no FFT), then squared and summed over the cone.
    """
    values = np.asarray(values)
    d = values.ndim
    n = values.shape
    h = tuple(h)
    rhos = [float(r) for r in apertures]

    def circulant(ax, rho):
        m = np.arange(n[ax])
        off = (m[:, None] - m[None, :] + n[ax] // 2) % n[ax] - n[ax] // 2
        return psi.dilated(rho, off * h[ax]) * h[ax]

    mats = [{r: circulant(ax, r) for r in rhos} for ax in range(d)]
    total = 0.0
    for combo in np.ndindex(*([len(rhos)] * d)):
        rho = [rhos[c] for c in combo]
        conv = values
        for ax in range(d):
            conv = np.moveaxis(np.tensordot(mats[ax][rho[ax]], conv, axes=([1], [ax])), 0, ax)
        sq = np.abs(conv) ** 2
        # cone window around the target point, one axis at a time
        for ax in range(d):
            k = np.arange(n[ax])
            off = (index[ax] - k + n[ax] // 2) % n[ax] - n[ax] // 2
            sel = np.abs(off * h[ax]) < rho[ax]
            sq = np.tensordot(sel.astype(float), sq, axes=([0], [0]))
        weight = math.prod(math.log(2.0) / r for r in rho)
        total += weight * float(sq) * math.prod(h)
    return math.sqrt(total)


def counterexample_cesaro_integral() -> float:
    """``int H(chi_(0,1] - chi_(1,2])`` = ``1 + int_1^2 (2 - x)/x dx`` = ``2 ln 2``."""
    return 2.0 * math.log(2.0)


def gaussian_ft(xi):
    """Fourier transform of ``exp(-pi x^2)``: itself."""
    return np.exp(-np.pi * np.asarray(xi) ** 2)
