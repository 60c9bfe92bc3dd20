"""
The multiparameter Hardy--Cesaro operator

    (Hf)(x) = (x_1 ... x_d)^(-1) int_0^{x_1} ... int_0^{x_d} f(t) dt

on half-offset grids, with oriented integrals (``int_0^x = -int_x^0`` for
``x < 0``) so every sign quadrant of R^d is covered.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from .field import Field, lp_quasinorm
from .spectral import shifted_ft

__all__ = ["oriented_integral", "hardy_cesaro", "cesaro_hardy_lhs"]


def _oriented_cumsum(v: np.ndarray, h: float, axis: int) -> np.ndarray:
    # midpoint cells: the current cell counts half, earlier cells (walking away
    # from the origin) count fully; the origin is the edge between n/2-1 and n/2
    v = np.moveaxis(v, axis, -1)
    n = v.shape[-1]
    half = n // 2
    out = np.empty_like(v)
    pos = v[..., half:] * h
    out[..., half:] = np.cumsum(pos, axis=-1) - 0.5 * pos
    neg = v[..., :half][..., ::-1] * h
    out[..., :half] = -(np.cumsum(neg, axis=-1) - 0.5 * neg)[..., ::-1]
    return np.moveaxis(out, -1, axis)


def oriented_integral(f: Field) -> Field:
    """``int_0^{x_1} ... int_0^{x_d} f(t) dt`` at every grid point."""
    v = f.values
    for ax in range(f.d):
        v = _oriented_cumsum(v, f.spec.h[ax], ax)
    return f.with_values(v)


def hardy_cesaro(f: Field) -> Field:
    """Hardy--Cesaro average of ``f`` (the grid never hits ``x_i = 0``)."""
    denom = np.ones(1)
    for x in f.spec.mesh():
        denom = denom * x
    return f.with_values(oriented_integral(f).values / denom)


def cesaro_hardy_lhs(f: Field, p: float, mode: Literal["on_fourier", "direct"] = "on_fourier") -> float:
    """Left-hand sides of the Hardy--Cesaro inequalities.

    ``on_fourier``: ``(int |H(f^)(xi)|^p prod_i |xi_i|^(p-2) dxi)^(1/p)``, with
    ``f^`` sampled half a bin off the DFT bins so that ``H`` and the weight are
    evaluated away from the coordinate hyperplanes.

    ``direct``: ``||H f||_p``.
    """
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    if mode == "direct":
        return lp_quasinorm(hardy_cesaro(f), p)
    if mode != "on_fourier":
        raise ValueError(f"unknown mode {mode!r}")
    F = shifted_ft(f)
    Hf = hardy_cesaro(F)
    w = np.ones(1)
    for xi in F.spec.mesh():
        w = w * np.abs(xi) ** (p - 2.0)
    total = np.sum(np.abs(Hf.values) ** p * w) * F.spec.cell_volume
    return float(total ** (1.0 / p))
