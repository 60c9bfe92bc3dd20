"""
One-dimensional Riesz potentials along an axis and the product fractional
integral ``I_(alpha,d) f = f * prod_i |y_i|^(alpha/d - 1)``.

Kernels are the unnormalised ``|y|^(beta-1)``; on the Fourier side this is the
multiplier ``c(beta) |xi|^(-beta)`` with

    c(beta) = 2 Gamma(beta) cos(pi beta / 2) / (2 pi)^beta.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma

from .field import Field, check_axis
from .spectral import MultiplierSpec, apply_multiplier

__all__ = [
    "RieszOrder",
    "RieszResult",
    "DCEnergyWarning",
    "riesz_constant",
    "riesz_multiplier",
    "riesz_axis",
    "product_fractional",
    "dc_energy",
]

DC_TOL = 1e-6


class DCEnergyWarning(UserWarning):
    """Input carries energy on the zero-frequency hyperplane the potential drops."""


@dataclass(frozen=True)
class RieszOrder:
    beta: float

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ValueError(f"Riesz order must lie in (0, 1), got {self.beta}")


class RieszResult(Field):
    """A :class:`Field` that also remembers whether the input had dc energy."""

    dc_flagged: bool = False


def riesz_constant(beta: float) -> float:
    """Fourier transform constant of ``|y|^(beta-1)`` under ``exp(-2 pi i x xi)``."""
    return float(2.0 * gamma(beta) * np.cos(np.pi * beta / 2.0) / (2.0 * np.pi) ** beta)


def riesz_multiplier(axis: int, beta: float) -> MultiplierSpec:
    RieszOrder(beta)
    c = riesz_constant(beta)
    # Nyquist keeps its (real, even) value; only the xi_axis = 0 hyperplane is dropped
    return MultiplierSpec(lambda xi: c * np.abs(xi[axis]) ** (-beta), 0.0, None, (axis,))


def dc_energy(f: Field, axis: int) -> float:
    """Relative l2 energy of ``f`` on the ``xi_axis = 0`` hyperplane."""
    m = f.values.mean(axis=axis)
    total = float(np.sum(np.abs(f.values) ** 2))
    if total == 0.0:
        return 0.0
    return float(np.sum(np.abs(m) ** 2) * f.spec.n[axis] / total)


def _flagged(f: Field, flag: bool) -> RieszResult:
    out = RieszResult(f.spec, f.values, f.freq_axes)
    object.__setattr__(out, "dc_flagged", flag)
    return out


def riesz_axis(f: Field, axis: int, beta: float, pad: int = 1) -> RieszResult:
    """``int f(..., x_axis - y, ...) |y|^(beta-1) dy`` as a Fourier multiplier.

    The zero-frequency hyperplane is discarded, so the result is the potential
    of the axis-wise mean-free part of ``f``. Inputs with relative dc energy
    above ``1e-6`` get a :class:`DCEnergyWarning` and ``dc_flagged=True``.
    """
    axis = check_axis(f, axis)
    RieszOrder(beta)
    flag = dc_energy(f, axis) > DC_TOL
    if flag:
        warnings.warn(
            f"field has relative dc energy {dc_energy(f, axis):.3g} along axis {axis}; "
            "the Riesz potential drops it",
            DCEnergyWarning,
            stacklevel=2,
        )
    out = apply_multiplier(f, riesz_multiplier(axis, beta), pad)
    return _flagged(out, flag)


def product_fractional(f: Field, alpha: float, pad: int = 1) -> RieszResult:
    """Product fractional integral ``I_(alpha,d)``: ``riesz_axis`` with ``alpha/d`` on every axis."""
    d = f.d
    if not 0 < alpha < d:
        raise ValueError(f"alpha must lie in (0, {d}), got {alpha}")
    beta = alpha / d
    out, flag = f, False
    for ax in range(d):
        out = riesz_axis(out, ax, beta, pad)
        flag = flag or out.dc_flagged
    return _flagged(out, flag)
