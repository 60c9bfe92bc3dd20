"""
Continuous Fourier transform on sampled fields, Fourier multipliers and
directional Hilbert transforms.

Convention: ``f^(xi) = int f(x) exp(-2 pi i x.xi) dx``. On a grid with half-width
``L`` the bins sit at ``xi_k = k / (2L)``, ``k in [-n/2, n/2)``, stored in that
(centred) order. The DFT picks up a phase from the half-offset origin, which is
folded into :func:`forward_ft` / :func:`inverse_ft`.

All transforms are circular; inputs are expected to be supported in the central
half of the box (or padded through the ``pad`` argument).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.fft as sfft

from .field import Field, GridSpec, axes_tuple, check_axis

__all__ = [
    "Spectrum",
    "MultiplierSpec",
    "forward_ft",
    "inverse_ft",
    "partial_ft",
    "shifted_ft",
    "apply_multiplier",
    "hilbert_axis",
    "iterated_hilbert",
    "hilbert_multiplier",
]

# imaginary residue (relative to the real part) below which a real input is
# returned as a real field
REAL_RESIDUE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Approximate continuous Fourier transform of a :class:`Field`.

    ``coeffs[k_1 + n_1/2, ..., k_d + n_d/2]`` approximates ``f^(k_1/(2L_1), ...)``.
    """

    spec: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128, copy=True)
        if c.shape != self.spec.n:
            raise ValueError(f"coeffs shape {c.shape} does not match grid {self.spec.n}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dxi(self) -> tuple[float, ...]:
        return tuple(1.0 / (2.0 * L) for L in self.spec.L)

    def freqs(self, axis: int) -> np.ndarray:
        return self.spec.freqs(axis)


def _phase(spec: GridSpec, axis: int) -> np.ndarray:
    # exp(-2 pi i x_0 xi_k) with x_0 = -L + h/2, xi_k = k/(2L):  (-1)^k exp(-i pi k / n)
    n = spec.n[axis]
    k = np.arange(-n // 2, n // 2)
    return np.where(k % 2 == 0, 1.0, -1.0) * np.exp(-1j * np.pi * k / n)


def _bshape(d: int, axis: int) -> tuple[int, ...]:
    s = [1] * d
    s[axis] = -1
    return tuple(s)


def _ft_axis(values: np.ndarray, spec: GridSpec, axis: int) -> np.ndarray:
    out = sfft.fftshift(sfft.fft(values, axis=axis), axes=axis)
    return out * (spec.h[axis] * _phase(spec, axis)).reshape(_bshape(spec.d, axis))


def _ift_axis(values: np.ndarray, spec: GridSpec, axis: int) -> np.ndarray:
    corr = (np.conj(_phase(spec, axis)) / spec.h[axis]).reshape(_bshape(spec.d, axis))
    return sfft.ifft(sfft.ifftshift(values * corr, axes=axis), axis=axis)


def forward_ft(f: Field) -> Spectrum:
    """Approximate the continuous Fourier transform of a space-domain field."""
    if f.freq_axes:
        raise ValueError("forward_ft expects a space-domain field")
    spec = f.spec
    out = sfft.fftshift(sfft.fftn(f.values), axes=tuple(range(spec.d)))
    for ax in range(spec.d):
        out *= (spec.h[ax] * _phase(spec, ax)).reshape(_bshape(spec.d, ax))
    return Spectrum(spec, out)


def inverse_ft(F: Spectrum) -> Field:
    """Exact inverse of :func:`forward_ft`. Always returns a complex field."""
    spec = F.spec
    c = np.array(F.coeffs)
    for ax in range(spec.d):
        c *= (np.conj(_phase(spec, ax)) / spec.h[ax]).reshape(_bshape(spec.d, ax))
    return Field(spec, sfft.ifftn(sfft.ifftshift(c, axes=tuple(range(spec.d)))))


def partial_ft(f: Field, axis: int) -> Field:
    """Fourier transform along one axis only.

    The returned field is complex and indexed by bin frequency along ``axis``
    (centred order, as in :class:`Spectrum`); ``axis`` is added to its
    ``freq_axes``. Transforming every axis in turn gives ``forward_ft(f).coeffs``.
    """
    axis = check_axis(f, axis)
    if axis in f.freq_axes:
        raise ValueError(f"axis {axis} is already in frequency")
    vals = _ft_axis(f.values, f.spec, axis)
    return Field(f.spec, vals, f.freq_axes + (axis,))


def shifted_ft(f: Field) -> Field:
    """Continuous Fourier transform sampled half a bin off the DFT bins.

    Returns a complex field on ``f.spec.dual()``, whose half-offset sample points
    are ``(k + 1/2) / (2L)``; none of them vanishes, which lets operators that
    are singular on coordinate hyperplanes act on the transform directly.
    """
    if f.freq_axes:
        raise ValueError("shifted_ft expects a space-domain field")
    spec = f.spec
    mod = np.ones(1, dtype=np.complex128)
    for ax, x in enumerate(spec.mesh()):
        mod = mod * np.exp(-2j * np.pi * x / (4.0 * spec.L[ax]))
    F = forward_ft(Field(spec, f.values * mod))
    return Field(spec.dual(), F.coeffs)


# -- multipliers ----------------------------------------------------------------


@dataclass(frozen=True)
class MultiplierSpec:
    """A Fourier multiplier ``m(xi)``.

    Parameters
    ----------
    evaluator : callable
        ``evaluator(xi)`` gets a list of sparse, broadcastable per-axis frequency
        arrays and returns the factor at those frequencies.
    dc_policy, nyquist_policy : complex or None
        Value forced on bins with ``xi_i = 0`` (resp. ``k_i = -n_i/2``) for the
        axes in ``axes``. ``None`` keeps the evaluator's value.
    axes : tuple of int or None
        Axes the policies refer to; ``None`` means every axis.
    """

    evaluator: Callable[[list], np.ndarray]
    dc_policy: Optional[complex] = 0.0
    nyquist_policy: Optional[complex] = 0.0
    axes: Optional[tuple[int, ...]] = None

    def values(self, spec: GridSpec) -> np.ndarray:
        """Multiplier on the grid's bins in FFT (unshifted) order."""
        xi = np.meshgrid(*[sfft.fftfreq(n, d=h) for n, h in zip(spec.n, spec.h)], indexing="ij", sparse=True)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            m = np.array(np.broadcast_to(self.evaluator(xi), spec.n), dtype=np.complex128)
        axes = range(spec.d) if self.axes is None else self.axes
        for ax in axes:
            if self.dc_policy is not None:
                idx = [slice(None)] * spec.d
                idx[ax] = 0
                m[tuple(idx)] = self.dc_policy
            if self.nyquist_policy is not None:
                idx = [slice(None)] * spec.d
                idx[ax] = spec.n[ax] // 2
                m[tuple(idx)] = self.nyquist_policy
        if not np.all(np.isfinite(m)):
            raise ValueError("multiplier is not finite on every applied bin")
        return m

    def __mul__(self, other: "MultiplierSpec") -> "MultiplierSpec":
        # the product only makes sense with matching bin policies
        if (self.dc_policy, self.nyquist_policy, self.axes) != (other.dc_policy, other.nyquist_policy, other.axes):
            raise ValueError("cannot multiply multipliers with different bin policies")
        return MultiplierSpec(
            lambda xi, a=self.evaluator, b=other.evaluator: a(xi) * b(xi),
            self.dc_policy,
            self.nyquist_policy,
            self.axes,
        )


def _pad_values(values: np.ndarray, pad: int) -> np.ndarray:
    widths = [((pad - 1) * n // 2,) * 2 for n in values.shape]
    return np.pad(values, widths)


def _crop_values(values: np.ndarray, shape: tuple[int, ...], pad: int) -> np.ndarray:
    sl = tuple(slice((pad - 1) * n // 2, (pad - 1) * n // 2 + n) for n in shape)
    return values[sl]


def padded_spec(spec: GridSpec, pad: int) -> GridSpec:
    return GridSpec(tuple(n * pad for n in spec.n), tuple(L * pad for L in spec.L))


def _check_pad(pad: int) -> int:
    pad = int(pad)
    if pad < 1 or (pad & (pad - 1)):
        raise ValueError(f"pad must be a power of two >= 1, got {pad}")
    return pad


def _finish(f: Field, out: np.ndarray) -> Field:
    if not f.is_complex:
        scale = max(float(np.abs(out.real).max(initial=0.0)), np.finfo(float).tiny)
        if float(np.abs(out.imag).max(initial=0.0)) <= REAL_RESIDUE_TOL * scale:
            out = out.real
    return Field(f.spec, out, f.freq_axes)


def multiply_spectrum(f: Field, m: np.ndarray, pad: int = 1) -> np.ndarray:
    """Complex result of multiplying the (possibly padded) DFT of ``f`` by ``m``.

    ``m`` is in FFT order on the padded grid. No realness cleanup is done.
    """
    vals = f.values if pad == 1 else _pad_values(f.values, pad)
    out = sfft.ifftn(sfft.fftn(vals) * m)
    return out if pad == 1 else _crop_values(out, f.spec.n, pad)


def apply_multiplier(f: Field, m: MultiplierSpec, pad: int = 1) -> Field:
    """Apply ``m`` to ``f``: ``inverse_ft(m * forward_ft(f))`` with bin policies.

    ``pad > 1`` embeds the field in a zero-padded box ``pad`` times larger per
    axis before transforming and crops the result, turning circular into linear
    convolution for kernels with slowly decaying tails.

    Real inputs come back real when the imaginary residue is negligible.
    """
    if f.freq_axes:
        raise ValueError("multipliers act on space-domain fields")
    pad = _check_pad(pad)
    spec = f.spec if pad == 1 else padded_spec(f.spec, pad)
    return _finish(f, multiply_spectrum(f, m.values(spec), pad))


def hilbert_multiplier(axes: Sequence[int]) -> MultiplierSpec:
    """``prod_{a in axes} (-i sign(xi_a))`` with dc/Nyquist bins of those axes zeroed."""
    axes = tuple(sorted(axes))

    def ev(xi):
        m = 1.0
        for a in axes:
            m = m * (-1j * np.sign(xi[a]))
        return m

    return MultiplierSpec(ev, 0.0, 0.0, axes)


def hilbert_axis(f: Field, axis: int, pad: int = 1) -> Field:
    """Directional Hilbert transform, multiplier ``-i sign(xi_axis)``."""
    axis = check_axis(f, axis)
    return apply_multiplier(f, hilbert_multiplier((axis,)), pad)


def iterated_hilbert(f: Field, axes: Sequence[int], pad: int = 1) -> Field:
    """``H_{a_1} ... H_{a_k} f`` for distinct axes; independent of their order."""
    axes = axes_tuple(f, axes)
    if not axes:
        return f
    return apply_multiplier(f, hilbert_multiplier(axes), pad)
