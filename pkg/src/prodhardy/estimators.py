"""
scikit-learn style wrappers around the operators and norm estimators.

Transformers take a :class:`~prodhardy.field.Field` or a sequence of fields
and return the same shape. ``fit`` records the grid and derives any
grid-dependent defaults such as scale ladders; ``transform``
refuses fields on a different grid. Norm estimators return an array of shape
``(n_fields, 1)`` so they can close a :class:`sklearn.pipeline.Pipeline`::

    Pipeline([("I", ProductFractionalIntegral(alpha=0.5)),
              ("norm", HardyNorm(p=1.0))]).fit_transform(fields)
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .cesaro import cesaro_hardy_lhs, hardy_cesaro
from .field import Field, GridSpec, lp_quasinorm
from .hardy import (
    ScaleLadder,
    hardy_littlewood_functional,
    hilbert_subset_sum,
    maximal,
    poisson_smooth,
    uchiyama_rhs,
)
from .potentials import product_fractional, riesz_axis
from .spectral import iterated_hilbert
from .square import ConeQuadrature, build_psi, required_moment_order, s_function
from .validation import check_fields, check_same_grid

__all__ = [
    "HilbertTransform",
    "RieszPotential",
    "ProductFractionalIntegral",
    "PoissonSmoother",
    "PoissonMaximal",
    "SquareFunction",
    "HardyCesaro",
    "LpNorm",
    "HardyNorm",
    "SquareNorm",
    "HardyLittlewood",
    "CesaroHardyNorm",
    "UchiyamaNorm",
    "HilbertSubsetNorm",
]


class _FieldTransformer(TransformerMixin, BaseEstimator):
    """Shared fit/transform plumbing; subclasses implement ``_transform_one``."""

    def fit(self, X, y=None):
        fields, _ = check_fields(X)
        spec = fields[0].spec
        check_same_grid(fields, spec)
        self._fit_grid(spec)
        self.grid_ = spec
        self.n_fields_in_ = len(fields)
        return self

    def _fit_grid(self, spec: GridSpec) -> None:
        pass

    def transform(self, X):
        check_is_fitted(self, "grid_")
        fields, single = check_fields(X)
        check_same_grid(fields, self.grid_)
        return self._wrap([self._transform_one(f) for f in fields], single)

    def _wrap(self, out, single):
        return out[0] if single else out

    def _transform_one(self, f: Field):
        raise NotImplementedError


class _NormEstimator(_FieldTransformer):
    def _wrap(self, out, single):
        return np.asarray(out, dtype=float).reshape(-1, 1)


def _ladder(spec, j_min, j_max, per_octave):
    base = ScaleLadder.for_grid(spec, per_octave)
    ladder = ScaleLadder(
        base.j_min if j_min is None else j_min,
        base.j_max if j_max is None else j_max,
        per_octave,
    )
    ladder.check(spec)
    return ladder


def _quad(spec, j_min, j_max):
    base = ConeQuadrature.for_grid(spec)
    quad = ConeQuadrature(base.j_min if j_min is None else j_min, base.j_max if j_max is None else j_max)
    quad.check(spec)
    return quad


# -- operators ----------------------------------------------------------------------------


class HilbertTransform(_FieldTransformer):
    """Iterated directional Hilbert transform over ``axes`` (all axes if None)."""

    def __init__(self, axes=None, pad=1):
        self.axes = axes
        self.pad = pad

    def _transform_one(self, f):
        axes = range(f.d) if self.axes is None else self.axes
        return iterated_hilbert(f, axes, pad=self.pad)


class RieszPotential(_FieldTransformer):
    """One-dimensional Riesz potential of order ``beta`` along ``axis``."""

    def __init__(self, axis=0, beta=0.5, pad=1):
        self.axis = axis
        self.beta = beta
        self.pad = pad

    def _transform_one(self, f):
        return riesz_axis(f, self.axis, self.beta, pad=self.pad)


class ProductFractionalIntegral(_FieldTransformer):
    """Product fractional integral of total order ``alpha``."""

    def __init__(self, alpha=0.5, pad=1):
        self.alpha = alpha
        self.pad = pad

    def _transform_one(self, f):
        return product_fractional(f, self.alpha, pad=self.pad)


class PoissonSmoother(_FieldTransformer):
    def __init__(self, t=1.0):
        self.t = t

    def _transform_one(self, f):
        return poisson_smooth(f, self.t)


class PoissonMaximal(_FieldTransformer):
    """Discrete Poisson maximal function.

    Parameters
    ----------
    mode : {"product", "radial"}
    j_min, j_max : int, optional
        Ladder exponents; defaults span grid spacing to half-width.
    per_octave : int
        Scales per octave.

    Attributes
    ----------
    ladder_ : ScaleLadder
    """

    def __init__(self, mode="product", j_min=None, j_max=None, per_octave=1):
        self.mode = mode
        self.j_min = j_min
        self.j_max = j_max
        self.per_octave = per_octave

    def _fit_grid(self, spec):
        self.ladder_ = _ladder(spec, self.j_min, self.j_max, self.per_octave)

    def _transform_one(self, f):
        return maximal(f, self.ladder_, self.mode)


class SquareFunction(_FieldTransformer):
    """Discretised (product) Lusin area integral.

    Attributes
    ----------
    psi_ : AnalyzingWavelet
    quad_ : ConeQuadrature
    """

    def __init__(self, N=1, resolution=1024, j_min=None, j_max=None):
        self.N = N
        self.resolution = resolution
        self.j_min = j_min
        self.j_max = j_max

    def _fit_grid(self, spec):
        self.psi_ = build_psi(self.N, self.resolution)
        self.quad_ = _quad(spec, self.j_min, self.j_max)

    def _transform_one(self, f):
        return s_function(f, self.psi_, self.quad_)


class HardyCesaro(_FieldTransformer):
    def _transform_one(self, f):
        return hardy_cesaro(f)


# -- norm estimators ----------------------------------------------------------------------


class LpNorm(_NormEstimator):
    def __init__(self, p=1.0):
        self.p = p

    def _transform_one(self, f):
        return lp_quasinorm(f, self.p)


class HardyNorm(_NormEstimator):
    """Maximal-function estimate of the (product) Hardy quasi-norm."""

    def __init__(self, p=1.0, mode="product", j_min=None, j_max=None, per_octave=1):
        self.p = p
        self.mode = mode
        self.j_min = j_min
        self.j_max = j_max
        self.per_octave = per_octave

    def _fit_grid(self, spec):
        self.ladder_ = _ladder(spec, self.j_min, self.j_max, self.per_octave)

    def _transform_one(self, f):
        return lp_quasinorm(maximal(f, self.ladder_, self.mode), self.p)


class SquareNorm(_NormEstimator):
    """Area-integral estimate of the Hardy quasi-norm.

    ``N=None`` picks the smallest admissible moment order (at least 1).
    """

    def __init__(self, p=1.0, N=None, resolution=1024, j_min=None, j_max=None):
        self.p = p
        self.N = N
        self.resolution = resolution
        self.j_min = j_min
        self.j_max = j_max

    def _fit_grid(self, spec):
        need = required_moment_order(self.p)
        N = max(1, need) if self.N is None else self.N
        if N < need:
            raise ValueError(f"N={N} vanishing moments is too few for p={self.p}, need {need}")
        self.psi_ = build_psi(N, self.resolution)
        self.quad_ = _quad(spec, self.j_min, self.j_max)

    def _transform_one(self, f):
        return lp_quasinorm(s_function(f, self.psi_, self.quad_), self.p)


class HardyLittlewood(_NormEstimator):
    """Weighted Fourier functional; ``mode`` is "product" or "classical"."""

    def __init__(self, p=1.0, mode="product"):
        self.p = p
        self.mode = mode

    def _transform_one(self, f):
        return hardy_littlewood_functional(f, self.p, self.mode)


class CesaroHardyNorm(_NormEstimator):
    """Hardy--Cesaro left-hand side; ``mode`` is "on_fourier" or "direct"."""

    def __init__(self, p=1.0, mode="on_fourier"):
        self.p = p
        self.mode = mode

    def _transform_one(self, f):
        return cesaro_hardy_lhs(f, self.p, self.mode)


class UchiyamaNorm(_NormEstimator):
    """``||f||_p + ||Hf||_p`` for one-dimensional fields."""

    def __init__(self, p=1.0):
        self.p = p

    def _transform_one(self, f):
        return uchiyama_rhs(f, self.p)


class HilbertSubsetNorm(_NormEstimator):
    """``(sum over axis subsets S of ||H_S f||_p^p)^(1/p)``."""

    def __init__(self, p=1.0):
        self.p = p

    def _transform_one(self, f):
        return hilbert_subset_sum(f, self.p) ** (1.0 / self.p)
