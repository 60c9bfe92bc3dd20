"""Numerical operators and estimators for (product) Hardy spaces on R^d."""

from .atoms import (
    AtomSpec1D,
    AtomValidationError,
    CFAtomSpec,
    CorpusConfig,
    CorpusMember,
    build_corpus,
    counterexample_field,
    make_cf_atom,
    make_hp_atom_1d,
    make_rect_atom,
    validate_member,
)
from .cesaro import cesaro_hardy_lhs, hardy_cesaro, oriented_integral
from .field import Exponents, Field, GridSpec, lp_quasinorm, make_grid, read_field, sample_fn, write_field
from .hardy import (
    ScaleLadder,
    hardy_littlewood_functional,
    hardy_norm_estimate,
    hilbert_subset_sum,
    maximal,
    poisson_smooth,
    uchiyama_rhs,
)
from .potentials import DCEnergyWarning, RieszOrder, product_fractional, riesz_axis, riesz_constant
from .spectral import (
    MultiplierSpec,
    Spectrum,
    apply_multiplier,
    forward_ft,
    hilbert_axis,
    inverse_ft,
    iterated_hilbert,
    partial_ft,
    shifted_ft,
)
from .square import AnalyzingWavelet, ConeQuadrature, build_psi, s_function, sq_norm_estimate

__version__ = "0.1.0"

__all__ = [
    "AnalyzingWavelet",
    "AtomSpec1D",
    "AtomValidationError",
    "CFAtomSpec",
    "ConeQuadrature",
    "CorpusConfig",
    "CorpusMember",
    "DCEnergyWarning",
    "Exponents",
    "Field",
    "GridSpec",
    "MultiplierSpec",
    "RieszOrder",
    "ScaleLadder",
    "Spectrum",
    "apply_multiplier",
    "build_corpus",
    "build_psi",
    "cesaro_hardy_lhs",
    "counterexample_field",
    "forward_ft",
    "hardy_cesaro",
    "hardy_littlewood_functional",
    "hardy_norm_estimate",
    "hilbert_axis",
    "hilbert_subset_sum",
    "inverse_ft",
    "iterated_hilbert",
    "lp_quasinorm",
    "make_cf_atom",
    "make_grid",
    "make_hp_atom_1d",
    "make_rect_atom",
    "maximal",
    "oriented_integral",
    "partial_ft",
    "poisson_smooth",
    "product_fractional",
    "read_field",
    "riesz_axis",
    "riesz_constant",
    "s_function",
    "sample_fn",
    "shifted_ft",
    "sq_norm_estimate",
    "uchiyama_rhs",
    "validate_member",
    "write_field",
]
