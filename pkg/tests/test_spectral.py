import numpy as np
import pytest
import scipy.fft as sfft
from hypothesis import given, settings, strategies as st

from prodhardy.field import Field, make_grid, sample_fn
from prodhardy.oracles import gaussian_ft, hilbert_pv_quadrature
from prodhardy.spectral import (
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

from conftest import clean_values


def _rel(a, b):
    return np.max(np.abs(a - b)) / np.max(np.abs(b))


def test_gaussian_transform_1d():
    g = make_grid(1, 1024, 8.0)
    F = forward_ft(sample_fn(g, lambda x: np.exp(-np.pi * x * x)))
    assert _rel(F.coeffs, gaussian_ft(F.freqs(0))) <= 1e-8
    back = inverse_ft(Spectrum(g, gaussian_ft(g.freqs(0))))
    assert _rel(back.values, np.exp(-np.pi * g.coords(0) ** 2)) <= 1e-8


def test_gaussian_transform_2d_anisotropic():
    g = make_grid(2, (128, 128), (8.0, 4.0))
    F = forward_ft(sample_fn(g, lambda x, y: np.exp(-np.pi * (x * x + 4 * y * y))))
    xi, eta = g.freq_mesh()
    ref = gaussian_ft(xi) * 0.5 * gaussian_ft(eta / 2)
    assert _rel(F.coeffs, ref) <= 1e-8


def test_transform_of_shifted_gaussian_has_phase():
    g = make_grid(1, 512, 8.0)
    s = 1.25
    F = forward_ft(sample_fn(g, lambda x: np.exp(-np.pi * (x - s) ** 2)))
    xi = F.freqs(0)
    assert _rel(F.coeffs, gaussian_ft(xi) * np.exp(-2j * np.pi * xi * s)) <= 1e-8


def test_inverse_of_zero_spectrum(grid2):
    out = inverse_ft(Spectrum(grid2, np.zeros(grid2.n)))
    assert np.all(out.values == 0)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([1, 2, 3]), st.integers(0, 2**32 - 1))
def test_roundtrip_and_parseval(d, seed):
    r = np.random.default_rng(seed)
    n = {1: 128, 2: 32, 3: 16}[d]
    g = make_grid(d, n, tuple(r.uniform(0.5, 5.0, d)))
    f = Field(g, r.standard_normal(g.n) + 1j * r.standard_normal(g.n))
    F = forward_ft(f)
    back = inverse_ft(F)
    assert _rel(back.values, f.values) <= 1e-12
    lhs = np.sum(np.abs(f.values) ** 2) * g.cell_volume
    rhs = np.sum(np.abs(F.coeffs) ** 2) * np.prod(F.dxi)
    assert abs(lhs - rhs) <= 1e-10 * lhs


def test_partial_ft_composes_to_full(rng):
    g = make_grid(3, (16, 32, 16), (1.0, 2.0, 3.0))
    f = Field(g, rng.standard_normal(g.n))
    full = forward_ft(f).coeffs
    for order in [(0, 1, 2), (2, 0, 1), (1, 2, 0)]:
        h = f
        for ax in order:
            h = partial_ft(h, ax)
        assert h.freq_axes == (0, 1, 2)
        assert _rel(h.values, full) <= 1e-12
    with pytest.raises(ValueError):
        partial_ft(partial_ft(f, 1), 1)
    with pytest.raises(ValueError):
        partial_ft(f, 3)


def test_partial_ft_separable_and_parseval(rng):
    g = make_grid(2, 64, 4.0)
    a = rng.standard_normal(64)
    b = rng.standard_normal(64)
    f = Field(g, np.outer(a, b))
    Pf = partial_ft(f, 1)
    gb = forward_ft(Field(g.axis_grid(1), b)).coeffs
    assert _rel(Pf.values, np.outer(a, gb)) <= 1e-12
    lhs = np.sum(f.values**2) * g.cell_volume
    rhs = np.sum(np.abs(Pf.values) ** 2) * g.h[0] / (2 * g.L[1])
    assert abs(lhs - rhs) <= 1e-12 * lhs


def test_shifted_ft_samples_half_bins():
    g = make_grid(2, 128, 8.0)
    F = shifted_ft(sample_fn(g, lambda x, y: np.exp(-np.pi * (x * x + y * y))))
    assert F.spec == g.dual()
    xi, eta = F.spec.mesh()
    assert _rel(F.values, gaussian_ft(xi) * gaussian_ft(eta)) <= 1e-8
    assert np.min(np.abs(F.spec.coords(0))) > 0


# -- multipliers ------------------------------------------------------------------------


def test_identity_and_zero_multipliers(clean2):
    one = MultiplierSpec(lambda xi: np.ones(1), None, None)
    zero = MultiplierSpec(lambda xi: np.zeros(1), None, None)
    assert _rel(apply_multiplier(clean2, one).values, clean2.values) <= 1e-12
    assert np.all(apply_multiplier(clean2, zero).values == 0)


def _m1(xi):
    return np.exp(-0.3 * (xi[0] ** 2 + np.abs(xi[1])))


def _m2(xi):
    return 1.0 / (1.0 + np.abs(xi[0])) + 1j * np.sign(xi[1]) * np.abs(xi[1]) ** 0.5


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_multiplier_composition_and_commutation(seed):
    g = make_grid(2, 32, 3.0)
    f = Field(g, np.random.default_rng(seed).standard_normal(g.n))
    A = MultiplierSpec(_m1)
    B = MultiplierSpec(_m2)
    ab = apply_multiplier(apply_multiplier(f, A), B).values
    ba = apply_multiplier(apply_multiplier(f, B), A).values
    both = apply_multiplier(f, A * B).values
    assert _rel(ab, both) <= 1e-10
    assert _rel(ba, both) <= 1e-10


def test_multiplier_policy_guards(clean2):
    with pytest.raises(ValueError):
        MultiplierSpec(_m1) * MultiplierSpec(_m1, None, None)
    sing = MultiplierSpec(lambda xi: 1.0 / np.abs(xi[0]), None, None)
    with pytest.raises(ValueError, match="finite"):
        apply_multiplier(clean2, sing)
    # same multiplier with the dc policy on axis 0 is admissible
    apply_multiplier(clean2, MultiplierSpec(lambda xi: 1.0 / np.abs(xi[0]), 0.0, None, (0,)))
    with pytest.raises(ValueError):
        apply_multiplier(clean2, MultiplierSpec(_m1), pad=3)


def test_padding_matches_linear_convolution():
    g = make_grid(1, 64, 4.0)
    f = sample_fn(g, lambda x: np.exp(-4 * np.pi * x * x))
    t = 4.0
    m = MultiplierSpec(lambda xi: np.exp(-np.pi * t * xi[0] ** 2), None, None)
    # Gaussian convolution: exp(-4 pi x^2) * (1/sqrt t) exp(-pi x^2 / t), wider than the box
    x = g.coords(0)
    s = 1.0 / 4 + t
    ref = np.sqrt(1 / (4 * s)) * np.exp(-np.pi * x * x / s)
    err1 = np.max(np.abs(apply_multiplier(f, m).values - ref))
    err4 = np.max(np.abs(apply_multiplier(f, m, pad=4).values - ref))
    assert err4 < 1e-10 < err1


# -- Hilbert transforms -----------------------------------------------------------------


def test_hilbert_of_pure_frequency():
    g = make_grid(1, 256, 8.0)
    for k in (1, 5, 37):
        w = k / 16.0
        out = hilbert_axis(sample_fn(g, lambda x: np.cos(2 * np.pi * w * x)), 0)
        assert not out.is_complex
        assert np.max(np.abs(out.values - np.sin(2 * np.pi * w * g.coords(0)))) <= 1e-12


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([1, 2, 3]), st.integers(0, 2**32 - 1))
def test_hilbert_squares_and_isometry(d, seed):
    r = np.random.default_rng(seed)
    n = {1: 128, 2: 32, 3: 16}[d]
    g = make_grid(d, n, 4.0)
    f = Field(g, clean_values(g.n, r))
    for ax in range(d):
        Hf = hilbert_axis(f, ax)
        assert _rel(hilbert_axis(Hf, ax).values, -f.values) <= 1e-10
        assert abs(np.sum(Hf.values**2) - np.sum(f.values**2)) <= 1e-10 * np.sum(f.values**2)
    allax = list(range(d))
    twice = iterated_hilbert(iterated_hilbert(f, allax), allax)
    assert _rel(twice.values, (-1) ** d * f.values) <= 1e-10


def test_iterated_hilbert_properties(clean2, rng):
    H12 = iterated_hilbert(clean2, [0, 1])
    assert np.array_equal(H12.values, iterated_hilbert(clean2, [1, 0]).values)
    assert _rel(iterated_hilbert(H12, [0, 1]).values, clean2.values) <= 1e-10
    seq = hilbert_axis(hilbert_axis(clean2, 0), 1)
    assert _rel(seq.values, H12.values) <= 1e-10
    g = clean2.spec
    a = clean_values((64,), rng)
    b = clean_values((64,), rng)
    Ha = hilbert_axis(Field(g.axis_grid(0), a), 0).values
    Hb = hilbert_axis(Field(g.axis_grid(1), b), 0).values
    sep = iterated_hilbert(Field(g, np.outer(a, b)), [0, 1])
    assert _rel(sep.values, np.outer(Ha, Hb)) <= 1e-10
    assert iterated_hilbert(clean2, []) is clean2
    with pytest.raises(ValueError):
        iterated_hilbert(clean2, [0, 0])
    with pytest.raises(ValueError):
        hilbert_axis(clean2, 2)


def test_hilbert_real_residue(rng):
    g = make_grid(2, 32, 2.0)
    f = Field(g, rng.standard_normal(g.n))
    out = iterated_hilbert(f, [0, 1])
    assert not out.is_complex


def test_hilbert_conjugate_poisson_closed_form():
    g = make_grid(1, 4096, 64.0)
    f = sample_fn(g, lambda x: 1.0 / (1.0 + x * x))
    x = g.coords(0)
    ref = x / (1.0 + x * x)
    err = np.max(np.abs(hilbert_axis(f, 0, pad=4).values - ref))
    assert err <= 1e-3
    # circular transform suffers from the periodised tail
    assert np.max(np.abs(hilbert_axis(f, 0).values - ref)) > err


def test_conjugate_poisson_matches_pv_quadrature():
    f = lambda x: 1.0 / (1.0 + x * x)
    for x in (-3.0, -0.4, 0.25, 1.0, 7.5):
        assert abs(hilbert_pv_quadrature(f, x) - x / (1 + x * x)) <= 1e-9
