import math

import numpy as np
import pytest

from prodhardy.atoms import CorpusConfig, build_corpus
from prodhardy.field import Field, make_grid, sample_fn
from prodhardy.oracles import s_function_point
from prodhardy.square import (
    ConeQuadrature,
    build_psi,
    required_moment_order,
    s_function,
    sq_norm_estimate,
)

from conftest import bump


def test_required_moment_order():
    assert required_moment_order(1.0) == 0
    assert required_moment_order(0.8) == 0
    assert required_moment_order(0.5) == 1
    assert required_moment_order(0.4) == 1
    assert required_moment_order(1 / 3) == 2


@pytest.mark.parametrize("N", [0, 1, 2, 3])
def test_wavelet_invariants(N):
    psi = build_psi(N)
    s = psi.samples
    x = s.spec.coords(0)
    v = s.values
    assert np.array_equal(v, v[::-1])
    assert np.all(v[np.abs(x) > 1] == 0)
    assert psi.derivative_order >= N + 1 and psi.derivative_order % 2 == 0
    for k in range(N + 1):
        assert abs(np.sum(x**k * v)) <= 1e-8 * np.sum(np.abs(x**k * v))
    assert np.max(np.abs(v)) <= 1 + 1e-12
    assert psi(1.5) == 0.0 and psi(-0.3) == psi(0.3)
    with pytest.raises(ValueError):
        build_psi(-1)


def test_cone_quadrature(grid1):
    q = ConeQuadrature.for_grid(grid1)
    q.check(grid1)
    assert np.all(q.weights > 0)
    assert np.allclose(q.weights, math.log(2) / q.apertures)
    with pytest.raises(ValueError):
        ConeQuadrature(3, 2)
    with pytest.raises(ValueError):
        ConeQuadrature(q.j_min - 1, q.j_max).check(grid1)
    with pytest.raises(ValueError):
        ConeQuadrature(q.j_min, 5).check(grid1)


def test_s_function_basic_properties(grid2, clean2):
    psi = build_psi(1)
    assert np.all(s_function(Field(grid2, np.zeros(grid2.n)), psi).values == 0)
    S = s_function(clean2, psi).values
    assert np.all(S >= 0)
    assert np.allclose(s_function(-3 * clean2, psi).values, 3 * S, rtol=1e-12, atol=0)
    shifted = clean2.with_values(np.roll(clean2.values, (5, -3), axis=(0, 1)))
    assert np.allclose(s_function(shifted, psi).values, np.roll(S, (5, -3), axis=(0, 1)), rtol=1e-10, atol=1e-13 * S.max())


def test_s_function_monotone_in_apertures(grid2, clean2):
    psi = build_psi(1)
    q = ConeQuadrature.for_grid(grid2)
    small = s_function(clean2, psi, ConeQuadrature(q.j_min + 1, q.j_max - 1)).values
    big = s_function(clean2, psi, q).values
    assert np.all(big >= small * (1 - 1e-12))


@pytest.mark.parametrize("d", [1, 2])
def test_single_point_oracle(d):
    g = make_grid(d, 256, 16.0)
    members = build_corpus(CorpusConfig(d=d, p=0.8, count=3, n_cf=1), g)
    psi = build_psi(1)
    q = ConeQuadrature.for_grid(g)
    f = members[1].field
    S = s_function(f, psi, q).values
    for idx in [tuple(int(i) for i in np.unravel_index(np.argmax(S), S.shape)), (131,) * d]:
        ref = s_function_point(f.values, g.h, psi, q.apertures, idx)
        assert abs(S[idx] - ref) <= 1e-10 * ref


def test_single_point_oracle_smooth_bump():
    g = make_grid(1, 256, 16.0)
    f = sample_fn(g, bump)
    psi = build_psi(2)
    q = ConeQuadrature.for_grid(g)
    S = s_function(f, psi, q).values
    for i in (100, 128, 140):
        ref = s_function_point(f.values, g.h, psi, q.apertures, (i,))
        assert abs(S[i] - ref) <= 1e-10 * ref


def test_sq_norm_estimate(grid1):
    f = sample_fn(grid1, bump)
    psi0, psi1 = build_psi(0), build_psi(1)
    assert sq_norm_estimate(Field(grid1, np.zeros(256)), 0.8, psi1) == 0.0
    a = sq_norm_estimate(f, 0.8, psi1)
    assert math.isclose(sq_norm_estimate(2 * f, 0.8, psi1), 2 * a, rel_tol=1e-12)
    sq_norm_estimate(f, 0.8, psi0)
    with pytest.raises(ValueError, match="vanishing moments"):
        sq_norm_estimate(f, 0.4, psi0)
    with pytest.raises(ValueError):
        sq_norm_estimate(f, 1.5, psi1)
