import numpy as np
import pytest
import scipy.fft as sfft

from prodhardy.field import Field, make_grid


def clean_values(shape, rng, band=None):
    """Random real array with no energy on dc or Nyquist hyperplanes.

    ``band`` keeps only bins with ``0 < |k| <= band`` per axis.
    """
    X = sfft.fftn(rng.standard_normal(shape))
    for ax, n in enumerate(shape):
        k = np.abs(sfft.fftfreq(n, d=1.0 / n))
        keep = (k > 0) & (k < n // 2)
        if band is not None:
            keep &= k <= band
        s = [1] * len(shape)
        s[ax] = -1
        X = X * keep.reshape(s)
    return sfft.ifftn(X).real


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid1():
    return make_grid(1, 256, 16.0)


@pytest.fixture
def grid2():
    return make_grid(2, 64, 8.0)


@pytest.fixture
def clean2(grid2, rng):
    return Field(grid2, clean_values(grid2.n, rng))


def bump(x):
    """Mean-free smooth bump, (1 - 2 pi x^2) exp(-pi x^2)."""
    return (1.0 - 2.0 * np.pi * x * x) * np.exp(-np.pi * x * x)
