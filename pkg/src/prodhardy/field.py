"""
Sampled fields on uniform grids, with their L^p quasi-norms.

Every operator in the package acts on a :class:`Field`: scalar samples of a
function on a uniform, half-offset grid covering ``[-L_1, L_1) x ... x [-L_d, L_d)``.
Sample ``k`` along axis ``i`` sits at ``-L_i + (k + 1/2) h_i`` so no sample ever
lands on a coordinate hyperplane.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "GridSpec",
    "Field",
    "Exponents",
    "make_grid",
    "sample_fn",
    "lp_quasinorm",
    "write_field",
    "read_field",
]

MAGIC = b"PHL1"


def _is_pow2(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform half-offset grid on a centred box.

    Parameters
    ----------
    n : tuple of int
        Samples per axis; powers of two, at least 16.
    L : tuple of float
        Half-width per axis.
    """

    n: tuple[int, ...]
    L: tuple[float, ...]

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        L = tuple(float(v) for v in self.L)
        if len(n) not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {len(n)}")
        if len(L) != len(n):
            raise ValueError("n and L must have the same length")
        for v in n:
            if not _is_pow2(v) or v < 16:
                raise ValueError(f"sample count {v} is not a power of two >= 16")
        for v in L:
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"half-width must be positive, got {v}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "L", L)

    @property
    def d(self) -> int:
        return len(self.n)

    @property
    def h(self) -> tuple[float, ...]:
        return tuple(2.0 * L / n for n, L in zip(self.n, self.L))

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.h))

    def coords(self, axis: int) -> np.ndarray:
        """Sample coordinates along one axis."""
        n, L, h = self.n[axis], self.L[axis], self.h[axis]
        return -L + (np.arange(n) + 0.5) * h

    def mesh(self) -> list[np.ndarray]:
        """Sparse broadcastable coordinate arrays, one per axis."""
        return np.meshgrid(*[self.coords(i) for i in range(self.d)], indexing="ij", sparse=True)

    def freqs(self, axis: int) -> np.ndarray:
        """Bin frequencies ``k / (2 L)`` for ``k`` in ``[-n/2, n/2)``."""
        n, L = self.n[axis], self.L[axis]
        return np.arange(-n // 2, n // 2) / (2.0 * L)

    def freq_mesh(self) -> list[np.ndarray]:
        return np.meshgrid(*[self.freqs(i) for i in range(self.d)], indexing="ij", sparse=True)

    def dual(self) -> "GridSpec":
        """Half-offset grid in frequency with the same bin spacing ``1/(2L)``.

        Its sample points are the bin frequencies shifted by half a bin, so none
        of them is zero.
        """
        return GridSpec(self.n, tuple(n / (4.0 * L) for n, L in zip(self.n, self.L)))

    def axis_grid(self, axis: int) -> "GridSpec":
        return GridSpec((self.n[axis],), (self.L[axis],))


def make_grid(d: int, n, L) -> GridSpec:
    """Build a :class:`GridSpec`, broadcasting scalar ``n`` / ``L`` to ``d`` axes."""
    if d not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {d}")
    n = (n,) * d if np.isscalar(n) else tuple(n)
    L = (L,) * d if np.isscalar(L) else tuple(L)
    if len(n) != d or len(L) != d:
        raise ValueError("per-axis parameters do not match the dimension")
    return GridSpec(n, L)


@dataclass(frozen=True, eq=False)
class Field:
    """Samples of a scalar function on a :class:`GridSpec`.

    ``values`` is a read-only array of shape ``spec.n``. ``freq_axes`` lists the
    axes already carried to frequency by :func:`prodhardy.spectral.partial_ft`;
    it is empty for ordinary space-domain fields.
    """

    spec: GridSpec
    values: np.ndarray
    freq_axes: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        vals = np.array(self.values, copy=True)
        if not (np.issubdtype(vals.dtype, np.floating) or np.issubdtype(vals.dtype, np.complexfloating)):
            vals = vals.astype(np.float64)
        vals = vals.astype(np.complex128 if np.iscomplexobj(vals) else np.float64)
        if vals.size == int(np.prod(self.spec.n)) and vals.shape != self.spec.n:
            vals = vals.reshape(self.spec.n)
        if vals.shape != self.spec.n:
            raise ValueError(f"values shape {vals.shape} does not match grid {self.spec.n}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("field values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "freq_axes", tuple(sorted(set(self.freq_axes))))

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def with_values(self, values) -> "Field":
        return Field(self.spec, values, self.freq_axes)

    def integral(self) -> complex | float:
        """Riemann sum of the samples (midpoint rule)."""
        return self.values.sum() * self.spec.cell_volume

    def __neg__(self):
        return self.with_values(-self.values)

    def __add__(self, other: "Field"):
        _check_same_grid(self, other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "Field"):
        _check_same_grid(self, other)
        return self.with_values(self.values - other.values)

    def __mul__(self, c):
        return self.with_values(self.values * c)

    __rmul__ = __mul__


def _check_same_grid(a: Field, b: Field):
    if a.spec != b.spec:
        raise ValueError("fields live on different grids")


@dataclass(frozen=True)
class Exponents:
    """Exponent triple ``(p, alpha, q)`` with ``1/q = 1/p - alpha/d``."""

    p: float
    alpha: float
    d: int

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")
        if not 0 < self.alpha < self.d:
            raise ValueError(f"alpha must lie in (0, {self.d}), got {self.alpha}")
        if 1.0 / self.p - self.alpha / self.d <= 0:
            raise ValueError("incompatible exponents: 1/p - alpha/d must be positive")

    @property
    def q(self) -> float:
        return 1.0 / (1.0 / self.p - self.alpha / self.d)


def sample_fn(spec: GridSpec, f: Callable[..., np.ndarray]) -> Field:
    """Sample a vectorised evaluator ``f(x_1, ..., x_d)`` at the grid points."""
    vals = np.broadcast_to(np.asarray(f(*spec.mesh())), spec.n)
    if not np.all(np.isfinite(vals)):
        raise ValueError("evaluator produced non-finite values on the grid")
    return Field(spec, vals)


def lp_quasinorm(f: Field, p: float) -> float:
    """Riemann approximation of the L^p (quasi-)norm, ``(sum |f|^p h^d)^(1/p)``."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    a = np.abs(f.values)
    if np.isinf(p):
        return float(a.max())
    return float((np.sum(a**p) * f.spec.cell_volume) ** (1.0 / p))


# -- binary field files -------------------------------------------------------


def write_field(f: Field, path) -> None:
    """Write ``f`` in the little-endian ``PHL1`` binary format."""
    path = Path(path)
    spec = f.spec
    header = MAGIC + struct.pack("<I", spec.d)
    header += struct.pack(f"<{spec.d}I", *spec.n)
    header += struct.pack(f"<{spec.d}d", *spec.L)
    header += struct.pack("<B", 1 if f.is_complex else 0)
    if f.is_complex:
        body = np.ascontiguousarray(f.values).view(np.float64)
    else:
        body = np.ascontiguousarray(f.values)
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(body.astype("<f8").tobytes(order="C"))
    except OSError as exc:
        raise OSError(f"cannot write field file {path}: {exc}") from exc


def read_field(path) -> Field:
    """Read a ``PHL1`` binary field file."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read field file {path}: {exc}") from exc
    if raw[:4] != MAGIC:
        raise ValueError(f"{path}: bad magic {raw[:4]!r}")
    off = 4
    (d,) = struct.unpack_from("<I", raw, off)
    off += 4
    if d not in (1, 2, 3):
        raise ValueError(f"{path}: bad dimension {d}")
    n = struct.unpack_from(f"<{d}I", raw, off)
    off += 4 * d
    L = struct.unpack_from(f"<{d}d", raw, off)
    off += 8 * d
    (kind,) = struct.unpack_from("<B", raw, off)
    off += 1
    count = int(np.prod(n)) * (2 if kind == 1 else 1)
    if len(raw) - off != 8 * count:
        raise ValueError(f"{path}: payload size mismatch")
    vals = np.frombuffer(raw, dtype="<f8", count=count, offset=off).astype(np.float64)
    if kind == 1:
        vals = vals.view(np.complex128)
    elif kind != 0:
        raise ValueError(f"{path}: bad scalar kind {kind}")
    return Field(GridSpec(tuple(n), tuple(L)), vals.reshape(n))


def as_tuple(x, d: int) -> tuple:
    """Broadcast a scalar or sequence to a ``d``-tuple."""
    if np.isscalar(x):
        return (x,) * d
    x = tuple(x)
    if len(x) != d:
        raise ValueError(f"expected {d} per-axis values, got {len(x)}")
    return x


def check_axis(f: Field, axis: int) -> int:
    if not isinstance(axis, (int, np.integer)) or not 0 <= axis < f.d:
        raise ValueError(f"axis {axis} out of range for a {f.d}-dimensional field")
    return int(axis)


def axes_tuple(f: Field, axes: Sequence[int]) -> tuple[int, ...]:
    axes = tuple(check_axis(f, a) for a in axes)
    if len(set(axes)) != len(axes):
        raise ValueError(f"repeated axis in {axes}")
    return axes
