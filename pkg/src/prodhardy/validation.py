"""Input validation helpers for the estimator layer."""

from __future__ import annotations

from typing import Sequence

from .field import Field, GridSpec

__all__ = ["check_field", "check_fields", "check_same_grid"]


def check_field(X, *, d: int | None = None, allow_complex: bool = True) -> Field:
    """Return ``X`` if it is a spatial :class:`Field` meeting the constraints."""
    if not isinstance(X, Field):
        raise TypeError(f"expected a Field, got {type(X).__name__}")
    if X.freq_axes:
        raise ValueError(f"expected a spatial field, axes {X.freq_axes} are in frequency space")
    if d is not None and X.d != d:
        raise ValueError(f"expected a {d}-dimensional field, got d={X.d}")
    if not allow_complex and X.is_complex:
        raise ValueError("expected a real field")
    return X


def check_fields(X, **kwargs) -> tuple[list[Field], bool]:
    """Normalise a field or a sequence of fields.

    Returns
    -------
    fields : list of Field
    single : bool
        True when ``X`` was a bare field, so callers can unwrap their output.
    """
    if isinstance(X, Field):
        return [check_field(X, **kwargs)], True
    if isinstance(X, (str, bytes)) or not isinstance(X, Sequence):
        raise TypeError(f"expected a Field or a sequence of Fields, got {type(X).__name__}")
    if len(X) == 0:
        raise ValueError("empty field collection")
    return [check_field(x, **kwargs) for x in X], False


def check_same_grid(fields: Sequence[Field], spec: GridSpec) -> None:
    for i, f in enumerate(fields):
        if f.spec != spec:
            raise ValueError(f"field {i} lives on {f.spec}, estimator was fitted on {spec}")
