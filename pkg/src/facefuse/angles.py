"""Angle wrapping helpers (degrees)."""

from __future__ import annotations


def wrap_signed(deg: float) -> float:
    """Wrap to (-180, 180]."""
    wrapped = (deg + 180.0) % 360.0 - 180.0
    return 180.0 if wrapped == -180.0 else wrapped


def wrap_unsigned(deg: float) -> float:
    """Wrap to [0, 360)."""
    return deg % 360.0


def circular_diff(a: float, b: float) -> float:
    """Shortest signed difference a - b in (-180, 180]."""
    return wrap_signed(a - b)
