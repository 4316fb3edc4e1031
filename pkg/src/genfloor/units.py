"""Exact length arithmetic.

All geometry in this package runs on integer micro-units (1e-6 of one model
unit).  Integer coordinates make contour updates, adjacency tests and
disjointness checks exact, so identical inputs always serialize to identical
bytes on every platform.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation

MU = 1_000_000


def to_mu(value) -> int:
    """Convert a length in model units (int, float, str, Decimal) to micro-units."""
    if isinstance(value, bool):
        raise ValueError(f"not a length: {value!r}")
    if isinstance(value, int):
        return value * MU
    try:
        d = Decimal(str(value)) * MU
    except InvalidOperation:
        raise ValueError(f"not a length: {value!r}") from None
    scaled = int(d.to_integral_value())
    if scaled != d:
        raise ValueError(f"length {value!r} has more than 6 decimal places")
    return scaled


def from_mu(mu: int) -> float:
    """Micro-units back to model units, for JSON and reporting."""
    return mu / MU


def fmt_mu(mu: int) -> str:
    """Shortest exact decimal string for a micro-unit length."""
    sign = "-" if mu < 0 else ""
    whole, frac = divmod(abs(mu), MU)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:06d}".rstrip("0")
