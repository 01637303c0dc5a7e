"""Small planar-geometry helpers shared across modules."""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi


def angle_tol(x: float) -> float:
    """Absolute tolerance for angle-like quantities, scaled by magnitude."""
    return 1e-9 * (1.0 + abs(x))


def cross(u: complex, v: complex) -> float:
    """Signed area spanned by u, v (positive when v is ccw of u)."""
    return (u.conjugate() * v).imag


def reduce_angle(theta: float) -> float:
    """Reduce an angle to the half-open interval (-pi, pi]."""
    r = theta - TWO_PI * round(theta / TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


def is_turn_multiple(alpha: float) -> bool:
    """True when alpha is a multiple of 2*pi within tolerance."""
    return abs(reduce_angle(alpha)) <= angle_tol(alpha)


def ccw_angle(u: complex, v: complex) -> float:
    """Angle in [0, 2*pi) rotating u counterclockwise onto v."""
    a = math.atan2(cross(u, v), (u.conjugate() * v).real)
    if a < 0.0:
        a += TWO_PI
    return a


def fmt_float(x: float) -> str:
    """Serialize a float with 17 significant digits (exact float64 round trip)."""
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite number {x!r} cannot be serialized")
    return format(x, ".16e")
