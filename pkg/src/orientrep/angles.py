"""Circular arithmetic on yaw angles.

Canonical angles live in the half-open interval ``[-pi, pi)``. Every function
accepts scalars or numpy arrays and returns the same kind.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMeanError, InvalidInputError, InvalidLocationError

PI = np.pi
TWO_PI = 2.0 * np.pi

#: resultant lengths at or below this are treated as an undefined mean
MEAN_EPS = 1e-12


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def wrap(raw):
    """Map radians into ``[-pi, pi)``.

    Values already in range are returned unchanged, which keeps ``wrap``
    exactly idempotent.
    """
    raw = np.asarray(raw, dtype=float)
    if not np.all(np.isfinite(raw)):
        raise InvalidInputError("cannot wrap non-finite angle")
    inside = (raw >= -PI) & (raw < PI)
    wrapped = np.mod(raw + PI, TWO_PI) - PI
    # np.mod can round up to exactly 2*pi for tiny negative offsets
    wrapped = np.where(wrapped >= PI, wrapped - TWO_PI, wrapped)
    return _out(np.where(inside, raw, wrapped))


def circular_diff(a, b):
    """Signed geodesic difference ``a - b`` in ``(-pi, pi]``."""
    d = np.asarray(wrap(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)))
    return _out(np.where(d == -PI, PI, d))


def circular_mean(angles, axis=None):
    """Mean direction via the resultant vector.

    Raises DegenerateMeanError when the mean resultant length is <= 1e-12
    (e.g. two antipodal angles).
    """
    angles = np.asarray(angles, dtype=float)
    if angles.size == 0:
        raise InvalidInputError("circular_mean of an empty set")
    if not np.all(np.isfinite(angles)):
        raise InvalidInputError("circular_mean of non-finite angles")
    s = np.mean(np.sin(angles), axis=axis)
    c = np.mean(np.cos(angles), axis=axis)
    if np.any(np.hypot(s, c) <= MEAN_EPS):
        raise DegenerateMeanError("resultant vector vanishes; mean direction undefined")
    return wrap(np.arctan2(s, c))


@dataclass(frozen=True)
class ObjectLocation:
    """Object position in camera coordinates (meters)."""

    x: float
    z: float


def _ray_angle(x, z):
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise InvalidLocationError("object must be in front of the camera (z > 0)")
    return np.arctan(x / z)


def alpha_to_roty(alpha, x, z):
    """Observation angle to global yaw: ``wrap(alpha + arctan(x / z))``."""
    return wrap(np.asarray(alpha, dtype=float) + _ray_angle(x, z))


def roty_to_alpha(roty, x, z):
    """Global yaw to observation angle: ``wrap(roty - arctan(x / z))``."""
    return wrap(np.asarray(roty, dtype=float) - _ray_angle(x, z))


def normalize_scalar(theta):
    """Linear map of a canonical angle onto ``[-1, 1)``."""
    return _out(np.asarray(theta, dtype=float) / PI)


def denormalize_scalar(v):
    # out-of-range values wrap around the circle rather than clip
    return wrap(np.asarray(v, dtype=float) * PI)
