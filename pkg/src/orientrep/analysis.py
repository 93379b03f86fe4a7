"""Desk-scale experiments on the representations and losses.

* :func:`oracle_decode` - brute-force decoder (grid search plus ternary
  refinement) used to cross-check every closed-form ``decode``.
* :func:`sweep_landscape` - loss of ``encode(theta_pred)`` against
  ``encode(gt)`` over a full turn of ``theta_pred``.
* :func:`fit_representation` - plain gradient descent directly on the
  prediction vector.
* :func:`simulate_noisy_predictions` - Gaussian noise in representation
  space, then canonicalize and decode.
"""
import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .angles import PI, TWO_PI, wrap
from .errors import DegenerateError, InvalidInputError, OrientationError
from .losses import check_compatible, get_loss
from .metrics import EvalBatch
from .representations import ReprScheme, canonicalize, decode, encode


def angle_grid(num_points):
    """``num_points`` uniformly spaced angles starting at -pi."""
    if num_points < 1:
        raise InvalidInputError("grid needs at least one point")
    return -PI + TWO_PI * np.arange(num_points) / num_points


def _fmt(x):
    return "%.12g" % x


# ---------------------------------------------------------------------------
# brute-force decoder


def oracle_decode(scheme, values, grid_size=10_000, iterations=80):
    """Angle whose encoding is nearest (L2) to ``canonicalize(values)``.

    Accepts one vector or a batch. The winning grid point is refined by a
    ternary search over the two grid cells around it.
    """
    if grid_size < 10_000:
        raise InvalidInputError("oracle grid must have at least 10,000 points")
    target = np.asarray(canonicalize(scheme, values), dtype=float)
    single = target.ndim == 1
    target = np.atleast_2d(target)

    grid = angle_grid(grid_size)
    table = encode(scheme, grid)  # (G, D)
    # ||e - v||^2 = |e|^2 - 2 e.v + |v|^2; the last term is constant per row
    err = (table**2).sum(axis=1)[None, :] - 2.0 * target @ table.T
    best = grid[np.argmin(err, axis=1)]

    def cost(t):
        return ((encode(scheme, wrap(t)) - target) ** 2).sum(axis=1)

    h = TWO_PI / grid_size
    lo, hi = best - h, best + h
    for _ in range(iterations):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        left = cost(m1) < cost(m2)
        hi = np.where(left, m2, hi)
        lo = np.where(left, lo, m1)
    refined = np.asarray(wrap((lo + hi) / 2.0))
    out = np.where(cost(refined) <= cost(best), refined, best)
    out = np.asarray(wrap(out))
    return float(out[0]) if single else out


def random_canonical_vectors(scheme, count, seed, noise=1e-4):
    """Encodings of uniform random angles, jittered and canonicalized.

    Gaussian noise of std ``noise`` is added to the components that are
    non-zero in the exact encoding (label zeros stay zero), so the vectors sit
    near, but not on, the scheme's encoding curve.

    Returns ``(angles, vectors)``.
    """
    rng = np.random.default_rng(seed)
    theta = rng.uniform(-PI, PI, size=count)
    exact = encode(scheme, theta)
    jitter = noise * rng.standard_normal(exact.shape)
    return theta, canonicalize(scheme, exact + np.where(exact != 0.0, jitter, 0.0))


# ---------------------------------------------------------------------------
# loss landscapes


@dataclass
class LandscapeSweep:
    scheme: ReprScheme
    loss_id: str
    gt_angle: float
    num_points: int
    theta_pred: np.ndarray
    loss: np.ndarray

    @property
    def samples(self):
        return list(zip(self.theta_pred.tolist(), self.loss.tolist()))

    @property
    def spacing(self):
        return TWO_PI / self.num_points

    def derivative(self):
        """Central differences of loss along theta_pred, periodic at +-pi."""
        return (np.roll(self.loss, -1) - np.roll(self.loss, 1)) / (2.0 * self.spacing)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["theta_pred", "loss"])
        for t, v in zip(self.theta_pred, self.loss):
            w.writerow([_fmt(t), _fmt(v)])
        return buf.getvalue()


def sweep_landscape(scheme, loss_id, gt_angle=0.0, num_points=1000):
    loss = get_loss(loss_id, scheme)
    theta = angle_grid(num_points)
    preds = encode(scheme, theta)
    target = encode(scheme, wrap(gt_angle))
    values = np.array([loss(p, target).value for p in preds])
    return LandscapeSweep(scheme, loss_id, float(wrap(gt_angle)), num_points, theta, values)


# ---------------------------------------------------------------------------
# gradient-descent fits


@dataclass
class FitTrace:
    """Per-step record of a fit; ``trajectory`` rows are (step, loss, decoded).

    If the loss becomes undefined part way (degenerate vector) the run stops,
    ``error`` holds the message and the remaining rows are NaN.
    """

    scheme: ReprScheme
    loss_id: str
    gt_angle: float
    init_vector: np.ndarray
    step_size: float
    steps: int
    trajectory: np.ndarray
    final_vector: np.ndarray
    error: str = None
    vectors: np.ndarray = field(default=None, repr=False)

    @property
    def losses(self):
        return self.trajectory[:, 1]

    @property
    def decoded(self):
        return self.trajectory[:, 2]

    def steps_to_loss(self, threshold):
        """First step whose loss is <= threshold, or None."""
        hit = np.flatnonzero(self.losses <= threshold)
        return int(hit[0]) if hit.size else None

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "loss", "decoded_angle"])
        for step, value, angle in self.trajectory:
            w.writerow([int(step), _fmt(value), _fmt(angle)])
        return buf.getvalue()


def fit_representation(scheme, loss_id, gt_angle, init_vector, step_size=0.1, steps=500, keep_vectors=False):
    """Plain gradient descent on the prediction vector towards encode(gt)."""
    check_compatible(loss_id, scheme)
    if not 0.0 < step_size <= 1.0:
        raise InvalidInputError(f"step size must lie in (0, 1], got {step_size}")
    if steps < 1 or int(steps) != steps:
        raise InvalidInputError(f"steps must be a positive integer, got {steps}")
    steps = int(steps)
    loss = get_loss(loss_id, scheme)
    target = encode(scheme, wrap(gt_angle))
    v = np.array(init_vector, dtype=float)
    if v.shape != (scheme.dimension,):
        raise InvalidInputError(f"init vector must have {scheme.dimension} components")

    traj = np.full((steps + 1, 3), np.nan)
    traj[:, 0] = np.arange(steps + 1)
    history = np.full((steps + 1, v.size), np.nan) if keep_vectors else None
    error = None
    for step in range(steps + 1):
        try:
            report = loss(v, target)
        except OrientationError as exc:
            error = f"step {step}: {exc}"
            break
        try:
            traj[step, 2] = decode(scheme, v)
        except DegenerateError:
            pass
        traj[step, 1] = report.value
        if history is not None:
            history[step] = v
        if step < steps:
            v = v - step_size * report.gradient
    return FitTrace(
        scheme, loss_id, float(wrap(gt_angle)), np.array(init_vector, dtype=float),
        float(step_size), steps, traj, v, error, history,
    )


# ---------------------------------------------------------------------------
# noise simulation


def _instance_noise(seed, index, size):
    # counter-based stream per instance: results do not depend on batching
    gen = np.random.Generator(np.random.Philox(key=(int(seed) << 64) | int(index)))
    return gen.standard_normal(size)


def simulate_noisy_predictions(scheme, angles, noise_sigma, seed=0):
    """Encode, add N(0, sigma^2) to every component, canonicalize, decode."""
    if noise_sigma < 0:
        raise InvalidInputError("noise sigma must be non-negative")
    if not 0 <= int(seed) < 2**64:
        raise InvalidInputError("seed must be a non-negative 64-bit integer")
    angles = np.atleast_1d(np.asarray(wrap(angles), dtype=float))
    clean = encode(scheme, angles)
    if noise_sigma > 0:
        noise = np.stack([_instance_noise(seed, i, scheme.dimension) for i in range(angles.size)])
        clean = clean + noise_sigma * noise
    preds = decode(scheme, canonicalize(scheme, clean))
    return EvalBatch(np.atleast_1d(preds), angles)
