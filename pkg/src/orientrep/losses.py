"""Loss functions on representation vectors, each with an analytic gradient.

All losses take a prediction and a target vector of the same scheme and
return a :class:`LossReport`. The gradient is taken with respect to the
prediction only.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVectorError, InvalidInputError
from .representations import Kind, ReprScheme

DEGENERATE_NORM = 1e-9


@dataclass(frozen=True)
class LossReport:
    value: float
    gradient: np.ndarray


def _pair(pred, target, scheme=None):
    pred = np.asarray(pred, dtype=float)
    target = np.asarray(target, dtype=float)
    if pred.ndim != 1 or pred.shape != target.shape:
        raise InvalidInputError(
            f"prediction and target must be 1-D vectors of equal length, got {pred.shape} and {target.shape}"
        )
    if scheme is not None and pred.size != scheme.dimension:
        raise InvalidInputError(f"{scheme} vectors have {scheme.dimension} components, got {pred.size}")
    if not (np.all(np.isfinite(pred)) and np.all(np.isfinite(target))):
        raise InvalidInputError("loss inputs must be finite")
    return pred, target


def l2_loss(pred, target, scheme=None):
    """Sum of squared component differences."""
    pred, target = _pair(pred, target, scheme)
    diff = pred - target
    return LossReport(float(diff @ diff), 2.0 * diff)


def _cosine_term(p, g):
    """``1 - g.p/|p|`` and its gradient in p, for 2-vectors p and g."""
    r = np.hypot(p[0], p[1])
    dot = g @ p
    return 1.0 - dot / r, -g / r + dot * p / r**3


def angular_loss(pred, target, scheme=None):
    """One minus the cosine between the predicted and target (cos, sin) pairs.

    Only the direction of the prediction matters; its length does not.
    """
    pred, target = _pair(pred, target, scheme)
    if pred.size != 2:
        raise InvalidInputError("angular loss is defined on single_bin vectors only")
    if np.hypot(pred[0], pred[1]) <= DEGENERATE_NORM:
        raise DegenerateVectorError("angular loss is undefined for a zero-length prediction")
    value, grad = _cosine_term(pred, target)
    # rounding can leave 1 - cos a hair outside [0, 2]
    return LossReport(float(np.clip(value, 0.0, 2.0)), grad)


def multibin_loss(pred, target, scheme):
    """Softmax cross-entropy on bin confidences plus a cosine offset term.

    The offset term is ``sum_b w_b * (1 - cos(pred_offset_b - true_offset_b))``
    over bins with target confidence ``w_b > 0``. A predicted pair of exactly
    zero length carries no direction; its term is the constant ``w_b`` with
    zero gradient.
    """
    if scheme is None or scheme.kind is not Kind.MULTIBIN:
        raise InvalidInputError("multibin loss requires a multibin scheme")
    pred, target = _pair(pred, target, scheme)
    grad = np.zeros_like(pred)

    logits = pred[0::3]
    weights = target[0::3]
    shifted = logits - logits.max()
    log_softmax = shifted - np.log(np.exp(shifted).sum())
    value = -float(weights @ log_softmax)
    grad[0::3] = np.exp(log_softmax) * weights.sum() - weights

    for b in np.flatnonzero(weights > 0):
        p = pred[3 * b + 1 : 3 * b + 3]
        g = target[3 * b + 1 : 3 * b + 3]
        g_norm = np.hypot(g[0], g[1])
        if g_norm <= DEGENERATE_NORM:
            raise DegenerateVectorError(f"target bin {b} has confidence but no offset")
        if np.hypot(p[0], p[1]) == 0.0:
            value += weights[b]
            continue
        term, dterm = _cosine_term(p, g / g_norm)
        value += weights[b] * term
        grad[3 * b + 1 : 3 * b + 3] = weights[b] * dterm
    return LossReport(float(value), grad)


LOSS_IDS = ("l2", "angular", "multibin")


def check_compatible(loss_id, scheme):
    if loss_id not in LOSS_IDS:
        raise InvalidInputError(f"unknown loss {loss_id!r}; choose from {', '.join(LOSS_IDS)}")
    if loss_id == "angular" and scheme.kind is not Kind.SINGLE_BIN:
        raise InvalidInputError(f"angular loss needs the single_bin scheme, not {scheme}")
    if loss_id == "multibin" and scheme.kind is not Kind.MULTIBIN:
        raise InvalidInputError(f"multibin loss needs a multibin scheme, not {scheme}")


def get_loss(loss_id, scheme):
    """Return ``fn(pred, target) -> LossReport`` for a loss id and scheme."""
    if not isinstance(scheme, ReprScheme):
        raise InvalidInputError("get_loss expects a ReprScheme")
    check_compatible(loss_id, scheme)
    fn = {"l2": l2_loss, "angular": angular_loss, "multibin": multibin_loss}[loss_id]
    return lambda pred, target: fn(pred, target, scheme)


def finite_diff_gradient(loss, pred, target, h=1e-6):
    """Central-difference gradient of ``loss(pred, target).value`` in pred."""
    if not 0.0 < h <= 1e-3:
        raise InvalidInputError(f"step h must lie in (0, 1e-3], got {h}")
    pred = np.asarray(pred, dtype=float)
    grad = np.empty_like(pred)
    for i in range(pred.size):
        step = np.zeros_like(pred)
        step[i] = h
        grad[i] = (loss(pred + step, target).value - loss(pred - step, target).value) / (2.0 * h)
    return grad
