"""Orientation Similarity, the KITTI cosine accuracy without recall weighting."""
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class EvalBatch:
    predictions: np.ndarray
    ground_truths: np.ndarray

    def __post_init__(self):
        pred = np.asarray(self.predictions, dtype=float).ravel()
        gt = np.asarray(self.ground_truths, dtype=float).ravel()
        if pred.size == 0 or pred.size != gt.size:
            raise InvalidInputError(
                f"need equal, non-zero numbers of predictions and ground truths ({pred.size} vs {gt.size})"
            )
        if not (np.all(np.isfinite(pred)) and np.all(np.isfinite(gt))):
            raise InvalidInputError("angles must be finite")
        object.__setattr__(self, "predictions", pred)
        object.__setattr__(self, "ground_truths", gt)

    def __len__(self):
        return self.predictions.size


def similarity_per_pair(predictions, ground_truths):
    return (1.0 + np.cos(np.asarray(predictions, float) - np.asarray(ground_truths, float))) / 2.0


def orientation_similarity(predictions, ground_truths=None):
    """Mean of ``(1 + cos(pred - gt)) / 2`` over all pairs, in ``[0, 1]``.

    Accepts either an :class:`EvalBatch` or two angle sequences.
    """
    batch = predictions if isinstance(predictions, EvalBatch) else EvalBatch(predictions, ground_truths)
    terms = similarity_per_pair(batch.predictions, batch.ground_truths)
    # fsum keeps the result independent of summation order
    return float(np.clip(math.fsum(terms) / terms.size, 0.0, 1.0))


def os_from_angular_loss(loss_value):
    if not 0.0 <= loss_value <= 2.0:
        raise InvalidInputError(f"angular loss lies in [0, 2], got {loss_value}")
    return 1.0 - loss_value / 2.0
