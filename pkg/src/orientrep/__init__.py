"""Yaw-orientation representations for vehicle detection: codecs, losses,
the Orientation Similarity metric, KITTI label I/O and a small experiment
harness."""
from .angles import (
    ObjectLocation,
    alpha_to_roty,
    circular_diff,
    circular_mean,
    denormalize_scalar,
    normalize_scalar,
    roty_to_alpha,
    wrap,
)
from .errors import (
    DegenerateError,
    DegenerateMeanError,
    DegenerateVectorError,
    InvalidInputError,
    InvalidLocationError,
    InvalidSchemeError,
    KittiParseError,
    OrientationError,
)
from .losses import LossReport, angular_loss, finite_diff_gradient, get_loss, l2_loss, multibin_loss
from .metrics import EvalBatch, orientation_similarity, os_from_angular_loss
from .representations import BinGeometry, Kind, ReprScheme, canonicalize, decode, dimension, encode

__version__ = "0.1.0"

__all__ = [
    "ObjectLocation", "alpha_to_roty", "circular_diff", "circular_mean", "denormalize_scalar",
    "normalize_scalar", "roty_to_alpha", "wrap",
    "DegenerateError", "DegenerateMeanError", "DegenerateVectorError", "InvalidInputError",
    "InvalidLocationError", "InvalidSchemeError", "KittiParseError", "OrientationError",
    "LossReport", "angular_loss", "finite_diff_gradient", "get_loss", "l2_loss", "multibin_loss",
    "EvalBatch", "orientation_similarity", "os_from_angular_loss",
    "BinGeometry", "Kind", "ReprScheme", "canonicalize", "decode", "dimension", "encode",
]
