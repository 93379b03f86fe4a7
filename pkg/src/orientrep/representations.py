"""Encode/decode codecs for the yaw representations.

A representation vector is a plain float array of length ``scheme.dimension``;
batches are 2-D arrays with one vector per row. ``encode`` maps canonical
angles to vectors and ``decode`` maps (possibly raw, un-normalized) vectors
back to canonical angles.

Vector layouts::

    scalar_global / scalar_local   [theta / pi]
    single_bin                     [cos, sin]
    multibin      per bin          [conf, cos(offset from start), sin(...)]
    conf          per bin          [conf, offset from center / half width]
    voting        per bin          [cos(offset from center), sin(...)]
    tricosine                      [cos(theta - c) for c in (-2pi/3, 0, 2pi/3)]
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product

import numpy as np

from .angles import PI, TWO_PI, circular_diff, wrap
from .errors import DegenerateMeanError, DegenerateVectorError, InvalidInputError, InvalidSchemeError

#: angular agreement threshold used by the voting-bin exclusion rule
VOTE_THRESHOLD = np.deg2rad(30.0)

#: pairs shorter than this cannot be turned back into an angle
NORM_EPS = 1e-9

TRICOSINE_CENTERS = np.array([-2.0 * PI / 3.0, 0.0, 2.0 * PI / 3.0])


class Kind(str, Enum):
    GLOBAL_SCALAR = "scalar_global"
    LOCAL_SCALAR = "scalar_local"
    SINGLE_BIN = "single_bin"
    MULTIBIN = "multibin"
    CONFIDENCE_BINS = "conf"
    VOTING_BINS = "voting"
    TRICOSINE = "tricosine"

    @property
    def is_scalar(self):
        return self in (Kind.GLOBAL_SCALAR, Kind.LOCAL_SCALAR)


_DEFAULT_BINS = {
    Kind.GLOBAL_SCALAR: 1,
    Kind.LOCAL_SCALAR: 1,
    Kind.SINGLE_BIN: 1,
    Kind.MULTIBIN: 2,
    Kind.CONFIDENCE_BINS: 2,
    Kind.VOTING_BINS: 4,
    Kind.TRICOSINE: 3,
}


@dataclass(frozen=True)
class BinGeometry:
    index: int
    start: float
    center: float
    width: float


@dataclass(frozen=True)
class ReprScheme:
    """Codec descriptor: representation kind, bin count and bin overlap.

    ``overlap`` is the fraction of the full circle shared between neighbouring
    bins and is only meaningful for multibin (default 0.1 there).
    """

    kind: Kind
    num_bins: int = None
    overlap: float = None

    def __post_init__(self):
        try:
            kind = Kind(self.kind)
        except ValueError:
            raise InvalidSchemeError(f"unknown representation kind {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        if self.num_bins is None:
            object.__setattr__(self, "num_bins", _DEFAULT_BINS[kind])
        if self.overlap is None:
            object.__setattr__(self, "overlap", 0.1 if kind is Kind.MULTIBIN else 0.0)
        n, f = self.num_bins, float(self.overlap)
        object.__setattr__(self, "overlap", f)
        if isinstance(n, bool) or int(n) != n:
            raise InvalidSchemeError(f"num_bins must be an integer, got {n!r}")
        object.__setattr__(self, "num_bins", int(n))
        n = int(n)

        if kind.is_scalar or kind is Kind.SINGLE_BIN:
            if n != 1:
                raise InvalidSchemeError(f"{kind.value} has exactly one bin, got {n}")
        elif kind is Kind.TRICOSINE:
            if n != 3:
                raise InvalidSchemeError(f"tricosine requires 3 bins, got {n}")
        elif kind is Kind.VOTING_BINS:
            if n < 3:
                raise InvalidSchemeError(f"voting bins need at least 3 bins, got {n}")
        elif n < 2:
            raise InvalidSchemeError(f"{kind.value} needs at least 2 bins, got {n}")

        if kind is Kind.MULTIBIN:
            if not 0.0 <= f < 0.5:
                raise InvalidSchemeError(f"overlap must lie in [0, 0.5), got {f}")
        elif f != 0.0:
            raise InvalidSchemeError(f"{kind.value} does not support bin overlap")

    @classmethod
    def parse(cls, text):
        """Parse a descriptor such as ``multibin:bins=2,overlap=0.1``."""
        text = text.strip()
        kind, _, rest = text.partition(":")
        options = {}
        if rest:
            for item in rest.split(","):
                key, eq, value = item.partition("=")
                key = key.strip()
                if not eq or not key:
                    raise InvalidSchemeError(f"malformed scheme option {item!r} in {text!r}")
                if key in options:
                    raise InvalidSchemeError(f"duplicate scheme option {key!r}")
                options[key] = value.strip()
        unknown = set(options) - {"bins", "overlap"}
        if unknown:
            raise InvalidSchemeError(f"unknown scheme option(s) {sorted(unknown)} in {text!r}")
        try:
            bins = int(options["bins"]) if "bins" in options else None
            overlap = float(options["overlap"]) if "overlap" in options else None
        except ValueError as exc:
            raise InvalidSchemeError(f"bad scheme option value in {text!r}: {exc}") from None
        return cls(kind.strip(), bins, overlap)

    def __str__(self):
        if self.kind in (Kind.MULTIBIN,):
            return f"{self.kind.value}:bins={self.num_bins},overlap={self.overlap:g}"
        if self.kind in (Kind.CONFIDENCE_BINS, Kind.VOTING_BINS):
            return f"{self.kind.value}:bins={self.num_bins}"
        return self.kind.value

    @property
    def dimension(self):
        return dimension(self)

    def bins(self):
        return bin_geometry(self)

    def encode(self, theta):
        return encode(self, theta)

    def decode(self, values):
        return decode(self, values)

    def canonicalize(self, values):
        return canonicalize(self, values)


def dimension(scheme):
    k, n = scheme.kind, scheme.num_bins
    if k.is_scalar:
        return 1
    if k is Kind.SINGLE_BIN:
        return 2
    if k is Kind.TRICOSINE:
        return 3
    if k is Kind.MULTIBIN:
        return 3 * n
    return 2 * n


def _bin_arrays(scheme):
    """(starts, centers, widths) as float arrays of length num_bins."""
    n = scheme.num_bins
    if scheme.kind is Kind.TRICOSINE:
        centers = TRICOSINE_CENTERS.copy()
        widths = np.full(3, TWO_PI / 3.0)
        return centers - widths / 2.0, centers, widths
    nominal = TWO_PI / n
    pad = scheme.overlap * PI / n  # half of one overlap region
    lo = -PI + nominal * np.arange(n)
    starts = np.asarray(wrap(lo - pad))
    centers = lo + nominal / 2.0
    widths = np.full(n, nominal + 2.0 * pad)
    return np.atleast_1d(starts), centers, widths


def bin_geometry(scheme):
    starts, centers, widths = _bin_arrays(scheme)
    return [
        BinGeometry(i, float(s), float(c), float(w))
        for i, (s, c, w) in enumerate(zip(starts, centers, widths))
    ]


def _bin_index(theta, n):
    # equal half-open bins [start, start + 2pi/n) tiling [-pi, pi)
    idx = np.floor((theta + PI) / (TWO_PI / n)).astype(int)
    return np.clip(idx, 0, n - 1)


def encode(scheme, theta):
    """Encode canonical angle(s).

    A scalar angle gives a vector of length ``scheme.dimension``; an array of
    N angles gives an ``(N, dimension)`` array.
    """
    if not isinstance(scheme, ReprScheme):
        raise InvalidSchemeError(f"expected a ReprScheme, got {type(scheme).__name__}")
    scalar_in = np.ndim(theta) == 0
    theta = np.atleast_1d(np.asarray(wrap(theta), dtype=float))
    k, n = scheme.kind, scheme.num_bins

    if k.is_scalar:
        out = (theta / PI)[:, None]
    elif k is Kind.SINGLE_BIN:
        out = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    elif k is Kind.TRICOSINE:
        out = np.cos(theta[:, None] - TRICOSINE_CENTERS[None, :])
    elif k is Kind.VOTING_BINS:
        _, centers, _ = _bin_arrays(scheme)
        delta = theta[:, None] - centers[None, :]
        out = np.empty((theta.size, 2 * n))
        out[:, 0::2] = np.cos(delta)
        out[:, 1::2] = np.sin(delta)
    elif k is Kind.CONFIDENCE_BINS:
        _, centers, widths = _bin_arrays(scheme)
        idx = _bin_index(theta, n)
        rows = np.arange(theta.size)
        out = np.zeros((theta.size, 2 * n))
        out[rows, 2 * idx] = 1.0
        u = np.asarray(circular_diff(theta, centers[idx])) / (widths[idx] / 2.0)
        out[rows, 2 * idx + 1] = np.clip(u, -1.0, 1.0)
    elif k is Kind.MULTIBIN:
        starts, _, widths = _bin_arrays(scheme)
        offset = np.mod(theta[:, None] - starts[None, :], TWO_PI)
        member = offset < widths[None, :]
        # exactly-on-the-end-edge rounding can leave an angle in no bin
        orphan = ~member.any(axis=1)
        if orphan.any():
            member[orphan, np.argmin(np.abs(offset[orphan] - TWO_PI), axis=1)] = True
        conf = member / member.sum(axis=1, keepdims=True)
        out = np.zeros((theta.size, 3 * n))
        out[:, 0::3] = conf
        out[:, 1::3] = np.where(member, np.cos(offset), 0.0)
        out[:, 2::3] = np.where(member, np.sin(offset), 0.0)
    else:  # pragma: no cover - Kind is exhaustive
        raise InvalidSchemeError(f"unsupported kind {k}")
    return out[0] if scalar_in else out


def _as_batch(scheme, values):
    values = np.asarray(values, dtype=float)
    single = values.ndim == 1
    batch = np.atleast_2d(values)
    if batch.ndim != 2 or batch.shape[1] != scheme.dimension:
        raise InvalidInputError(
            f"{scheme} vectors have {scheme.dimension} components, got shape {values.shape}"
        )
    if not np.all(np.isfinite(batch)):
        raise InvalidInputError("representation vector contains non-finite values")
    return batch, single


def _pair_angle(c, s, what):
    if np.any(np.hypot(c, s) < NORM_EPS):
        raise DegenerateVectorError(f"{what}: (cos, sin) pair has (near) zero length")
    return np.arctan2(s, c)


def decode(scheme, values):
    """Decode vector(s) back to canonical angle(s).

    Inputs need not be canonical; raw regressor outputs are accepted as long
    as they are finite.
    """
    batch, single = _as_batch(scheme, values)
    k = scheme.kind
    rows = np.arange(batch.shape[0])

    if k.is_scalar:
        theta = np.asarray(wrap(batch[:, 0] * PI))
    elif k is Kind.SINGLE_BIN:
        theta = np.asarray(wrap(_pair_angle(batch[:, 0], batch[:, 1], "single_bin")))
    elif k is Kind.MULTIBIN:
        starts, _, _ = _bin_arrays(scheme)
        best = np.argmax(batch[:, 0::3], axis=1)
        c, s = batch[rows, 3 * best + 1], batch[rows, 3 * best + 2]
        theta = np.asarray(wrap(starts[best] + _pair_angle(c, s, "multibin")))
    elif k is Kind.CONFIDENCE_BINS:
        _, centers, widths = _bin_arrays(scheme)
        best = np.argmax(batch[:, 0::2], axis=1)
        u = np.clip(batch[rows, 2 * best + 1], -1.0, 1.0)
        theta = np.asarray(wrap(centers[best] + u * widths[best] / 2.0))
    elif k is Kind.VOTING_BINS:
        _, centers, _ = _bin_arrays(scheme)
        offsets = _pair_angle(batch[:, 0::2], batch[:, 1::2], "voting")
        theta = _vote(np.asarray(wrap(centers[None, :] + offsets)))
    elif k is Kind.TRICOSINE:
        theta = _tricosine_decode(batch)
    else:  # pragma: no cover
        raise InvalidSchemeError(f"unsupported kind {k}")
    return float(theta[0]) if single else theta


def voting_survivors(candidates, threshold=VOTE_THRESHOLD):
    """Boolean mask of per-bin candidate angles that survive the vote.

    A candidate is voted out when the median of its circular distances to the
    other candidates exceeds ``threshold`` while some pair of the remaining
    candidates agrees within ``threshold``. When every candidate would be
    voted out, all are kept.
    """
    cand = np.atleast_2d(np.asarray(candidates, dtype=float))
    n = cand.shape[1]
    dist = np.abs(np.asarray(circular_diff(cand[:, :, None], cand[:, None, :])))
    others = np.array([[j for j in range(n) if j != b] for b in range(n)])
    median = np.median(dist[:, np.arange(n)[:, None], others], axis=2)

    pairs = np.array(list(combinations(range(n), 2)))
    agree = dist[:, pairs[:, 0], pairs[:, 1]] <= threshold
    excludes_b = np.array([[b not in p for p in pairs] for b in range(n)])
    others_agree = (agree[:, None, :] & excludes_b[None, :, :]).any(axis=2)

    out = (median > threshold) & others_agree
    out[out.all(axis=1)] = False
    keep = ~out
    return keep if np.ndim(candidates) > 1 else keep[0]


def _vote(candidates):
    keep = voting_survivors(candidates)
    s = np.where(keep, np.sin(candidates), 0.0).sum(axis=1)
    c = np.where(keep, np.cos(candidates), 0.0).sum(axis=1)
    if np.any(np.hypot(s, c) / keep.sum(axis=1) <= 1e-12):
        raise DegenerateMeanError("surviving voting candidates cancel out")
    return np.asarray(wrap(np.arctan2(s, c)))


_SIGNS = np.array(list(product((-1.0, 1.0), repeat=3)))


def _tricosine_decode(batch):
    v = np.clip(batch, -1.0, 1.0)
    spread = np.arccos(v)  # (N, 3)
    # every sign assignment of the three inverted affinities: (N, 8, 3)
    cand = TRICOSINE_CENTERS[None, None, :] + _SIGNS[None, :, :] * spread[:, None, :]
    s = np.sin(cand).mean(axis=2)
    c = np.cos(cand).mean(axis=2)
    ok = np.hypot(s, c) > 1e-12
    theta_hat = np.asarray(wrap(np.arctan2(s, c)))
    recon = np.cos(theta_hat[:, :, None] - TRICOSINE_CENTERS[None, None, :])
    score = np.where(ok, ((recon - v[:, None, :]) ** 2).sum(axis=2), np.inf)
    # lowest reconstruction error, ties broken towards the smallest angle
    best = np.lexsort((theta_hat, score), axis=1)[:, 0]
    theta = theta_hat[np.arange(batch.shape[0]), best]
    # e.g. (-1, -1, -1): every mean cancels, only the bin classification is left
    lost = ~ok.any(axis=1)
    return np.where(lost, TRICOSINE_CENTERS[np.argmax(v, axis=1)], theta)


def canonicalize(scheme, values):
    """Project raw vector(s) into the scheme's canonical value ranges.

    Single-bin and voting pairs are rescaled to unit length (which keeps the
    decoded angle), tricosine affinities and bin confidences are clipped,
    scalars are wrapped. Multibin pairs that are exactly zero are the label
    of a bin not containing the angle and are left as zeros.
    """
    batch, single = _as_batch(scheme, values)
    out = batch.copy()
    k = scheme.kind

    def unit_pairs(cols_c, cols_s, allow_zero=False):
        c, s = out[:, cols_c], out[:, cols_s]
        norm = np.hypot(c, s)
        zero = norm == 0.0
        if np.any(norm < NORM_EPS) and not (allow_zero and np.all(zero[norm < NORM_EPS])):
            raise DegenerateVectorError(f"{scheme}: cannot rescale a zero-length pair")
        safe = np.where(zero, 1.0, norm)
        out[:, cols_c] = c / safe
        out[:, cols_s] = s / safe

    if k.is_scalar:
        v = out[:, 0]
        inside = (v >= -1.0) & (v < 1.0)
        out[:, 0] = np.where(inside, v, np.mod(v + 1.0, 2.0) - 1.0)
    elif k is Kind.SINGLE_BIN:
        unit_pairs(0, 1)
    elif k is Kind.TRICOSINE:
        out = np.clip(out, -1.0, 1.0)
    elif k is Kind.VOTING_BINS:
        unit_pairs(slice(0, None, 2), slice(1, None, 2))
    elif k is Kind.MULTIBIN:
        out[:, 0::3] = np.clip(out[:, 0::3], 0.0, 1.0)
        unit_pairs(slice(1, None, 3), slice(2, None, 3), allow_zero=True)
    elif k is Kind.CONFIDENCE_BINS:
        out[:, 0::2] = np.clip(out[:, 0::2], 0.0, 1.0)
        out[:, 1::2] = np.clip(out[:, 1::2], -1.0, 1.0)
    return out[0] if single else out
