"""Reading and writing KITTI object label files.

One object per line, whitespace separated::

    type truncated occluded alpha  left top right bottom  h w l  x y z  rotation_y [score]

The optional 16th ``score`` column of prediction files is accepted and
dropped. ``DontCare`` rows keep their sentinel values untouched.
"""
import logging
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .angles import PI, alpha_to_roty, circular_diff, roty_to_alpha, wrap
from .errors import InvalidLocationError, KittiParseError

log = logging.getLogger(__name__)

COLUMNS = (
    "type", "truncated", "occluded", "alpha",
    "bbox_left", "bbox_top", "bbox_right", "bbox_bottom",
    "height", "width", "length",
    "x", "y", "z", "rotation_y",
)
DONTCARE = "DontCare"


@dataclass(frozen=True)
class KittiLabel:
    object_type: str
    truncated: float
    occluded: int
    alpha: float
    bbox: tuple
    dimensions: tuple
    location: tuple
    rotation_y: float

    @property
    def is_dontcare(self):
        return self.object_type == DONTCARE

    def with_angles(self, alpha=None, rotation_y=None):
        return replace(
            self,
            alpha=self.alpha if alpha is None else float(alpha),
            rotation_y=self.rotation_y if rotation_y is None else float(rotation_y),
        )


def _angle_in(value, name, lineno, path):
    if -PI <= value <= PI:
        return wrap(value)
    log.warning("%s line %d: %s=%g outside [-pi, pi], wrapped", path or "<labels>", lineno, name, value)
    return wrap(value)


def parse_line(line, lineno=None, path=None):
    fields = line.split()
    if len(fields) not in (15, 16):
        raise KittiParseError(
            f"expected 15 or 16 columns, found {len(fields)}", line=lineno, path=path
        )
    values = []
    for col, (name, raw) in enumerate(zip(COLUMNS[1:], fields[1:15]), start=2):
        try:
            values.append(float(raw))
        except ValueError:
            raise KittiParseError(
                f"{name} is not a number: {raw!r}", line=lineno, column=col, path=path
            ) from None
        if not np.isfinite(values[-1]):
            raise KittiParseError(f"{name} is not finite: {raw!r}", line=lineno, column=col, path=path)
    if len(fields) == 16:
        try:
            float(fields[15])
        except ValueError:
            raise KittiParseError(
                f"score is not a number: {fields[15]!r}", line=lineno, column=16, path=path
            ) from None
    truncated, occluded, alpha = values[0], values[1], values[2]
    if occluded != int(occluded):
        raise KittiParseError(f"occluded must be an integer, got {fields[2]!r}", line=lineno, column=3, path=path)
    rotation_y = values[13]
    if fields[0] != DONTCARE:
        alpha = _angle_in(alpha, "alpha", lineno, path)
        rotation_y = _angle_in(rotation_y, "rotation_y", lineno, path)
    return KittiLabel(
        object_type=fields[0],
        truncated=truncated,
        occluded=int(occluded),
        alpha=alpha,
        bbox=tuple(values[3:7]),
        dimensions=tuple(values[7:10]),
        location=tuple(values[10:13]),
        rotation_y=rotation_y,
    )


def parse_label_file(text, path=None):
    """Parse label text into a list of KittiLabel; blank lines are skipped."""
    labels = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            labels.append(parse_line(line, lineno, path))
    return labels


def read_label_file(path):
    path = Path(path)
    return parse_label_file(path.read_text(encoding="utf-8"), path=path)


def format_label(label):
    nums = (
        [label.truncated]
        + [label.alpha]
        + list(label.bbox)
        + list(label.dimensions)
        + list(label.location)
        + [label.rotation_y]
    )
    if label.is_dontcare:
        # KITTI writes DontCare sentinels as bare integers (-1, -10, -1000)
        fmt = ["%d" % v if v == int(v) else "%.2f" % v for v in nums]
    else:
        fmt = ["%.2f" % v for v in nums]
    # "%.2f" of a tiny negative gives "-0.00"
    fmt = ["0.00" if f == "-0.00" else f for f in fmt]
    return " ".join([label.object_type, fmt[0], str(label.occluded)] + fmt[1:])


def write_label_file(labels):
    return "".join(format_label(lab) + "\n" for lab in labels)


def filter_class(labels, class_name):
    return [lab for lab in labels if lab.object_type == class_name]


def check_label_consistency(label, tol):
    """True when rotation_y agrees with alpha + arctan(x / z) within ``tol``."""
    x, _, z = label.location
    if z <= 0:
        raise InvalidLocationError(f"{label.object_type} label has z={z:g}; need z > 0")
    expected = alpha_to_roty(label.alpha, x, z)
    return abs(circular_diff(label.rotation_y, expected)) <= tol


def convert_angles(labels, source, target):
    """Recompute one angle field from the other.

    ``source``/``target`` are ``"alpha"`` and ``"roty"`` (either order).
    DontCare rows and rows with z <= 0 are passed through unchanged.
    """
    if {source, target} != {"alpha", "roty"}:
        raise ValueError(f"convert between 'alpha' and 'roty', got {source!r} -> {target!r}")
    out = []
    for lab in labels:
        x, _, z = lab.location
        if lab.is_dontcare or z <= 0:
            out.append(lab)
        elif target == "roty":
            out.append(lab.with_angles(rotation_y=alpha_to_roty(lab.alpha, x, z)))
        else:
            out.append(lab.with_angles(alpha=roty_to_alpha(lab.rotation_y, x, z)))
    return out
