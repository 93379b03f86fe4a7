"""
KITTI labels: alpha, rotation_y and evaluation
==============================================

Read the bundled label fixture, check that alpha and rotation_y agree,
and score a perturbed prediction file.
"""
from pathlib import Path

import numpy as np

from orientrep import orientation_similarity
from orientrep.kitti import check_label_consistency, convert_angles, filter_class, read_label_file

fixtures = Path(__file__).resolve().parents[1] / "tests" / "fixtures"
gt = read_label_file(fixtures / "well_formed.txt")
pred = read_label_file(fixtures / "predictions.txt")

for lab in gt:
    if lab.is_dontcare:
        continue
    print(f"{lab.object_type:10s} alpha {lab.alpha:+.2f}  rotation_y {lab.rotation_y:+.2f}  "
          f"consistent: {check_label_consistency(lab, 0.02)}")

# %% alpha -> rotation_y recomputed from the location
redone = convert_angles(gt, "alpha", "roty")
print("max |roty change|:", max(abs(a.rotation_y - b.rotation_y) for a, b in zip(gt, redone)))

# %% score cars only, on both angle fields
cars_p, cars_g = filter_class(pred, "Car"), filter_class(gt, "Car")
for field in ("rotation_y", "alpha"):
    p = np.array([getattr(lab, field) for lab in cars_p])
    g = np.array([getattr(lab, field) for lab in cars_g])
    print(f"Car OS on {field}: {orientation_similarity(p, g):.6f}")
