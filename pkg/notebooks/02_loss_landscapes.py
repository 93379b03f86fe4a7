"""
Loss landscapes around a fixed ground truth
===========================================

Sweep the predicted angle over a full turn with the target fixed at 0 and
tabulate each loss. Writes CSVs next to this script for plotting elsewhere.
"""
from pathlib import Path

import numpy as np

from orientrep import ReprScheme
from orientrep.analysis import sweep_landscape

out = Path(__file__).with_name("landscapes")
out.mkdir(exist_ok=True)

runs = [
    ("scalar_global", "l2"),
    ("single_bin", "l2"),
    ("single_bin", "angular"),
    ("multibin:bins=2,overlap=0.1", "multibin"),
    ("voting:bins=4", "l2"),
    ("tricosine", "l2"),
]

probe = np.array([-np.pi, -np.pi / 2, -0.5, 0.0, 0.5, np.pi / 2, 3.0])
print("theta_pred".ljust(38) + "  ".join(f"{t:+6.2f}" for t in probe))
for name, loss_id in runs:
    sweep = sweep_landscape(ReprScheme.parse(name), loss_id, gt_angle=0.0, num_points=10_000)
    (out / f"{name.split(':')[0]}_{loss_id}.csv").write_text(sweep.to_csv())
    idx = np.searchsorted(sweep.theta_pred, probe).clip(0, sweep.num_points - 1)
    print(f"{name + ' / ' + loss_id:38s}" + "  ".join(f"{v:6.3f}" for v in sweep.loss[idx]))

# %% where is the multibin loss flat?
sweep = sweep_landscape(ReprScheme.parse("multibin:bins=2,overlap=0.1"), "multibin", 0.0, 10_000)
slope = np.abs(sweep.derivative())
far = np.abs(sweep.theta_pred) >= np.pi / 2
print("smallest |dL/dtheta| on the far half:", slope[far].min())
print("grid angles there with |dL/dtheta| < 1e-3:", sweep.theta_pred[far & (slope < 1e-3)])
