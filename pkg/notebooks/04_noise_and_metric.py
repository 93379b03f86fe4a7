"""
Orientation similarity under representation noise
=================================================

Add Gaussian noise in representation space, decode, and score with the
cosine similarity metric. A crude stand-in for an imperfect regressor.
"""
import numpy as np

from orientrep import ReprScheme, orientation_similarity
from orientrep.analysis import angle_grid, simulate_noisy_predictions

angles = angle_grid(5000)
sigmas = (0.05, 0.1, 0.2, 0.4)
names = ("scalar_global", "single_bin", "multibin:bins=2,overlap=0.1",
         "conf:bins=2", "conf:bins=4", "voting:bins=4", "tricosine")

print("scheme".ljust(30) + "".join(f"sigma={s:<6}" for s in sigmas))
for name in names:
    s = ReprScheme.parse(name)
    row = [orientation_similarity(simulate_noisy_predictions(s, angles, sig, seed=1)) for sig in sigmas]
    print(name.ljust(30) + "".join(f"{v:<12.4f}" for v in row))

# %% the metric itself
print(orientation_similarity([0.0], [0.0]), orientation_similarity([np.pi / 2], [0.0]),
      orientation_similarity([np.pi], [0.0]))
