"""
Angle encodings side by side
============================

Encode a few yaw angles with every scheme, decode them back, and see what
happens to each representation right at the +-pi seam.
"""
import numpy as np

from orientrep import ReprScheme, canonicalize, circular_diff, decode, encode

np.set_printoptions(precision=4, suppress=True)

schemes = [ReprScheme.parse(s) for s in (
    "scalar_global", "single_bin", "multibin:bins=2,overlap=0.1",
    "conf:bins=4", "voting:bins=4", "tricosine",
)]

# %% what each scheme produces for a handful of angles
angles = np.array([-np.pi, -1.0, 0.0, 0.5, np.pi / 2, 3.0])
for s in schemes:
    print(f"{str(s):30s} dim={s.dimension}")
    for theta, vec in zip(angles, encode(s, angles)):
        print(f"    {theta:+.4f} -> {vec}")

# %% round trip over a dense grid
grid = -np.pi + 2 * np.pi * np.arange(10_000) / 10_000
for s in schemes:
    err = np.abs(circular_diff(decode(s, encode(s, grid)), grid)).max()
    print(f"{str(s):30s} worst round-trip error {err:.1e}")

# %% the seam: two angles 2e-4 apart on either side of pi
left, right = np.pi - 1e-4, -np.pi + 1e-4
for s in schemes:
    gap = np.linalg.norm(encode(s, left) - encode(s, right))
    print(f"{str(s):30s} |enc(pi-1e-4) - enc(-pi+1e-4)| = {gap:.2e}")

# %% raw network outputs need not be canonical
single = ReprScheme.parse("single_bin")
print(canonicalize(single, [10.0, 10.0]), decode(single, [10.0, 10.0]))
tri = ReprScheme.parse("tricosine")
print(canonicalize(tri, [1.2, -0.5, -0.5]), decode(tri, [1.2, -0.5, -0.5]))
