"""
Fitting a single vector by gradient descent
===========================================

Gradient descent directly on the prediction vector isolates what a loss
does to the optimizer, without any network in between.
"""
import numpy as np

from orientrep import ReprScheme, encode
from orientrep.analysis import fit_representation

single = ReprScheme.parse("single_bin")
scalar = ReprScheme.parse("scalar_global")

# %% single bin with l2 converges from everywhere, even the antipode
for init in (-np.pi, -2.0, 1.0, 3.0):
    trace = fit_representation(single, "l2", 0.0, encode(single, init), step_size=0.1, steps=200)
    hit = np.flatnonzero(np.abs(trace.decoded) < 1e-3)
    print(f"init {init:+.2f}: |decoded| < 1e-3 at step {hit[0]}")

# %% angular loss has no gradient at the exact antipode
trace = fit_representation(single, "angular", 0.3, -encode(single, 0.3), 0.1, 500)
print("exact antipode, final loss:", trace.losses[-1])

# one float ulp off the antipode the run eventually escapes, slowly
trace = fit_representation(single, "angular", 0.0, encode(single, np.pi), 0.1, 500)
for step in (0, 100, 150, 200, 500):
    print(f"  step {step:3d}: loss {trace.losses[step]:.6f}")

# %% a scalar target just across the wrap
wrap_run = fit_representation(scalar, "l2", -np.pi + 0.05, encode(scalar, np.pi - 0.05), 0.1, 200)
flat_run = fit_representation(scalar, "l2", -0.05, encode(scalar, 0.05), 0.1, 200)
print("initial loss, across the wrap vs not:", wrap_run.losses[0], flat_run.losses[0])
for thr in (flat_run.losses[1], 1e-6, 1e-10):
    print(f"steps to loss {thr:.1e}: {wrap_run.steps_to_loss(thr)} vs {flat_run.steps_to_loss(thr)}")
# the scalar run does get there, by sweeping the long way round the circle
print("decoded path (wrap):", np.round(wrap_run.decoded[[0, 5, 10, 15, 20, 40]], 3))
