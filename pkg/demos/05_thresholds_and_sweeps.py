"""Threshold bisection along state families and parameter-grid sweeps.

Run with ``python demos/05_thresholds_and_sweeps.py``. If matplotlib is
installed the sweep is also drawn to ``theorem1_surface.png``.
"""
# %%
import numpy as np

from realignment_moments.explorer import Axis, NoBracketError, bisect_threshold, sweep
from realignment_moments.reproduce import reproduce

# %% [markdown]
# Bisection runs on the verdict. A 32-point pre-scan checks that the
# verdict flips once inside the interval.

# %%
for fam, crit, params in [
    ("bell-noise", "ccnr", {}),
    ("bell-noise", "theorem1", {"alpha": 1 / 729, "beta": 1 / 729, "l": 1}),
    ("isotropic-b", "ppt", {}),
    ("werner", "ppt", {}),
]:
    res = bisect_threshold(fam, crit, params, tol=1e-8)
    print(f"{fam:12s} {crit:9s} threshold {res.threshold:+.8f} "
          f"({res.verdict_lo} below, {res.verdict_hi} above)")

try:
    bisect_threshold("bell-noise", "ccnr", lo=0.0, hi=0.3)
except NoBracketError as exc:
    print("no bracket:", exc)

# %% [markdown]
# The three worked examples, with their companion checks.

# %%
for n in (1, 2, 3):
    d = reproduce(n).to_dict()
    print(f"example {n}: threshold {d['threshold']:+.6f} vs {d['target']:+.6f} "
          f"(tol {d['tolerance']}) {d['status']}")

# %% [markdown]
# The theorem1 discriminant over (alpha, p), with beta = alpha and l = 1.
# It grows with p along every alpha row.

# %%
grid = sweep("bell-noise", [Axis("alpha", 0.01, 0.5, 21), Axis("p", 0, 1, 21)],
             "theorem1", beta_rule="equal", l=1)
f = grid.values
print("shape", f.shape, "nondecreasing in p:", bool(np.all(np.diff(f, axis=1) >= 0)))
print("f at p = 1 for alpha = 0.01 .. 0.5:", np.round(f[:, -1][::5], 4))
print(grid.to_csv().splitlines()[:3])

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    alphas, ps = grid.coords
    fig, ax = plt.subplots(figsize=(5, 4))
    cs = ax.contourf(ps, alphas, f, levels=20)
    ax.contour(ps, alphas, f, levels=[0], colors="w")
    ax.set_xlabel("p")
    ax.set_ylabel("alpha = beta")
    fig.colorbar(cs, label="f")
    fig.savefig("theorem1_surface.png", dpi=120, bbox_inches="tight")
    print("wrote theorem1_surface.png")
