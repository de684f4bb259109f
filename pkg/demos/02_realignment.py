"""The realignment map and its bordered extension.

Run with ``python demos/02_realignment.py``.
"""
# %%
import numpy as np

from realignment_moments import (
    bell_noise_state,
    bordered_realignment,
    realign,
    separable_bound,
    werner_state,
)
from realignment_moments.moments import singular_values

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# Realignment rearranges the dB x dB blocks of rho into rows: the block
# (i, j) becomes row j*dA + i, holding that block column-stacked. Its trace
# norm is at most 1 on separable states.

# %%
for p in (0.2, 1 / 3, 0.6, 1.0):
    s = singular_values(realign(bell_noise_state(p)))
    print(f"p = {p:.3f}: singular values {s}, trace norm {s.sum():.4f}")

# %% [markdown]
# The bordered matrix adds l rows and columns built from the reduced
# states and a constant alpha*beta corner. For separable states its trace
# norm is at most sqrt((l alpha^2 + 1)(l beta^2 + 1)).

# %%
alpha, beta, l = 0.2, 0.3, 3
m = bordered_realignment(werner_state(2, 0.1), alpha, beta, l)
print("shape", m.matrix.shape, "bound", m.bound, "=", separable_bound(alpha, beta, l))
print(m.matrix.real)

# %% [markdown]
# For two-qubit Werner states, three singular values of the bordered
# matrix stay at |2p - 1| / 6 whatever the border.

# %%
for p in (-1.0, -0.5, 0.3):
    s = bordered_realignment(werner_state(2, p), 1 / 729, 1 / 729, 1).singular_values()
    print(f"p = {p}: {s}  (|2p-1|/6 = {abs(2 * p - 1) / 6:.4f})")
