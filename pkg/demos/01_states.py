"""Building and validating bipartite density matrices.

Run with ``python demos/01_states.py``.
"""
# %%
import numpy as np

from realignment_moments import (
    DensityMatrix,
    InvalidStateError,
    StateFamily,
    bell_noise_state,
    partial_trace,
    random_separable_state,
    state_from_dict,
    state_to_dict,
    werner_state,
)

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# The three built-in families. Each is a plain ``DensityMatrix`` with its
# local dimensions attached; the product basis is A-major, so block (i, j)
# of the matrix is the B-operator paired with |i><j| on A.

# %%
rho = bell_noise_state(0.6)
print("bell-noise, p = 0.6:\n", rho.matrix.real)
print("block (0, 1):\n", rho.block(0, 1).real)

w = werner_state(2, -0.5)
print("werner p = -0.5 eigenvalues:", np.linalg.eigvalsh(w.matrix))

fam = StateFamily("isotropic-b")
print("isotropic-b parameter range:", fam.parameter_range)
print("isotropic-b at b = 0.75, diagonal:", np.diag(fam(0.75).matrix).real)

# %% [markdown]
# Reduced states. Every family here has maximally mixed marginals.

# %%
print("rho_A =\n", partial_trace(rho, "B").real)
print("rho_B =\n", partial_trace(rho, "A").real)

# %% [markdown]
# Random separable states are convex mixtures of Haar-random product
# states; a seed fixes them completely.

# %%
sep = random_separable_state(2, 3, terms=4, seed=11)
print("2x3 separable state, trace", np.trace(sep.matrix).real,
      "min eigenvalue", np.linalg.eigvalsh(sep.matrix)[0])
assert sep == random_separable_state(2, 3, terms=4, seed=11)

# %% [markdown]
# Validation is strict: the error names the invariant that failed.

# %%
for bad in (np.eye(4) / 2, np.diag([0.7, 0.5, 0.0, -0.2])):
    try:
        DensityMatrix(bad, 2, 2)
    except InvalidStateError as exc:
        print(f"rejected ({exc.invariant}): {exc}")

# %% [markdown]
# JSON serialization is lossless.

# %%
doc = state_to_dict(w)
print("keys:", sorted(doc))
assert state_from_dict(doc) == w
