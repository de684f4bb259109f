"""Power-sum moments of the bordered matrix and their Hankel matrices.

Run with ``python demos/03_moments.py``.
"""
# %%
import numpy as np

from realignment_moments import bell_noise_state, bordered_realignment, hankel_report, moments

np.set_printoptions(precision=5, suppress=True)

# %% [markdown]
# a_k is the sum of the k-th powers of the singular values. All moments
# come from one SVD. a_0 is a convention: either the fixed count
# (dA^2 - 1)(dB^2 - 1) or the matrix dimension l + dA^2.

# %%
b = bordered_realignment(bell_noise_state(0.7), 0.1, 0.1, 1)
a = moments(b)
print("K =", a.K, "moments:", a.values)
print("matrix-dimension a_0:", a.with_a0("matrix-dimension")[0])
print(a.to_csv())

# %% [markdown]
# Hankel matrices: H_k has entries a_{i+j}, B_r has entries a_{i+j+1}.
# Both are Gram matrices, so positive semidefinite for any state. Putting
# the separable bound in place of a_1 turns that into a test: a negative
# eigenvalue after the substitution certifies entanglement.

# %%
rep = hankel_report(a)
print("bound:", rep.bound)
for r, m in rep.matrices_B.items():
    print(f"B^_{r} min eigenvalue {rep.min_eig_B[r]:+.3e}")
print("B^_1 =\n", rep.matrices_B[1])

# %% [markdown]
# Below the threshold nothing is negative.

# %%
low = hankel_report(moments(bordered_realignment(bell_noise_state(0.3), 0.1, 0.1, 1)))
print({r: f"{v:+.3e}" for r, v in low.min_eig_B.items()})
