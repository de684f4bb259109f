"""Vectorization, realignment, the bordered realignment matrix and partial transpose."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import _bipartite_array, reduced_states


def vectorize(a) -> np.ndarray:
    """Column-stack ``a`` into a 1-d vector: ``(a11, ..., am1, a12, ..., amn)``."""
    return np.asarray(a).reshape(-1, order="F")


def realign(rho, dims: tuple[int, int] | None = None) -> np.ndarray:
    """Realigned matrix ``R(rho)`` of shape ``(dA**2, dB**2)``.

    Row ``j*dA + i`` holds ``vec(Z_{i,j})^T``: blocks are taken down each
    block column in turn (``Z_11, Z_21, ..., Z_m1, Z_12, ...``). This ordering
    only permutes rows relative to the i-major convention, so singular values
    are the same either way.

    Works for any operator on ``C^dA (x) C^dB``, not only states; pass ``dims``
    for bare arrays.
    """
    arr, dA, dB = _bipartite_array(rho, dims)
    t = arr.reshape(dA, dB, dA, dB)
    # t[i, a, j, b] = Z_ij[a, b]; vec(Z_ij)[b*dB + a] = Z_ij[a, b]
    return t.transpose(2, 0, 3, 1).reshape(dA * dA, dB * dB)


def omega(x, l: int) -> np.ndarray:
    """``l`` identical columns ``vec(x)``; ``l == 0`` gives a zero-column matrix."""
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    v = vectorize(x)
    return np.repeat(v[:, None], l, axis=1)


@dataclass(frozen=True)
class BorderedRealignment:
    """``M^l_{alpha,beta}(rho)`` together with the parameters that built it."""

    matrix: np.ndarray
    alpha: float
    beta: float
    l: int
    dA: int
    dB: int

    @property
    def bound(self) -> float:
        """Separable upper bound on the trace norm, ``sqrt((l a^2 + 1)(l b^2 + 1))``."""
        return separable_bound(self.alpha, self.beta, self.l)

    @property
    def n_singular_values(self) -> int:
        return min(self.matrix.shape)

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.matrix, compute_uv=False)


def separable_bound(alpha: float, beta: float, l: int) -> float:
    return float(np.sqrt((l * alpha**2 + 1) * (l * beta**2 + 1)))


def bordered_realignment(rho, alpha: float, beta: float, l: int,
                         dims: tuple[int, int] | None = None) -> BorderedRealignment:
    """Assemble the bordered realignment matrix.

    .. code-block:: text

        [[ alpha*beta*E_{l x l},   alpha * omega_l(rho_B)^T ],
         [ beta * omega_l(rho_A),  R(rho)                   ]]

    The reduced states are always recomputed from ``rho``. With ``l == 0``
    the result is exactly ``realign(rho)``.
    """
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    arr, dA, dB = _bipartite_array(rho, dims)
    r = realign(arr, (dA, dB))
    if l == 0:
        return BorderedRealignment(r, float(alpha), float(beta), 0, dA, dB)
    rho_a, rho_b = reduced_states(arr, (dA, dB))
    m = np.empty((l + dA * dA, l + dB * dB), dtype=complex)
    m[:l, :l] = alpha * beta
    m[:l, l:] = alpha * omega(rho_b, l).T
    m[l:, :l] = beta * omega(rho_a, l)
    m[l:, l:] = r
    return BorderedRealignment(m, float(alpha), float(beta), int(l), dA, dB)


def partial_transpose(rho, dims: tuple[int, int] | None = None) -> np.ndarray:
    """Transpose on subsystem B: block ``Z_{i,j}`` becomes ``Z_{i,j}^T``."""
    arr, dA, dB = _bipartite_array(rho, dims)
    t = arr.reshape(dA, dB, dA, dB)
    return t.transpose(0, 3, 2, 1).reshape(dA * dB, dA * dB)
