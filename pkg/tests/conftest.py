import numpy as np
import pytest

from realignment_moments import DensityMatrix


def realign_by_blocks(mat, dA, dB):
    """Reference realignment: walk the blocks Z_11, Z_21, ..., Z_m1, Z_12, ... explicitly."""
    rows = []
    for j in range(dA):
        for i in range(dA):
            block = mat[i * dB:(i + 1) * dB, j * dB:(j + 1) * dB]
            rows.append([block[a, b] for b in range(dB) for a in range(dB)])
    return np.array(rows, dtype=complex)


def realign_row_major(mat, dA, dB):
    """The i-major convention: row i*dA + j holds the row-wise flattened block Z_ij."""
    rows = []
    for i in range(dA):
        for j in range(dA):
            rows.append(mat[i * dB:(i + 1) * dB, j * dB:(j + 1) * dB].ravel())
    return np.array(rows)


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def random_mixed_state(rng, dA, dB):
    n = dA * dB
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g @ g.conj().T
    return m / np.trace(m).real


def product_state(rng, dA, dB):
    sa, sb = random_mixed_state(rng, dA, 1), random_mixed_state(rng, dB, 1)
    return sa, sb, DensityMatrix(np.kron(sa, sb), dA, dB)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bell():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.outer(phi, phi).astype(complex)
