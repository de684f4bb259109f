"""Bipartite density matrices and the state families used throughout the package.

All matrices live in the computational product basis ``|i>|j>`` with the
A index major, so that ``rho[i*dB:(i+1)*dB, j*dB:(j+1)*dB]`` is the block
``Z_{i,j}`` acted on by the realignment map.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

VALIDATION_TOL = 1e-10

Subsystem = Literal["A", "B"]


class InvalidStateError(ValueError):
    """Raised when a matrix fails density-matrix validation.

    ``invariant`` names the violated property: ``"shape"``, ``"finite"``,
    ``"hermiticity"``, ``"trace"`` or ``"psd"``.
    """

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


def _as_complex_matrix(mat) -> np.ndarray:
    arr = np.array(mat, dtype=complex)
    if arr.ndim != 2:
        raise InvalidStateError("shape", f"expected a 2-d matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise InvalidStateError("finite", "matrix contains NaN or Inf entries")
    return arr


def validate_density_matrix(mat: np.ndarray, dA: int, dB: int, tol: float = VALIDATION_TOL,
                            check_psd: bool = True) -> None:
    """Raise :class:`InvalidStateError` unless ``mat`` is a valid ``dA x dB`` state."""
    if dA < 2 or dB < 2:
        raise InvalidStateError("shape", f"subsystem dimensions must be >= 2, got ({dA}, {dB})")
    n = dA * dB
    if mat.shape != (n, n):
        raise InvalidStateError("shape", f"matrix shape {mat.shape} does not match dA*dB = {n}")
    herm_err = np.max(np.abs(mat - mat.conj().T))
    if herm_err > tol:
        raise InvalidStateError("hermiticity", f"max |rho - rho^dag| = {herm_err:.3e} exceeds {tol:g}")
    tr = np.trace(mat)
    if abs(tr - 1) > tol:
        raise InvalidStateError("trace", f"trace {tr.real:.12g}{tr.imag:+.3g}j differs from 1")
    if check_psd:
        lam = np.linalg.eigvalsh((mat + mat.conj().T) / 2)[0]
        if lam < -tol:
            raise InvalidStateError("psd", f"minimum eigenvalue {lam:.3e} is below -{tol:g}")


@dataclass(frozen=True)
class DensityMatrix:
    """A bipartite state on ``C^dA (x) C^dB``.

    The constructor validates Hermiticity, unit trace and positivity at
    ``1e-10``. Pass ``trusted=True`` to skip the eigenvalue check for states
    built internally from closed-form families.
    """

    matrix: np.ndarray
    dA: int
    dB: int
    trusted: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        arr = _as_complex_matrix(self.matrix)
        validate_density_matrix(arr, self.dA, self.dB, check_psd=not self.trusted)
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.dA, self.dB)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix.copy()
        return self.matrix.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    def block(self, i: int, j: int) -> np.ndarray:
        """Return the ``dB x dB`` block ``Z_{i,j}``."""
        dB = self.dB
        return self.matrix[i * dB:(i + 1) * dB, j * dB:(j + 1) * dB]

    def to_dict(self) -> dict:
        return state_to_dict(self)


# ---------------------------------------------------------------------------
# Generic matrix helpers


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with the first factor's index major."""
    return np.kron(np.asarray(a), np.asarray(b))


def _bipartite_array(rho, dims: tuple[int, int] | None) -> tuple[np.ndarray, int, int]:
    if isinstance(rho, DensityMatrix):
        if dims is not None and tuple(dims) != rho.dims:
            raise ValueError(f"declared dims {tuple(dims)} disagree with state dims {rho.dims}")
        return rho.matrix, rho.dA, rho.dB
    if dims is None:
        raise ValueError("dims=(dA, dB) is required for a bare array")
    dA, dB = dims
    arr = np.asarray(rho)
    if arr.shape != (dA * dB, dA * dB):
        raise ValueError(f"matrix shape {arr.shape} does not match dims ({dA}, {dB})")
    return arr, dA, dB


def partial_trace(rho, subsystem: Subsystem = "B", dims: tuple[int, int] | None = None) -> np.ndarray:
    """Trace out one party of a bipartite operator.

    Parameters
    ----------
    rho : DensityMatrix or ndarray
        The bipartite operator. Bare arrays need ``dims``.
    subsystem : {"A", "B"}
        The party to trace *over*. ``"B"`` returns ``rho_A``.
    dims : tuple of int, optional
        ``(dA, dB)`` for array input.

    Returns
    -------
    ndarray
        ``dA x dA`` when tracing over B, ``dB x dB`` when tracing over A.
    """
    arr, dA, dB = _bipartite_array(rho, dims)
    t = arr.reshape(dA, dB, dA, dB)
    if subsystem == "B":
        return np.einsum("ijkj->ik", t)
    if subsystem == "A":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def reduced_states(rho, dims: tuple[int, int] | None = None) -> tuple[np.ndarray, np.ndarray]:
    return partial_trace(rho, "B", dims), partial_trace(rho, "A", dims)


def flip_operator(d: int) -> np.ndarray:
    """The swap ``F|i>|j> = |j>|i>`` on ``C^d (x) C^d`` as a real permutation matrix."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    f = np.zeros((d * d, d * d))
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    f[(j * d + i).ravel(), (i * d + j).ravel()] = 1.0
    return f


def _bell_projector() -> np.ndarray:
    phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return np.outer(phi, phi.conj())


def _check_range(name: str, value: float, lo: float, hi: float) -> float:
    value = float(value)
    if not (lo <= value <= hi):
        raise ValueError(f"{name}={value} outside [{lo}, {hi}]")
    return value


# ---------------------------------------------------------------------------
# Named families


def bell_noise_state(p: float) -> DensityMatrix:
    """``p |phi+><phi+| + (1 - p) I/4`` on two qubits, ``0 <= p <= 1``."""
    p = _check_range("p", p, 0.0, 1.0)
    mat = p * _bell_projector() + (1 - p) / 4 * np.eye(4)
    return DensityMatrix(mat, 2, 2, trusted=True)


def isotropic_b_state(b: float) -> DensityMatrix:
    """``(1-b)/3 I + (4b-1)/3 |phi+><phi+|`` on two qubits; Bell fidelity equals ``b``."""
    b = _check_range("b", b, 0.0, 1.0)
    mat = (1 - b) / 3 * np.eye(4) + (4 * b - 1) / 3 * _bell_projector()
    return DensityMatrix(mat, 2, 2, trusted=True)


def werner_state(d: int, p: float) -> DensityMatrix:
    """Werner state ``[(d - p) I + (d p - 1) F] / (d^3 - d)``, separable iff ``p >= 0``."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    p = _check_range("p", p, -1.0, 1.0)
    mat = ((d - p) * np.eye(d * d) + (d * p - 1) * flip_operator(d)) / (d**3 - d)
    return DensityMatrix(mat.astype(complex), d, d, trusted=True)


def _random_unit_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_separable_state(dA: int, dB: int, terms: int, seed: int) -> DensityMatrix:
    """Convex mixture of ``terms`` random pure product states.

    Uses numpy's PCG64 generator seeded with ``seed``. Local vectors are
    normalized complex Gaussians (Haar distributed); the weights are a flat
    Dirichlet draw.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    mat = np.zeros((dA * dB, dA * dB), dtype=complex)
    for w in weights:
        v = np.kron(_random_unit_vector(rng, dA), _random_unit_vector(rng, dB))
        mat += w * np.outer(v, v.conj())
    mat = (mat + mat.conj().T) / 2
    return DensityMatrix(mat / np.trace(mat).real, dA, dB)


def random_density_matrix(dA: int, dB: int, seed: int) -> DensityMatrix:
    """``G G^dag / tr(G G^dag)`` for a complex Gaussian ``G`` (PCG64, ``seed``)."""
    rng = np.random.default_rng(seed)
    n = dA * dB
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    mat = g @ g.conj().T
    mat = (mat + mat.conj().T) / 2
    return DensityMatrix(mat / np.trace(mat).real, dA, dB)


FAMILY_RANGES = {
    "bell-noise": (0.0, 1.0),
    "werner": (-1.0, 1.0),
    "isotropic-b": (0.0, 1.0),
}


@dataclass(frozen=True)
class StateFamily:
    """A one-parameter family of states, e.g. ``StateFamily("werner", d=3)``.

    ``custom-file`` wraps a fixed state loaded from disk; its parameter is
    ignored.
    """

    tag: str
    d: int = 2
    path: str | None = None

    def __post_init__(self):
        if self.tag not in FAMILY_RANGES and self.tag != "custom-file":
            raise ValueError(f"unknown family {self.tag!r}; choose from "
                             f"{sorted(FAMILY_RANGES) + ['custom-file']}")
        if self.tag == "custom-file" and self.path is None:
            raise ValueError("custom-file family needs a path")
        if self.tag in ("bell-noise", "isotropic-b") and self.d != 2:
            raise ValueError(f"{self.tag} is a two-qubit family (d=2)")

    @property
    def parameter_range(self) -> tuple[float, float]:
        return FAMILY_RANGES.get(self.tag, (0.0, 0.0))

    def __call__(self, value: float = 0.0) -> DensityMatrix:
        if self.tag == "bell-noise":
            return bell_noise_state(value)
        if self.tag == "werner":
            return werner_state(self.d, value)
        if self.tag == "isotropic-b":
            return isotropic_b_state(value)
        return load_state(self.path)


# ---------------------------------------------------------------------------
# JSON state files


def state_to_dict(rho: DensityMatrix) -> dict:
    m = rho.matrix
    return {
        "dA": rho.dA,
        "dB": rho.dB,
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def state_from_dict(data: dict) -> DensityMatrix:
    try:
        dA, dB, rows = int(data["dA"]), int(data["dB"]), data["matrix"]
    except (KeyError, TypeError) as exc:
        raise InvalidStateError("shape", f"state file missing field: {exc}") from exc
    try:
        arr = np.array([[complex(re, im) for re, im in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise InvalidStateError("shape", "matrix must be rows of [re, im] pairs") from exc
    return DensityMatrix(arr, dA, dB)


def save_state(rho: DensityMatrix, path: str | os.PathLike) -> None:
    # json emits repr() floats, which round-trip exactly.
    with open(path, "w") as fh:
        json.dump(state_to_dict(rho), fh)
        fh.write("\n")


def load_state(path: str | os.PathLike) -> DensityMatrix:
    with open(path) as fh:
        data = json.load(fh)
    return state_from_dict(data)
