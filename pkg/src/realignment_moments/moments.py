"""Singular values, Schatten norms, realignment moments and Hankel moment matrices."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .realignment import BorderedRealignment

A0Convention = Literal["paper", "matrix-dimension"]

PSD_TOL = 1e-9
SYMMETRY_TOL = 1e-12


def singular_values(m) -> np.ndarray:
    """All ``min(rows, cols)`` singular values in descending order."""
    m = np.asarray(m)
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def schatten_norm(m, p: float = 1.0, s: np.ndarray | None = None) -> float:
    """``(sum_i s_i**p)**(1/p)``; ``p = 1`` is the trace norm.

    ``s`` may carry precomputed singular values of ``m``.
    """
    if p < 1:
        raise ValueError(f"Schatten norm needs p >= 1, got {p}")
    if s is None:
        s = singular_values(m)
    if np.isinf(p):
        return float(s.max(initial=0.0))
    return float(np.sum(s**p) ** (1.0 / p))


def trace_norm(m) -> float:
    return schatten_norm(m, 1.0)


def paper_a0(dA: int, dB: int) -> int:
    return (dA * dA - 1) * (dB * dB - 1)


def default_hankel_orders(dA: int, dB: int, l: int) -> tuple[int, int]:
    """Largest ``(k, r)`` for the ``H_k`` and ``B_r`` families used by default.

    This is the larger of the ``d_A d_B`` based range and the same range taken
    over the number of singular values of the bordered matrix,
    ``n = min(l + dA^2, l + dB^2)``.
    """
    n = min(l + dA * dA, l + dB * dB)
    dim = dA * dB
    return max(dim // 2, n // 2), max((dim - 1) // 2, (n - 1) // 2)


def default_moment_count(dA: int, dB: int, l: int) -> int:
    k, r = default_hankel_orders(dA, dB, l)
    return max(2 * k, 2 * r + 1)


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``a_0 ... a_K`` of a bordered realignment matrix.

    ``a_k = sum_i s_i**k`` for ``k >= 1``. ``a_0`` follows ``a0_convention``:
    ``"paper"`` uses ``(dA^2 - 1)(dB^2 - 1)``, ``"matrix-dimension"`` uses
    ``l + dA^2``, the trace of the identity on the row space.
    """

    values: np.ndarray
    alpha: float
    beta: float
    l: int
    dA: int
    dB: int
    a0_convention: A0Convention = "paper"
    singular_values: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __getitem__(self, k: int) -> float:
        return float(self.values[k])

    def __len__(self) -> int:
        return len(self.values)

    @property
    def K(self) -> int:
        return len(self.values) - 1

    @property
    def beyond_paper_range(self) -> bool:
        """True when moments past ``(dA^2 - 1)(dB^2 - 1)`` were requested."""
        return self.K > paper_a0(self.dA, self.dB)

    @property
    def bound(self) -> float:
        return float(np.sqrt((self.l * self.alpha**2 + 1) * (self.l * self.beta**2 + 1)))

    def with_a0(self, convention: A0Convention) -> "MomentSequence":
        vals = self.values.copy()
        vals[0] = _a0_value(convention, self.dA, self.dB, self.l)
        return MomentSequence(vals, self.alpha, self.beta, self.l, self.dA, self.dB,
                              convention, self.singular_values)

    def to_dict(self) -> dict:
        return {
            "moments": [float(v) for v in self.values],
            "params": {"alpha": self.alpha, "beta": self.beta, "l": self.l},
            "dims": [self.dA, self.dB],
            "a0_convention": self.a0_convention,
            "beyond_paper_range": self.beyond_paper_range,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "a_k"])
        for k, v in enumerate(self.values):
            w.writerow([k, format(float(v), ".17g")])
        return buf.getvalue()


def _a0_value(convention: str, dA: int, dB: int, l: int) -> float:
    if convention == "paper":
        return float(paper_a0(dA, dB))
    if convention == "matrix-dimension":
        return float(l + dA * dA)
    raise ValueError(f"unknown a0 convention {convention!r}")


def moments(bordered: BorderedRealignment, K: int | None = None,
            a0_convention: A0Convention = "paper",
            s: np.ndarray | None = None) -> MomentSequence:
    """Power sums of the singular values of ``bordered.matrix`` up to order ``K``.

    One SVD is taken (or ``s`` reused) and every order is computed from it.
    ``K`` defaults to what the largest default Hankel matrices need.
    """
    dA, dB, l = bordered.dA, bordered.dB, bordered.l
    if K is None:
        K = default_moment_count(dA, dB, l)
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if s is None:
        s = singular_values(bordered.matrix)
    powers = s[None, :] ** np.arange(1, K + 1)[:, None]
    vals = np.empty(K + 1)
    vals[0] = _a0_value(a0_convention, dA, dB, l)
    vals[1:] = powers.sum(axis=1)
    return MomentSequence(vals, bordered.alpha, bordered.beta, l, dA, dB, a0_convention, s)


def _moments_array(a) -> np.ndarray:
    return a.values if isinstance(a, MomentSequence) else np.asarray(a, dtype=float)


def hankel_H(a, k: int) -> np.ndarray:
    """``(k+1) x (k+1)`` matrix with entries ``a_{i+j}``."""
    vals = _moments_array(a)
    if k < 1 or 2 * k >= len(vals):
        raise ValueError(f"H_{k} needs moments through a_{2 * k}; have a_0..a_{len(vals) - 1}")
    idx = np.add.outer(np.arange(k + 1), np.arange(k + 1))
    return vals[idx]


def hankel_B(a, r: int) -> np.ndarray:
    """``(r+1) x (r+1)`` matrix with entries ``a_{m+n+1}``."""
    vals = _moments_array(a)
    if r < 1 or 2 * r + 1 >= len(vals):
        raise ValueError(f"B_{r} needs moments through a_{2 * r + 1}; have a_0..a_{len(vals) - 1}")
    idx = np.add.outer(np.arange(r + 1), np.arange(r + 1)) + 1
    return vals[idx]


def substitute_bound(matrix, bound: float, offset: int = 0) -> np.ndarray:
    """Replace every entry whose moment index is 1 with ``bound``.

    ``offset`` is the index shift of the Hankel family: 0 for ``H_k``
    (entry ``(i, j)`` holds ``a_{i+j}``), 1 for ``B_r``.
    """
    out = np.array(matrix, dtype=float)
    n = out.shape[0]
    idx = np.add.outer(np.arange(n), np.arange(n)) + offset
    out[idx == 1] = bound
    return out


def min_eigenvalue(s) -> float:
    s = np.asarray(s, dtype=float)
    scale = max(1.0, float(np.max(np.abs(s), initial=0.0)))
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {s.shape}")
    if np.max(np.abs(s - s.T), initial=0.0) > SYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric")
    return float(np.linalg.eigvalsh(s)[0])


def psd_tolerance(s) -> float:
    return PSD_TOL * max(1.0, float(np.max(np.abs(s), initial=0.0)))


def is_psd(s) -> bool:
    return min_eigenvalue(s) >= -psd_tolerance(s)


@dataclass(frozen=True)
class HankelReport:
    """Bound-substituted Hankel matrices keyed by order, with their minimum eigenvalues."""

    bound: float
    matrices_H: dict[int, np.ndarray]
    matrices_B: dict[int, np.ndarray]
    min_eig_H: dict[int, float]
    min_eig_B: dict[int, float]

    @property
    def max_order_H(self) -> int:
        return max(self.matrices_H, default=0)

    @property
    def max_order_B(self) -> int:
        return max(self.matrices_B, default=0)

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "H": {str(k): {"matrix": m.tolist(), "min_eig": self.min_eig_H[k]}
                  for k, m in self.matrices_H.items()},
            "B": {str(r): {"matrix": m.tolist(), "min_eig": self.min_eig_B[r]}
                  for r, m in self.matrices_B.items()},
        }


def hankel_report(a: MomentSequence, bound: float | None = None,
                  max_order_H: int | None = None, max_order_B: int | None = None) -> HankelReport:
    """Build ``H^_k`` for ``k = 1..max_order_H`` and ``B^_r`` for ``r = 1..max_order_B``.

    ``bound`` replaces ``a_1`` (defaults to the sequence's separable bound).
    Orders default to every matrix the available moments support.
    """
    if bound is None:
        bound = a.bound
    avail_H, avail_B = a.K // 2, (a.K - 1) // 2
    max_order_H = avail_H if max_order_H is None else max_order_H
    max_order_B = avail_B if max_order_B is None else max_order_B
    mh, mb, eh, eb = {}, {}, {}, {}
    for k in range(1, max_order_H + 1):
        mh[k] = substitute_bound(hankel_H(a, k), bound, 0)
        eh[k] = min_eigenvalue(mh[k])
    for r in range(1, max_order_B + 1):
        mb[r] = substitute_bound(hankel_B(a, r), bound, 1)
        eb[r] = min_eigenvalue(mb[r])
    return HankelReport(float(bound), mh, mb, eh, eb)
