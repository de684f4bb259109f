"""Separability criteria based on realignment and its moments.

Every criterion returns a :class:`CriterionReport` whose ``discriminant`` is
positive when the state is certified entangled. Verdicts use a relative
tolerance: ``Entangled`` iff ``discriminant > 1e-9 * max(1, scale)``, where
``scale`` is the criterion's bound (or largest Hankel entry for theorem2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .moments import (
    PSD_TOL,
    default_hankel_orders,
    hankel_report,
    moments,
    singular_values,
)
from .realignment import (
    BorderedRealignment,
    bordered_realignment,
    partial_transpose,
    realign,
    separable_bound,
    vectorize,
)
from .states import DensityMatrix, reduced_states

ENTANGLED = "Entangled"
INCONCLUSIVE = "Inconclusive"
VERDICT_TOL = 1e-9


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    verdict: str
    discriminant: float
    params: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def entangled(self) -> bool:
        return self.verdict == ENTANGLED

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "verdict": self.verdict,
            "discriminant": self.discriminant,
            "params": self.params,
            "diagnostics": self.diagnostics,
        }


def _report(name: str, discriminant: float, scale: float, params: dict, diagnostics: dict) -> CriterionReport:
    tol = VERDICT_TOL * max(1.0, scale)
    verdict = ENTANGLED if discriminant > tol else INCONCLUSIVE
    diagnostics = {**diagnostics, "tolerance": tol}
    return CriterionReport(name, verdict, float(discriminant), params, diagnostics)


class _Spectra:
    """Per-state memo of bordered matrices and their singular values."""

    def __init__(self, rho: DensityMatrix):
        self.rho = rho
        self._cache: dict[tuple, tuple[BorderedRealignment, np.ndarray]] = {}

    def get(self, alpha: float, beta: float, l: int) -> tuple[BorderedRealignment, np.ndarray]:
        if l == 0:
            alpha = beta = 0.0
        key = (float(alpha), float(beta), int(l))
        if key not in self._cache:
            b = bordered_realignment(self.rho, alpha, beta, l)
            self._cache[key] = (b, singular_values(b.matrix))
        return self._cache[key]


def _floats(x) -> list[float]:
    return [float(v) for v in x]


# ---------------------------------------------------------------------------
# Baselines


def _ccnr(sp: _Spectra) -> CriterionReport:
    s = singular_values(realign(sp.rho))
    norm = float(s.sum())
    return _report("ccnr", norm - 1.0, 1.0, {}, {"trace_norm": norm, "singular_values": _floats(s)})


def _zhang_corrected(sp: _Spectra) -> CriterionReport:
    rho = sp.rho
    rho_a, rho_b = reduced_states(rho)
    diff = rho.matrix - np.kron(rho_a, rho_b)
    lhs = float(singular_values(realign(diff, rho.dims)).sum())
    pur_a = float(np.real(np.trace(rho_a @ rho_a)))
    pur_b = float(np.real(np.trace(rho_b @ rho_b)))
    rhs = float(np.sqrt(max(0.0, 1 - pur_a)) * np.sqrt(max(0.0, 1 - pur_b)))
    return _report("zhang_corrected", lhs - rhs, rhs, {},
                   {"lhs": lhs, "rhs": rhs, "purity_A": pur_a, "purity_B": pur_b})


def _shi_bound(sp: _Spectra, alpha: float, beta: float) -> CriterionReport:
    # built directly from the scalar-border form, independent of bordered_realignment
    rho = sp.rho
    rho_a, rho_b = reduced_states(rho)
    m = np.block([
        [np.array([[alpha * beta]]), alpha * vectorize(rho_b)[None, :]],
        [beta * vectorize(rho_a)[:, None], realign(rho)],
    ])
    norm = float(singular_values(m).sum())
    bound = float(np.sqrt((alpha**2 + 1) * (beta**2 + 1)))
    return _report("shi_bound", norm - bound, bound, {"alpha": alpha, "beta": beta},
                   {"trace_norm": norm, "bound": bound})


def _sun_bound(sp: _Spectra, alpha: float, beta: float, l: int) -> CriterionReport:
    _, s = sp.get(alpha, beta, l)
    a1 = float(s.sum())
    bound = separable_bound(alpha, beta, l)
    return _report("sun_bound", a1 - bound, bound, {"alpha": alpha, "beta": beta, "l": l},
                   {"trace_norm": a1, "bound": bound})


def _ppt(sp: _Spectra) -> CriterionReport:
    pt = partial_transpose(sp.rho)
    lam = np.linalg.eigvalsh((pt + pt.conj().T) / 2)
    return _report("ppt", -float(lam[0]), 1.0, {}, {"min_eigenvalue": float(lam[0]),
                                                     "eigenvalues": _floats(lam)})


# ---------------------------------------------------------------------------
# Moment criteria


def _theorem1(sp: _Spectra, alpha: float, beta: float, l: int) -> CriterionReport:
    b, s = sp.get(alpha, beta, l)
    a = moments(b, K=3, s=s)
    bound = b.bound
    f = a[2] ** 2 - bound * a[3]
    return _report("theorem1", f, bound, {"alpha": alpha, "beta": beta, "l": l},
                   {"a1": a[1], "a2": a[2], "a3": a[3], "bound": bound,
                    "holder_gap": a[1] * a[3] - a[2] ** 2})


def _theorem2(sp: _Spectra, alpha: float, beta: float, l: int,
              max_order_H: int | None, max_order_B: int | None,
              include_H: bool, a0_convention: str) -> CriterionReport:
    rho = sp.rho
    def_h, def_b = default_hankel_orders(rho.dA, rho.dB, l)
    kH = def_h if max_order_H is None else max_order_H
    rB = def_b if max_order_B is None else max_order_B
    if kH < 0 or rB < 0:
        raise ValueError("Hankel orders must be >= 0")
    if rB == 0 and not (include_H and kH > 0):
        raise ValueError("theorem2 needs at least one Hankel matrix to test")
    b, s = sp.get(alpha, beta, l)
    a = moments(b, K=max(2 * kH, 2 * rB + 1, 1), a0_convention=a0_convention, s=s)
    rep = hankel_report(a, b.bound, kH, rB)

    checked = [(f"B{r}", rep.matrices_B[r], rep.min_eig_B[r]) for r in sorted(rep.matrices_B)]
    if include_H:
        checked += [(f"H{k}", rep.matrices_H[k], rep.min_eig_H[k]) for k in sorted(rep.matrices_H)]
    scale = max(float(np.max(np.abs(m))) for _, m, _ in checked)
    worst = min(lam for _, _, lam in checked)
    tol = PSD_TOL * max(1.0, scale)
    fired = [name for name, _, lam in checked if lam < -tol]
    diagnostics = {
        "moments": _floats(a.values),
        "bound": b.bound,
        "min_eig_B": {str(r): v for r, v in rep.min_eig_B.items()},
        "min_eig_H": {str(k): v for k, v in rep.min_eig_H.items()},
        "fired": fired,
        "first_fired": fired[0] if fired else None,
    }
    params = {"alpha": alpha, "beta": beta, "l": l, "max_order_H": kH, "max_order_B": rB,
              "include_H": include_H, "a0_convention": a0_convention}
    return _report("theorem2", -worst, scale, params, diagnostics)


# ---------------------------------------------------------------------------
# Public API


def ccnr(rho: DensityMatrix) -> CriterionReport:
    """Realignment criterion: entangled if ``||R(rho)||_tr > 1``."""
    return _ccnr(_Spectra(rho))


def zhang_corrected(rho: DensityMatrix) -> CriterionReport:
    """Realignment of ``rho - rho_A (x) rho_B`` against ``sqrt(1 - tr rho_A^2) sqrt(1 - tr rho_B^2)``."""
    return _zhang_corrected(_Spectra(rho))


def shi_bound(rho: DensityMatrix, alpha: float, beta: float) -> CriterionReport:
    """Trace norm of the single-bordered realignment against ``sqrt((a^2 + 1)(b^2 + 1))``."""
    return _shi_bound(_Spectra(rho), alpha, beta)


def sun_bound(rho: DensityMatrix, alpha: float, beta: float, l: int) -> CriterionReport:
    """Trace norm of ``M^l_{alpha,beta}`` against ``sqrt((l a^2 + 1)(l b^2 + 1))``."""
    return _sun_bound(_Spectra(rho), alpha, beta, l)


def ppt(rho: DensityMatrix) -> CriterionReport:
    """Positive partial transpose; the discriminant is minus the smallest PT eigenvalue."""
    return _ppt(_Spectra(rho))


def theorem1(rho: DensityMatrix, alpha: float, beta: float, l: int) -> CriterionReport:
    """Three-moment test ``f = a_2^2 - sqrt((l a^2 + 1)(l b^2 + 1)) a_3``.

    For every state ``a_2^2 <= a_1 a_3`` (Hölder), and separable states have
    ``a_1`` below the bound, so ``f > 0`` certifies entanglement.
    """
    return _theorem1(_Spectra(rho), alpha, beta, l)


def theorem2(rho: DensityMatrix, alpha: float, beta: float, l: int,
             max_order_H: int | None = None, max_order_B: int | None = None,
             include_H: bool = False, a0_convention: str = "paper") -> CriterionReport:
    """Hankel positivity test with ``a_1`` replaced by the separable bound.

    The verdict is driven by the ``B^_r`` matrices, where ``a_1`` only enters
    on the diagonal so raising it to the bound keeps separable states PSD.
    In ``H^_k`` the substituted entry sits off the diagonal and the check can
    fire on separable states (the maximally mixed two-qubit state already
    does for ``l=1, alpha=1/8``); those minimum eigenvalues are always
    reported but only vote when ``include_H=True``.

    Parameters
    ----------
    max_order_H, max_order_B : int, optional
        Largest ``k`` and ``r``; default from :func:`default_hankel_orders`.
    include_H : bool
        Let ``H^_k`` failures count toward the verdict.
    a0_convention : {"paper", "matrix-dimension"}
        Value used for ``a_0`` (only enters ``H_k``).
    """
    return _theorem2(_Spectra(rho), alpha, beta, l, max_order_H, max_order_B, include_H, a0_convention)


CRITERIA = ("ccnr", "ppt", "zhang_corrected", "shi_bound", "sun_bound", "theorem1", "theorem2")


def _dispatch(name: str, sp: _Spectra, alpha: float, beta: float, l: int, **options) -> CriterionReport:
    if name == "ccnr":
        return _ccnr(sp)
    if name == "ppt":
        return _ppt(sp)
    if name == "zhang_corrected":
        return _zhang_corrected(sp)
    if name == "shi_bound":
        return _shi_bound(sp, alpha, beta)
    if name == "sun_bound":
        return _sun_bound(sp, alpha, beta, l)
    if name == "theorem1":
        return _theorem1(sp, alpha, beta, l)
    if name == "theorem2":
        return _theorem2(sp, alpha, beta, l, options.get("max_order_H"), options.get("max_order_B"),
                         options.get("include_H", False), options.get("a0_convention", "paper"))
    raise ValueError(f"unknown criterion {name!r}; choose from {CRITERIA}")


def evaluate(name: str, rho: DensityMatrix, alpha: float = 0.0, beta: float = 0.0, l: int = 0,
             **options) -> CriterionReport:
    """Run one criterion by name with a uniform ``(alpha, beta, l)`` signature."""
    return _dispatch(name, _Spectra(rho), alpha, beta, l, **options)


def run_all(rho: DensityMatrix, alpha: float = 1 / 729, beta: float = 1 / 729, l: int = 1,
            criteria=CRITERIA, **options) -> list[CriterionReport]:
    """Evaluate several criteria, sharing one SVD per distinct bordered matrix.

    Reports come back in the order of ``criteria``.
    """
    sp = _Spectra(rho)
    return [_dispatch(name, sp, alpha, beta, l, **options) for name in criteria]
