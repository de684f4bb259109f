"""Threshold search along one-parameter state families and parameter-grid sweeps."""

from __future__ import annotations

import csv
import io
import itertools
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .criteria import CriterionReport, evaluate
from .states import DensityMatrix, StateFamily

PRESCAN_POINTS = 32


class NoBracketError(ValueError):
    """The criterion verdict is the same at both ends of the search interval."""


class EvaluationError(RuntimeError):
    """A criterion produced a non-finite discriminant."""


class BracketWarning(UserWarning):
    """The pre-scan saw more than one verdict change inside the interval."""


def _as_family(family) -> StateFamily:
    if isinstance(family, StateFamily):
        return family
    return StateFamily(family)


def make_evaluator(family, criterion: str, params: dict | None = None):
    """Return ``value -> CriterionReport`` for ``criterion`` on ``family(value)``."""
    family = _as_family(family)
    params = dict(params or {})
    alpha = params.pop("alpha", 0.0)
    beta = params.pop("beta", 0.0)
    l = params.pop("l", 0)

    def run(value: float) -> CriterionReport:
        rep = evaluate(criterion, family(value), alpha, beta, l, **params)
        if not np.isfinite(rep.discriminant):
            raise EvaluationError(f"{criterion} gave discriminant {rep.discriminant} at {value}")
        return rep

    return run


@dataclass(frozen=True)
class ThresholdResult:
    family: str
    criterion: str
    lo: float
    hi: float
    threshold: float
    iterations: int
    discriminant: float
    verdict_lo: str
    verdict_hi: str
    params: dict = field(default_factory=dict)
    sign_changes: tuple[tuple[float, float], ...] = ()

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "criterion": self.criterion,
            "bracket": [self.lo, self.hi],
            "threshold": self.threshold,
            "iterations": self.iterations,
            "discriminant_at_threshold": self.discriminant,
            "verdict_lo": self.verdict_lo,
            "verdict_hi": self.verdict_hi,
            "params": self.params,
            "prescan_sign_changes": [list(b) for b in self.sign_changes],
        }


def prescan(run, lo: float, hi: float, n: int = PRESCAN_POINTS) -> list[tuple[float, float]]:
    """Sub-intervals of an ``n``-point uniform grid on which the verdict flips."""
    xs = np.linspace(lo, hi, n)
    flags = [run(float(x)).entangled for x in xs]
    return [(float(xs[i]), float(xs[i + 1])) for i in range(n - 1) if flags[i] != flags[i + 1]]


def bisect_threshold(family, criterion: str, params: dict | None = None,
                     lo: float | None = None, hi: float | None = None,
                     tol: float = 1e-6, max_iter: int = 200) -> ThresholdResult:
    """Locate the parameter value where ``criterion`` changes verdict.

    Bisection runs on the verdict only, so the discriminant just has to be
    continuous. A 32-point pre-scan over ``[lo, hi]`` (the family's full range
    when omitted) checks that the verdict flips exactly once; extra flips
    raise a :class:`BracketWarning` and the first flip is refined.

    Raises
    ------
    NoBracketError
        The verdict is the same everywhere on the pre-scan grid.
    EvaluationError
        The discriminant was NaN or infinite.
    """
    family = _as_family(family)
    run = make_evaluator(family, criterion, params)
    fam_lo, fam_hi = family.parameter_range
    lo = fam_lo if lo is None else float(lo)
    hi = fam_hi if hi is None else float(hi)
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")

    changes = prescan(run, lo, hi)
    if not changes:
        v = run(lo).verdict
        raise NoBracketError(f"{criterion} is {v} at both ends of [{lo}, {hi}] on family {family.tag}; "
                             "no threshold to bracket")
    if len(changes) > 1:
        warnings.warn(f"{criterion} verdict flips {len(changes)} times on [{lo}, {hi}]: {changes}; "
                      "refining the first", BracketWarning, stacklevel=2)
    a, b = changes[0]
    ent_a = run(a).entangled
    it = 0
    while b - a > tol and it < max_iter:
        mid = 0.5 * (a + b)
        if run(mid).entangled == ent_a:
            a = mid
        else:
            b = mid
        it += 1
    ra, rb = run(a), run(b)
    mid = 0.5 * (a + b)
    return ThresholdResult(
        family=family.tag, criterion=criterion, lo=a, hi=b, threshold=mid, iterations=it,
        discriminant=run(mid).discriminant, verdict_lo=ra.verdict, verdict_hi=rb.verdict,
        params=dict(params or {}), sign_changes=tuple(changes),
    )


# ---------------------------------------------------------------------------
# Sweeps

AXIS_NAMES = ("p", "alpha", "beta", "l")


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"axis name must be one of {AXIS_NAMES}, got {self.name!r}")
        if self.steps < 1:
            raise ValueError(f"axis {self.name} needs steps >= 1")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)) or self.stop < self.start:
            raise ValueError(f"axis {self.name} has invalid range [{self.start}, {self.stop}]")
        if self.steps == 1 and self.start != self.stop:
            raise ValueError(f"axis {self.name} with one step needs start == stop")

    def values(self) -> np.ndarray:
        v = np.linspace(self.start, self.stop, self.steps)
        if self.name == "l":
            iv = np.rint(v)
            if np.any(np.abs(v - iv) > 1e-12) or np.any(iv < 0):
                raise ValueError("l axis must land on non-negative integers")
            return iv.astype(int)
        return v


@dataclass(frozen=True)
class SweepGrid:
    axes: tuple[Axis, ...]
    criterion: str
    values: np.ndarray
    fixed: dict = field(default_factory=dict)

    @property
    def coords(self) -> list[np.ndarray]:
        return [ax.values() for ax in self.axes]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([ax.name for ax in self.axes] + ["discriminant"])
        coords = self.coords
        for idx in np.ndindex(*self.values.shape):
            row = [coords[i][j] for i, j in enumerate(idx)]
            w.writerow([_fmt(x) for x in row] + [_fmt(self.values[idx])])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "axes": [{"name": a.name, "start": a.start, "stop": a.stop, "steps": a.steps} for a in self.axes],
            "fixed": self.fixed,
            "values": self.values.tolist(),
        }


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _resolve_beta(point: dict, beta_rule) -> float:
    if beta_rule == "independent":
        return point["beta"]
    if beta_rule == "equal":
        return point["alpha"]
    return float(beta_rule) * point["alpha"]


def sweep(target, axes, criterion: str = "theorem1", beta_rule="independent",
          alpha: float = 0.0, beta: float = 0.0, l: int = 0, p: float | None = None,
          max_workers: int | None = None, **options) -> SweepGrid:
    """Evaluate ``criterion`` on every point of a rectangular grid.

    Parameters
    ----------
    target : StateFamily, str or DensityMatrix
        A family (swept over ``p``) or one fixed state.
    axes : sequence of Axis
        Swept parameters; values are stored row-major in declaration order.
    beta_rule : "independent", "equal" or float
        ``beta`` comes from its own axis/fixed value, equals ``alpha``, or is
        ``beta_rule * alpha``.
    alpha, beta, l, p : fixed values for parameters without an axis.
    max_workers : int, optional
        Evaluate grid points on a thread pool; results land in fixed slots.
    """
    axes = tuple(axes)
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate axis in {names}")
    if beta_rule != "independent" and "beta" in names:
        raise ValueError("a beta axis requires beta_rule='independent'")
    fixed_state = target if isinstance(target, DensityMatrix) else None
    family = None if fixed_state is not None else _as_family(target)
    if fixed_state is not None and "p" in names:
        raise ValueError("cannot sweep p on a fixed state")
    if family is not None and family.tag != "custom-file" and "p" not in names and p is None:
        raise ValueError("family sweeps need a p axis or a fixed p")

    base = {"alpha": alpha, "beta": beta, "l": l, "p": p}
    coords = [ax.values() for ax in axes]
    points = []
    for combo in itertools.product(*coords):
        pt = dict(base)
        pt.update(zip(names, combo))
        pt["beta"] = _resolve_beta(pt, beta_rule)
        points.append(pt)

    def run(pt: dict) -> float:
        rho = fixed_state if fixed_state is not None else family(pt["p"])
        d = evaluate(criterion, rho, pt["alpha"], pt["beta"], int(pt["l"]), **options).discriminant
        if not np.isfinite(d):
            raise EvaluationError(f"{criterion} gave discriminant {d} at {pt}")
        return d

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as ex:
            out = list(ex.map(run, points))
    else:
        out = [run(pt) for pt in points]
    shape = tuple(len(c) for c in coords)
    fixed = {k: v for k, v in base.items() if k not in names and v is not None}
    fixed["beta_rule"] = beta_rule if isinstance(beta_rule, str) else float(beta_rule)
    return SweepGrid(axes, criterion, np.array(out, dtype=float).reshape(shape), fixed)
