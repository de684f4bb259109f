"""Pinned parameter sets for the three worked examples and their companion checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .explorer import bisect_threshold
from .realignment import bordered_realignment
from .moments import singular_values
from .states import werner_state

ALPHA_SMALL = 1 / 729
BETA_EX3 = 1 / (16 * math.sqrt(2))


@dataclass(frozen=True)
class ExampleSpec:
    number: int
    family: str
    criterion: str
    params: dict
    published: float
    target: float
    tolerance: float
    lo: float | None = None
    hi: float | None = None
    description: str = ""


EXAMPLES = {
    1: ExampleSpec(1, "bell-noise", "theorem1", {"alpha": ALPHA_SMALL, "beta": ALPHA_SMALL, "l": 1},
                   published=0.44, target=0.4427, tolerance=0.005,
                   description="Bell state mixed with white noise; entangled for p above the threshold"),
    2: ExampleSpec(2, "werner", "theorem1", {"alpha": ALPHA_SMALL, "beta": 3 * ALPHA_SMALL, "l": 3},
                   published=-0.163744, target=-0.163744, tolerance=0.005,
                   description="two-qubit Werner state; entangled for p below the threshold"),
    3: ExampleSpec(3, "isotropic-b", "theorem2", {"alpha": 1 / 8, "beta": BETA_EX3, "l": 1},
                   published=0.501550, target=0.501550, tolerance=0.002,
                   description="two-qubit isotropic state; entangled for b above the threshold"),
}

# companion checks: (criterion, family, params, exact threshold, tolerance)
COMPANIONS = {
    1: [("ccnr", "bell-noise", {}, 1 / 3, 1e-6)],
    2: [("ppt", "werner", {}, 0.0, 1e-6)],
    3: [("ppt", "isotropic-b", {}, 0.5, 1e-6)],
}

WERNER_SV_POINTS = (-1.0, -0.5, 0.3)


@dataclass
class ExampleReport:
    number: int
    threshold: float
    published: float
    target: float
    tolerance: float
    passed: bool
    threshold_result: dict
    companions: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "example": self.number,
            "threshold": self.threshold,
            "published": self.published,
            "target": self.target,
            "tolerance": self.tolerance,
            "status": "PASS" if self.passed else "FAIL",
            "threshold_result": self.threshold_result,
            "companions": self.companions,
            "extra": self.extra,
        }


def werner_equal_singular_values(p: float, alpha: float = ALPHA_SMALL, l: int = 1,
                                 tol: float = 1e-9) -> tuple[int, np.ndarray]:
    """Count singular values of the bordered Werner matrix equal to ``|2p - 1| / 6``."""
    s = singular_values(bordered_realignment(werner_state(2, p), alpha, alpha, l).matrix)
    return int(np.sum(np.abs(s - abs(2 * p - 1) / 6) <= tol)), s


def reproduce(number: int, tol: float = 1e-7) -> ExampleReport:
    spec = EXAMPLES[number]
    res = bisect_threshold(spec.family, spec.criterion, spec.params, spec.lo, spec.hi, tol=tol)
    passed = abs(res.threshold - spec.target) <= spec.tolerance
    companions = []
    for crit, fam, params, exact, ctol in COMPANIONS[number]:
        r = bisect_threshold(fam, crit, params, tol=ctol / 10)
        ok = abs(r.threshold - exact) <= ctol
        companions.append({"criterion": crit, "family": fam, "threshold": r.threshold,
                           "expected": exact, "tolerance": ctol, "status": "PASS" if ok else "FAIL"})
        passed = passed and ok
    extra = {}
    if number == 2:
        counts = {}
        for p in WERNER_SV_POINTS:
            n, s = werner_equal_singular_values(p)
            counts[str(p)] = {"equal_count": n, "singular_values": [float(x) for x in s]}
            passed = passed and n >= 3
        extra["werner_singular_values"] = counts
    return ExampleReport(number, res.threshold, spec.published, spec.target, spec.tolerance,
                         passed, res.to_dict(), companions, extra)
