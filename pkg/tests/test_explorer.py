import warnings

import numpy as np
import pytest

from realignment_moments import bell_noise_state, evaluate, isotropic_b_state, werner_state
from realignment_moments.explorer import (
    Axis,
    BracketWarning,
    EvaluationError,
    NoBracketError,
    bisect_threshold,
    make_evaluator,
    prescan,
    sweep,
)
from realignment_moments.states import StateFamily

SMALL = 1 / 729


class TestBisect:
    def test_ccnr_bell_noise(self):
        res = bisect_threshold("bell-noise", "ccnr", tol=1e-7)
        assert res.threshold == pytest.approx(1 / 3, abs=1e-6)
        assert res.hi - res.lo <= 1e-7
        assert res.verdict_lo != res.verdict_hi
        assert len(res.sign_changes) == 1

    def test_ppt_isotropic(self):
        assert bisect_threshold("isotropic-b", "ppt", tol=1e-7).threshold == pytest.approx(0.5, abs=1e-6)

    def test_ppt_werner(self):
        res = bisect_threshold(StateFamily("werner", d=2), "ppt", tol=1e-8)
        assert res.threshold == pytest.approx(0.0, abs=1e-6)
        assert res.verdict_lo == "Entangled" and res.verdict_hi == "Inconclusive"

    def test_theorem1_bell_noise(self):
        res = bisect_threshold("bell-noise", "theorem1", {"alpha": SMALL, "beta": SMALL, "l": 1})
        assert res.threshold == pytest.approx(0.4427, abs=5e-3)
        assert res.params == {"alpha": SMALL, "beta": SMALL, "l": 1}

    def test_discriminant_near_zero(self):
        res = bisect_threshold("bell-noise", "ccnr", tol=1e-9)
        assert abs(res.discriminant) < 1e-8

    def test_deterministic(self):
        a = bisect_threshold("bell-noise", "theorem1", {"alpha": 0.1, "beta": 0.1, "l": 1})
        b = bisect_threshold("bell-noise", "theorem1", {"alpha": 0.1, "beta": 0.1, "l": 1})
        assert a == b

    def test_no_bracket(self):
        with pytest.raises(NoBracketError):
            bisect_threshold("bell-noise", "ccnr", lo=0.0, hi=0.3)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            bisect_threshold("bell-noise", "ccnr", lo=0.5, hi=0.5)

    def test_multiple_flips_warn(self, monkeypatch):
        # Entangled on (0.2, 0.4) and above 0.7: three verdict flips
        from realignment_moments import explorer

        class Fake:
            def __init__(self, v):
                self.entangled = (0.2 < v < 0.4) or v > 0.7
                self.verdict = "Entangled" if self.entangled else "Inconclusive"
                self.discriminant = 1.0 if self.entangled else -1.0

        monkeypatch.setattr(explorer, "make_evaluator", lambda *a, **k: Fake)
        with pytest.warns(BracketWarning):
            res = bisect_threshold("bell-noise", "ccnr", tol=1e-8)
        assert res.threshold == pytest.approx(0.2, abs=1e-7)
        assert len(res.sign_changes) == 3

    def test_nonfinite(self, monkeypatch):
        from realignment_moments import explorer

        class Bad:
            discriminant = float("nan")

        monkeypatch.setattr(explorer, "evaluate", lambda *a, **k: Bad)
        with pytest.raises(EvaluationError):
            make_evaluator("bell-noise", "ccnr")(0.5)

    def test_to_dict(self):
        d = bisect_threshold("bell-noise", "ccnr").to_dict()
        assert d["bracket"][0] < d["threshold"] < d["bracket"][1]
        assert d["family"] == "bell-noise"


class TestPrescan:
    def test_single_flip(self):
        run = make_evaluator("bell-noise", "ccnr")
        changes = prescan(run, 0.0, 1.0)
        assert len(changes) == 1
        lo, hi = changes[0]
        assert lo < 1 / 3 < hi


class TestAxis:
    def test_values(self):
        np.testing.assert_allclose(Axis("p", 0, 1, 5).values(), [0, 0.25, 0.5, 0.75, 1])

    def test_l_integer(self):
        np.testing.assert_array_equal(Axis("l", 0, 4, 5).values(), [0, 1, 2, 3, 4])
        with pytest.raises(ValueError):
            Axis("l", 0, 1, 3).values()

    @pytest.mark.parametrize("args", [("gamma", 0, 1, 3), ("p", 1, 0, 3), ("p", 0, 1, 0),
                                      ("p", 0, float("nan"), 3), ("alpha", 0, 1, 1)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            Axis(*args)


class TestSweep:
    def test_shape_and_order(self):
        axes = [Axis("p", 0, 1, 4), Axis("alpha", 0.1, 0.3, 3)]
        g = sweep("bell-noise", axes, "theorem1", beta_rule="equal", l=1)
        assert g.values.shape == (4, 3)
        assert np.all(np.isfinite(g.values))
        # row-major: second axis varies fastest
        direct = evaluate("theorem1", bell_noise_state(2 / 3), 0.2, 0.2, 1).discriminant
        assert g.values[2, 1] == direct

    def test_single_point(self):
        g = sweep("werner", [Axis("p", -0.5, -0.5, 1)], "theorem1", alpha=SMALL, beta=3 * SMALL, l=3)
        assert g.values.shape == (1,)
        assert g.values[0] == evaluate("theorem1", werner_state(2, -0.5), SMALL, 3 * SMALL, 3).discriminant

    def test_beta_rules(self):
        ax = [Axis("alpha", 0.1, 0.2, 2)]
        rho = isotropic_b_state(0.7)
        eq = sweep(rho, ax, "sun_bound", beta_rule="equal", l=2)
        scaled = sweep(rho, ax, "sun_bound", beta_rule=3.0, l=2)
        indep = sweep(rho, ax, "sun_bound", beta=0.05, l=2)
        for i, a in enumerate([0.1, 0.2]):
            assert eq.values[i] == evaluate("sun_bound", rho, a, a, 2).discriminant
            assert scaled.values[i] == pytest.approx(evaluate("sun_bound", rho, a, 3 * a, 2).discriminant,
                                                     abs=1e-15)
            assert indep.values[i] == evaluate("sun_bound", rho, a, 0.05, 2).discriminant

    def test_workers_identical(self):
        axes = [Axis("p", 0, 1, 7), Axis("alpha", 0.01, 0.5, 5)]
        serial = sweep("bell-noise", axes, "theorem2", beta_rule="equal", l=1)
        parallel = sweep("bell-noise", axes, "theorem2", beta_rule="equal", l=1, max_workers=4)
        np.testing.assert_array_equal(serial.values, parallel.values)

    def test_l_axis(self):
        g = sweep("bell-noise", [Axis("l", 0, 3, 4)], "sun_bound", p=0.5, alpha=0.2, beta=0.2)
        assert g.values[0] == evaluate("ccnr", bell_noise_state(0.5)).discriminant

    def test_csv(self):
        g = sweep("bell-noise", [Axis("p", 0, 1, 3), Axis("alpha", 0.1, 0.2, 2)], "theorem1",
                  beta_rule="equal", l=1)
        lines = g.to_csv().strip().split("\n")
        assert lines[0] == "p,alpha,discriminant"
        assert len(lines) == 1 + 6
        p, a, d = map(float, lines[2].split(","))
        assert (p, a) == (0.0, 0.2) and d == g.values[0, 1]

    def test_errors(self):
        with pytest.raises(ValueError):
            sweep("bell-noise", [Axis("alpha", 0, 1, 2)])
        with pytest.raises(ValueError):
            sweep(bell_noise_state(0.5), [Axis("p", 0, 1, 2)])
        with pytest.raises(ValueError):
            sweep("bell-noise", [Axis("p", 0, 1, 2), Axis("p", 0, 1, 2)])
        with pytest.raises(ValueError):
            sweep("bell-noise", [Axis("p", 0, 1, 2), Axis("beta", 0, 1, 2)], beta_rule="equal")

    def test_fig1_monotone_in_p(self):
        axes = [Axis("alpha", 0.05, 0.5, 4), Axis("p", 0, 1, 21)]
        g = sweep("bell-noise", axes, "theorem1", beta_rule="equal", l=1)
        assert np.all(np.diff(g.values, axis=1) >= -1e-12)

    def test_to_dict(self):
        d = sweep("bell-noise", [Axis("p", 0, 1, 2)], "ccnr").to_dict()
        assert d["criterion"] == "ccnr" and len(d["values"]) == 2
