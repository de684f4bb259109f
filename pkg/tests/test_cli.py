import json

import numpy as np
import pytest

from realignment_moments import bell_noise_state, load_state, werner_state
from realignment_moments.cli import main, number
from realignment_moments.reproduce import BETA_EX3


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestNumber:
    def test_forms(self):
        assert number("0.25") == 0.25
        assert number("1/729") == 1 / 729
        assert number("-3/4") == -0.75
        assert number("paper-ex3") == BETA_EX3

    def test_bad(self):
        with pytest.raises(Exception):
            number("abc")


class TestGen:
    def test_werner_roundtrip(self, tmp_path, capsys):
        path = tmp_path / "w.json"
        code, _, _ = run(capsys, "gen", "--family", "werner", "--d", "2", "--p", "-0.5", "--out", str(path))
        assert code == 0
        rho = load_state(path)
        assert rho.matrix.shape == (4, 4)
        np.testing.assert_allclose(rho.matrix, werner_state(2, -0.5).matrix, atol=1e-15, rtol=0)

    def test_bell_projector(self, tmp_path, capsys, bell):
        path = tmp_path / "b.json"
        assert run(capsys, "gen", "--family", "bell-noise", "--p", "1", "--out", str(path))[0] == 0
        np.testing.assert_array_equal(load_state(path).matrix, bell_noise_state(1).matrix)
        np.testing.assert_allclose(load_state(path).matrix, bell, atol=1e-15)

    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "gen", "--family", "random", "--dA", "2", "--dB", "3", "--seed", "5")
        d = json.loads(out)
        assert code == 0 and (d["dA"], d["dB"]) == (2, 3) and len(d["matrix"]) == 6

    def test_random_separable_file(self, tmp_path, capsys):
        path = tmp_path / "s.json"
        assert run(capsys, "gen", "--family", "random-separable", "--dA", "3", "--dB", "3",
                   "--terms", "5", "--seed", "1", "--out", str(path))[0] == 0
        assert load_state(path).dims == (3, 3)

    def test_missing_p(self, capsys):
        code, _, err = run(capsys, "gen", "--family", "werner")
        assert code != 0 and "--p" in err

    def test_out_of_range(self, capsys):
        code, _, err = run(capsys, "gen", "--family", "bell-noise", "--p", "2")
        assert code != 0 and err.startswith("error:")


class TestDetect:
    def test_bell_noise_all(self, capsys):
        code, out, _ = run(capsys, "detect", "--family", "bell-noise", "--p", "0.6", "--criterion", "all")
        assert code == 0
        reps = {r["criterion"]: r for r in json.loads(out)}
        assert reps["ccnr"]["verdict"] == "Entangled" and reps["ppt"]["verdict"] == "Entangled"
        assert set(reps["ccnr"]) == {"criterion", "verdict", "discriminant", "params", "diagnostics"}

    def test_werner_separable(self, capsys):
        code, out, _ = run(capsys, "detect", "--family", "werner", "--p", "0.5")
        assert code == 0
        assert all(r["verdict"] == "Inconclusive" for r in json.loads(out))

    def test_single_criterion_from_file(self, tmp_path, capsys):
        path = tmp_path / "s.json"
        run(capsys, "gen", "--family", "isotropic-b", "--p", "0.6", "--out", str(path))
        code, out, _ = run(capsys, "detect", "--state", str(path), "--criterion", "theorem2",
                           "--alpha", "1/8", "--beta", "paper-ex3")
        reps = json.loads(out)
        assert code == 0 and len(reps) == 1 and reps[0]["verdict"] == "Entangled"
        assert reps[0]["params"]["beta"] == BETA_EX3

    @pytest.mark.parametrize("field,value,invariant", [
        ("trace", 2.0, "trace"),
        ("herm", None, "hermiticity"),
        ("psd", None, "psd"),
    ])
    def test_invalid_state(self, tmp_path, capsys, field, value, invariant):
        m = np.eye(4) / 4
        if field == "trace":
            m = m * value
        elif field == "herm":
            m = m.astype(complex)
            m[0, 1] = 0.1
        else:
            m = np.diag([0.6, 0.5, 0.1, -0.2])
        doc = {"dA": 2, "dB": 2, "matrix": [[[z.real, z.imag] for z in row] for row in m.astype(complex)]}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        code, _, err = run(capsys, "detect", "--state", str(path))
        assert code != 0 and invariant in err

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(capsys, "detect", "--state", str(path))
        assert code != 0 and "parse" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(capsys, "detect", "--state", str(tmp_path / "nope.json"))
        assert code != 0 and err.startswith("error:")

    def test_two_sources(self, tmp_path, capsys):
        code, _, err = run(capsys, "detect", "--state", "x.json", "--family", "werner", "--p", "0")
        assert code != 0


class TestMoments:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "moments", "--family", "bell-noise", "--p", "0.5",
                           "--alpha", "0", "--beta", "0", "--l", "0", "--K", "3", "--format", "csv")
        lines = out.strip().split("\n")
        assert code == 0 and lines[0] == "k,a_k" and len(lines) == 5
        assert float(lines[3].split(",")[1]) == pytest.approx(0.25 + 0.75 * 0.25, abs=1e-14)

    def test_json(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        code, _, _ = run(capsys, "moments", "--family", "werner", "--p", "-0.5", "--a0", "matrix-dimension",
                         "--out", str(path))
        d = json.loads(path.read_text())
        assert code == 0 and d["moments"][0] == 1 + 4


class TestThreshold:
    def test_ccnr(self, capsys):
        code, out, _ = run(capsys, "threshold", "--family", "bell-noise", "--criterion", "ccnr")
        res = json.loads(out)
        assert code == 0 and res["threshold"] == pytest.approx(1 / 3, abs=1e-6)

    def test_bounds_and_tol(self, capsys):
        code, out, _ = run(capsys, "threshold", "--family", "isotropic-b", "--criterion", "ppt",
                           "--lo", "0.2", "--hi", "0.9", "--tol", "1e-9")
        res = json.loads(out)
        assert res["bracket"][1] - res["bracket"][0] <= 1e-9
        assert res["threshold"] == pytest.approx(0.5, abs=1e-8)

    def test_no_bracket(self, capsys):
        code, out, err = run(capsys, "threshold", "--family", "bell-noise", "--criterion", "ccnr",
                             "--lo", "0", "--hi", "0.3")
        assert code != 0 and out == "" and "no bracket" in err


class TestSweep:
    def test_fig1_csv(self, capsys):
        code, out, _ = run(capsys, "sweep", "--family", "bell-noise", "--axis", "p:0:1",
                           "--axis", "alpha:0.01:0.5", "--beta-rule", "equal", "--l", "1", "--grid", "5")
        lines = out.strip().split("\n")
        assert code == 0 and lines[0] == "p,alpha,discriminant"
        assert len(lines) == 1 + 25

    def test_explicit_steps_json(self, capsys):
        code, out, _ = run(capsys, "sweep", "--family", "werner", "--axis", "p:-1:0:3", "--alpha", "1/729",
                           "--beta-rule", "3", "--l", "3", "--format", "json")
        d = json.loads(out)
        assert code == 0 and len(d["values"]) == 3 and d["fixed"]["beta_rule"] == 3.0

    def test_bad_axis(self, capsys):
        code, _, err = run(capsys, "sweep", "--family", "bell-noise", "--axis", "p:1:0:3")
        assert code != 0 and "invalid range" in err

    def test_needs_p(self, capsys):
        code, _, _ = run(capsys, "sweep", "--family", "bell-noise", "--axis", "alpha:0:1:3")
        assert code != 0


class TestReproduce:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_pass(self, capsys, n):
        code, out, _ = run(capsys, "reproduce", str(n))
        assert code == 0
        assert json.loads(out)["status"] == "PASS"
