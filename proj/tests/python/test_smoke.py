"""Smoke tests for the python bindings: values, error mapping, determinism."""

import math

import pytest

import povline


def test_version():
    assert povline.__version__ == "0.1.0"


def test_fixed_threshold_value():
    values = [1.0, 2.0, 3.0, 4.0]
    assert povline.j_fixed(values, "fgt:1", 2.5) == pytest.approx(0.2, abs=1e-12)
    # mean:1 resolves to the same threshold on this sample
    assert povline.j_relative(values, "fgt:1", "mean:1") == pytest.approx(
        0.2, abs=1e-12
    )


def test_estimate_report():
    rep = povline.estimate([1.0, 2.0, 3.0, 4.0], "fgt:1", "mean:1")
    assert rep["measure"] == "fgt:1"
    assert rep["line"] == "mean:1"
    assert rep["n"] == 4
    assert rep["q"] == 2
    assert rep["z_hat"] == pytest.approx(2.5)
    assert rep["j_hat"] == pytest.approx(0.2, abs=1e-12)
    assert rep["std_error"] == pytest.approx(math.sqrt(rep["variance"]))
    assert not rep["degenerate_q"]


def test_delta_split_adds_up():
    values = [0.3 + 0.11 * i for i in range(120)]
    rep = povline.delta(values, "sen", "mean:1")
    assert rep["gamma_hat"] == pytest.approx(
        rep["sigma_hat"] + rep["delta_hat"], rel=1e-9
    )
    assert povline.gamma_hat(values, "sen", "sen", "mean:1") == pytest.approx(
        rep["gamma_hat"]
    )


def test_theoretical_value():
    got = povline.j_theoretical("exp:0.5", "fgt:1", "mean:1")
    assert got == pytest.approx(math.exp(-1.0), abs=1e-9)


def test_error_mapping():
    assert issubclass(povline.ValidationError, ValueError)
    assert issubclass(povline.DegenerateError, ArithmeticError)
    with pytest.raises(ValueError):
        povline.j_fixed([1.0, 2.0], "bogus", 1.0)
    with pytest.raises(ValueError):
        povline.j_relative([], "fgt:1", "mean:1")
    rich = [10.0, 11.0, 12.0, 13.0]
    with pytest.raises(ArithmeticError):
        povline.proportionality_test(rich, rich, "fgt:1", line_f="fixed:1",
                                     line_g="fixed:1")


def test_two_sample_tests():
    f = [0.5 + 0.1 * i for i in range(80)]
    g = [0.7 + 0.1 * i for i in range(80)]
    same = povline.proportionality_test(f, f, "fgt:1")
    assert same["statistic"] == pytest.approx(0.0, abs=1e-14)
    assert same["p_value"] == pytest.approx(1.0)
    two = povline.proportionality_test(f, g, "fgt:1")
    assert 0.0 <= two["p_value"] <= 1.0
    wald = povline.wald_test(f, g, ["fgt:1", "sen", "watts"])
    assert wald["df"] == 3
    assert wald["statistic"] >= 0.0
    assert 0.0 <= wald["p_value"] <= 1.0
    assert len(wald["pooled_covariance"]) == 9
    assert set(wald["reject_at"]) == {"0.10", "0.05", "0.01"}


def test_simulate_deterministic():
    kwargs = dict(dist="exp:0.5", n=60, reps=25, measure="fgt:1",
                  line="mean:1", seed=11)
    a = povline.simulate(**kwargs)
    b = povline.simulate(**kwargs)
    assert a == b
    assert a["schema"] == "povline-report/1"
    assert a["report"]["replications"] == 25
    c = povline.simulate(**kwargs, jobs=2)
    assert c["report"] == a["report"]


def test_run_subcommand_with_file(tmp_path):
    path = tmp_path / "inc.csv"
    path.write_text("1\n2\n3\n4\n")
    doc = povline.run_subcommand(
        "estimate",
        {"data": str(path), "measure": "fgt:1", "line": "mean:1"},
    )
    assert doc["report"]["j_hat"] == pytest.approx(0.2, abs=1e-12)
    digest = doc["manifest"]["inputs"][str(path)]
    assert len(digest) == 16 and int(digest, 16) >= 0
    with pytest.raises(ValueError):
        povline.run_subcommand("estimate", {"measure": "fgt:1", "line": "mean:1"})
