import math

import pytest

import circov


def test_version():
    assert circov.__version__.count(".") == 2


def test_shepp_families():
    assert circov.shepp("harmonic:1", 1000)["verdict"] == "DIVERGES"
    assert circov.shepp("harmonic:0.9", 1000)["verdict"] == "CONVERGES"
    assert circov.shepp("shepp:1,1,0.5", 1000)["closed_form"] == "CONVERGES"


def test_expected_uncovered_exact():
    e = circov.expected_uncovered("harmonic:1/2", 4)
    assert e["exact"] == "35/128"
    assert e["value"] == pytest.approx(105 / 384)


def test_cover_trial_reproducible():
    a = circov.cover_trial("harmonic:0.5", 2000, seed=3, stream=1)
    b = circov.cover_trial("harmonic:0.5", 2000, seed=3, stream=1)
    assert a == b
    assert 0.0 <= a <= 1.0


def test_tree_run_extinction_and_bound():
    levels = circov.tree_run("1013", "plain", 8, 12, seed=7)
    assert levels[-1]["remaining"] == 0
    assert circov.iid_event_bound_log10(5, 0, "1013") == pytest.approx(
        math.log10(64) + 32416 * math.log10(31 / 32), rel=1e-12
    )


def test_dimension_helpers():
    assert circov.predicted_dimension(2.0, 1.0) == pytest.approx(0.5)
    assert circov.predicted_dimension(3.0, math.log(2) / math.log(3)) is None
    assert circov.frostman_count("cantor", 6, 3) == 64
    est = circov.estimate_dimension("pow2", "full", 1.0, 8, 12, 5, 1)
    assert est["slope"] == pytest.approx(1.0, abs=0.15)


def test_arithmetic():
    assert circov.partial_quotients("golden", 10) == [1] * 10
    assert circov.partial_quotients("3/7", 10) == [2, 3]
    assert circov.bohr_count("1/2", "0", 10, "0.1") == 5
    assert circov.sequence_terms("pow2", 5) == [2, 4, 8, 16, 32]
    assert circov.best_inhom_approx("golden", "0", 50)[0] == 89


def test_psi_regime():
    assert circov.psi_regime("golden", "0", "1/(n log^2 n)") == "NONCOVERING-LIKE"


def test_errors_are_translated():
    with pytest.raises(ValueError):
        circov.sequence_terms("nonsense", 3)
    with pytest.raises(circov.InvalidInput):
        circov.tree_run("abc")
