"""Smoke tests for the python surface of the C++ core."""

import math

import pytest

import gwci


def test_source_summary_dsbs():
    s = gwci.source_summary(gwci.dsbs(0.1))
    assert s["hx"] == pytest.approx(1.0, abs=1e-12)
    h = -0.1 * math.log2(0.1) - 0.9 * math.log2(0.9)
    assert s["ixy"] == pytest.approx(1.0 - h, abs=1e-12)
    assert s["gk"] == 0.0


def test_ergodic_components_block():
    p = [
        [0.125, 0.125, 0, 0],
        [0.125, 0.125, 0, 0],
        [0, 0, 0.125, 0.125],
        [0, 0, 0.125, 0.125],
    ]
    comps, j_pmf = gwci.ergodic_components(p)
    assert len(comps) == 2
    assert j_pmf == pytest.approx([0.5, 0.5])
    assert gwci.source_summary(p)["gk"] == pytest.approx(1.0, abs=1e-12)


def test_wyner_matches_closed_form():
    al = (1 - math.sqrt(1 - 0.2)) / 2
    h = lambda a: -a * math.log2(a) - (1 - a) * math.log2(1 - a)
    cw = 1 + h(0.1) - 2 * h(al)
    w = gwci.wyner_ci(gwci.dsbs(0.1), restarts=6)
    assert w["converged"]
    assert w["value"] == pytest.approx(cw, abs=5e-3)


def test_curves_and_extraction():
    pts = gwci.c_curve(gwci.dsbs(0.2), restarts=4)
    assert pts[-1]["shared_rate"] == 0.0
    assert pts[0]["shared_rate"] > 0.5
    assert gwci.gk_from_curve(gwci.dsbs(0.2), restarts=4) == 0.0


def test_lossy_pipeline():
    r = gwci.joint_rd(gwci.dsbs(0.1), 0.0, 0.0)
    assert r["rate"] == pytest.approx(1.468996, abs=1e-5)
    lw = gwci.lossy_wyner_ci(gwci.dsbs(0.1), 0.02, 0.02, restarts=4)
    assert lw["lower"] <= lw["value"] <= lw["upper"]
    assert max(lw["factorization_residuals"]) < 1e-3


def test_gaussian_closed_forms():
    assert gwci.gaussian_wyner_ci_lossless(0.5) == pytest.approx(
        0.5 * math.log2(3.0), abs=1e-12
    )
    assert gwci.classify_regime(0.5, 0.3, 0.3) == "I"
    assert gwci.classify_regime(0.5, 0.9, 0.9) == "II"
    v, tight = gwci.gaussian_slb(0.5, 0.3, 0.3)
    assert tight
    assert v == pytest.approx(gwci.gaussian_joint_rd(0.5, 0.3, 0.3), abs=1e-12)
    assert gwci.gaussian_lossy_gk(0.7, 0.2, 0.4) == 0.0


def test_determinism_same_seed():
    a = gwci.c_curve(gwci.dsbs(0.1), restarts=3, seed=7)
    b = gwci.c_curve(gwci.dsbs(0.1), restarts=3, seed=7)
    assert a == b


def test_errors_surface():
    with pytest.raises(gwci.GwciError):
        gwci.oracle_c_curve([[0.1] * 3] * 4)  # alphabet too large for the oracle
    with pytest.raises(Exception):
        gwci.gaussian_joint_rd(1.2, 0.1, 0.1)
