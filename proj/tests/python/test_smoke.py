import math

import pytest

import thermalnoon as tn


def test_positions():
    assert tn.magic_positions(2) == pytest.approx([0.0, math.pi])
    assert tn.moving_magic_positions(math.pi / 4, 2) == pytest.approx([math.pi / 4, 5 * math.pi / 4])
    with pytest.raises(ValueError):
        tn.magic_positions(0)


def test_oracles_agree():
    deltas = [0.7, 2.1, 4.0]
    assert tn.correlation_pathsum([0, 1], deltas) == pytest.approx(
        tn.correlation_permanent([0, 1], deltas), rel=1e-9)
    assert tn.correlation_pathsum([0, 1], [0.0, 0.0]) == pytest.approx(8.0)
    assert len(tn.enumerate_partitions(3, 3)) == 10


def test_closed_forms():
    assert tn.setup1_visibility(4) == pytest.approx(1 / 7)
    c = tn.setup2_coeffs(4, 3)
    assert (c["c1"], c["c2"], c["parity_sign"]) == (55296, 2304, 1)
    assert tn.setup2_g(2, 2, math.pi / 2) == pytest.approx(112.0)
    assert [tn.crossover_threshold(m) for m in range(2, 6)] == [3, 5, 6, 7]
    # wide coefficients come back as exact Python ints
    assert tn.setup2_coeffs(20, 2)["c1"] > 2**64


def test_speckle_and_fit():
    r = tn.simulate_curve(2, 2, 20000, seed=7, grid=37)
    assert len(r["values"]) == 37
    fit = r["fit"]
    assert fit["frequency"] == 2
    assert fit["visibility"] == pytest.approx(1 / 13, abs=max(0.02, 3 * fit["stderr_visibility"]))
    again = tn.simulate_curve(2, 2, 20000, seed=7, grid=37, workers=3)
    assert again["values"] == r["values"]

    grid = [2 * math.pi * i / 360 for i in range(361)]
    exact = tn.fit_cosine(grid, [tn.setup2_g(3, 2, d) for d in grid], 2, m2=2)
    assert exact["visibility"] == pytest.approx(3 / 19, abs=1e-9)
    assert exact["parity_ok"]


def test_fock():
    report = tn.verify_isomorphism(0.5, 2, 2, 1.0)
    assert report["ok"] and report["relative_gap"] < 1e-6
    assert tn.project_magic_support_violation(0.5, 2) <= 1e-12
    assert tn.noon_overlap(0.5, 2) == pytest.approx(4 * 0.25 / 1.5**6, abs=1e-9)
    with pytest.raises(RuntimeError):
        tn.noon_overlap(0.0, 2)
