import math

import pytest

import cyclelsi


def test_gap_and_constants():
    assert cyclelsi.spectral_gap(4) == pytest.approx(1.0, abs=1e-15)
    assert cyclelsi.spectral_gap_numeric(64) == pytest.approx(cyclelsi.spectral_gap(64), abs=1e-12)
    assert cyclelsi.sup_norm_constant(6) == pytest.approx(2 / 3, abs=1e-15)
    assert cyclelsi.l2_coercivity_constant(5) == pytest.approx(1 + math.sqrt(5), abs=1e-14)


def test_functionals():
    f = [1.0, 2.0, 0.5, 3.0]
    # E = (1/2n) sum of squared increments
    ref = sum((f[i] - f[(i + 1) % 4]) ** 2 for i in range(4)) / 8
    assert cyclelsi.dirichlet_form(f) == pytest.approx(ref, rel=1e-14)
    assert cyclelsi.entropy_of_square([1.0] * 7) == pytest.approx(0.0, abs=1e-15)
    assert cyclelsi.variance([1.0, -1.0]) == pytest.approx(1.0)


def test_alpha_estimate_matches_half_gap():
    cfg = cyclelsi.OptimizerConfig()
    cfg.restarts = 8
    res = cyclelsi.estimate_alpha(5, cfg)
    assert res.converged
    assert res.value == pytest.approx(cyclelsi.spectral_gap(5) / 2, abs=1e-6)


def test_triangle_constant_is_below_half_gap():
    cfg = cyclelsi.OptimizerConfig()
    cfg.restarts = 8
    assert cyclelsi.estimate_alpha(3, cfg).value < 0.749


def test_products():
    assert cyclelsi.sharp_constant([(4, 1.0), (6, 1.0)]) == pytest.approx(0.25)
    with pytest.raises(cyclelsi.CyclelsiError):
        cyclelsi.sharp_constant([(3, 1.0), (4, 1.0)])


def test_heat_and_hypercontractivity():
    n = 8
    f = [1.0 + 0.3 * math.cos(2 * math.pi * j / n) for j in range(n)]
    g = cyclelsi.heat(f, 0.7)
    assert sum(g) / n == pytest.approx(1.0, abs=1e-14)
    t = cyclelsi.minimal_admissible_time(n, 2.0, 4.0)
    assert cyclelsi.hypercontractivity_check(f, t, 2.0, 4.0).deficit >= -1e-10
    with pytest.raises(cyclelsi.CyclelsiError):
        cyclelsi.hypercontractivity_check(f, t / 2, 2.0, 4.0)


def test_inequalities():
    assert cyclelsi.cubic_deficit([1.0] * 6) == pytest.approx(0.0, abs=1e-14)
    assert cyclelsi.majorant_deficit(1.0) == pytest.approx(0.0, abs=1e-15)
    assert cyclelsi.scalar_deficit(1, 0.6, 0.48, 0.64) >= 0.0
