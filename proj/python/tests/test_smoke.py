import math

import pytest

import monobox as mb


def test_catalog_values():
    f = mb.catalog("square")
    assert f(0.5) == 0.25
    assert f.meterable
    assert "step_03" in mb.catalog_names()


def test_greedybox_stops_at_certificate():
    r = mb.run(mb.catalog("identity"), 0.05)
    assert r["stop"] == "certificate"
    assert r["certificate"] <= 0.05
    assert r["evaluations"] == r["tau"] + 1
    assert len(r["records"]) == r["tau"]


def test_trapezoid_on_square_matches_uniform_closed_form():
    # 2^k equal boxes: each chord error is h^3 / 6.
    for t in (4, 16, 64):
        r = mb.run_fixed_budget(mb.catalog("square"), t, policy="width")
        assert r["estimator"].breakpoints == pytest.approx([i / t for i in range(t + 1)])
        err = mb.lp_error(r["estimator"], mb.catalog("square"))
        assert err == pytest.approx(1.0 / (6.0 * t * t), rel=1e-9)


def test_worst_case_k2_error():
    f = mb.worst_case_f(2)
    r = mb.run_fixed_budget(f, 40)
    assert mb.lp_error(r["estimator"], f) == pytest.approx(1.0 / 3072.0, abs=1e-12)


def test_certificate_bounds_error_under_density():
    m = mb.Measure([(0.0, 0.5, 1.5), (0.5, 1.0, 0.5)])
    f = mb.catalog("fig2_composite")
    for p in (1, 2):
        r = mb.run(f, 0.05, p=p, measure=m)
        err = mb.lp_error(r["estimator"], f, p=p, measure=m)
        assert err**p <= r["certificate"] + 1e-12


def test_measure_queries():
    m = mb.Measure([(0.0, 1.0, 0.5)], [(0.25, 0.5)])
    assert m.mass_open(0.0, 1.0) == pytest.approx(1.0)
    assert m.mass_open(0.25, 1.0) == pytest.approx(0.375)
    assert m.atom_mass(0.25) == 0.5
    assert m.conditional_median(0.5, 1.0) == pytest.approx(0.75)
    with pytest.raises(mb.DomainError):
        mb.Measure([(0.0, 1.0, 2.0)])


def test_custom_piecewise_and_integral():
    f = mb.piecewise("ramp", [(0.0, "constant", [0.1]), (0.5, "affine", [-0.5, 1.5])])
    assert f(0.25) == 0.1
    assert f(0.75) == pytest.approx(0.625)
    # 0.05 + int_{1/2}^{1} (1.5x - 0.5) dx = 0.05 + 0.5625 - 0.25
    assert mb.integral(f) == pytest.approx(0.3625, abs=1e-12)


def test_black_box_functions():
    f = mb.from_callable("cube", lambda x: x**3)
    r = mb.run(f, 0.01)
    assert r["certificate"] <= 0.01
    with pytest.raises(mb.Unmeterable):
        mb.lp_error(r["estimator"], f)
    bad = mb.from_callable("down", lambda x: 1.0 - x)
    with pytest.raises(mb.ValidationError):
        mb.run(bad, 0.1)


def test_covers_and_oracle():
    f = mb.catalog("step_03")
    assert mb.oracle_n(f, 0.125) == 2
    assert mb.oracle_n(mb.catalog("identity"), 0.125, mode="per_box") == 3
    c = mb.constructive_cover(mb.catalog("identity"), 8)
    assert len(c) == 8
    assert mb.cover_total(c, 1, mb.Measure.lebesgue()) == pytest.approx(1.0 / 8.0)
    s = mb.split_cover(c, 16, 1, mb.Measure.lebesgue(), 0.125)
    assert len(s) <= 32


def test_stochastic_integral_is_unbiased_on_identity():
    runs = [mb.integrate(mb.catalog("identity"), 0.05, seed=s) for s in range(2000)]
    est = [r["estimate"] for r in runs]
    mean = sum(est) / len(est)
    sd = math.sqrt(sum((e - mean) ** 2 for e in est) / (len(est) - 1))
    assert abs(mean - 0.5) <= 4.0 * sd / math.sqrt(len(est))
    assert sum(abs(e - 0.5) for e in est) / len(est) <= runs[0]["certificate"]


def test_slope_and_affine_check():
    series = [(n, n**-2.0) for n in (4, 8, 16, 32)]
    assert mb.loglog_slope(series) == pytest.approx(2.0)
    err, bound, holds = mb.affine_error_bound_check(0.0, 0.0, 1.0, 0.0, 1.0, 1)
    assert err == pytest.approx(1.0 / 6.0)
    assert bound == pytest.approx(3.0)
    assert holds
