import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphconv.errors import TooFewSamples
from sphconv.expr import Claim, MapDefinition, builtin
from sphconv.quad import ProfileSample, Quantity, RadialProfile
from sphconv.sphgeo import post_compose_rotation
from sphconv.verify import (Classification, Status, area_lower_bounds, check_area_lower_bounds,
                            check_flag_consistency, check_gauss_bonnet, check_integral_mean_h,
                            check_laplace_identity, check_laplace_points, check_length_bounds,
                            check_normalization, check_pointwise_mp_bound, check_ratio_monotone,
                            check_schwarz_area, classify_monotone, convexity_scan,
                            laplace_points, laplace_residual_extrapolated, length_bounds,
                            verify_all)

C = Classification


def _pairs(values):
    return list(zip(np.linspace(0.1, 0.9, len(values)), values))


# -- classify_monotone ------------------------------------------------------------

@pytest.mark.parametrize("values, expected", [
    ([1, 2, 3, 4], C.STRICTLY_INCREASING),
    ([4, 3, 2, 1], C.STRICTLY_DECREASING),
    ([1, 1 + 1e-12, 1 - 1e-12, 1], C.CONSTANT),
    ([1, 2, 2, 3], C.WEAKLY_INCREASING),
    ([3, 2, 2, 1], C.WEAKLY_DECREASING),
    ([1, 3, 2, 4], C.NOT_MONOTONE),
])
def test_classify_examples(values, expected):
    assert classify_monotone(_pairs(values)).classification is expected


def test_not_monotone_witness():
    verdict = classify_monotone([(0.1, 1.0), (0.2, 2.0), (0.3, 1.5), (0.4, 3.0)])
    assert verdict.classification is C.NOT_MONOTONE
    assert verdict.witness == (0.2, 0.3, 2.0, 1.5)
    # a first step that falls makes the first rise the witness
    verdict = classify_monotone([(0.1, 3.0), (0.2, 2.0), (0.3, 2.5)])
    assert verdict.witness == (0.2, 0.3, 2.0, 2.5)


def test_slack():
    vals = _pairs([1, 1 + 1e-6, 1 + 2e-6])
    assert classify_monotone(vals).classification is C.STRICTLY_INCREASING
    assert classify_monotone(vals, slack=1e-5).classification is C.CONSTANT


def test_too_few_samples_and_gaps():
    with pytest.raises(TooFewSamples):
        classify_monotone([(0.1, 1), (0.2, 2)])
    samples = (ProfileSample(0.1, 1.0), ProfileSample(0.2, math.nan, "pole"),
               ProfileSample(0.3, 2.0), ProfileSample(0.4, 3.0))
    profile = RadialProfile(Quantity.LEN_RATIO, samples, "m")
    assert classify_monotone(profile).classification is C.STRICTLY_INCREASING
    with pytest.raises(TooFewSamples):
        classify_monotone(RadialProfile(Quantity.LEN_RATIO, samples[:3], "m"))


@given(st.lists(st.floats(-10, 10), min_size=3, max_size=30))
@settings(max_examples=300, deadline=None)
def test_classification_is_order_correct(values):
    slack = 1e-9
    d = np.diff(values)
    verdict = classify_monotone(_pairs(values), slack)
    both = (d > slack).any() and (d < -slack).any()
    assert (verdict.classification is C.NOT_MONOTONE) == both
    if both:
        r0, r1, v0, v1 = verdict.witness
        assert abs(v1 - v0) > slack
    elif (d > slack).all():
        assert verdict.classification is C.STRICTLY_INCREASING
    elif (d < -slack).all():
        assert verdict.classification is C.STRICTLY_DECREASING


# -- convexity scan -----------------------------------------------------------------

def test_convexity_scan():
    rep = convexity_scan(builtin("f2"))
    assert rep.is_nonnegative and rep.min_h > 0
    rep = convexity_scan(builtin("f3"))
    assert not rep.is_nonnegative and abs(rep.argmin) >= 0.8
    rep = convexity_scan(builtin("identity"), r_max=0.7, radii=10, angles=16)
    assert rep.min_h == pytest.approx((1 - 0.49) / 1.49, abs=1e-14)


def test_scan_skips_critical_points():
    # f' vanishes at z = 0.5, which lies on the grid
    rep = convexity_scan(MapDefinition.from_source("z^2-z"), r_max=0.5, radii=5, angles=4)
    assert rep.skipped == 1


# -- Laplace identity -------------------------------------------------------------

def test_laplace_examples():
    assert check_laplace_identity(builtin("f1"), 0.3 + 0.2j, 1e-3) < 1e-5
    assert check_laplace_identity(builtin("identity"), 0.4, 1e-3) < 1e-5
    rotated = post_compose_rotation(builtin("scale(1)"), 0.2, 1.0)
    assert check_laplace_identity(rotated, 0.3 + 0.2j, 1e-3) < 1e-5


def test_laplace_halving():
    f1 = builtin("f1")
    for z in laplace_points():
        res = [check_laplace_identity(f1, z, s) for s in (1e-2, 5e-3, 2.5e-3)]
        assert 0.15 <= res[1] / res[0] <= 0.35
        assert 0.15 <= res[2] / res[1] <= 0.35


def test_extrapolated_stencil_is_fourth_order():
    f1 = builtin("f1")
    z = 0.6 + 0.3j
    plain = check_laplace_identity(f1, z, 4e-3)
    assert laplace_residual_extrapolated(f1, z, 4e-3) < plain * 1e-2


def test_laplace_points_are_seeded():
    a, b = laplace_points(7), laplace_points(7)
    assert np.array_equal(a, b)
    assert np.all(np.abs(a) <= 0.8)
    assert not np.array_equal(a, laplace_points(8))


def test_laplace_check_result():
    res = check_laplace_points(builtin("f3"))
    assert res.status is Status.PASS and res.params["seed"] is not None


# -- inequality checks --------------------------------------------------------------

def test_skipped_without_convexity():
    f3 = builtin("f3")
    for check in (check_schwarz_area, check_area_lower_bounds, check_length_bounds,
                  check_integral_mean_h, check_gauss_bonnet):
        res = check(f3)
        assert res.status is Status.SKIPPED and "convex" in res.reason
    assert check_pointwise_mp_bound(builtin("f2")).status is Status.SKIPPED


def test_schwarz_area():
    assert check_schwarz_area(builtin("f1")).detail == "strict"
    assert check_schwarz_area(builtin("identity")).detail == "equality within tol"
    assert check_schwarz_area(builtin("f2")).status is Status.PASS


def test_bound_formulas():
    a, r = 0.5, 0.8
    first, second = area_lower_bounds(a, r)
    assert first == pytest.approx(math.pi * 0.64 / 1.64 * 0.25)
    assert second == pytest.approx(math.pi * 0.16 / 1.16)
    base, upper, lower_eta, refined = length_bounds(a, r)
    assert base == pytest.approx(2 * math.pi * 0.8 / 1.64 * 0.5)
    assert upper == pytest.approx(2 * math.pi * 0.4 / 0.36)
    assert lower_eta == pytest.approx(2 * math.pi * 0.4 / 1.16)
    assert refined == pytest.approx(base * math.sqrt(1 + 0.64 * 0.75))


@given(st.floats(0.01, 1), st.floats(0.01, 0.99))
def test_second_area_bound_dominates(a, r):
    first, second = area_lower_bounds(a, r)
    assert second >= first * (1 - 1e-12)
    base, _, lower_eta, refined = length_bounds(a, r)
    assert refined >= base * (1 - 1e-12)


@pytest.mark.parametrize("name", ["identity", "scale(0.5)", "scale(0.9i)", "f1", "f2",
                                  "rot(0.3,1)", "invrot(0.2)"])
def test_bounds_hold(name):
    m = builtin(name)
    for check in (check_area_lower_bounds, check_length_bounds, check_integral_mean_h):
        res = check(m)
        assert res.status is Status.PASS, (check.__name__, res)


def test_equality_family():
    res = check_area_lower_bounds(builtin("scale(0.5)"), (0.4, 0.8))
    assert "tight at 2/2" in res.detail
    assert abs(res.residual) <= 1e-9


def test_integral_mean_near_equality_note():
    res = check_integral_mean_h(builtin("identity"))
    assert res.detail == "equality within tol"
    # same geometry but without the isometry flag
    plain = MapDefinition("z", builtin("identity").ast,
                          claimed_properties=frozenset({Claim.SPHERICALLY_CONVEX}))
    assert "not flagged" in check_integral_mean_h(plain).detail


def test_pointwise_mp_bound():
    assert check_pointwise_mp_bound(builtin("f1")).status is Status.PASS
    assert check_pointwise_mp_bound(builtin("identity")).status is Status.PASS


def test_false_normalization_claim():
    # e^z - 1 claimed centrally normalized: f''(0) = 1 so the numerical test refuses
    m = MapDefinition.from_source("exp(z)-1", claims={Claim.SPHERICALLY_CONVEX,
                                                      Claim.CENTRALLY_NORMALIZED})
    res, report = check_normalization(m)
    assert res.status is Status.FAIL and not report.is_centrally_normalized
    mp = check_pointwise_mp_bound(m, report=report)
    assert mp.status is Status.SKIPPED and "numerical" in mp.reason
    ratio = check_ratio_monotone(m, Quantity.LEN_RATIO, report=report)
    assert ratio.status is Status.SKIPPED


def test_flag_consistency():
    scan = convexity_scan(builtin("f3"))
    assert check_flag_consistency(builtin("f3"), scan).status is Status.PASS
    lying = MapDefinition("f3", builtin("f3").ast,
                          claimed_properties=frozenset({Claim.SPHERICALLY_CONVEX}))
    assert check_flag_consistency(lying, scan).status is Status.FAIL


# -- full reports --------------------------------------------------------------------

def _by_name(results):
    return {r.name: r for r in results}


def test_verify_f1():
    results = verify_all(builtin("f1"))
    assert all(r.status is Status.PASS for r in results), [r for r in results
                                                          if r.status is not Status.PASS]
    by = _by_name(results)
    for q in ("arearatio", "lenratio", "curvratio"):
        assert by[f"{q}_monotone"].detail == "StrictlyIncreasing"


def test_verify_f2():
    by = _by_name(verify_all(builtin("f2")))
    assert by["arearatio_monotone"].status is Status.PASS
    assert by["integral_mean_h"].status is Status.PASS
    for q in ("lenratio", "curvratio"):
        res = by[f"{q}_monotone"]
        assert res.status is Status.SKIPPED and "observed" in res.detail
    assert not any(r.status is Status.FAIL for r in by.values())


def test_verify_f3():
    results = verify_all(builtin("f3"))
    by = _by_name(results)
    assert "h < 0" in by["convexity_scan"].detail
    gated = ["schwarz_area", "area_lower_bounds", "length_bounds", "integral_mean_h",
             "pointwise_mp_bound", "gauss_bonnet", "isoperimetric", "connection_identity",
             "log_mean_monotone", "mean_density_decreasing", "arearatio_monotone",
             "lenratio_monotone", "curvratio_monotone"]
    for name in gated:
        assert by[name].status is Status.SKIPPED
    assert not any(r.status is Status.FAIL for r in results)


@pytest.mark.parametrize("name", ["identity", "rot(0.3+0.2i,1)", "invrot(0.5)", "scale(0.5)"])
def test_verify_catalog(name):
    results = verify_all(builtin(name))
    assert not any(r.status is Status.FAIL for r in results)
    json.dumps([r.to_dict() for r in results], allow_nan=False)


def test_verify_is_deterministic():
    a = [r.to_dict() for r in verify_all(builtin("f2"), seed=3)]
    b = [r.to_dict() for r in verify_all(builtin("f2"), seed=3)]
    assert a == b
