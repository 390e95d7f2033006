import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphconv.errors import CriticalPointError, DegenerateTangent, DomainError
from sphconv.expr import Claim, MapDefinition, builtin
from sphconv.sphgeo import (Chart, check_central_normalization, curvature_circle,
                            curvature_image_circle, curve_curvature, h, image_curve_derivatives,
                            pointwise, post_compose_rotation, spherical_derivative,
                            to_sphere_point)

CATALOG = ["identity", "scale(0.5)", "rot(0.3+0.2i,1)", "invrot(0.5)", "f1", "f2", "f3"]


def _disk_points(n, r_max=0.9, seed=0):
    rng = np.random.default_rng(seed)
    return r_max * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))


def test_spherical_derivative_examples():
    assert spherical_derivative(builtin("identity"), 0.5) == pytest.approx(0.8, abs=1e-15)
    assert spherical_derivative(builtin("invrot(0)"), 0.5) == pytest.approx(0.8, abs=1e-15)
    assert spherical_derivative(builtin("f1"), 0) == pytest.approx(0.5, abs=1e-15)


def test_h_examples():
    assert h(builtin("identity"), 0.5) == pytest.approx(0.6, abs=1e-15)
    assert h(builtin("f2"), 0.5) == pytest.approx(1 - 0.5 * math.tanh(0.5), abs=1e-14)
    for name in ["identity", "scale(0.5)", "rot(0.3+0.2i,1)", "invrot(0.5)", "f1", "f2"]:
        assert h(builtin(name), 0) == pytest.approx(1, abs=1e-14)


def test_h_of_exp_matches_closed_form():
    f2 = builtin("f2")
    for z in _disk_points(50, 0.99):
        x = z.real
        assert h(f2, z) == pytest.approx(1 - x * math.tanh(x), abs=1e-13)


def test_critical_point():
    with pytest.raises(CriticalPointError):
        h(builtin("f3"), 0)
    with pytest.raises(CriticalPointError):
        curvature_image_circle(MapDefinition.from_source("z^2-z"), 0.5)


def test_pole_handled_by_inverse_chart():
    m = builtin("invrot(0)")
    assert spherical_derivative(m, 0) == pytest.approx(1.0)
    assert h(m, 0) == pytest.approx(1.0)
    p = to_sphere_point(m, 0)
    assert p.chart is Chart.INVERTED and p.value == 0 and math.isinf(abs(p.w))
    assert to_sphere_point(builtin("f2"), -0.5).chart is Chart.STANDARD


def test_chart_consistency_for_invrot():
    m = builtin("invrot(0.7)")
    std_only = MapDefinition("std", m.ast)
    inv_only = MapDefinition("inv", m.inverse_chart)
    zs = _disk_points(40, 0.95, seed=4)
    a, _ = pointwise(std_only, zs, "fsharp")
    b, _ = pointwise(inv_only, zs, "fsharp")
    assert np.max(np.abs(a - b)) < 1e-12
    a, _ = pointwise(std_only, zs, "h")
    b, _ = pointwise(inv_only, zs, "h")
    assert np.max(np.abs(a - b)) < 1e-12


@pytest.mark.parametrize("name", ["scale(1)", "scale(-1i)", "rot(0.3,1)", "rot(0.5-0.4i,2.5)",
                                  "invrot(1.1)"])
def test_isometry_fixed_point(name):
    m = builtin(name)
    zs = _disk_points(30, 0.95)
    vals, status = pointwise(m, zs, "h")
    assert (status == 0).all()
    mod2 = np.abs(zs) ** 2
    assert np.max(np.abs(vals - (1 - mod2) / (1 + mod2))) < 1e-12


def test_curvature_circle():
    assert curvature_circle(0.5) == 1.5
    assert curvature_circle(0.2) == pytest.approx(4.8)
    assert curvature_circle(1 - 1e-12) == pytest.approx(0, abs=1e-11)
    for bad in (0, 1, -0.5, 1.5):
        with pytest.raises(DomainError):
            curvature_circle(bad)


def test_curve_curvature_examples():
    for t in np.linspace(0, 2 * np.pi, 7):
        u = np.exp(1j * t)
        assert curve_curvature(0.5 * u, 0.5j * u, -0.5 * u) == pytest.approx(1.5, abs=1e-14)
        assert curve_curvature(0.3 * u, 0.3j * u, -0.3 * u) == pytest.approx(0.91 / 0.3)
        # unit circle is a great circle
        assert curve_curvature(u, 1j * u, -u) == pytest.approx(0, abs=1e-14)
    # straight line through 0 is a great circle as well
    assert curve_curvature(0.2 + 0.1j, 1 + 0.5j, 0) == pytest.approx(0, abs=1e-15)
    with pytest.raises(DegenerateTangent):
        curve_curvature(0.1, 0, 1)


def test_image_circle_curvature_identity():
    for r in (0.1, 0.5, 0.9):
        z = r * np.exp(0.7j)
        assert curvature_image_circle(builtin("identity"), z) == pytest.approx(
            curvature_circle(r), abs=1e-12)


@pytest.mark.parametrize("name", ["f1", "f2", "f3", "scale(0.5)"])
def test_image_circle_curvature_matches_general_curve(name):
    m = builtin(name)
    for z in (0.5, 0.5 * np.exp(1.3j), 0.8j, -0.3 + 0.2j):
        w, dw, ddw = image_curve_derivatives(m, z)
        assert curvature_image_circle(m, z) == pytest.approx(curve_curvature(w, dw, ddw),
                                                             rel=1e-11, abs=1e-11)


@pytest.mark.parametrize("name", ["f1", "f2", "scale(0.5)", "rot(0.3+0.2i,1)"])
def test_convex_maps_have_nonnegative_curvature(name):
    m = builtin(name)
    for z in _disk_points(60, 0.95, seed=9):
        assert curvature_image_circle(m, z) >= 0


rotations = st.tuples(st.complex_numbers(max_magnitude=3, allow_nan=False,
                                         allow_infinity=False),
                      st.floats(-math.pi, math.pi))


@pytest.mark.parametrize("name", CATALOG)
@given(rot=rotations)
@settings(max_examples=15, deadline=None)
def test_rotation_invariance(name, rot):
    a, theta = rot
    m = builtin(name)
    g = post_compose_rotation(m, a, theta)
    zs = _disk_points(10, 0.9, seed=1)
    for q in ("fsharp", "h"):
        base, s0 = pointwise(m, zs, q)
        rotated, s1 = pointwise(g, zs, q)
        ok = (s0 == 0) & (s1 == 0)
        scale = 1 + np.abs(base[ok])
        assert np.all(np.abs(rotated[ok] - base[ok]) <= 1e-10 * scale)


def test_trivial_rotation_keeps_values():
    m = builtin("f1")
    g = post_compose_rotation(m, 0, 0)
    zs = _disk_points(10)
    assert np.max(np.abs(pointwise(g, zs, "fsharp")[0] - pointwise(m, zs, "fsharp")[0])) < 1e-12
    assert g.claimed_properties == m.claimed_properties


def test_rotation_claims():
    g = post_compose_rotation(builtin("f1"), 0.3, 1.0)
    assert Claim.SPHERICALLY_CONVEX in g.claimed_properties
    assert Claim.CENTRALLY_NORMALIZED not in g.claimed_properties
    g = post_compose_rotation(builtin("f1"), 0, 1.0)
    assert g.is_centrally_normalized


def test_central_normalization():
    rep = check_central_normalization(builtin("f1"))
    assert rep.is_centrally_normalized and rep.alpha == pytest.approx(0.5)
    rep = check_central_normalization(builtin("identity"))
    assert rep.is_centrally_normalized and rep.alpha == pytest.approx(1)
    rep = check_central_normalization(builtin("f2"))
    assert not rep.is_centrally_normalized and rep.f0 == 1
    # f(0) = 0 and f''(0) = 0 but the density peaks away from 0
    rep = check_central_normalization(MapDefinition.from_source("z+z^3"))
    assert not rep.is_centrally_normalized and rep.sup_density > rep.alpha
