import math

import numpy as np
import pytest

from sphconv.errors import CriticalPointError, DomainError, LogOfZero
from sphconv.expr import MapDefinition, builtin
from sphconv.quad import (QuadratureConfig, Quantity, area_ratio, circle_length, circle_mean,
                          curv_ratio, disk_area, disk_integral, gauss_legendre, hyp_len_ratio,
                          integral_mean_h, len_ratio, log_mean, radial_profile,
                          spherical_area_image, spherical_length_image, total_curvature_image)

IDENT = builtin("identity")
F1, F2, F3 = builtin("f1"), builtin("f2"), builtin("f3")
HIGH = QuadratureConfig(512, 64)


def test_config_validation(monkeypatch):
    with pytest.raises(ValueError):
        QuadratureConfig(100)
    with pytest.raises(ValueError):
        QuadratureConfig(8)
    with pytest.raises(ValueError):
        QuadratureConfig(256, 4)
    monkeypatch.setenv("SPHCONV_NODES", "64")
    assert QuadratureConfig.from_env().angular_nodes == 64
    monkeypatch.delenv("SPHCONV_NODES")
    assert QuadratureConfig.from_env().angular_nodes == 256


def test_gauss_legendre_integrates_polynomials():
    x, w = gauss_legendre(8)
    for k in range(16):
        exact = 0 if k % 2 else 2 / (k + 1)
        assert np.dot(w, x ** k) == pytest.approx(exact, abs=1e-14)


def test_circle_mean_examples():
    assert circle_mean(IDENT, "fsharp", 0.5) == pytest.approx(0.8, abs=1e-15)
    # oracle: the closed form of h for exp on a fine grid
    t = 2 * np.pi * np.arange(2 ** 14) / 2 ** 14
    x = 0.5 * np.cos(t)
    oracle = np.mean(1 - x * np.tanh(x))
    assert circle_mean(F2, "h", 0.5) == pytest.approx(oracle, abs=1e-14)


def test_circle_mean_reports_node_index():
    with pytest.raises(CriticalPointError) as info:
        circle_mean(MapDefinition.from_source("z^2-z"), "h", 0.5, 16)
    assert info.value.index == 0


def test_length_area_curvature_identity():
    assert spherical_length_image(IDENT, 0.5) == pytest.approx(4 * math.pi / 5, abs=1e-13)
    assert spherical_area_image(IDENT, 0.5) == pytest.approx(math.pi / 5, abs=1e-13)
    assert total_curvature_image(IDENT, 0.5) == pytest.approx(1.2 * math.pi, abs=1e-13)


def test_scaled_disk():
    s = builtin("scale(0.5)")
    assert spherical_length_image(s, 0.8) == pytest.approx(2 * math.pi * 0.4 / 1.16, abs=1e-13)
    assert spherical_area_image(s, 0.8) == pytest.approx(math.pi * 0.16 / 1.16, abs=1e-13)
    assert area_ratio(s, 0.8) == pytest.approx(1.64 * 0.25 / 1.16, abs=1e-13)


@pytest.mark.parametrize("name", ["identity", "scale(1)", "rot(0.3,1)", "invrot(0.4)"])
def test_isometry_ratios_are_one(name):
    m = builtin(name)
    for r in (0.1, 0.5, 0.9):
        for fn in (len_ratio, area_ratio, curv_ratio):
            assert fn(m, r) == pytest.approx(1, abs=1e-10)
        assert log_mean(m, r) == pytest.approx(0, abs=1e-12)


def test_small_radius_limits():
    r = 1e-3
    assert spherical_length_image(F1, r) / (2 * math.pi * r) == pytest.approx(0.5, abs=1e-6)
    assert hyp_len_ratio(F1, r) == pytest.approx(0.5, abs=1e-6)
    assert log_mean(F1, r) == pytest.approx(math.log(0.5), abs=1e-6)
    for m in (F1, F2):
        assert total_curvature_image(m, r) == pytest.approx(2 * math.pi, abs=1e-2)
    # f3 has a double critical point at 0, where h tends to 2
    assert total_curvature_image(F3, r) == pytest.approx(4 * math.pi, abs=1e-2)
    for m, a in ((F1, 0.5), (F2, 0.5), (builtin("scale(0.3)"), 0.3)):
        assert spherical_area_image(m, r) / (math.pi * r * r) == pytest.approx(a * a, rel=1e-5)


def test_hyp_len_and_log_mean():
    assert hyp_len_ratio(IDENT, 0.5) == pytest.approx(0.6, abs=1e-15)
    assert hyp_len_ratio(F1, 0.3) >= hyp_len_ratio(F1, 0.6)
    assert log_mean(IDENT, 0.5) == pytest.approx(0, abs=1e-15)
    assert log_mean(F1, 0.6) > log_mean(F1, 0.3)


def test_log_of_zero():
    # f' vanishes at z = 0.5 on the circle r = 0.5
    with pytest.raises(LogOfZero):
        log_mean(MapDefinition.from_source("z^2-z"), 0.5, QuadratureConfig(16))


def test_radius_domain():
    for bad in (0, 1, 1.2):
        with pytest.raises(DomainError):
            len_ratio(F1, bad)
        with pytest.raises(DomainError):
            spherical_area_image(F1, bad)


@pytest.mark.parametrize("m", [F1, F2], ids=["f1", "f2"])
def test_area_of_convex_image_is_below_hemisphere(m):
    for r in (0.5, 0.9, 0.95):
        assert 0 < spherical_area_image(m, r) < math.pi / 2


@pytest.mark.parametrize("m", [F1, F2, builtin("scale(0.5)"), builtin("rot(0.3+0.2i,1)")],
                         ids=["f1", "f2", "scale", "rot"])
def test_gauss_bonnet(m):
    for r in (0.25, 0.5, 0.75):
        total = total_curvature_image(m, r, HIGH) + 4 * spherical_area_image(m, r, HIGH)
        assert abs(total - 2 * math.pi) <= 1e-7


@pytest.mark.parametrize("m", [F1, F2, builtin("scale(0.5)"), IDENT], ids=str)
def test_isoperimetric(m):
    for r in np.linspace(0.05, 0.95, 10):
        length = spherical_length_image(m, r)
        area = spherical_area_image(m, r)
        assert length ** 2 - 4 * math.pi * area + 4 * area ** 2 >= -1e-8


def test_connection_identity():
    r = 0.5
    lhs = 2 * math.pi * circle_mean(F1, "fsharp2", r)
    rhs = 2 / r ** 2 * disk_integral(F1, "h_fsharp2", r)
    assert abs(lhs - rhs) <= 1e-6


@pytest.mark.parametrize("m", [F1, F2, builtin("scale(0.5)")], ids=["f1", "f2", "scale"])
def test_integral_mean_bound(m):
    for r in np.linspace(0.05, 0.95, 19):
        assert integral_mean_h(m, r) >= (1 - r * r) / (1 + r * r) - 1e-9


def test_spectral_convergence():
    r = 0.5
    for fn in (spherical_length_image, spherical_area_image, total_curvature_image):
        coarse = fn(F1, r, QuadratureConfig(128))
        fine = fn(F1, r, QuadratureConfig(256))
        assert abs(coarse - fine) < 1e-12


def test_curv_ratio_of_exp_matches_closed_form():
    # oracle: (1+r^2)/(1-r^2) times the fine-grid mean of 1 - x tanh x, x = r cos t
    t = 2 * np.pi * np.arange(2 ** 14) / 2 ** 14
    for r in (0.2, 0.6, 0.9):
        x = r * np.cos(t)
        oracle = (1 + r * r) / (1 - r * r) * np.mean(1 - x * np.tanh(x))
        assert curv_ratio(F2, r, HIGH) == pytest.approx(oracle, abs=1e-12)


def test_radial_profile_identity():
    p = radial_profile(IDENT, Quantity.AREA_RATIO, 0.1, 0.9, 9)
    assert len(p.samples) == 9 and not p.gaps
    assert np.all(np.abs(p.values - 1) <= 1e-10)
    assert np.all(np.diff(p.rs) > 0)


def test_radial_profile_f1_curv_increasing():
    p = radial_profile(F1, "curvratio", 0.05, 0.95, 50)
    assert np.all(np.diff(p.values) > 1e-9)


def test_radial_profile_records_gaps():
    m = MapDefinition.from_source("z^2-z")
    # circle r = 0.5 passes through the critical point at a node
    p = radial_profile(m, "curvratio", 0.25, 0.75, 3, QuadratureConfig(16))
    assert [s.is_gap for s in p.samples] == [False, True, False]
    assert "critical" in p.samples[1].reason
    assert math.isnan(p.samples[1].value)


def test_radial_profile_domain():
    with pytest.raises(DomainError):
        radial_profile(F1, "lenratio", 0.5, 0.4, 5)
    with pytest.raises(DomainError):
        radial_profile(F1, "lenratio", 0.1, 0.4, 1)
