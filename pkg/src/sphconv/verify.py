"""Named numerical checks of the inequalities, identities and monotonicity
statements for spherically convex maps.

Every check returns a `CheckResult`.  Checks whose hypotheses are not claimed
by the map (``MapDefinition.claimed_properties``) or not confirmed by the
normalization test are ``Skipped``; they never run silently on the wrong map.
Inequality checks report ``residual`` as the worst margin ``value - bound``
over the radii tried (negative means violated); identity checks report the
worst absolute residual.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import SphconvError, TooFewSamples
from .expr import Claim, MapDefinition
from .quad import (DEFAULT_CONFIG, ProfileSample, QuadratureConfig, Quantity, RadialProfile,
                   circle_length, circle_mean, disk_area, disk_integral, integral_mean_h,
                   radial_profile, spherical_area_image, spherical_length_image,
                   total_curvature_image)
from .sphgeo import (NormalizationReport, check_central_normalization, pointwise, polar_grid,
                     raise_for_status, spherical_derivative)

log = logging.getLogger(__name__)

__all__ = [
    "Classification", "MonotonicityVerdict", "classify_monotone", "ConvexityReport",
    "convexity_scan", "check_laplace_identity", "laplace_residual_extrapolated", "Status", "CheckResult",
    "check_schwarz_area", "check_area_lower_bounds", "check_length_bounds",
    "check_integral_mean_h", "check_pointwise_mp_bound", "check_mean_density_decreasing",
    "check_gauss_bonnet", "check_isoperimetric", "check_connection_identity",
    "check_laplace_points", "check_log_mean_monotone", "check_ratio_monotone",
    "check_flag_consistency", "check_normalization", "verify_all", "laplace_points",
    "area_lower_bounds", "length_bounds",
    "DEFAULT_RADII", "DEFAULT_SEED", "MONOTONE_SLACK",
]

DEFAULT_RADII = (0.1, 0.25, 0.5, 0.75, 0.9)
DEFAULT_SEED = 20240613
MONOTONE_SLACK = 1e-9
INEQUALITY_TOL = 1e-9
GAUSS_BONNET_TOL = 1e-7
ISOPERIMETRIC_TOL = 1e-8
CONNECTION_TOL = 1e-6
LAPLACE_TOL = 1e-5
LAPLACE_STEP = 1e-3
PROFILE_GRID = (0.05, 0.95, 50)


# -- monotonicity -------------------------------------------------------------

class Classification(str, enum.Enum):
    STRICTLY_INCREASING = "StrictlyIncreasing"
    STRICTLY_DECREASING = "StrictlyDecreasing"
    CONSTANT = "Constant"
    NOT_MONOTONE = "NotMonotone"
    # some steps rise (or fall) by more than the slack, the rest stay within it
    WEAKLY_INCREASING = "WeaklyIncreasing"
    WEAKLY_DECREASING = "WeaklyDecreasing"


@dataclass(frozen=True)
class MonotonicityVerdict:
    classification: Classification
    slack: float
    witness: Optional[tuple] = None  # (r_i, r_next, v_i, v_next)

    def describe(self) -> str:
        if self.witness is None:
            return self.classification.value
        r0, r1, v0, v1 = self.witness
        return (f"{self.classification.value} witness r=({r0:.15g},{r1:.15g}) "
                f"values=({v0:.15g},{v1:.15g})")


def classify_monotone(profile: Union[RadialProfile, Sequence], slack: float = MONOTONE_SLACK
                      ) -> MonotonicityVerdict:
    """Classify a sampled curve; steps within ``slack`` count as flat.

    Accepts a RadialProfile or a sequence of ``(r, value)`` pairs.  Gaps are
    dropped; at least three usable samples are required.
    """
    if isinstance(profile, RadialProfile):
        pairs = [(s.r, s.value) for s in profile.samples if not s.is_gap]
    else:
        pairs = [(float(r), float(v)) for r, v in profile]
    pairs = [(r, v) for r, v in pairs if math.isfinite(v)]
    if len(pairs) < 3:
        raise TooFewSamples(f"need at least 3 gap-free samples, got {len(pairs)}")
    rs = np.array([p[0] for p in pairs])
    vs = np.array([p[1] for p in pairs])
    d = np.diff(vs)
    rise, fall = d > slack, d < -slack
    if rise.any() and fall.any():
        first = int(np.flatnonzero(rise | fall)[0])
        opposite = fall if rise[first] else rise
        i = int(np.flatnonzero(opposite)[0])
        witness = (float(rs[i]), float(rs[i + 1]), float(vs[i]), float(vs[i + 1]))
        return MonotonicityVerdict(Classification.NOT_MONOTONE, slack, witness)
    if rise.all():
        return MonotonicityVerdict(Classification.STRICTLY_INCREASING, slack)
    if fall.all():
        return MonotonicityVerdict(Classification.STRICTLY_DECREASING, slack)
    if not rise.any() and not fall.any():
        return MonotonicityVerdict(Classification.CONSTANT, slack)
    if rise.any():
        return MonotonicityVerdict(Classification.WEAKLY_INCREASING, slack)
    return MonotonicityVerdict(Classification.WEAKLY_DECREASING, slack)


# -- convexity scan -------------------------------------------------------------

@dataclass(frozen=True)
class ConvexityReport:
    min_h: float
    argmin: complex
    r_max: float
    radii: int
    angles: int
    tol: float
    skipped: int = 0  # grid points where h is undefined (critical points, poles)

    @property
    def is_nonnegative(self) -> bool:
        return self.min_h >= -self.tol


def convexity_scan(map_: MapDefinition, r_max: float = 0.95, radii: int = 100,
                   angles: int = 256, tol: float = INEQUALITY_TOL) -> ConvexityReport:
    """Minimum of h_f over the polar grid r_max*j/radii, 2*pi*k/angles."""
    grid = polar_grid(r_max, radii, angles)
    values, status = pointwise(map_, grid, "h")
    bad = status != 0
    if bad.any():
        log.info("convexity_scan(%s): skipped %d grid points", map_.name, int(bad.sum()))
    if bad.all():
        raise SphconvError(f"h is undefined on the whole grid for {map_.name}")
    k = int(np.nanargmin(values))
    return ConvexityReport(float(values.flat[k]), complex(grid.flat[k]), r_max, radii, angles,
                           tol, int(bad.sum()))


# -- Laplace identity -----------------------------------------------------------

def _laplacian_terms(map_, z, step):
    pts = np.array([z, z + step, z - step, z + 1j * step, z - 1j * step])
    hs, status = pointwise(map_, pts, "h")
    raise_for_status(status, pts)
    fs = spherical_derivative(map_, z)
    lap = (hs[1] + hs[2] + hs[3] + hs[4] - 4 * hs[0]) / (step * step)
    return lap, 8 * fs * fs * hs[0]


def check_laplace_identity(map_: MapDefinition, z: complex, step: float = LAPLACE_STEP) -> float:
    """| 5-point Laplacian of h_f + 8 f#^2 h_f | at z."""
    lap, rhs = _laplacian_terms(map_, complex(z), step)
    return float(abs(lap + rhs))


def laplace_residual_extrapolated(map_: MapDefinition, z: complex,
                                  step: float = 2 * LAPLACE_STEP) -> float:
    """Same residual with the Richardson combination of steps s and s/2.

    The O(s^2) stencil error cancels, leaving O(s^4); near the boundary the
    plain stencil's truncation alone can exceed the tolerance.
    """
    z = complex(z)
    coarse, rhs = _laplacian_terms(map_, z, step)
    fine, _ = _laplacian_terms(map_, z, step / 2)
    return float(abs((4 * fine - coarse) / 3 + rhs))


def laplace_points(seed: int = DEFAULT_SEED, count: int = 5, r_max: float = 0.8) -> np.ndarray:
    """Seeded points uniformly distributed in the disk |z| <= r_max."""
    rng = np.random.default_rng(seed)
    rad = r_max * np.sqrt(rng.uniform(0.0, 1.0, count))
    ang = rng.uniform(0.0, 2 * np.pi, count)
    return rad * np.exp(1j * ang)


# -- results ----------------------------------------------------------------------

class Status(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    SKIPPED = "Skipped"


@dataclass
class CheckResult:
    name: str
    status: Status
    residual: Optional[float] = None
    detail: str = ""
    reason: Optional[str] = None      # why a check was skipped
    witness: Optional[tuple] = None
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status.value
        if self.residual is not None and not math.isfinite(self.residual):
            d["residual"] = repr(self.residual)
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return d


def _skip(name, reason, detail="", **params):
    return CheckResult(name, Status.SKIPPED, detail=detail, reason=reason, params=params)


def _radii(r) -> tuple:
    if isinstance(r, (int, float)):
        return (float(r),)
    return tuple(float(x) for x in r)


def _needs_convex(map_, name, **params):
    if not map_.is_convex:
        return _skip(name, "map not claimed spherically convex", **params)
    return None


def _inequality_result(name, margins, tol, detail, params):
    worst = min(margins)
    status = Status.PASS if worst >= -tol else Status.FAIL
    return CheckResult(name, status, worst, detail, params=params)


def _strictness(margins, tol) -> str:
    return "equality within tol" if max(margins) <= tol else (
        "strict" if min(margins) > tol else "near-equality at some radii")


def check_schwarz_area(map_, r=DEFAULT_RADII, config=DEFAULT_CONFIG, tol=INEQUALITY_TOL):
    """Spherical area of f(rD) is at most that of rD."""
    name = "schwarz_area"
    radii = _radii(r)
    params = {"r": list(radii), "tol": tol}
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    margins = [disk_area(x) - spherical_area_image(map_, x, config) for x in radii]
    return _inequality_result(name, margins, tol, _strictness(margins, tol), params)


def area_lower_bounds(a: float, r: float):
    """Lower bounds for the spherical area of f(rD) given a = f#(0).

    ``(area(rD) a^2, pi r^2 a^2 / (1 + r^2 a^2))``; the second dominates.
    """
    return disk_area(r) * a * a, math.pi * r * r * a * a / (1 + r * r * a * a)


def check_area_lower_bounds(map_, r=DEFAULT_RADII, config=DEFAULT_CONFIG, tol=INEQUALITY_TOL):
    name = "area_lower_bounds"
    radii = _radii(r)
    params = {"r": list(radii), "tol": tol}
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    a = spherical_derivative(map_, 0j)
    margins, tight, order = [], [], []
    for x in radii:
        area = spherical_area_image(map_, x, config)
        b1, b2 = area_lower_bounds(a, x)
        margins += [area - b1, area - b2]
        order.append(b2 - b1)
        tight.append(abs(area - b2) <= tol)
    result = _inequality_result(name, margins + order, tol, "", params)
    result.detail = (f"fsharp0={a:.15g}; second bound tight at {sum(tight)}/{len(radii)} radii; "
                     f"ordering margin {min(order):.3g}")
    return result


def length_bounds(a: float, r: float):
    """Bounds for the spherical length of f(rT) given a = f#(0).

    Returns ``(lower_basic, upper, lower_eta, lower_refined)``.  The refined
    bound combines the isoperimetric inequality with the first area lower
    bound and therefore carries a square root.
    """
    base = circle_length(r) * a
    upper = 2 * math.pi * r * a / (1 - r * r)
    lower_eta = 2 * math.pi * r * a / (1 + r * r * a * a)
    refined = base * math.sqrt(1 + r * r * (1 - a * a))
    return base, upper, lower_eta, refined


def check_length_bounds(map_, r=DEFAULT_RADII, config=DEFAULT_CONFIG, tol=INEQUALITY_TOL):
    name = "length_bounds"
    radii = _radii(r)
    params = {"r": list(radii), "tol": tol}
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    a = spherical_derivative(map_, 0j)
    margins, tight = [], []
    for x in radii:
        length = spherical_length_image(map_, x, config)
        base, upper, lower_eta, refined = length_bounds(a, x)
        m = [length - base, upper - length, length - lower_eta, length - refined,
             refined - base]
        margins += m
        tight.append(sum(abs(v) <= tol for v in m[:4]))
    result = _inequality_result(name, margins, tol, "", params)
    result.detail = f"fsharp0={a:.15g}; tight bounds per radius {tight}"
    return result


def check_integral_mean_h(map_, r=DEFAULT_RADII, config=DEFAULT_CONFIG, tol=INEQUALITY_TOL):
    """Circle means of h_f are at least (1-r^2)/(1+r^2)."""
    name = "integral_mean_h"
    radii = _radii(r)
    params = {"r": list(radii), "tol": tol}
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    margins = [integral_mean_h(map_, x, config) - (1 - x * x) / (1 + x * x) for x in radii]
    result = _inequality_result(name, margins, tol, _strictness(margins, tol), params)
    near = [x for x, m in zip(radii, margins) if abs(m) <= tol]
    if near and not map_.is_isometry:
        result.detail += "; near-equality although the map is not flagged as an isometry"
    return result


def check_normalization(map_, grid_resolution=64, tol=INEQUALITY_TOL):
    """Compare the CentrallyNormalized claim with the numerical test."""
    name = "central_normalization"
    rep = check_central_normalization(map_, grid_resolution, tol)
    params = {"grid_resolution": grid_resolution, "tol": tol}
    detail = (f"f(0)={rep.f0:.6g} f''(0)={rep.f2_0:.6g} alpha={rep.alpha:.15g} "
              f"sup_density={rep.sup_density:.15g} normalized={rep.is_centrally_normalized}")
    claimed = map_.is_centrally_normalized
    status = Status.FAIL if claimed and not rep.is_centrally_normalized else Status.PASS
    residual = max(abs(rep.f0), abs(rep.f2_0), rep.sup_density - rep.alpha)
    return CheckResult(name, status, float(residual), detail, params=params), rep


def check_pointwise_mp_bound(map_, grid=(0.95, 60, 128), tol=INEQUALITY_TOL,
                             report: Optional[NormalizationReport] = None):
    """h_f(z) >= (1-|z|^2)/(1+|z|^2) for centrally normalized convex maps.

    ``grid`` is ``(r_max, radii, angles)``.
    """
    name = "pointwise_mp_bound"
    r_max, radii, angles = grid
    params = {"r_max": r_max, "radii": radii, "angles": angles, "tol": tol}
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    if not map_.is_centrally_normalized:
        return _skip(name, "map not claimed centrally normalized", **params)
    report = report or check_central_normalization(map_, tol=tol)
    if not report.is_centrally_normalized:
        return _skip(name, "not centrally normalized (numerical check failed)", **params)
    pts = polar_grid(r_max, radii, angles, include_origin=True)
    hs, status = pointwise(map_, pts, "h")
    raise_for_status(status, pts)
    mod2 = np.abs(pts) ** 2
    margin = hs - (1 - mod2) / (1 + mod2)
    k = int(np.argmin(margin))
    worst = float(margin.flat[k])
    status = Status.PASS if worst >= -tol else Status.FAIL
    detail = f"min margin at z={complex(pts.flat[k]):.6g}; max margin {float(margin.max()):.3g}"
    return CheckResult(name, status, worst, detail, params=params)


def check_gauss_bonnet(map_, r=DEFAULT_RADII, config=DEFAULT_CONFIG, tol=GAUSS_BONNET_TOL):
    """Total curvature of f(rT) plus four times the area of f(rD) equals 2 pi."""
    name = "gauss_bonnet"
    radii = _radii(r)
    params = {"r": list(radii), "tol": tol}
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    res = [abs(total_curvature_image(map_, x, config) + 4 * spherical_area_image(map_, x, config)
               - 2 * math.pi) for x in radii]
    worst = max(res)
    return CheckResult(name, Status.PASS if worst <= tol else Status.FAIL, worst, params=params)


def check_isoperimetric(map_, r=DEFAULT_RADII, config=DEFAULT_CONFIG, tol=ISOPERIMETRIC_TOL):
    """L^2 >= 4 pi A - 4 A^2 for the image of rD."""
    name = "isoperimetric"
    radii = _radii(r)
    params = {"r": list(radii), "tol": tol}
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    margins = []
    for x in radii:
        length = spherical_length_image(map_, x, config)
        area = spherical_area_image(map_, x, config)
        margins.append(length * length - 4 * math.pi * area + 4 * area * area)
    return _inequality_result(name, margins, tol, _strictness(margins, tol), params)


def check_connection_identity(map_, r=(0.5,), config=DEFAULT_CONFIG, tol=CONNECTION_TOL):
    """Circle integral of f#^2 equals (2/r^2) times the disk integral of h_f f#^2."""
    name = "connection_identity"
    radii = _radii(r)
    params = {"r": list(radii), "tol": tol}
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    res = []
    for x in radii:
        lhs = 2 * math.pi * circle_mean(map_, "fsharp2", x, config.angular_nodes)
        rhs = 2 / (x * x) * disk_integral(map_, "h_fsharp2", x, config)
        res.append(abs(lhs - rhs))
    worst = max(res)
    return CheckResult(name, Status.PASS if worst <= tol else Status.FAIL, worst, params=params)


def check_laplace_points(map_, seed=DEFAULT_SEED, count=5, step=LAPLACE_STEP, tol=LAPLACE_TOL):
    """Laplacian of h_f equals -8 f#^2 h_f at seeded interior points.

    Pass/Fail uses the extrapolated stencil (steps 2*step and step); the
    plain 5-point residual at ``step`` is reported in the detail.
    """
    name = "laplace_identity"
    pts = laplace_points(seed, count)
    params = {"seed": seed, "points": count, "step": step, "tol": tol,
              "stencil": "richardson(5-point, 2*step, step)"}
    res, plain, skipped = [], [], 0
    for z in pts:
        try:
            res.append(laplace_residual_extrapolated(map_, z, 2 * step))
            plain.append(check_laplace_identity(map_, z, step))
        except SphconvError as exc:
            log.info("laplace check skipped z=%s: %s", z, exc)
            skipped += 1
    if not res:
        return _skip(name, "h undefined at every sample point", **params)
    worst = max(res)
    detail = f"{len(res)} points; plain 5-point residual at step {step:g}: {max(plain):.3g}"
    if skipped:
        detail += f"; {skipped} skipped"
    return CheckResult(name, Status.PASS if worst <= tol else Status.FAIL, worst, detail,
                       params=params)


def _expect_monotone(name, profile, allowed, slack, params, reason_if_fail=""):
    verdict = classify_monotone(profile, slack)
    ok = verdict.classification in allowed
    return CheckResult(name, Status.PASS if ok else Status.FAIL, None,
                       verdict.describe() + ("" if ok else reason_if_fail),
                       witness=verdict.witness, params=params), verdict


def _profile_params(config, grid, slack):
    return {"r_min": grid[0], "r_max": grid[1], "steps": grid[2], "slack": slack,
            "nodes": config.angular_nodes, "radial": config.radial_nodes}


def check_log_mean_monotone(map_, config=DEFAULT_CONFIG, grid=PROFILE_GRID,
                            slack=MONOTONE_SLACK):
    """Circle means of log[(1+r^2) f#] increase (constant for isometries)."""
    name = "log_mean_monotone"
    params = _profile_params(config, grid, slack)
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    profile = radial_profile(map_, Quantity.LOG_MEAN, *grid, config)
    allowed = _increasing_or_constant(map_)
    return _expect_monotone(name, profile, allowed, slack, params)[0]


def check_mean_density_decreasing(map_, config=DEFAULT_CONFIG, grid=PROFILE_GRID,
                                  slack=MONOTONE_SLACK):
    """Circle means of (1-|z|^2) f# (hyperbolic length ratio) do not increase."""
    name = "mean_density_decreasing"
    params = _profile_params(config, grid, slack)
    skip = _needs_convex(map_, name, **params)
    if skip:
        return skip
    profile = radial_profile(map_, Quantity.HYP_LEN_RATIO, *grid, config)
    allowed = {Classification.STRICTLY_DECREASING, Classification.CONSTANT}
    return _expect_monotone(name, profile, allowed, slack, params)[0]


def _increasing_or_constant(map_):
    if map_.is_isometry:
        return {Classification.CONSTANT}
    return {Classification.STRICTLY_INCREASING}


def check_ratio_monotone(map_, quantity, config=DEFAULT_CONFIG, grid=PROFILE_GRID,
                         slack=MONOTONE_SLACK, report: Optional[NormalizationReport] = None):
    """Monotonicity of the area, length or curvature ratio.

    The area ratio needs only spherical convexity; the length and curvature
    ratios also need central normalization.  When a hypothesis is missing the
    observed classification is still reported, as a Skipped line.
    """
    quantity = Quantity(quantity)
    name = f"{quantity.value}_monotone"
    params = _profile_params(config, grid, slack)
    needs_normal = quantity in (Quantity.LEN_RATIO, Quantity.CURV_RATIO)
    reason = None
    if not map_.is_convex:
        reason = "map not claimed spherically convex"
    elif needs_normal and not map_.is_centrally_normalized:
        reason = "map not claimed centrally normalized"
    elif needs_normal:
        report = report or check_central_normalization(map_)
        if not report.is_centrally_normalized:
            reason = "not centrally normalized (numerical check failed)"
    profile = radial_profile(map_, quantity, *grid, config)
    if reason is not None:
        try:
            observed = classify_monotone(profile, slack)
            detail = f"observed {observed.describe()} (informational)"
            witness = observed.witness
        except TooFewSamples as exc:
            detail, witness = f"observed: {exc}", None
        result = _skip(name, reason, detail, **params)
        result.witness = witness
        return result
    return _expect_monotone(name, profile, _increasing_or_constant(map_), slack, params)[0]


def check_flag_consistency(map_, scan: ConvexityReport) -> CheckResult:
    """A map claimed convex must not show h < 0 on the scan grid."""
    name = "convexity_scan"
    params = {"r_max": scan.r_max, "radii": scan.radii, "angles": scan.angles, "tol": scan.tol}
    detail = f"min_h={scan.min_h:.15g} at z={scan.argmin:.6g}"
    if scan.skipped:
        detail += f"; {scan.skipped} grid points skipped"
    if scan.is_nonnegative:
        detail += "; h >= 0 on grid"
        return CheckResult(name, Status.PASS, scan.min_h, detail, params=params)
    detail += "; h < 0 on grid: not spherically convex"
    status = Status.FAIL if map_.is_convex else Status.PASS
    return CheckResult(name, status, scan.min_h, detail, params=params)


def verify_all(map_: MapDefinition, config: QuadratureConfig = DEFAULT_CONFIG,
               seed: int = DEFAULT_SEED, radii=DEFAULT_RADII) -> list:
    """Run every applicable check; each failure is captured, never raised."""
    results = []

    def run(name, fn, *args, **kwargs):
        try:
            out = fn(*args, **kwargs)
        except SphconvError as exc:
            out = CheckResult(name, Status.FAIL, detail=f"error: {exc}")
        results.append(out)
        return out

    norm_result, report = None, None
    try:
        norm_result, report = check_normalization(map_)
    except SphconvError as exc:
        norm_result = CheckResult("central_normalization", Status.FAIL, detail=f"error: {exc}")
    results.append(norm_result)

    try:
        scan = convexity_scan(map_)
        results.append(check_flag_consistency(map_, scan))
    except SphconvError as exc:
        results.append(CheckResult("convexity_scan", Status.FAIL, detail=f"error: {exc}"))

    run("schwarz_area", check_schwarz_area, map_, radii, config)
    run("area_lower_bounds", check_area_lower_bounds, map_, radii, config)
    run("length_bounds", check_length_bounds, map_, radii, config)
    run("integral_mean_h", check_integral_mean_h, map_, radii, config)
    if report is not None:
        run("pointwise_mp_bound", check_pointwise_mp_bound, map_, report=report)
    else:
        results.append(_skip("pointwise_mp_bound", "normalization check errored"))
    run("gauss_bonnet", check_gauss_bonnet, map_, radii, config)
    run("isoperimetric", check_isoperimetric, map_, radii, config)
    run("connection_identity", check_connection_identity, map_, (0.25, 0.5, 0.75), config)
    run("laplace_identity", check_laplace_points, map_, seed)
    run("log_mean_monotone", check_log_mean_monotone, map_, config)
    run("mean_density_decreasing", check_mean_density_decreasing, map_, config)
    for q in (Quantity.AREA_RATIO, Quantity.LEN_RATIO, Quantity.CURV_RATIO):
        run(f"{q.value}_monotone", check_ratio_monotone, map_, q, config, report=report)
    return results
