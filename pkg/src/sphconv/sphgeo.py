"""Pointwise spherical geometry of a meromorphic map f of the unit disk.

The quantities here are the spherical derivative ``f#(z) = |f'|/(1+|f|^2)``,
the convexity function

    h_f(z) = Re{ 1 + z f''/f' - 2 z f' conj(f) / (1 + |f|^2) },

and the spherical curvature of circles and image curves.  Both ``f#`` and
``h_f`` are unchanged when f is post-composed with a rotation of the sphere,
in particular with ``w -> 1/w``, so every point may be evaluated in whichever
chart (``f`` or ``1/f``) keeps ``|w| <= 1``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (BranchError, CriticalPointError, DegenerateTangent, DomainError,
                     EvaluationError, LogOfZero, PoleError)
from .expr import Add, Claim, Const, Div, MapDefinition, Mul, Sub
from .jet import STATUS_BRANCH, STATUS_OK, STATUS_POLE, JetArrays, eval_jet, eval_jets

__all__ = [
    "Chart", "SpherePoint", "to_sphere_point", "chart_jets", "pointwise", "QUANTITIES",
    "spherical_derivative", "h", "curvature_circle", "curvature_image_circle",
    "curve_curvature", "image_curve_derivatives", "post_compose_rotation",
    "NormalizationReport", "check_central_normalization", "polar_grid",
    "STATUS_CRITICAL", "STATUS_LOG_ZERO", "raise_for_status",
]

STATUS_CRITICAL = 3
STATUS_LOG_ZERO = 4


class Chart(str, enum.Enum):
    STANDARD = "Standard"
    INVERTED = "Inverted"


@dataclass(frozen=True)
class SpherePoint:
    """A point of the Riemann sphere; ``Inverted`` stores 1/w."""

    value: complex
    chart: Chart

    @property
    def w(self) -> complex:
        if self.chart is Chart.STANDARD:
            return self.value
        return complex("inf") if self.value == 0 else 1 / self.value


def to_sphere_point(map_: MapDefinition, z: complex) -> SpherePoint:
    jets, inverted = chart_jets(map_, np.array([z], dtype=complex))
    raise_for_status(jets.status, np.array([z]))
    chart = Chart.INVERTED if inverted[0] else Chart.STANDARD
    return SpherePoint(complex(jets.v[0]), chart)


def chart_jets(map_: MapDefinition, zs):
    """Jets of f, or of 1/f where that chart is needed.

    Returns ``(jets, inverted)``; ``inverted`` marks points evaluated through
    the inverse chart.  Switching happens where the standard chart fails or
    ``|f| > 1`` and an inverse-chart expression is available.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    std = eval_jets(map_.ast, zs)
    inverted = np.zeros(zs.shape, dtype=bool)
    if map_.inverse_chart is None:
        return std, inverted
    with np.errstate(invalid="ignore"):
        want = (std.status != STATUS_OK) | (np.abs(std.v) > 1)
    if not want.any():
        return std, inverted
    inv = eval_jets(map_.inverse_chart, zs[want])
    take = np.zeros(zs.shape, dtype=bool)
    take[want] = inv.status == STATUS_OK
    sub = inv.status == STATUS_OK
    v, d1, d2, status = std.v.copy(), std.d1.copy(), std.d2.copy(), std.status.copy()
    v[take] = inv.v[sub]
    d1[take] = inv.d1[sub]
    d2[take] = inv.d2[sub]
    status[take] = STATUS_OK
    return JetArrays(v, d1, d2, status), take


def _fsharp(jets):
    return np.abs(jets.d1) / (1 + np.abs(jets.v) ** 2)


def _h(zs, jets, status):
    crit = (jets.d1 == 0) & (status == STATUS_OK)
    status[crit] = STATUS_CRITICAL
    d1 = np.where(crit, np.nan, jets.d1)
    w = jets.v
    return (1 + zs * jets.d2 / d1 - 2 * zs * d1 * np.conj(w) / (1 + np.abs(w) ** 2)).real


def _log_density(zs, jets, status):
    dens = (1 + np.abs(zs) ** 2) * _fsharp(jets)
    zero = (dens == 0) & (status == STATUS_OK)
    status[zero] = STATUS_LOG_ZERO
    return np.log(np.where(zero, np.nan, dens))


QUANTITIES = {
    "fsharp": lambda zs, jets, status: _fsharp(jets),
    "fsharp2": lambda zs, jets, status: _fsharp(jets) ** 2,
    "h": _h,
    "h_fsharp2": lambda zs, jets, status: _h(zs, jets, status) * _fsharp(jets) ** 2,
    # (1 - |z|^2) f#, the hyperbolic-to-spherical density ratio
    "density": lambda zs, jets, status: (1 - np.abs(zs) ** 2) * _fsharp(jets),
    "logdens": _log_density,
}


def pointwise(map_: MapDefinition, zs, quantity: str):
    """Evaluate a named pointwise quantity at every point of ``zs``.

    Returns ``(values, status)``.  Failed points hold NaN and a nonzero
    status; use `raise_for_status` to turn the first failure into an error.
    """
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}; choose from {sorted(QUANTITIES)}")
    zs = np.asarray(zs, dtype=np.complex128)
    jets, _ = chart_jets(map_, zs)
    status = jets.status.copy()
    with np.errstate(all="ignore"):
        values = QUANTITIES[quantity](zs, jets, status)
    values = np.where(status == STATUS_OK, values, np.nan)
    return values, status


_ERRORS = {
    STATUS_POLE: (PoleError, "pole"),
    STATUS_BRANCH: (BranchError, "sqrt branch point"),
    STATUS_CRITICAL: (CriticalPointError, "critical point f'(z)=0"),
    STATUS_LOG_ZERO: (LogOfZero, "logarithm of zero density"),
}


def raise_for_status(status, zs, indexed: bool = False) -> None:
    """Raise the error for the first failed point, if any."""
    status = np.asarray(status).ravel()
    bad = np.flatnonzero(status)
    if bad.size == 0:
        return
    k = int(bad[0])
    z = complex(np.asarray(zs).ravel()[k])
    cls, what = _ERRORS.get(int(status[k]), (EvaluationError, "evaluation failed"))
    raise cls(f"{what} at z={z:.15g}", z=z, index=k if indexed else None)


def _scalar(map_, z, quantity):
    zs = np.array([complex(z)])
    values, status = pointwise(map_, zs, quantity)
    raise_for_status(status, zs)
    value = float(values[0])
    if not math.isfinite(value):
        raise EvaluationError(f"non-finite {quantity} at z={complex(z):.15g}", z=complex(z))
    return value


def spherical_derivative(map_: MapDefinition, z: complex) -> float:
    """``|f'(z)| / (1 + |f(z)|^2)``."""
    return _scalar(map_, z, "fsharp")


def h(map_: MapDefinition, z: complex) -> float:
    """The convexity function h_f at z; nonnegative on the disk iff f is spherically convex."""
    return _scalar(map_, z, "h")


def curvature_circle(r: float) -> float:
    """Spherical curvature of the circle |z| = r."""
    if not 0 < r < 1:
        raise DomainError(f"curvature_circle needs 0 < r < 1, got {r}")
    return (1 - r * r) / r


def curvature_image_circle(map_: MapDefinition, z: complex) -> float:
    """Spherical curvature of the image curve f(|z| T) at f(z)."""
    z = complex(z)
    r = abs(z)
    if not 0 < r < 1:
        raise DomainError(f"curvature_image_circle needs 0 < |z| < 1, got |z|={r}")
    fs = spherical_derivative(map_, z)
    if fs == 0:
        raise CriticalPointError(f"f#(z) = 0 at z={z:.15g}", z=z)
    return h(map_, z) / (r * fs)


def curve_curvature(zt: complex, dz: complex, ddz: complex) -> float:
    """Spherical curvature of a C^2 curve at the point ``zt``.

    ``dz`` and ``ddz`` are the first and second derivatives of the
    parametrisation.  Euclidean curvature minus the metric correction,
    divided by the density 1/(1+|z|^2).
    """
    zt, dz, ddz = complex(zt), complex(dz), complex(ddz)
    speed = abs(dz)
    if speed == 0:
        raise DegenerateTangent("curve has a vanishing tangent")
    kappa_euclid = (dz.conjugate() * ddz).imag / speed ** 3
    q = 1 + abs(zt) ** 2
    correction = (2 * zt.conjugate() * dz / (q * speed)).imag
    return (kappa_euclid - correction) * q


def image_curve_derivatives(map_: MapDefinition, z: complex):
    """Point, velocity and acceleration of t -> f(|z| e^{it}) at z, standard chart."""
    j = eval_jet(map_.ast, z)
    iz = 1j * complex(z)
    return j.v, j.d1 * iz, j.d2 * iz * iz + j.d1 * 1j * iz


def post_compose_rotation(map_: MapDefinition, a: complex, theta: float) -> MapDefinition:
    """The map T o f with T(w) = e^{i theta} (w - a) / (1 + conj(a) w).

    When f carries an inverse chart g = 1/f the result is written in terms of
    g so the new map stays evaluable at the poles of f.
    """
    a = complex(a)
    u = cmath.exp(1j * theta)
    ac = a.conjugate()
    if map_.inverse_chart is None:
        f = map_.ast
        num = Sub(f, Const(a))
        den = Add(Const(1), Mul(Const(ac), f))
    else:
        g = map_.inverse_chart
        num = Sub(Const(1), Mul(Const(a), g))
        den = Add(g, Const(ac))
    claims = set(map_.claimed_properties)
    # f(0)=0 and f''(0)=0 survive only a pure rotation w -> e^{i theta} w
    if a != 0:
        claims.discard(Claim.CENTRALLY_NORMALIZED)
    name = f"rot({a.real:.15g}{a.imag:+.15g}i,{theta:.15g})o{map_.name}"
    return MapDefinition(name, Mul(Const(u), Div(num, den)),
                         Mul(Const(u.conjugate()), Div(den, num)), frozenset(claims))


def polar_grid(r_max: float, radii: int, angles: int, include_origin: bool = False):
    """Points r_j e^{i t_k}; r_j = r_max j / radii (j = 1..radii), t_k = 2 pi k / angles."""
    start = 0 if include_origin else 1
    rs = r_max * np.arange(start, radii + 1) / radii
    ts = 2 * np.pi * np.arange(angles) / angles
    return rs[:, None] * np.exp(1j * ts)[None, :]


@dataclass(frozen=True)
class NormalizationReport:
    f0: complex
    f2_0: complex
    alpha: float
    sup_density: float
    is_centrally_normalized: bool
    tol: float


def check_central_normalization(map_: MapDefinition, grid_resolution: int = 64,
                                tol: float = 1e-9) -> NormalizationReport:
    """Test f(0) = 0, f''(0) = 0 and max (1-|z|^2) f# = f#(0) on a polar grid.

    The grid has ``grid_resolution`` radii in (0, 0.995] and as many angles.
    """
    try:
        j = eval_jet(map_.ast, 0j)
        f0, f2_0 = j.v, j.d2
    except PoleError:
        f0 = f2_0 = complex(math.inf, 0)
    alpha = spherical_derivative(map_, 0j)
    grid = polar_grid(0.995, grid_resolution, grid_resolution)
    dens, _ = pointwise(map_, grid, "density")
    sup = max(alpha, float(np.nanmax(dens)) if np.isfinite(dens).any() else alpha)
    ok = abs(f0) <= tol and abs(f2_0) <= tol and sup <= alpha + tol
    return NormalizationReport(f0, f2_0, alpha, sup, bool(ok), tol)
