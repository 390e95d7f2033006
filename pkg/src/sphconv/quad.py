"""Circle means, spherical length/area/total curvature and their ratios.

Circle integrals use the periodic trapezoidal rule (geometrically convergent
for the real-analytic integrands here).  Disk integrals are nested: Gauss-
Legendre in the radius, trapezoidal in the angle.  Area is deliberately not
reduced to a boundary integral of h_f, so the Gauss-Bonnet identity
``total curvature + 4 * area = 2 pi`` compares two independent computations.
"""

from __future__ import annotations

import enum
import functools
import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, SphconvError
from .expr import MapDefinition
from .sphgeo import pointwise, raise_for_status

__all__ = [
    "QuadratureConfig", "DEFAULT_CONFIG", "Quantity", "ProfileSample", "RadialProfile",
    "circle_nodes", "circle_mean", "disk_integral", "gauss_legendre",
    "spherical_length_image", "spherical_area_image", "total_curvature_image",
    "len_ratio", "area_ratio", "curv_ratio", "hyp_len_ratio", "log_mean",
    "integral_mean_h", "evaluate_quantity", "radial_profile",
    "circle_length", "disk_area", "circle_total_curvature",
]

ENV_NODES = "SPHCONV_NODES"


@dataclass(frozen=True)
class QuadratureConfig:
    angular_nodes: int = 256
    radial_nodes: int = 48

    def __post_init__(self):
        n, m = self.angular_nodes, self.radial_nodes
        if n < 16 or n & (n - 1):
            raise ValueError(f"angular_nodes must be a power of two >= 16, got {n}")
        if m < 8:
            raise ValueError(f"radial_nodes must be >= 8, got {m}")

    @classmethod
    def from_env(cls, radial_nodes: int = 48) -> "QuadratureConfig":
        """Default config, with the angular node count taken from SPHCONV_NODES if set."""
        raw = os.environ.get(ENV_NODES)
        return cls(int(raw) if raw else 256, radial_nodes)


DEFAULT_CONFIG = QuadratureConfig()


# closed forms for the identity map
def circle_length(r: float) -> float:
    """Spherical length of the circle |z| = r."""
    return 2 * math.pi * r / (1 + r * r)


def disk_area(r: float) -> float:
    """Spherical area of the disk |z| < r."""
    return math.pi * r * r / (1 + r * r)


def circle_total_curvature(r: float) -> float:
    return 2 * math.pi * (1 - r * r) / (1 + r * r)


def _check_radius(r: float) -> None:
    if not 0 < r < 1:
        raise DomainError(f"radius must lie in (0, 1), got {r}")


def circle_nodes(r: float, n: int) -> np.ndarray:
    k = np.arange(n)
    return r * np.exp(2j * np.pi * k / n)


def circle_mean(map_: MapDefinition, quantity: str, r: float, n: int = 256) -> float:
    """Mean of a pointwise quantity over |z| = r using n equispaced nodes."""
    zs = circle_nodes(r, n)
    values, status = pointwise(map_, zs, quantity)
    raise_for_status(status, zs, indexed=True)
    return float(np.mean(values))


@functools.lru_cache(maxsize=32)
def gauss_legendre(m: int):
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(m)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def disk_integral(map_: MapDefinition, quantity: str, r: float,
                  config: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Integral of a pointwise quantity over |z| < r against area measure."""
    _check_radius(r)
    x, w = gauss_legendre(config.radial_nodes)
    rho = 0.5 * r * (x + 1)
    zs = rho[:, None] * np.exp(2j * np.pi * np.arange(config.angular_nodes) / config.angular_nodes)
    values, status = pointwise(map_, zs, quantity)
    raise_for_status(status, zs, indexed=True)
    ring_means = values.mean(axis=1)
    return float(0.5 * r * np.dot(w, rho * 2 * np.pi * ring_means))


def spherical_length_image(map_, r, config=DEFAULT_CONFIG) -> float:
    """Spherical length of f(|z| = r)."""
    _check_radius(r)
    return 2 * math.pi * r * circle_mean(map_, "fsharp", r, config.angular_nodes)


def spherical_area_image(map_, r, config=DEFAULT_CONFIG) -> float:
    """Spherical area of f(|z| < r), counted with multiplicity."""
    return disk_integral(map_, "fsharp2", r, config)


def total_curvature_image(map_, r, config=DEFAULT_CONFIG) -> float:
    """Total spherical curvature of f(|z| = r), i.e. the integral of h_f over the circle."""
    _check_radius(r)
    return 2 * math.pi * circle_mean(map_, "h", r, config.angular_nodes)


def len_ratio(map_, r, config=DEFAULT_CONFIG) -> float:
    """Spherical length of f(rT) over that of rT."""
    _check_radius(r)
    return (1 + r * r) * circle_mean(map_, "fsharp", r, config.angular_nodes)


def area_ratio(map_, r, config=DEFAULT_CONFIG) -> float:
    return spherical_area_image(map_, r, config) / disk_area(r)


def curv_ratio(map_, r, config=DEFAULT_CONFIG) -> float:
    """Total spherical curvature of f(rT) over that of rT."""
    _check_radius(r)
    return (1 + r * r) / (1 - r * r) * circle_mean(map_, "h", r, config.angular_nodes)


def hyp_len_ratio(map_, r, config=DEFAULT_CONFIG) -> float:
    """Spherical length of f(rT) over the hyperbolic length of rT."""
    _check_radius(r)
    return (1 - r * r) * circle_mean(map_, "fsharp", r, config.angular_nodes)


def log_mean(map_, r, config=DEFAULT_CONFIG) -> float:
    """Circle mean of log[(1 + r^2) f#]."""
    _check_radius(r)
    return circle_mean(map_, "logdens", r, config.angular_nodes)


def integral_mean_h(map_, r, config=DEFAULT_CONFIG) -> float:
    _check_radius(r)
    return circle_mean(map_, "h", r, config.angular_nodes)


class Quantity(str, enum.Enum):
    LEN_RATIO = "lenratio"
    AREA_RATIO = "arearatio"
    CURV_RATIO = "curvratio"
    HYP_LEN_RATIO = "hyplenratio"
    LOG_MEAN = "logmean"
    INTEGRAL_MEAN_H = "meanh"
    SPHERICAL_LENGTH = "length"
    SPHERICAL_AREA = "area"
    TOTAL_CURVATURE = "totalcurvature"


_EVALUATORS = {
    Quantity.LEN_RATIO: len_ratio,
    Quantity.AREA_RATIO: area_ratio,
    Quantity.CURV_RATIO: curv_ratio,
    Quantity.HYP_LEN_RATIO: hyp_len_ratio,
    Quantity.LOG_MEAN: log_mean,
    Quantity.INTEGRAL_MEAN_H: integral_mean_h,
    Quantity.SPHERICAL_LENGTH: spherical_length_image,
    Quantity.SPHERICAL_AREA: spherical_area_image,
    Quantity.TOTAL_CURVATURE: total_curvature_image,
}


def evaluate_quantity(map_, quantity, r, config=DEFAULT_CONFIG) -> float:
    return _EVALUATORS[Quantity(quantity)](map_, r, config)


@dataclass(frozen=True)
class ProfileSample:
    r: float
    value: float
    reason: Optional[str] = None  # set for gaps; value is NaN then

    @property
    def is_gap(self) -> bool:
        return self.reason is not None


@dataclass(frozen=True)
class RadialProfile:
    quantity: Quantity
    samples: tuple
    map_name: str
    config: QuadratureConfig = field(default=DEFAULT_CONFIG)

    @property
    def rs(self) -> np.ndarray:
        return np.array([s.r for s in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples])

    @property
    def gaps(self) -> list:
        return [s for s in self.samples if s.is_gap]


def radial_profile(map_: MapDefinition, quantity, r_min: float, r_max: float, steps: int,
                   config: QuadratureConfig = DEFAULT_CONFIG) -> RadialProfile:
    """Sample a quantity on a uniform radius grid; failures become gaps."""
    if not 0 < r_min < r_max < 1:
        raise DomainError(f"need 0 < r_min < r_max < 1, got {r_min}, {r_max}")
    if steps < 2:
        raise DomainError(f"need steps >= 2, got {steps}")
    quantity = Quantity(quantity)
    samples = []
    for r in np.linspace(r_min, r_max, steps):
        r = float(r)
        try:
            samples.append(ProfileSample(r, evaluate_quantity(map_, quantity, r, config)))
        except SphconvError as exc:
            samples.append(ProfileSample(r, math.nan, str(exc)))
    return RadialProfile(quantity, tuple(samples), map_.name, config)
