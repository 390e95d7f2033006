"""Spherical geometry of meromorphic maps of the unit disk.

Parse a map, evaluate its spherical derivative and convexity function with
exact second-order jets, integrate lengths, areas and curvatures of image
circles, and check the classical inequalities numerically.
"""

from .errors import (BranchError, CriticalPointError, DegenerateTangent, DomainError,
                     EvaluationError, ExprSyntaxError, LogOfZero, NonIntegerExponent,
                     PoleError, SphconvError, TooFewSamples, UnknownBuiltin)
from .expr import Claim, MapDefinition, builtin, parse, parse_complex, to_source
from .jet import BACKEND, Jet2, available_backends, eval_jet, eval_jets
from .quad import DEFAULT_CONFIG, QuadratureConfig, Quantity, RadialProfile, radial_profile
from .sphgeo import (curvature_circle, curvature_image_circle, curve_curvature, h,
                     post_compose_rotation, spherical_derivative)
from .verify import (CheckResult, Classification, Status, classify_monotone, convexity_scan,
                     verify_all)

__version__ = "0.1.0"
