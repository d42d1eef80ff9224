"""Convex harmonic mappings of the unit disk: series, canonical maps, shears,
the ``F_a`` transform, and numerical checks of the sharp growth and
distortion bounds for the analytic part."""

from . import analysis, mappings, sampler, series, transforms
from ._accel import BACKEND
from .errors import ConvexHarmError
from .mappings import (
    AnalyticMap,
    ClassMembership,
    HarmonicMap,
    dilatation,
    evaluate_harmonic,
    harmonic_L,
    membership,
    rotate_analytic,
    rotate_harmonic,
    shear,
)
from .series import TruncatedSeries, extract_coeffs
from .transforms import TransformResult, koebe_transform, transformed_dilatation

__version__ = "0.1.0"

__all__ = [
    "AnalyticMap",
    "BACKEND",
    "ClassMembership",
    "ConvexHarmError",
    "HarmonicMap",
    "TransformResult",
    "TruncatedSeries",
    "analysis",
    "dilatation",
    "evaluate_harmonic",
    "extract_coeffs",
    "harmonic_L",
    "koebe_transform",
    "mappings",
    "membership",
    "rotate_analytic",
    "rotate_harmonic",
    "sampler",
    "series",
    "shear",
    "transformed_dilatation",
    "transforms",
]
