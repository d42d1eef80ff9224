"""Envelopes, bound checks, the two-angle search, and extremal probes."""

from ..convexity import convex_curve_check, direction_convexity_check, hull_containment
from .bounds import (
    BieberbachReport,
    BoundReport,
    BoundSample,
    bieberbach_check,
    check_f_growth,
    check_h_bounds,
    check_sum_bound,
    coefficient_check,
    coefficient_equality,
    koebe_distance,
    polar_points,
    refined_distortion_check,
)
from .css import DirectionPair, css2_search, css_grid, css_q, css_residual, herglotz_delta
from .envelopes import ENVELOPES, H_GROWTH_LIMIT, envelope, envelope_strictness, envelopes
from .extremal import (
    CoveringEstimate,
    RigidityFinding,
    SharpnessRow,
    covering_radius,
    growth_order_L,
    rigidity_probe,
    sharpness_table,
)

__all__ = [
    "BieberbachReport",
    "BoundReport",
    "BoundSample",
    "CoveringEstimate",
    "DirectionPair",
    "ENVELOPES",
    "H_GROWTH_LIMIT",
    "RigidityFinding",
    "SharpnessRow",
    "bieberbach_check",
    "check_f_growth",
    "check_h_bounds",
    "check_sum_bound",
    "coefficient_check",
    "coefficient_equality",
    "convex_curve_check",
    "covering_radius",
    "css2_search",
    "css_grid",
    "css_q",
    "css_residual",
    "direction_convexity_check",
    "envelope",
    "envelope_strictness",
    "envelopes",
    "growth_order_L",
    "herglotz_delta",
    "hull_containment",
    "koebe_distance",
    "polar_points",
    "refined_distortion_check",
    "rigidity_probe",
    "sharpness_table",
]
