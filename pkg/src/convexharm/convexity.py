"""Convexity tests on sampled image curves.

Three criteria live here:

``convex_curve_check``
    Discrete convexity of one image curve ``f(r e^{it})`` by the sign of the
    turning cross products.  For analytic convex maps every such curve is
    convex.  For convex *harmonic* maps it is not (the image of a subdisk of
    the half-plane harmonic map is already non-convex at ``r = 0.5``), so this
    test is not used for membership.

``direction_convexity_check``
    Convexity of one image curve in a direction: after rotating the direction
    to the real axis, the imaginary part must have exactly two turning points.

``hull_containment``
    The membership certificate.  For each inner radius ``r``, the convex hull
    of ``f(|z| <= r)``, clipped to a window ``|w| <= R``, must lie inside
    ``f(|z| < r_out)``.  If ``f(D)`` is convex this holds once ``r_out`` is
    close enough to 1; if it is not convex, it fails for ``r`` close to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull

from . import _accel
from .errors import DegenerateCurve

CURVE_TOL = 1e-9
CURVE_SAMPLES = 1024
OUTER_SAMPLES = 8192
WINDOW_FACTOR = 8.0
HULL_INNER_SAMPLES = 1024
HULL_TEST_POINTS = 8192


def _evaluate(f, z):
    return np.asarray(f(z), dtype=np.complex128)


def sample_curve(f, r: float, m: int) -> np.ndarray:
    """``f(r e^{2 pi i k/m})`` for ``k = 0..m-1``."""
    if not 0 < r < 1:
        raise ValueError("radius must lie in (0, 1)")
    t = 2 * np.pi * np.arange(m) / m
    return _evaluate(f, r * np.exp(1j * t))


def _edges_ok(w):
    d = np.abs(np.roll(w, -1) - w)
    scale = max(float(np.max(np.abs(w - w.mean()))), 1e-300)
    if np.any(d <= 1e-14 * scale) or not np.all(np.isfinite(w)):
        raise DegenerateCurve("consecutive curve samples coincide")


@dataclass(frozen=True)
class CurveConvexity:
    convex: bool
    min_cross: float
    orientation: int
    r: float
    samples: int


def convex_curve_check(f, r: float, m: int = CURVE_SAMPLES, tol: float = CURVE_TOL) -> CurveConvexity:
    """Is the closed curve ``f(r e^{it})`` convex?

    ``min_cross`` is the smallest turning cross product normalized by edge
    lengths (the sine of the turning angle), signed so that the dominant
    orientation is positive.
    """
    if m < 256:
        raise ValueError("use at least 256 samples")
    w = sample_curve(f, r, m)
    _edges_ok(w)
    cr = _accel.turn_cross(np.ascontiguousarray(w.real), np.ascontiguousarray(w.imag))
    orient = 1 if np.sum(cr) >= 0 else -1
    mn = float(np.min(orient * cr))
    return CurveConvexity(mn >= -tol, mn, orient, r, m)


@dataclass(frozen=True)
class DirectionConvexity:
    convex: bool
    turning_points: int
    theta: float
    r: float


def direction_convexity_check(
    f, theta: float, r: float, m: int = CURVE_SAMPLES, tol: float = CURVE_TOL
) -> DirectionConvexity:
    """Is the curve ``f(r e^{it})`` convex in the direction ``e^{i theta}``?

    Steps whose rise (relative to the curve extent) is below ``tol`` are
    treated as flat and skipped when counting sign changes.
    """
    if m < 256:
        raise ValueError("use at least 256 samples")
    w = sample_curve(f, r, m)
    _edges_ok(w)
    y = (w * np.exp(-1j * theta)).imag
    dy = np.roll(y, -1) - y
    extent = float(np.ptp(y)) or 1.0
    s = np.sign(dy)
    s = s[np.abs(dy) > tol * extent]
    changes = int(np.count_nonzero(s != np.roll(s, 1))) if s.size else 0
    return DirectionConvexity(changes == 2, changes, float(theta), r)


@dataclass
class RadiusCertificate:
    r: float
    points_tested: int
    points_inside: int
    window: float

    @property
    def fraction_inside(self) -> float:
        return self.points_inside / max(self.points_tested, 1)

    @property
    def passed(self) -> bool:
        return self.points_inside == self.points_tested


@dataclass
class ConvexityCertificate:
    outer_radius: float
    radii: list = field(default_factory=list)

    @property
    def convex(self) -> bool:
        return bool(self.radii) and all(c.passed for c in self.radii)

    def to_dict(self) -> dict:
        return {
            "outer_radius": self.outer_radius,
            "convex": self.convex,
            "radii": [
                {"r": c.r, "tested": c.points_tested, "inside": c.points_inside, "window": c.window}
                for c in self.radii
            ],
        }


def _hull_boundary_points(pts: np.ndarray, step: float, max_points: int) -> np.ndarray:
    hull = ConvexHull(np.c_[pts.real, pts.imag])
    v = pts[hull.vertices]
    perimeter = float(np.sum(np.abs(np.roll(v, -1) - v)))
    step = max(step, perimeter / max_points)
    out = []
    for a, b in zip(v, np.roll(v, -1)):
        n = max(2, int(np.ceil(abs(b - a) / step)))
        out.append(a + (b - a) * np.arange(n) / n)
    return np.concatenate(out)


def hull_containment(
    f,
    radii=(0.5, 0.9, 0.99),
    outer_radius: float = 0.9999,
    m_inner: int = HULL_INNER_SAMPLES,
    m_outer: int = OUTER_SAMPLES,
    window_factor: float = WINDOW_FACTOR,
    max_test_points: int = HULL_TEST_POINTS,
) -> ConvexityCertificate:
    """Certify convexity of ``f(D)`` at the given radii (see module docstring)."""
    scale = float(np.max(np.abs(sample_curve(f, 0.5, 256))))
    window = window_factor * scale
    outer = sample_curve(f, outer_radius, m_outer)
    ox = np.ascontiguousarray(outer.real)
    oy = np.ascontiguousarray(outer.imag)
    ring = window * np.exp(2j * np.pi * np.arange(2048) / 2048)
    cert = ConvexityCertificate(outer_radius)
    for r in radii:
        w = sample_curve(f, r, m_inner)
        if not np.all(np.isfinite(w)):
            cert.radii.append(RadiusCertificate(r, 1, 0, window))
            continue
        inside_ring = _accel.points_in_polygon(
            np.ascontiguousarray(ring.real), np.ascontiguousarray(ring.imag),
            np.ascontiguousarray(w.real), np.ascontiguousarray(w.imag),
        )
        keep = np.abs(w) <= window
        pts = np.concatenate([w[keep], ring[inside_ring]])
        steps = np.abs(np.diff(w[keep])) if keep.sum() > 1 else np.array([window / 256])
        step = float(np.median(steps))
        test = _hull_boundary_points(pts, step, max_test_points)
        ins = _accel.points_in_polygon(np.ascontiguousarray(test.real), np.ascontiguousarray(test.imag), ox, oy)
        cert.radii.append(RadiusCertificate(r, int(test.size), int(np.count_nonzero(ins)), window))
    return cert
