"""Extremal behaviour: covering radii, growth order of L, rigidity, sharpness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ..mappings import HarmonicMap, harmonic_L, halfplane_H, rotate_harmonic
from .envelopes import envelope

DENSE_ANGLES = 8192
RIGIDITY_TOL = 1e-6
RIGIDITY_N = 12
MATCH_TOL = 1e-6


def _circle_extremum(fun, r: float, sign: float, n: int = DENSE_ANGLES) -> float:
    """``sign * min_t sign*|fun(r e^{it})|`` by dense sampling then bounded refinement."""
    t = 2 * np.pi * np.arange(n) / n
    v = sign * np.abs(fun(r * np.exp(1j * t)))
    k = int(np.argmin(v))
    h = 2 * np.pi / n
    res = minimize_scalar(
        lambda s: sign * abs(complex(np.asarray(fun(np.array([r * np.exp(1j * s)])))[0])),
        bounds=(t[k] - h, t[k] + h),
        method="bounded",
        options={"xatol": 1e-13},
    )
    return sign * float(min(v[k], res.fun))


@dataclass(frozen=True)
class CoveringEstimate:
    radii: tuple
    values: tuple
    trend: str

    @property
    def radius(self) -> float:
        """Estimate at the largest radius."""
        return self.values[-1]

    def gaps(self, limit: float) -> tuple:
        return tuple(abs(v - limit) for v in self.values)


def _trend(values, tol=0.0):
    d = np.diff(values)
    if np.all(d >= -tol):
        return "nondecreasing"
    if np.all(d <= tol):
        return "nonincreasing"
    return "mixed"


def covering_radius(h, r_sequence=(0.9, 0.99, 0.999)) -> CoveringEstimate:
    """``min_t |h(r e^{it})|`` for each ``r``, with the direction of change."""
    rs = tuple(float(r) for r in r_sequence)
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise ValueError("r_sequence must be increasing")
    vals = tuple(_circle_extremum(h, r, +1.0) for r in rs)
    return CoveringEstimate(rs, vals, _trend(vals))


def growth_order_L(r_sequence=(0.9, 0.99, 0.999)) -> list:
    """``[(r, (1-r)^2 max_t |L(r e^{it})|)]``."""
    L = harmonic_L()
    return [(float(r), (1 - r) ** 2 * _circle_extremum(L, r, -1.0) if r > 0 else 0.0) for r in r_sequence]


@dataclass(frozen=True)
class RigidityFinding:
    """``status`` is ``PASS``, ``VIOLATION`` or ``NOT_DETECTED``."""

    label: str
    status: str
    mu: float
    lam: complex
    distance: float
    pointwise_error: float | None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "status": self.status,
            "mu": self.mu,
            "lambda": [self.lam.real, self.lam.imag],
            "distance": self.distance,
            "pointwise_error": self.pointwise_error,
        }


def _koebe_fit(a, b, mu):
    """Fit a rotated Koebe function to ``h - e^{-2i mu} g``; return (distance, lambda)."""
    n = np.arange(1, RIGIDITY_N + 1)
    c = a[n] - np.exp(-2j * mu) * b[n]
    lam = c[1] / 2
    if abs(lam) == 0:
        return float("inf"), 1.0 + 0j
    lam /= abs(lam)
    return float(np.max(np.abs(c - n * lam ** (n - 1)))), complex(lam)


def _algebraic_mus(a, b) -> list:
    """Angles ``mu`` solving ``c_3/3 = (c_2/2)^2`` for ``c_n = a_n - e^{-2i mu} b_n``.

    A rotated Koebe function has ``c_n = n lam^{n-1}``, so this quadratic in
    ``e^{-2i mu}`` pins ``mu`` to rounding level where the scan cannot.
    """
    poly = [3 * b[2] ** 2, -(6 * a[2] * b[2] - 4 * b[3]), 3 * a[2] ** 2 - 4 * a[3]]
    if np.max(np.abs(poly)) == 0:
        return []
    while poly and abs(poly[0]) < 1e-14:
        poly = poly[1:]
    if len(poly) < 2:
        return []
    return [float(-np.angle(e) / 2) for e in np.roots(poly) if abs(abs(e) - 1) < 1e-6]


def rigidity_probe(f: HarmonicMap, angle_grid=None, grid=None) -> RigidityFinding:
    """Look for ``mu`` making ``h - e^{-2i mu} g`` a rotated Koebe function.

    When one is found, ``f`` has to be the matching rotation of L; the
    pointwise comparison decides between ``PASS`` and ``VIOLATION``.
    """
    mus = np.linspace(0, np.pi, 360, endpoint=False) if angle_grid is None else np.asarray(angle_grid, float)
    a = f.h.series.coeffs
    b = f.g.series.coeffs
    dists = [_koebe_fit(a, b, m)[0] for m in mus]
    k = int(np.argmin(dists))
    step = (mus[1] - mus[0]) if len(mus) > 1 else np.pi
    res = minimize_scalar(lambda m: _koebe_fit(a, b, m)[0], bounds=(mus[k] - step, mus[k] + step),
                          method="bounded", options={"xatol": 1e-14})
    mu = float(res.x) if res.fun < dists[k] else float(mus[k])
    best = _koebe_fit(a, b, mu)[0]
    for cand in _algebraic_mus(a, b):
        d = _koebe_fit(a, b, cand)[0]
        if d < best:
            mu, best = cand, d
    dist, lam = _koebe_fit(a, b, mu)
    mu = float(np.mod(mu, np.pi))
    if dist >= RIGIDITY_TOL:
        return RigidityFinding(f.label, "NOT_DETECTED", mu, lam, dist, None)
    z = np.outer([0.3, 0.6, 0.9, 0.99], np.exp(2j * np.pi * np.arange(64) / 64)).ravel() if grid is None else grid
    ref = rotate_harmonic(harmonic_L(), lam) if abs(lam - 1) > 1e-15 else harmonic_L()
    err = float(np.max(np.abs(f(z) - ref(z)) / np.maximum(1.0, np.abs(ref(z)))))
    status = "PASS" if err <= MATCH_TOL else "VIOLATION"
    return RigidityFinding(f.label, status, mu, lam, dist, err)


@dataclass(frozen=True)
class SharpnessRow:
    r: float
    quantity: str
    value_at_extremal: float
    envelope_value: float

    @property
    def relative_gap(self) -> float:
        """Signed gap, positive on the admissible side of the envelope."""
        d = self.envelope_value - self.value_at_extremal
        if self.quantity.endswith("lower"):
            d = -d
        if self.envelope_value == 0:
            return d
        return d / self.envelope_value

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "quantity": self.quantity,
            "value": self.value_at_extremal,
            "envelope": self.envelope_value,
            "relative_gap": self.relative_gap,
        }


def sharpness_table(radii) -> list:
    """Compare ``|H(+-r)|`` and ``|H'(+-r)|`` with the four h-envelopes."""
    H = halfplane_H()
    rows = []
    for r in radii:
        r = float(r)
        glo, ghi = envelope("h-growth", r)
        dlo, dhi = envelope("h-distortion", r)
        z = np.array([r, -r], dtype=np.complex128)
        hv = np.abs(H(z))
        dv = np.abs(H.derivative(z))
        rows += [
            SharpnessRow(r, "growth-upper", float(hv[0]), float(ghi)),
            SharpnessRow(r, "growth-lower", float(hv[1]), float(glo)),
            SharpnessRow(r, "distortion-upper", float(dv[0]), float(dhi)),
            SharpnessRow(r, "distortion-lower", float(dv[1]), float(dlo)),
        ]
    return rows
