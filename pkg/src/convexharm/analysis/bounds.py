"""Pointwise and coefficient bound checks.

Tolerances are relative to the size of the envelope: a sample passes when
``lower - tol*max(1, lower) <= measured <= upper + tol*max(1, upper)``.  Near
the boundary the envelopes reach ``1e6`` and an absolute ``1e-8`` would be
below double-precision resolution of the measured value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import MembershipNotCertified
from ..mappings import HarmonicMap, membership
from .envelopes import envelope

BOUND_TOL = 1e-8
COEFF_TOL = 1e-9
EQUALITY_TOL = 1e-6


@dataclass(frozen=True)
class BoundSample:
    where: complex | int
    quantity: str
    measured: float
    lower: float
    upper: float

    @property
    def lower_margin(self) -> float:
        return (self.measured - self.lower) / max(1.0, abs(self.lower))

    @property
    def upper_margin(self) -> float:
        if not np.isfinite(self.upper):
            return float("inf")
        return (self.upper - self.measured) / max(1.0, abs(self.upper))

    @property
    def relative_gap(self) -> float:
        """Distance to the nearer envelope relative to that envelope."""
        gaps = [abs(self.measured - self.lower) / abs(self.lower) if self.lower > 0 else np.inf]
        if np.isfinite(self.upper) and self.upper > 0:
            gaps.append(abs(self.upper - self.measured) / self.upper)
        return float(min(gaps))

    def ok(self, tol: float) -> bool:
        return self.lower_margin >= -tol and self.upper_margin >= -tol

    def to_dict(self) -> dict:
        w = self.where
        where = [w.real, w.imag] if isinstance(w, complex) else w
        return {
            "where": where,
            "quantity": self.quantity,
            "measured": self.measured,
            "lower": self.lower,
            "upper": self.upper if np.isfinite(self.upper) else None,
            "lower_margin": self.lower_margin,
            "upper_margin": self.upper_margin if np.isfinite(self.upper_margin) else None,
        }


@dataclass
class BoundReport:
    name: str
    label: str
    tol: float
    samples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.ok(self.tol) for s in self.samples)

    def violations(self) -> list:
        return [s for s in self.samples if not s.ok(self.tol)]

    @property
    def min_margin(self) -> float:
        if not self.samples:
            return float("inf")
        return min(min(s.lower_margin, s.upper_margin) for s in self.samples)

    def equality_hits(self, tol: float = EQUALITY_TOL, quantities=None) -> list:
        return [
            s for s in self.samples
            if s.where != 0 and s.relative_gap < tol and (quantities is None or s.quantity in quantities)
        ]

    def to_dict(self, include_samples: bool = False) -> dict:
        out = {
            "name": self.name,
            "label": self.label,
            "tol": self.tol,
            "pass": self.passed,
            "n_samples": len(self.samples),
            "min_margin": self.min_margin,
            "violations": [s.to_dict() for s in self.violations()],
        }
        if include_samples:
            out["samples"] = [s.to_dict() for s in self.samples]
        return out


def _require_certified(f: HarmonicMap):
    if not membership(f).in_K0H:
        raise MembershipNotCertified(f"{f.label} is not certified in K_H^0")


def polar_points(radii, angles) -> np.ndarray:
    return np.outer(np.asarray(radii, dtype=float), np.exp(1j * np.asarray(angles, dtype=float))).ravel()


def _add(report, z, quantity, measured, lo, hi):
    for zi, m, a, b in zip(z, measured, np.broadcast_to(lo, z.shape), np.broadcast_to(hi, z.shape)):
        report.samples.append(BoundSample(complex(zi), quantity, float(m), float(a), float(b)))


def check_h_bounds(
    f: HarmonicMap,
    radii,
    angles,
    tol: float = BOUND_TOL,
    envelope_scale: float = 1.0,
    certify: bool = True,
) -> BoundReport:
    """Growth and distortion of the analytic part ``h`` at ``z = r e^{it}``.

    Checks the h-envelopes and, for consistency, the wider S-envelopes.
    ``envelope_scale`` multiplies the upper h-envelopes and divides the lower
    ones; values below 1 tighten them (a falsifiability hook).
    """
    if certify:
        _require_certified(f)
    z = polar_points(radii, angles)
    r = np.abs(z)
    hz = np.abs(f.h(z))
    hpz = np.abs(f.h.derivative(z))
    rep = BoundReport("h-bounds", f.label, tol)
    s = float(envelope_scale)
    lo, hi = envelope("h-growth", r)
    _add(rep, z, "h-growth", hz, lo / s, hi * s)
    lo, hi = envelope("h-distortion", r)
    _add(rep, z, "h-distortion", hpz, lo / s, hi * s)
    lo, hi = envelope("S-growth", r)
    _add(rep, z, "S-growth", hz, lo, hi)
    lo, hi = envelope("S-distortion", r)
    _add(rep, z, "S-distortion", hpz, lo, hi)
    return rep


def check_f_growth(f: HarmonicMap, radii, angles, tol: float = BOUND_TOL) -> BoundReport:
    """Growth of the full map ``f``; the lower envelope is not sharp."""
    z = polar_points(radii, angles)
    lo, hi = envelope("f-growth", np.abs(z))
    rep = BoundReport("f-growth", f.label, tol)
    _add(rep, z, "f-growth", np.abs(f(z)), lo, hi)
    return rep


def check_sum_bound(f: HarmonicMap, alpha: float, grid, tol: float = BOUND_TOL) -> BoundReport:
    """``|h'(z) + e^{-2i alpha} g'(z)| <= 1/(1-|z|)^2`` on ``grid``."""
    z = np.asarray(grid, dtype=np.complex128).ravel()
    val = np.abs(f.h.derivative(z) + np.exp(-2j * alpha) * f.g.derivative(z))
    rep = BoundReport("sum-bound", f.label, tol)
    _add(rep, z, "|h'+e^{-2ia}g'|", val, 0.0, 1 / (1 - np.abs(z)) ** 2)
    return rep


def refined_distortion_check(f: HarmonicMap, grid, tol: float = BOUND_TOL) -> BoundReport:
    """``|h'(a)| >= 1/((1+|a|)^2 (1+|omega(a)|))``, alongside ``1/(1+|a|)^3``."""
    z = np.asarray(grid, dtype=np.complex128).ravel()
    hp = f.h.derivative(z)
    w = np.abs(f.g.derivative(z) / hp)
    r = np.abs(z)
    m = np.abs(hp)
    rep = BoundReport("refined-distortion", f.label, tol)
    _add(rep, z, "refined", m, 1 / ((1 + r) ** 2 * (1 + w)), np.inf)
    _add(rep, z, "h-distortion-lower", m, 1 / (1 + r) ** 3, np.inf)
    return rep


def coefficient_check(f: HarmonicMap, n_max: int = 12, tol: float = COEFF_TOL) -> BoundReport:
    """``|a_n| <= (n+1)/2`` and ``|b_n| <= (n-1)/2`` for ``2 <= n <= n_max``."""
    if n_max > min(f.h.order, f.g.order):
        raise ValueError(f"series order too small for n_max={n_max}")
    a = np.abs(f.h.series.coeffs)
    b = np.abs(f.g.series.coeffs)
    rep = BoundReport("coefficients", f.label, tol)
    for n in range(2, n_max + 1):
        rep.samples.append(BoundSample(n, "|a_n|", float(a[n]), 0.0, (n + 1) / 2))
        rep.samples.append(BoundSample(n, "|b_n|", float(b[n]), 0.0, (n - 1) / 2))
    return rep


def coefficient_equality(f: HarmonicMap, n_max: int = 12) -> float:
    """Largest deviation of ``|a_n|, |b_n|`` from ``(n+1)/2, (n-1)/2``."""
    n = np.arange(2, n_max + 1)
    da = np.abs(np.abs(f.h.series.coeffs[n]) - (n + 1) / 2)
    db = np.abs(np.abs(f.g.series.coeffs[n]) - (n - 1) / 2)
    return float(max(da.max(), db.max()))


@dataclass(frozen=True)
class BieberbachReport:
    label: str
    second_derivative: float
    bound: float
    passed: bool
    equality: bool


def bieberbach_check(phi, tol: float = COEFF_TOL) -> BieberbachReport:
    """``|phi''(0)| = 2|a_2| <= 4``."""
    d2 = 2 * abs(phi.series.coeffs[2])
    return BieberbachReport(phi.label, float(d2), 4.0, bool(d2 <= 4 + tol), bool(abs(d2 - 4) < EQUALITY_TOL))


def koebe_distance(h, n_max: int = 12) -> float:
    """``max_{n <= n_max} |a_n - n|``: closeness to the Koebe coefficients."""
    n = np.arange(1, n_max + 1)
    return float(np.max(np.abs(h.series.coeffs[n] - n)))
