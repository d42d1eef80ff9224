"""Disk automorphisms and the class-preserving transform ``F_a``.

For ``f = h + conj(g)`` with dilatation ``omega`` and a point ``a`` in the
disk, ``F_a = H_a + conj(G_a)`` is built from ``f o phi_a`` where
``phi_a(z) = (a - z)/(1 - conj(a) z)``::

    H_a = [(h o phi_a - h(a)) - conj(omega(a)) (g o phi_a - g(a))] / D
    G_a = [(g o phi_a - g(a)) - omega(a) (h o phi_a - h(a))] / conj(D)

``D`` is the derivative at 0 of the numerator of ``H_a``, namely
``-h'(a) (1 - |a|^2) (1 - |omega(a)|^2)``, so ``H_a'(0) = 1`` exactly.  The
minus sign comes from ``phi_a'(0) = -(1 - |a|^2)``.  One consequence is that
``F_0(z) = -f(-z)``, the rotation of ``f`` by ``-1``.

The image ``F_a(D)`` is the image of ``f(D)`` under the real-affine map
``w -> (w - f(a) - conj(omega(a)) conj(w - f(a))) / D``, so convexity is
preserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import series as S
from .errors import ACapExceeded, IllConditioned, MembershipNotCertified
from .mappings import AnalyticMap, HarmonicMap, disk_automorphism, membership, normalization_residuals

A_CAP = 0.9
ILL_CONDITIONED_TOL = 1e-6
TRANSFORM_RHO = 0.9

__all__ = [
    "A_CAP",
    "TransformResult",
    "disk_automorphism",
    "koebe_transform",
    "transformed_dilatation",
    "dilatation_prefactor",
]


@dataclass
class TransformResult:
    F: HarmonicMap
    a: complex
    mu: complex
    omega_at_a: complex
    normalization_report: dict

    @property
    def max_residual(self) -> float:
        return max(self.normalization_report.values())


def _scalar(fn, a):
    return complex(np.asarray(fn(np.array([a], dtype=np.complex128)))[0])


def _prepare(f: HarmonicMap, a, certify: bool):
    a = complex(a)
    if abs(a) > A_CAP:
        raise ACapExceeded(f"|a| = {abs(a):.4g} exceeds the cap {A_CAP}")
    if certify and not membership(f).in_K0H:
        raise MembershipNotCertified(f"{f.label} is not certified in K_H^0")
    hp_a = _scalar(f.h.derivative, a)
    w_a = _scalar(f.g.derivative, a) / hp_a
    if 1 - abs(w_a) ** 2 < ILL_CONDITIONED_TOL:
        raise IllConditioned(f"|omega(a)| = {abs(w_a):.8g} is too close to 1")
    return a, hp_a, w_a


def koebe_transform(f: HarmonicMap, a, rho: float = TRANSFORM_RHO, certify: bool = True) -> TransformResult:
    """Build ``F_a`` and report its normalization residuals.

    Series of ``H_a`` and ``G_a`` are obtained by sampling on ``|z| = rho``
    (``phi_a`` does not fix the origin, so coefficient-level composition is
    not available).
    """
    a, hp_a, w_a = _prepare(f, a, certify)
    ab = a.conjugate()
    wb = w_a.conjugate()
    h_a = _scalar(f.h, a)
    g_a = _scalar(f.g, a)
    D = -hp_a * (1 - abs(a) ** 2) * (1 - abs(w_a) ** 2)
    Dc = D.conjugate()
    mu = hp_a / hp_a.conjugate()

    def phi(z):
        return (a - z) / (1 - ab * z)

    def dphi(z):
        return -(1 - abs(a) ** 2) / (1 - ab * z) ** 2

    def Hfun(z):
        p = phi(z)
        return ((f.h.func(p) - h_a) - wb * (f.g.func(p) - g_a)) / D

    def Hder(z):
        p = phi(z)
        return (f.h.derivative(p) - wb * f.g.derivative(p)) * dphi(z) / D

    def Gfun(z):
        p = phi(z)
        return ((f.g.func(p) - g_a) - w_a * (f.h.func(p) - h_a)) / Dc

    def Gder(z):
        p = phi(z)
        return (f.g.derivative(p) - w_a * f.h.derivative(p)) * dphi(z) / Dc

    order = f.h.order
    tag = f"a={a.real:.6g}{a.imag:+.6g}j"
    H = AnalyticMap(Hfun, S.extract_coeffs(Hfun, order, rho), f"H_a[{f.label}, {tag}]", Hder)
    G = AnalyticMap(Gfun, S.extract_coeffs(Gfun, order, rho), f"G_a[{f.label}, {tag}]", Gder)
    F = HarmonicMap(H, G, f"F_a[{f.label}, {tag}]")
    return TransformResult(F, a, mu, w_a, normalization_residuals(F))


def transformed_dilatation(f: HarmonicMap, a, rho: float = TRANSFORM_RHO, certify: bool = True) -> AnalyticMap:
    """``omega_a = -mu_a (phi_{omega(a)} o omega o phi_a)`` with ``mu_a = h'(a)/conj(h'(a))``."""
    a, hp_a, w_a = _prepare(f, a, certify)
    ab, wb = a.conjugate(), w_a.conjugate()
    mu = hp_a / hp_a.conjugate()

    def omega_a(z):
        p = (a - z) / (1 - ab * z)
        w = f.g.derivative(p) / f.h.derivative(p)
        return -mu * (w_a - w) / (1 - wb * w)

    ser = S.extract_coeffs(omega_a, f.h.order, rho)
    return AnalyticMap(omega_a, ser, f"omega_a[{f.label}, a={a}]")


def dilatation_prefactor(f: HarmonicMap, F: HarmonicMap, a, grid: np.ndarray) -> tuple[complex, float]:
    """Fit the unimodular factor ``c`` in ``G_a'/H_a' = c (phi_{omega(a)} o omega o phi_a)``.

    Returns the mean ratio over grid points where the composed map is not
    tiny, and the largest deviation from that mean.
    """
    a = complex(a)
    ab = a.conjugate()
    w_a = _scalar(f.g.derivative, a) / _scalar(f.h.derivative, a)
    p = (a - grid) / (1 - ab * grid)
    w = f.g.derivative(p) / f.h.derivative(p)
    comp = (w_a - w) / (1 - w_a.conjugate() * w)
    actual = F.g.derivative(grid) / F.h.derivative(grid)
    keep = np.abs(comp) > 1e-3
    if not np.any(keep):
        return complex("nan"), float("nan")
    ratio = actual[keep] / comp[keep]
    c = complex(np.mean(ratio))
    return c, float(np.max(np.abs(ratio - c)))
