"""Analytic and harmonic maps of the unit disk.

An ``AnalyticMap`` pairs a vectorized closed-form evaluator (valid on the whole
open disk) with a cached ``TruncatedSeries``; the two are cross-checked when
the map is built.  A ``HarmonicMap`` is the pair ``(h, g)`` standing for
``f = h + conj(g)``.

Near the boundary, always use the evaluators.  The series exist for
coefficient statements only.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import series as S
from .convexity import ConvexityCertificate, hull_containment
from .errors import (
    DenominatorVanishes,
    InconsistentMap,
    NotNormalized,
    NotUnimodular,
    VanishingDerivative,
)
from .quadrature import radial_antiderivative
from .series import DEFAULT_ORDER, TruncatedSeries

EVAL_TOL = 1e-9
NORM_TOL = 1e-10
UNIMODULAR_TOL = 1e-12
DENOM_TOL = 1e-9
VALIDATION_POINTS = 20

_VALIDATION_RNG_SEED = 20240917


def _as_complex(z):
    z = np.asarray(z)
    if not np.iscomplexobj(z):
        z = z.astype(np.complex128)
    return z


def _validation_points(order: int) -> np.ndarray:
    # radius small enough that the truncation tail is far below EVAL_TOL
    rad = min(0.5, 10.0 ** (-14.0 / order))
    rng = np.random.default_rng(_VALIDATION_RNG_SEED)
    r = rad * np.sqrt(rng.random(VALIDATION_POINTS))
    t = 2 * np.pi * rng.random(VALIDATION_POINTS)
    return r * np.exp(1j * t)


def validation_grid(r_max: float = 0.95, n_radii: int = 8, n_angles: int = 64) -> np.ndarray:
    """Polar grid used for Jacobian and dilatation sanity checks."""
    r = np.linspace(r_max / n_radii, r_max, n_radii)
    t = 2 * np.pi * (np.arange(n_angles) + 0.5) / n_angles
    return np.outer(r, np.exp(1j * t)).ravel()


@dataclass(frozen=True, eq=False)
class AnalyticMap:
    """A function analytic in the unit disk.

    Parameters
    ----------
    func : callable
        Vectorized evaluator, valid for ``|z| < 1``.
    series : TruncatedSeries
        Taylor coefficients at the origin.
    label : str
        Human-readable name, used in reports.
    deriv : callable, optional
        Closed-form derivative.  Without it, ``derivative`` falls back to the
        differentiated series and is restricted to ``|z| <= series.R_MAX``.
    """

    func: Callable
    series: TruncatedSeries
    label: str = "?"
    deriv: Optional[Callable] = None
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.check:
            self._validate()

    def _validate(self):
        z = _validation_points(self.series.order)
        for name, fn, ser in (
            ("value", self.func, self.series),
            ("derivative", self.deriv, S.differentiate(self.series) if self.deriv else None),
        ):
            if fn is None:
                continue
            exact = np.asarray(fn(z), dtype=np.complex128)
            approx = S.evaluate(ser, z)
            err = np.abs(exact - approx) / np.maximum(1.0, np.abs(exact))
            if not np.all(np.isfinite(exact)) or err.max() > EVAL_TOL:
                raise InconsistentMap(
                    f"{self.label}: {name} evaluator and series disagree by {np.nanmax(err):.3g}"
                )

    @property
    def order(self) -> int:
        return self.series.order

    def __call__(self, z):
        z = _as_complex(z)
        out = np.asarray(self.func(z))
        return out[()] if out.ndim == 0 else out

    def derivative(self, z):
        z = _as_complex(z)
        if self.deriv is not None:
            out = np.asarray(self.deriv(z))
            return out[()] if out.ndim == 0 else out
        return S.evaluate(S.differentiate(self.series), z)

    def coefficient(self, n: int) -> complex:
        return complex(self.series.coeffs[n])

    @property
    def is_zero(self) -> bool:
        return not np.any(self.series.coeffs)


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """``f = h + conj(g)`` with ``h(0) = g(0) = 0`` and ``h'(0) = 1``."""

    h: AnalyticMap
    g: AnalyticMap
    label: str = "?"
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if not self.check:
            return
        res = normalization_residuals(self)
        if max(res["h(0)"], res["g(0)"], res["h'(0)-1"]) > NORM_TOL:
            raise NotNormalized(f"{self.label}: normalization residuals {res}")
        z = validation_grid()
        jac = self.jacobian(z)
        if not np.all(jac > 0):
            raise NotNormalized(f"{self.label}: Jacobian not positive on the validation grid")

    def __call__(self, z):
        return evaluate_harmonic(self, z)

    def jacobian(self, z):
        return np.abs(self.h.derivative(z)) ** 2 - np.abs(self.g.derivative(z)) ** 2


def normalization_residuals(f: HarmonicMap) -> dict:
    z0 = np.zeros(1, dtype=np.complex128)
    return {
        "h(0)": float(abs(f.h(z0)[0])),
        "g(0)": float(abs(f.g(z0)[0])),
        "h'(0)-1": float(abs(f.h.derivative(z0)[0] - 1.0)),
        "g'(0)": float(abs(f.g.derivative(z0)[0])),
    }


def evaluate_harmonic(f: HarmonicMap, z):
    """``h(z) + conj(g(z))``."""
    z = _as_complex(z)
    out = np.asarray(f.h.func(z)) + np.conj(np.asarray(f.g.func(z)))
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def identity_map(order: int = DEFAULT_ORDER) -> AnalyticMap:
    return AnalyticMap(lambda z: z * 1, S.monomial(1, 1.0, order), "identity", lambda z: np.ones_like(z))


def zero_map(order: int = DEFAULT_ORDER, label: str = "0") -> AnalyticMap:
    return AnalyticMap(lambda z: z * 0, S.constant(0.0, order), label, lambda z: z * 0)


def koebe(order: int = DEFAULT_ORDER) -> AnalyticMap:
    """``k(z) = z/(1-z)^2``; coefficients ``c_n = n``."""
    return AnalyticMap(
        lambda z: z / (1 - z) ** 2,
        S.from_function(lambda n: n, order),
        "koebe",
        lambda z: (1 + z) / (1 - z) ** 3,
    )


def halfplane_l(order: int = DEFAULT_ORDER) -> AnalyticMap:
    """``l(z) = z/(1-z)``, onto ``Re w > -1/2``."""
    return AnalyticMap(
        lambda z: z / (1 - z),
        S.from_function(lambda n: (n > 0) * 1.0, order),
        "halfplane-l",
        lambda z: 1 / (1 - z) ** 2,
    )


def strip_map(order: int = DEFAULT_ORDER) -> AnalyticMap:
    """``s(z) = log((1+z)/(1-z))/2``, onto the strip ``|Im w| < pi/4``."""
    return AnalyticMap(
        lambda z: 0.5 * np.log((1 + z) / (1 - z)),
        S.from_function(lambda n: np.where(n % 2 == 1, 1.0 / np.maximum(n, 1), 0.0), order),
        "strip",
        lambda z: 1 / (1 - z * z),
    )


def halfplane_H(order: int = DEFAULT_ORDER) -> AnalyticMap:
    """Analytic part of the half-plane harmonic map: ``(2z - z^2)/(2(1-z)^2)``."""
    return AnalyticMap(
        lambda z: (2 * z - z * z) / (2 * (1 - z) ** 2),
        S.from_function(lambda n: np.where(n > 0, (n + 1) / 2.0, 0.0), order),
        "H",
        lambda z: 1 / (1 - z) ** 3,
    )


def halfplane_G(order: int = DEFAULT_ORDER) -> AnalyticMap:
    """``G = (l - k)/2 = -z^2/(2(1-z)^2)``."""
    return AnalyticMap(
        lambda z: -(z * z) / (2 * (1 - z) ** 2),
        S.from_function(lambda n: np.where(n > 0, (1 - n) / 2.0, 0.0), order),
        "G",
        lambda z: -z / (1 - z) ** 3,
    )


def harmonic_L(order: int = DEFAULT_ORDER) -> HarmonicMap:
    """The half-plane harmonic map ``L = H + conj(G)``, dilatation ``-z``."""
    return HarmonicMap(halfplane_H(order), halfplane_G(order), "harmonic-L")


def identity_harmonic(order: int = DEFAULT_ORDER) -> HarmonicMap:
    return HarmonicMap(identity_map(order), zero_map(order), "identity")


def analytic_as_harmonic(phi: AnalyticMap) -> HarmonicMap:
    """``phi`` viewed as the harmonic map ``phi + conj(0)``."""
    return HarmonicMap(phi, zero_map(phi.order), phi.label)


def monomial_dilatation(lam: complex, m: int, order: int = DEFAULT_ORDER) -> AnalyticMap:
    """``lam * z**m`` (``m >= 1``)."""
    lam = complex(lam)
    return AnalyticMap(
        lambda z: lam * z**m,
        S.monomial(m, lam, order),
        _monomial_label(lam, m),
        lambda z: lam * m * z ** (m - 1),
    )


def _monomial_label(lam: complex, m: int) -> str:
    if abs(lam - 1) < 1e-15:
        c = ""
    elif abs(lam + 1) < 1e-15:
        c = "-"
    else:
        c = f"({lam.real:.6g}{lam.imag:+.6g}j)*"
    return f"{c}z" + (f"^{m}" if m > 1 else "")


def blaschke_dilatation(c: complex, order: int = DEFAULT_ORDER) -> AnalyticMap:
    """``z (c + z) / (1 + conj(c) z)`` with ``|c| < 1``."""
    c = complex(c)
    if abs(c) >= 1:
        raise ValueError("|c| must be < 1")
    cb = c.conjugate()
    num = S.TruncatedSeries(np.r_[0.0, c, 1.0, np.zeros(max(order - 2, 0))][: order + 1])
    den = S.TruncatedSeries(np.r_[1.0, cb, np.zeros(order - 1)])
    return AnalyticMap(
        lambda z: z * (c + z) / (1 + cb * z),
        S.div(num, den),
        f"z(c+z)/(1+conj(c)z), c={c.real:.6g}{c.imag:+.6g}j",
        lambda z: ((c + 2 * z) * (1 + cb * z) - cb * z * (c + z)) / (1 + cb * z) ** 2,
    )


def disk_automorphism(a: complex, order: int = DEFAULT_ORDER) -> AnalyticMap:
    """``phi_a(z) = (a - z)/(1 - conj(a) z)``; an involution of the disk."""
    a = complex(a)
    if abs(a) >= 1:
        raise ValueError("|a| must be < 1")
    ab = a.conjugate()
    n = np.arange(order + 1)
    coeffs = np.where(n == 0, a, -(1 - abs(a) ** 2) * ab ** np.maximum(n - 1, 0))
    return AnalyticMap(
        lambda z: (a - z) / (1 - ab * z),
        TruncatedSeries(coeffs),
        f"phi_a, a={a.real:.6g}{a.imag:+.6g}j",
        lambda z: -(1 - abs(a) ** 2) / (1 - ab * z) ** 2,
    )


# ---------------------------------------------------------------------------
# rotations, dilatation, shear
# ---------------------------------------------------------------------------


def _check_unimodular(lam) -> complex:
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > UNIMODULAR_TOL:
        raise NotUnimodular(f"|lambda| = {abs(lam):.15g}")
    return lam


def _rot_label(label, lam):
    return f"rot({label}, {np.angle(lam):.6g})"


def rotate_analytic(phi: AnalyticMap, lam: complex) -> AnalyticMap:
    """``z -> conj(lam) phi(lam z)``."""
    lam = _check_unimodular(lam)
    if lam == 1:
        return phi
    lb = lam.conjugate()
    inner = S.monomial(1, lam, phi.order)
    ser = S.scale(S.compose_inner_zero(phi.series, inner), lb)
    deriv = None if phi.deriv is None else (lambda z: phi.deriv(lam * z))
    return AnalyticMap(lambda z: lb * phi.func(lam * z), ser, _rot_label(phi.label, lam), deriv)


def _rotate_conjugand(g: AnalyticMap, lam: complex) -> AnalyticMap:
    # z -> lam g(lam z)
    inner = S.monomial(1, lam, g.order)
    ser = S.scale(S.compose_inner_zero(g.series, inner), lam)
    deriv = None if g.deriv is None else (lambda z: lam * lam * g.deriv(lam * z))
    return AnalyticMap(lambda z: lam * g.func(lam * z), ser, _rot_label(g.label, lam), deriv)


def rotate_harmonic(f: HarmonicMap, lam: complex) -> HarmonicMap:
    """``f_lam(z) = conj(lam) f(lam z)``: ``h -> conj(lam) h(lam z)``, ``g -> lam g(lam z)``."""
    lam = _check_unimodular(lam)
    if lam == 1:
        return f
    return HarmonicMap(rotate_analytic(f.h, lam), _rotate_conjugand(f.g, lam), _rot_label(f.label, lam))


def dilatation(f: HarmonicMap, grid: Optional[np.ndarray] = None) -> AnalyticMap:
    """``omega = g'/h'``."""
    z = validation_grid() if grid is None else grid
    if np.min(np.abs(f.h.derivative(z))) < DENOM_TOL or abs(f.h.derivative(0j)) < DENOM_TOL:
        raise VanishingDerivative(f"{f.label}: h' vanishes on the grid")
    hs, gs = S.differentiate(f.h.series), S.differentiate(f.g.series)
    ser = S.div(gs, hs)

    def omega(z):
        return f.g.derivative(z) / f.h.derivative(z)

    return AnalyticMap(omega, ser, f"omega[{f.label}]", None)


def shear(phi: AnalyticMap, omega: AnalyticMap, theta: float, grid: Optional[np.ndarray] = None) -> HarmonicMap:
    """Shear ``phi`` in direction ``theta`` with dilatation ``omega``.

    Returns ``f = h + conj(g)`` with ``h - e^{2i theta} g = phi`` and
    ``g' = omega h'``, i.e. ``h' = phi'/(1 - e^{2i theta} omega)``.
    Whether ``f`` is convex depends on ``phi``; use ``membership``.
    """
    z = validation_grid(0.99) if grid is None else grid
    if abs(phi(0j)) > NORM_TOL or abs(phi.derivative(0j) - 1) > NORM_TOL:
        raise NotNormalized(f"{phi.label}: need phi(0)=0, phi'(0)=1")
    if abs(omega(0j)) > NORM_TOL:
        raise NotNormalized(f"{omega.label}: need omega(0)=0")
    if np.max(np.abs(omega(z))) >= 1:
        raise NotNormalized(f"{omega.label}: |omega| >= 1 on the grid")
    eps = np.exp(2j * theta)
    if abs(eps - 1) < 1e-15:
        eps = 1.0 + 0j
    den = 1 - eps * np.asarray(omega(z))
    if np.min(np.abs(den)) < DENOM_TOL:
        raise DenominatorVanishes(f"|1 - e^(2i theta) omega| < {DENOM_TOL:g} on the grid")

    label = f"shear({phi.label}, {omega.label}, {theta:.6g})"
    if omega.is_zero:
        return HarmonicMap(phi, zero_map(phi.order), label)

    hp_ser = S.div(S.differentiate(phi.series), S.constant(1.0, omega.order) - S.scale(omega.series, eps))
    h_ser = S.integrate_from_zero(hp_ser)
    g_ser = S.integrate_from_zero(S.mul(omega.series, hp_ser))

    def hp(w):
        return phi.derivative(w) / (1 - eps * omega.func(w))

    def hfun(w):
        return radial_antiderivative(hp, w)

    def gfun(w):
        return np.conj(eps) * (hfun(w) - phi.func(w))

    def gp(w):
        return omega.func(w) * hp(w)

    h = AnalyticMap(hfun, h_ser, f"h[{label}]", hp)
    g = AnalyticMap(gfun, g_ser, f"g[{label}]", gp)
    return HarmonicMap(h, g, label)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

MEMBERSHIP_RADII = (0.5, 0.9, 0.99)
OUTER_RADIUS = 0.9999


@dataclass
class ClassMembership:
    """Numerically certified class flags for a harmonic map.

    Convexity is certified at the tested radii only: for each inner radius
    ``r`` the convex hull of ``f(|z| <= r)`` (clipped to a window) must lie
    inside ``f(|z| < outer_radius)``.
    """

    label: str
    normalized: bool
    orientation_ok: bool
    convex: bool
    in_KH: bool
    in_K0H: bool
    residuals: dict
    jacobian_min: float
    certificate: ConvexityCertificate
    tolerances: dict

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "normalized": self.normalized,
            "orientation_ok": self.orientation_ok,
            "convex": self.convex,
            "in_KH": self.in_KH,
            "in_K0H": self.in_K0H,
            "residuals": self.residuals,
            "jacobian_min": self.jacobian_min,
            "convexity": self.certificate.to_dict(),
            "tolerances": self.tolerances,
        }


_membership_cache: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def membership(
    f: HarmonicMap,
    radii=MEMBERSHIP_RADII,
    outer_radius: float = OUTER_RADIUS,
    grid: Optional[np.ndarray] = None,
) -> ClassMembership:
    """Certify normalization, orientation and convexity of ``f``."""
    key = (tuple(radii), outer_radius, None if grid is None else grid.tobytes())
    cached = _membership_cache.get(f, {}).get(key)
    if cached is not None:
        return cached

    res = normalization_residuals(f)
    normalized = max(res["h(0)"], res["g(0)"], res["h'(0)-1"]) <= NORM_TOL
    z = validation_grid(0.99, 12, 96) if grid is None else grid
    jac = f.jacobian(z)
    jac_min = float(np.min(jac))
    orientation_ok = bool(np.all(np.isfinite(jac)) and jac_min > 0)
    cert = hull_containment(f, radii, outer_radius)
    in_KH = bool(normalized and orientation_ok and cert.convex)
    out = ClassMembership(
        label=f.label,
        normalized=bool(normalized),
        orientation_ok=orientation_ok,
        convex=cert.convex,
        in_KH=in_KH,
        in_K0H=bool(in_KH and res["g'(0)"] <= NORM_TOL),
        residuals=res,
        jacobian_min=jac_min,
        certificate=cert,
        tolerances={"normalization": NORM_TOL, "g'(0)": NORM_TOL},
    )
    _membership_cache.setdefault(f, {})[key] = out
    return out
