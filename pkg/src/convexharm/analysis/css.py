"""Two-angle positivity search and the Carathéodory/Schwarz step.

For a convex harmonic map there are angles ``alpha, beta`` with

    Re[e^{i(alpha+beta)} (h' + e^{-2i alpha} g')(1 - e^{-2i beta} z^2)] >= 0

on the disk.  The expression factors as
``Re[(e^{i alpha} h' + e^{-i alpha} g')(e^{i beta} - e^{-i beta} z^2)]``,
which is what the grid kernel evaluates.

The search maximizes the worst *cosine* ``min_z Re(AB)/|AB|`` rather than the
raw minimum.  The raw value is dominated by the points where ``|AB|`` is large
and rewards tilting the pair toward whatever the finite grid misses; the
cosine treats every sample point alike.

Sample points alone cannot pin the pair down when the map has a boundary pole
(the half-plane harmonic map and its rotations): a tilt ``eps`` only shows up
within distance ``eps`` of the pole.  The final polish therefore maximizes
the smallest eigenvalue of the Toeplitz matrix of
``p = e^{i(alpha+beta)} q``, which is positive semidefinite for every order
exactly when ``Re p >= 0`` on the disk (Carathéodory-Toeplitz).  For maps
with a boundary pole this locates the pair to about ``1e-8`` (the smallest
eigenvalue is quadratic in the tilt and bottoms out at rounding level).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz
from scipy.optimize import minimize, minimize_scalar

from .. import _accel
from .. import series as S
from ..errors import DegenerateAlpha, MembershipNotCertified, NoAdmissiblePair, NotHerglotz
from ..mappings import AnalyticMap, HarmonicMap, membership

CSS_TOL = 1e-6
CSS_RADII = (0.3, 0.6, 0.9, 0.99)
CSS_ANGLES = 256
HERGLOTZ_TOL = 1e-9
TOEPLITZ_ORDER = 32
TOEPLITZ_FLOOR = 1e-11
TWO_PI = 2 * np.pi


def css_grid(radii=CSS_RADII, n_angles: int = CSS_ANGLES) -> np.ndarray:
    t = TWO_PI * np.arange(n_angles) / n_angles
    return np.outer(np.asarray(radii, dtype=float), np.exp(1j * t)).ravel()


@dataclass(frozen=True)
class DirectionPair:
    alpha: float
    beta: float
    min_residual: float
    min_cosine: float = float("nan")
    toeplitz_min: float = float("nan")

    @property
    def admissible(self) -> bool:
        return self.min_residual >= -CSS_TOL

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "min_residual": self.min_residual,
            "min_cosine": self.min_cosine,
            "toeplitz_min": self.toeplitz_min,
        }


def _wrap(x: float) -> float:
    v = float(np.mod(x, TWO_PI))
    return 0.0 if TWO_PI - v < 1e-12 else v


def css_residual(f: HarmonicMap, alpha: float, beta: float, grid) -> np.ndarray:
    z = np.asarray(grid, dtype=np.complex128)
    A = np.exp(1j * alpha) * f.h.derivative(z) + np.exp(-1j * alpha) * f.g.derivative(z)
    return (A * (np.exp(1j * beta) - np.exp(-1j * beta) * z * z)).real


def css2_search(
    f: HarmonicMap,
    grid=None,
    angle_steps: int = 360,
    refine: bool = True,
    certify: bool = True,
    raise_on_failure: bool = True,
) -> DirectionPair:
    """Maximize ``min_z`` of the positivity expression over ``(alpha, beta)``.

    Exhaustive search on an ``angle_steps x angle_steps`` grid, then
    alternating golden-section refinement along each axis, with a simplex
    polish if that stalls below the threshold.
    """
    if certify and not membership(f).in_K0H:
        raise MembershipNotCertified(f"{f.label} is not certified in K_H^0")
    z = css_grid() if grid is None else np.asarray(grid, dtype=np.complex128).ravel()
    hp = np.ascontiguousarray(f.h.derivative(z), dtype=np.complex128)
    gp = np.ascontiguousarray(f.g.derivative(z), dtype=np.complex128)
    z2 = np.ascontiguousarray(z * z)
    angles = TWO_PI * np.arange(angle_steps) / angle_steps
    table = _accel.css2_grid(hp, gp, z2, angles, angles)
    i, j = np.unravel_index(int(np.argmax(table)), table.shape)
    a, b, best = float(angles[i]), float(angles[j]), float(table[i, j])

    def products(x):
        A = np.exp(1j * x[0]) * hp + np.exp(-1j * x[0]) * gp
        return A * (np.exp(1j * x[1]) - np.exp(-1j * x[1]) * z2)

    def objective(x):
        p = products(x)
        return -float(np.min(p.real / np.abs(p)))

    if refine:
        step = TWO_PI / angle_steps
        x = np.array([a, b])
        for _ in range(8):
            prev = -objective(x)
            for k in range(2):
                def line(t, k=k):
                    y = x.copy()
                    y[k] = t
                    return objective(y)

                res = minimize_scalar(line, bounds=(x[k] - step, x[k] + step), method="bounded",
                                      options={"xatol": 1e-12})
                if res.fun < objective(x):
                    x[k] = res.x
            if -objective(x) - prev < 1e-13:
                break
        if -objective(x) < -CSS_TOL:
            res = minimize(objective, x, method="Nelder-Mead",
                           options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 2000})
            if res.fun < objective(x):
                x = res.x
        if -objective(x) > best:
            a, b, best = float(x[0]), float(x[1]), -objective(x)

    tfun = _toeplitz_objective(f)
    tmin = tfun(a, b)
    if refine:
        h = TWO_PI / angle_steps
        simplex = np.array([[a, b], [a + h, b], [a, b + h]])
        res = minimize(lambda y: -tfun(y[0], y[1]), [a, b], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 1000, "initial_simplex": simplex})
        cand = -objective(res.x)
        # accept only a gain above the eigenvalue rounding floor
        if -res.fun > tmin + TOEPLITZ_FLOOR and cand >= min(best, 0.0) - CSS_TOL:
            a, b, best, tmin = float(res.x[0]), float(res.x[1]), cand, -float(res.fun)

    raw = float(np.min(products((a, b)).real))
    pair = DirectionPair(_wrap(a), _wrap(b), raw, float(best), float(tmin))
    if raise_on_failure and not pair.admissible:
        raise NoAdmissiblePair(f"{f.label}: best min residual {raw:.3g} at {pair}")
    return pair


def _toeplitz_objective(f: HarmonicMap, n: int = TOEPLITZ_ORDER):
    hp = S.differentiate(f.h.series).coeffs
    gp = S.differentiate(f.g.series).coeffs
    n = min(n, hp.size - 1, gp.size - 1)
    hp, gp = hp[: n + 1], gp[: n + 1]

    def fun(alpha, beta):
        # p = e^{i(a+b)} (h' + e^{-2ia} g')(1 - e^{-2ib} z^2)
        A = np.exp(1j * (alpha + beta)) * hp + np.exp(1j * (beta - alpha)) * gp
        p = A.copy()
        p[2:] -= np.exp(-2j * beta) * A[:-2]
        c = np.r_[p[0].real, p[1:] / 2]
        return float(np.linalg.eigvalsh(toeplitz(c))[0])

    return fun


def toeplitz_min(f: HarmonicMap, alpha: float, beta: float, n: int = TOEPLITZ_ORDER) -> float:
    """Smallest eigenvalue of the Toeplitz matrix of ``p = e^{i(alpha+beta)} q``.

    With ``p = p_0 + sum p_k z^k`` the entries are ``t_{jk} = c_{j-k}`` where
    ``c_0 = Re p_0``, ``c_k = p_k/2`` and ``c_{-k} = conj(c_k)``.
    """
    return _toeplitz_objective(f, n)(alpha, beta)


def css_q(f: HarmonicMap, alpha: float, beta: float) -> AnalyticMap:
    """``q = (h' + e^{-2i alpha} g')(1 - e^{-2i beta} z^2)``; ``Re(e^{i(alpha+beta)} q) >= 0``."""
    ea, eb = np.exp(-2j * alpha), np.exp(-2j * beta)
    hp = S.differentiate(f.h.series)
    gp = S.differentiate(f.g.series)
    n = hp.order
    poly = S.TruncatedSeries(np.r_[1.0, 0.0, -eb, np.zeros(max(n - 2, 0))][: n + 1])
    ser = S.mul(S.add(hp, S.scale(gp, ea)), poly)

    def q(z):
        return (f.h.derivative(z) + ea * f.g.derivative(z)) * (1 - eb * z * z)

    return AnalyticMap(q, ser, f"q[{f.label}]", check=False)


def herglotz_delta(q: AnalyticMap, alpha: float, grid=None, tol: float = HERGLOTZ_TOL) -> AnalyticMap:
    """``delta = (q - 1)/(q + e^{-2i alpha})`` for ``Re(e^{i alpha} q) >= 0``, ``q(0) = 1``.

    The result is a Schwarz function and ``q = (1 + e^{-2i alpha} delta)/(1 - delta)``.
    Both facts are checked on ``grid``.
    """
    if np.cos(alpha) <= 0:
        raise DegenerateAlpha(f"cos(alpha) = {np.cos(alpha):.3g} <= 0")
    z = css_grid((0.25, 0.5, 0.75, 0.9, 0.99), 64) if grid is None else np.asarray(grid, dtype=np.complex128)
    if abs(q(0j) - 1) > tol:
        raise NotHerglotz(f"q(0) = {q(0j)} != 1")
    qz = np.asarray(q(z))
    if np.min((np.exp(1j * alpha) * qz).real) < -tol:
        raise NotHerglotz("Re(e^{i alpha} q) < 0 on the grid")
    e = np.exp(-2j * alpha)

    def delta(w):
        qw = q(w)
        return (qw - 1) / (qw + e)

    ser = S.div(q.series - S.constant(1.0, q.order), q.series + S.constant(e, q.order))
    d = AnalyticMap(delta, ser, f"delta[{q.label}]", check=False)
    dz = delta(z)
    if np.any(np.abs(dz) > np.abs(z) * (1 + tol) + tol):
        raise NotHerglotz("|delta(z)| > |z| on the grid")
    recon = (1 + e * dz) / (1 - dz)
    if np.max(np.abs(recon - qz) / np.maximum(1, np.abs(qz))) > tol:
        raise NotHerglotz("reconstruction of q from delta failed")
    return d
