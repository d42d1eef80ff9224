"""Truncated complex power series.

A ``TruncatedSeries`` holds the Taylor coefficients ``c_0 .. c_N`` of a
function analytic near the origin.  All operations return new objects; the
coefficient array is stored read-only.

Coefficient extraction from a point evaluator (``extract_coeffs``) samples
the evaluator on a circle and applies a discrete Fourier transform.  The sums
are carried out in extended precision (``numpy.longdouble``) when the
platform provides it, because the division by ``rho**n`` amplifies rounding
noise geometrically in ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _accel
from .errors import AliasingTooLarge, NearZeroConstantTerm, NonzeroInnerConstant, OutsideEvaluationDisk

DEFAULT_ORDER = 64
R_MAX = 0.95
DIV_TOL = 1e-12
COEFF_TOL = 1e-8
OVERSAMPLE = 4
INNER_ZERO_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """Coefficients ``c_0 .. c_N`` of a power series truncated at order ``N``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size < 2:
            raise ValueError("a truncated series needs order N >= 1")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        return f"TruncatedSeries(order={self.order}, [{head}, ...])"

    def __add__(self, other):
        return add(self, _coerce(other, self.order))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, scale(_coerce(other, self.order), -1.0))

    def __rsub__(self, other):
        return add(_coerce(other, self.order), scale(self, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, other):
        if np.isscalar(other):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if np.isscalar(other):
            return scale(self, 1.0 / other)
        return div(self, other)

    def __call__(self, z, r_max: float = R_MAX):
        return evaluate(self, z, r_max=r_max)

    def truncate(self, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1, dtype=np.complex128)
        m = min(order, self.order) + 1
        c[:m] = self.coeffs[:m]
        return TruncatedSeries(c)

    def allclose(self, other: "TruncatedSeries", atol: float) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.max(np.abs(self.coeffs[:n] - other.coeffs[:n])) <= atol)


def _coerce(x, order):
    if isinstance(x, TruncatedSeries):
        return x
    return constant(x, order)


def constant(c: complex, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    v = np.zeros(order + 1, dtype=np.complex128)
    v[0] = c
    return TruncatedSeries(v)


def monomial(m: int, coeff: complex = 1.0, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``coeff * z**m`` as a series of the given order."""
    v = np.zeros(order + 1, dtype=np.complex128)
    if m <= order:
        v[m] = coeff
    return TruncatedSeries(v)


def from_function(coef: Callable[[np.ndarray], np.ndarray], order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Series whose n-th coefficient is ``coef(n)`` (vectorized over ``n``)."""
    n = np.arange(order + 1)
    return TruncatedSeries(np.asarray(coef(n), dtype=np.complex128) * np.ones(order + 1))


def scale(a: TruncatedSeries, s: complex) -> TruncatedSeries:
    return TruncatedSeries(a.coeffs * s)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficient-wise sum; the shorter series is zero-padded."""
    n = max(a.order, b.order) + 1
    c = np.zeros(n, dtype=np.complex128)
    c[: a.order + 1] += a.coeffs
    c[: b.order + 1] += b.coeffs
    return TruncatedSeries(c)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``.

    Coefficients beyond the shorter order are not determined by the inputs,
    so they are dropped rather than padded.
    """
    n = min(a.order, b.order) + 1
    return TruncatedSeries(_accel.cauchy_product(a.coeffs, b.coeffs, n))


def div(a: TruncatedSeries, b: TruncatedSeries, tol: float = DIV_TOL) -> TruncatedSeries:
    """Series ``c`` with ``mul(c, b) == a`` through order ``min(a.order, b.order)``."""
    if abs(b.coeffs[0]) <= tol:
        raise NearZeroConstantTerm(f"|b_0| = {abs(b.coeffs[0]):.3g} <= {tol:g}")
    n = min(a.order, b.order) + 1
    return TruncatedSeries(_accel.series_divide(a.coeffs, b.coeffs, n))


def differentiate(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the order drops by one."""
    n = np.arange(1, a.order + 1)
    c = a.coeffs[1:] * n
    if c.size < 2:
        c = np.append(c, 0.0)
    return TruncatedSeries(c)


def integrate_from_zero(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative vanishing at 0; the order rises by one."""
    c = np.zeros(a.order + 2, dtype=np.complex128)
    c[1:] = a.coeffs / np.arange(1, a.order + 2)
    return TruncatedSeries(c)


def compose_inner_zero(outer: TruncatedSeries, inner: TruncatedSeries, tol: float = INNER_ZERO_TOL) -> TruncatedSeries:
    """Taylor coefficients of ``outer(inner(z))`` when ``inner(0) == 0``.

    Inner maps that move the origin (disk automorphisms, say) have no finite
    recentring here; sample them pointwise and use ``extract_coeffs``.
    """
    if abs(inner.coeffs[0]) > tol:
        raise NonzeroInnerConstant(f"inner(0) = {inner.coeffs[0]:.3g}")
    n = min(outer.order, inner.order) + 1
    inner0 = inner.coeffs.copy()
    inner0[0] = 0.0
    return TruncatedSeries(_accel.compose_horner(outer.coeffs[:n].copy(), inner0, n))


def evaluate(a: TruncatedSeries, z, r_max: float = R_MAX):
    """Horner evaluation of the truncated polynomial at ``z`` (scalar or array)."""
    za = np.asarray(z, dtype=np.complex128)
    if za.size and np.max(np.abs(za)) > r_max:
        raise OutsideEvaluationDisk(f"|z| = {np.max(np.abs(za)):.4g} exceeds r_max = {r_max}")
    out = _accel.horner_eval(a.coeffs, np.atleast_1d(za))
    return out.reshape(za.shape)[()] if za.ndim == 0 else out


# ---------------------------------------------------------------------------
# contour-sampled coefficients
# ---------------------------------------------------------------------------

_EXT = np.longdouble
_CEXT = np.clongdouble


def _dft_coeffs(func, order: int, rho: float, m: int) -> np.ndarray:
    pi = np.arccos(_EXT(-1))
    k = np.arange(m)
    tw = np.exp(_CEXT(-2j) * pi * k.astype(_EXT) / m)
    z = _EXT(rho) * np.conj(tw)
    try:
        vals = np.asarray(func(z))
        if vals.dtype != _CEXT:
            raise TypeError
    except (TypeError, ValueError):
        # evaluator cannot run in extended precision
        vals = np.asarray(func(z.astype(np.complex128)), dtype=np.complex128)
    vals = vals.astype(_CEXT)
    n = np.arange(order + 1)
    table = tw[np.outer(n, k) % m]
    c = (table @ vals) / m
    c = c / _EXT(rho) ** n
    return c.astype(np.complex128)


def extract_coeffs(
    func: Callable,
    order: int,
    rho: float,
    oversample: int = OVERSAMPLE,
    coeff_tol: float = COEFF_TOL,
) -> TruncatedSeries:
    """Taylor coefficients of ``func`` from equispaced samples on ``|z| = rho``.

    Uses ``M = oversample * (order + 1)`` samples; the aliasing/roundoff error
    is estimated by repeating with ``2M`` samples.

    Raises
    ------
    AliasingTooLarge
        If the two estimates differ by more than ``coeff_tol``.
    """
    if not 0 < rho < 1:
        raise ValueError("sampling radius must lie in (0, 1)")
    m = oversample * (order + 1)
    c1 = _dft_coeffs(func, order, rho, m)
    c2 = _dft_coeffs(func, order, rho, 2 * m)
    err = float(np.max(np.abs(c1 - c2)))
    if not np.isfinite(err) or err > coeff_tol:
        raise AliasingTooLarge(f"aliasing estimate {err:.3g} > {coeff_tol:g} (rho={rho}, N={order})")
    return TruncatedSeries(c1)
