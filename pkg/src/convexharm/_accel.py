"""Hot numeric kernels with a numba path and a pure-numpy path.

The numba versions are used when numba imports and the environment variable
``CONVEXHARM_DISABLE_JIT`` is unset (or ``0``).  Both paths are always
importable as ``NUMPY_KERNELS`` / ``NUMBA_KERNELS`` so the test-suite and the
benchmark can compare them side by side.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

__all__ = [
    "BACKEND",
    "cauchy_product",
    "series_divide",
    "compose_horner",
    "horner_eval",
    "points_in_polygon",
    "turn_cross",
    "css2_grid",
    "NUMPY_KERNELS",
    "NUMBA_KERNELS",
]


# ---------------------------------------------------------------------------
# pure numpy
# ---------------------------------------------------------------------------


def _cauchy_product_np(a, b, n_out):
    return np.convolve(a, b)[:n_out].astype(np.complex128)


def _series_divide_np(a, b, n_out):
    c = np.zeros(n_out, dtype=np.complex128)
    nb = min(len(b), n_out)
    for n in range(n_out):
        acc = a[n] if n < len(a) else 0.0
        k_hi = min(n, nb - 1)
        if k_hi >= 1:
            acc = acc - np.dot(b[1 : k_hi + 1], c[n - 1 :: -1][:k_hi])
        c[n] = acc / b[0]
    return c


def _compose_horner_np(outer, inner, n_out):
    res = np.zeros(n_out, dtype=np.complex128)
    res[0] = outer[-1]
    for j in range(len(outer) - 2, -1, -1):
        res = np.convolve(res, inner)[:n_out]
        res[0] += outer[j]
    return res


def _horner_eval_np(coeffs, z):
    out = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        out = out * z + c
    return out


def _points_in_polygon_np(px, py, vx, vy, chunk=512):
    # even-odd crossing rule; identical to nonzero winding for simple polygons
    x1, y1 = vx, vy
    x2, y2 = np.roll(vx, -1), np.roll(vy, -1)
    inside = np.zeros(px.shape[0], dtype=np.bool_)
    for s in range(0, px.shape[0], chunk):
        X = px[s : s + chunk, None]
        Y = py[s : s + chunk, None]
        straddle = (y1 > Y) != (y2 > Y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = x1 + (Y - y1) * (x2 - x1) / (y2 - y1)
        hits = straddle & (X < xint)
        inside[s : s + chunk] = (np.count_nonzero(hits, axis=1) % 2) == 1
    return inside


def _turn_cross_np(wx, wy):
    dx = np.roll(wx, -1) - wx
    dy = np.roll(wy, -1) - wy
    dx2 = np.roll(dx, -1)
    dy2 = np.roll(dy, -1)
    n1 = np.hypot(dx, dy)
    n2 = np.hypot(dx2, dy2)
    return (dx * dy2 - dy * dx2) / (n1 * n2)


def _css2_grid_np(hp, gp, z2, alphas, betas):
    # min_z cos arg[(e^{ia} h' + e^{-ia} g')(e^{ib} - e^{-ib} z^2)]
    eb = np.exp(1j * betas)[:, None]
    out = np.empty((alphas.shape[0], betas.shape[0]))
    B = eb - np.conj(eb) * z2[None, :]
    B = B / np.abs(B)
    for i, a in enumerate(alphas):
        A = np.exp(1j * a) * hp + np.exp(-1j * a) * gp
        A = A / np.abs(A)
        out[i] = (A.real[None, :] * B.real - A.imag[None, :] * B.imag).min(axis=1)
    return out


NUMPY_KERNELS = {
    "cauchy_product": _cauchy_product_np,
    "series_divide": _series_divide_np,
    "compose_horner": _compose_horner_np,
    "horner_eval": _horner_eval_np,
    "points_in_polygon": _points_in_polygon_np,
    "turn_cross": _turn_cross_np,
    "css2_grid": _css2_grid_np,
}


# ---------------------------------------------------------------------------
# numba
# ---------------------------------------------------------------------------


def _build_numba_kernels():
    njit = numba.njit(cache=True, nogil=True)

    @njit
    def cauchy_product(a, b, n_out):
        c = np.zeros(n_out, dtype=np.complex128)
        for i in range(min(len(a), n_out)):
            ai = a[i]
            for j in range(min(len(b), n_out - i)):
                c[i + j] += ai * b[j]
        return c

    @njit
    def series_divide(a, b, n_out):
        c = np.zeros(n_out, dtype=np.complex128)
        nb = len(b)
        for n in range(n_out):
            acc = a[n] if n < len(a) else 0.0 + 0.0j
            for k in range(1, min(n, nb - 1) + 1):
                acc -= b[k] * c[n - k]
            c[n] = acc / b[0]
        return c

    @njit
    def compose_horner(outer, inner, n_out):
        res = np.zeros(n_out, dtype=np.complex128)
        tmp = np.zeros(n_out, dtype=np.complex128)
        res[0] = outer[len(outer) - 1]
        for j in range(len(outer) - 2, -1, -1):
            tmp[:] = 0.0
            for i in range(n_out):
                ri = res[i]
                if ri == 0:
                    continue
                for k in range(min(len(inner), n_out - i)):
                    tmp[i + k] += ri * inner[k]
            res[:] = tmp
            res[0] += outer[j]
        return res

    @njit
    def horner_eval(coeffs, z):
        zf = z.ravel()
        out = np.empty(zf.shape[0], dtype=np.complex128)
        n = len(coeffs)
        for m in range(zf.shape[0]):
            acc = coeffs[n - 1]
            zm = zf[m]
            for j in range(n - 2, -1, -1):
                acc = acc * zm + coeffs[j]
            out[m] = acc
        return out.reshape(z.shape)

    @njit
    def points_in_polygon(px, py, vx, vy):
        n = len(vx)
        inside = np.zeros(len(px), dtype=np.bool_)
        for p in range(len(px)):
            x = px[p]
            y = py[p]
            c = False
            j = n - 1
            for i in range(n):
                yi = vy[i]
                yj = vy[j]
                if (yi > y) != (yj > y):
                    xint = vx[i] + (y - yi) * (vx[j] - vx[i]) / (yj - yi)
                    if x < xint:
                        c = not c
                j = i
            inside[p] = c
        return inside

    @njit
    def turn_cross(wx, wy):
        n = len(wx)
        out = np.empty(n)
        for m in range(n):
            m1 = (m + 1) % n
            m2 = (m + 2) % n
            dx = wx[m1] - wx[m]
            dy = wy[m1] - wy[m]
            dx2 = wx[m2] - wx[m1]
            dy2 = wy[m2] - wy[m1]
            out[m] = (dx * dy2 - dy * dx2) / (np.hypot(dx, dy) * np.hypot(dx2, dy2))
        return out

    @njit
    def css2_grid(hp, gp, z2, alphas, betas):
        na = len(alphas)
        nbeta = len(betas)
        nz = len(hp)
        out = np.empty((na, nbeta))
        # unit vectors of B = e^{ib} - e^{-ib} z^2, one row per beta
        Br = np.empty((nbeta, nz))
        Bi = np.empty((nbeta, nz))
        for j in range(nbeta):
            cb = np.cos(betas[j])
            sb = np.sin(betas[j])
            for m in range(nz):
                zr = z2[m].real
                zi = z2[m].imag
                br = cb - (cb * zr + sb * zi)
                bi = sb - (cb * zi - sb * zr)
                nb = np.hypot(br, bi)
                Br[j, m] = br / nb
                Bi[j, m] = bi / nb
        Ar = np.empty(nz)
        Ai = np.empty(nz)
        for i in range(na):
            ca = np.cos(alphas[i])
            sa = np.sin(alphas[i])
            for m in range(nz):
                # e^{ia} h' + e^{-ia} g', normalized
                ar = ca * hp[m].real - sa * hp[m].imag + ca * gp[m].real + sa * gp[m].imag
                ai = sa * hp[m].real + ca * hp[m].imag - sa * gp[m].real + ca * gp[m].imag
                na_ = np.hypot(ar, ai)
                Ar[m] = ar / na_
                Ai[m] = ai / na_
            for j in range(nbeta):
                best = np.inf
                for m in range(nz):
                    best = min(best, Ar[m] * Br[j, m] - Ai[m] * Bi[j, m])
                out[i, j] = best
        return out

    return {
        "cauchy_product": cauchy_product,
        "series_divide": series_divide,
        "compose_horner": compose_horner,
        "horner_eval": horner_eval,
        "points_in_polygon": points_in_polygon,
        "turn_cross": turn_cross,
        "css2_grid": css2_grid,
    }


NUMBA_KERNELS = _build_numba_kernels() if numba is not None else None

_disabled = os.environ.get("CONVEXHARM_DISABLE_JIT", "0").strip().lower() not in ("", "0", "false", "no")
_active = NUMPY_KERNELS if (_disabled or NUMBA_KERNELS is None) else NUMBA_KERNELS
BACKEND = "numpy" if _active is NUMPY_KERNELS else "numba"


def cauchy_product(a: np.ndarray, b: np.ndarray, n_out: int) -> np.ndarray:
    """Cauchy product of two coefficient vectors, truncated to ``n_out`` terms."""
    return _active["cauchy_product"](a, b, n_out)


def series_divide(a: np.ndarray, b: np.ndarray, n_out: int) -> np.ndarray:
    """Coefficients of ``a/b`` by forward substitution; ``b[0]`` must be nonzero."""
    return _active["series_divide"](a, b, n_out)


def compose_horner(outer: np.ndarray, inner: np.ndarray, n_out: int) -> np.ndarray:
    """Coefficients of ``outer(inner(z))`` for ``inner[0] == 0``."""
    return _active["compose_horner"](outer, inner, n_out)


def horner_eval(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    return _active["horner_eval"](coeffs, z)


def points_in_polygon(px, py, vx, vy) -> np.ndarray:
    """Boolean mask of points strictly inside the closed polygon ``(vx, vy)``."""
    return _active["points_in_polygon"](px, py, vx, vy)


def turn_cross(wx, wy) -> np.ndarray:
    """Normalized cross products of consecutive edges of a closed polyline."""
    return _active["turn_cross"](wx, wy)


def css2_grid(hp, gp, z2, alphas, betas) -> np.ndarray:
    """Table over ``(alpha, beta)`` of the smallest normalized positivity residual.

    Each entry is ``min_z Re(A B)/|A B|`` with ``A = e^{ia} h' + e^{-ia} g'``
    and ``B = e^{ib} - e^{-ib} z^2``: the cosine of the worst argument.
    """
    return _active["css2_grid"](hp, gp, z2, alphas, betas)
