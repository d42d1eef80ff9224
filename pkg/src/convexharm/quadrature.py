"""Radial integration of analytic derivatives.

``radial_antiderivative(dfun, z)`` returns ``int_0^1 dfun(t z) z dt``, i.e. the
antiderivative vanishing at the origin, for points anywhere in the open unit
disk.  Singularities of ``dfun`` are assumed to lie on or outside the unit
circle, so along the segment the distance to the nearest one is at least
``1 - t|z|``.  Panels are graded geometrically toward ``t = 1`` so every panel
is no longer than that distance, and each carries a fixed Gauss-Legendre rule.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss

GAUSS_NODES = 20

_x, _w = leggauss(GAUSS_NODES)
_NODES = (_x + 1.0) / 2.0
_WEIGHTS = _w / 2.0


def panel_breaks(r: float) -> np.ndarray:
    """Breakpoints in ``[0, 1]`` for a path ending at radius ``r``."""
    gap = max(1.0 - r, 1e-15)
    n = int(np.ceil(np.log2(1.0 / gap))) + 2
    return np.concatenate([1.0 - 2.0 ** -np.arange(n), [1.0]])


def radial_antiderivative(dfun, z):
    z = np.asarray(z)
    if not np.iscomplexobj(z):
        z = z.astype(np.complex128)
    flat = z.ravel()
    out = np.zeros_like(flat)
    if flat.size == 0:
        return out.reshape(z.shape)
    r = float(np.max(np.abs(flat)))
    breaks = panel_breaks(r)
    for a, b in zip(breaks[:-1], breaks[1:]):
        t = a + (b - a) * _NODES
        vals = dfun(np.multiply.outer(flat, t))
        out += vals @ ((b - a) * _WEIGHTS)
    out *= flat
    return out.reshape(z.shape)
