"""Closed-form growth and distortion envelopes as functions of ``r = |z|``."""

from __future__ import annotations

import numpy as np

from ..errors import RadiusOutOfRange

#: name -> (lower(r), upper(r))
ENVELOPES = {
    "K-growth": (lambda r: r / (1 + r), lambda r: r / (1 - r)),
    "K-distortion": (lambda r: 1 / (1 + r) ** 2, lambda r: 1 / (1 - r) ** 2),
    "S-growth": (lambda r: r / (1 + r) ** 2, lambda r: r / (1 - r) ** 2),
    "S-distortion": (lambda r: (1 - r) / (1 + r) ** 3, lambda r: (1 + r) / (1 - r) ** 3),
    "P-growth": (lambda r: (1 - r) / (1 + r), lambda r: (1 + r) / (1 - r)),
    # full harmonic map; the lower bound is known not to be sharp
    "f-growth": (lambda r: r / (1 + r) ** 2, lambda r: r / (1 - r) ** 2),
    "h-growth": (lambda r: (2 * r + r * r) / (2 * (1 + r) ** 2), lambda r: (2 * r - r * r) / (2 * (1 - r) ** 2)),
    "h-distortion": (lambda r: 1 / (1 + r) ** 3, lambda r: 1 / (1 - r) ** 3),
}

H_GROWTH_LIMIT = 3.0 / 8.0


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r < 0) or np.any(r >= 1):
        raise RadiusOutOfRange("envelopes are defined for 0 <= r < 1")
    return r


def envelopes(r) -> dict:
    """All envelopes at ``r`` (scalar or array): ``{name: (lower, upper)}``."""
    r = _check_r(r)
    out = {}
    for name, (lo, hi) in ENVELOPES.items():
        a, b = lo(r), hi(r)
        out[name] = (float(a), float(b)) if r.ndim == 0 else (a, b)
    return out


def envelope(name: str, r) -> tuple:
    lo, hi = ENVELOPES[name]
    r = _check_r(r)
    return lo(r), hi(r)


def envelope_strictness(r) -> dict:
    """Gaps by which the h-envelopes sit strictly inside the S-envelopes.

    All four gaps are positive for ``0 < r < 1``.
    """
    r = _check_r(r)
    e = envelopes(r)
    return {
        "growth-upper": e["S-growth"][1] - e["h-growth"][1],
        "growth-lower": e["h-growth"][0] - e["S-growth"][0],
        "distortion-upper": e["S-distortion"][1] - e["h-distortion"][1],
        "distortion-lower": e["h-distortion"][0] - e["S-distortion"][0],
    }
