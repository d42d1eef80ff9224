"""The deterministic sample catalog used by verification sweeps.

Every sample is a shear ``shear(phi, omega, theta)`` or a rotation of one,
and membership is always re-certified rather than assumed.  The direction
``theta`` is chosen so the shear keeps the image of ``phi`` convex: the
half-plane is sheared along its boundary line and the strip along its axis.
Shears of the identity and of the Koebe function are included too; apart
from ``shear(k, -z, 0)`` (the half-plane harmonic map) they are expected to
fail certification.

Random draws come from ``numpy.random.default_rng(seed)`` (PCG64), in this
order:

1. rotation angle for the rotated half-plane map, uniform on ``[0, 2 pi)``;
2. rotation angle for the rotated strip map;
3. one unimodular coefficient per base map for the ``lam z^m`` dilatations;
4. one Blaschke parameter ``c`` per base map (radius uniform on ``[0, 0.8)``,
   angle uniform);
5. two rotation angles applied to the half-plane harmonic map.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import mappings as M
from .errors import UnknownMap
from .series import DEFAULT_ORDER

ANALYTIC_MAPS = {
    "identity": M.identity_map,
    "koebe": M.koebe,
    "halfplane-l": M.halfplane_l,
    "strip": M.strip_map,
    "H": M.halfplane_H,
    "G": M.halfplane_G,
}

HARMONIC_MAPS = {
    "harmonic-L": M.harmonic_L,
    "identity": M.identity_harmonic,
}

CATALOG_DESCRIPTIONS = {
    "identity": ("analytic", "z", "0"),
    "koebe": ("analytic", "z/(1-z)^2", "0"),
    "halfplane-l": ("analytic", "z/(1-z)", "0"),
    "strip": ("analytic", "log((1+z)/(1-z))/2", "0"),
    "H": ("analytic", "(2z-z^2)/(2(1-z)^2)", "0"),
    "G": ("analytic", "-z^2/(2(1-z)^2)", "0"),
    "harmonic-L": ("harmonic", "H + conj(G)", "-z"),
}


def get_harmonic(name: str, order: int = DEFAULT_ORDER) -> M.HarmonicMap:
    """Look up a named map; analytic maps are returned as ``phi + conj(0)``."""
    if name in HARMONIC_MAPS:
        return HARMONIC_MAPS[name](order)
    if name in ANALYTIC_MAPS:
        return M.analytic_as_harmonic(ANALYTIC_MAPS[name](order))
    raise UnknownMap(name)


def get_analytic(name: str, order: int = DEFAULT_ORDER) -> M.AnalyticMap:
    if name in ANALYTIC_MAPS:
        return ANALYTIC_MAPS[name](order)
    raise UnknownMap(name)


_MONO = re.compile(r"^\s*(?:\(?([^()*]+?)\)?\s*\*?\s*)?z(?:\^(\d+))?\s*$")


def parse_dilatation(text: str, order: int = DEFAULT_ORDER) -> M.AnalyticMap:
    """Parse ``0``, ``z``, ``-z``, ``z^2``, ``1j*z^3``, ``(0.6+0.8j)z^2`` or ``blaschke:<c>``."""
    t = text.strip().replace(" ", "")
    if t in ("0", "zero"):
        return M.zero_map(order)
    if t.startswith("blaschke:"):
        return M.blaschke_dilatation(complex(t.split(":", 1)[1]), order)
    m = _MONO.match(t)
    if not m:
        raise UnknownMap(f"cannot parse dilatation {text!r}")
    coef, power = m.groups()
    if coef in (None, ""):
        lam = 1.0 + 0j
    elif coef in ("-", "+"):
        lam = complex(f"{coef}1")
    else:
        try:
            lam = complex(coef.replace("i", "j"))
        except ValueError as exc:
            raise UnknownMap(f"cannot parse dilatation {text!r}") from exc
    return M.monomial_dilatation(lam, int(power or 1), order)


@dataclass
class Sample:
    label: str
    recipe: dict
    f: M.HarmonicMap
    _membership: M.ClassMembership | None = field(default=None, repr=False)

    @property
    def membership(self) -> M.ClassMembership:
        if self._membership is None:
            self._membership = M.membership(self.f)
        return self._membership

    @property
    def certified(self) -> bool:
        return self.membership.in_K0H


def _unit(angle: float) -> complex:
    return complex(np.exp(1j * angle))


def build_catalog(seed: int = 0, order: int = DEFAULT_ORDER) -> list:
    """Deterministic list of ``Sample`` objects (see module docstring)."""
    rng = np.random.default_rng(seed)
    rot_l = float(rng.uniform(0, 2 * np.pi))
    rot_s = float(rng.uniform(0, 2 * np.pi))

    l = M.halfplane_l(order)
    s = M.strip_map(order)
    # (name, phi, theta, rotation angle applied to phi)
    bases = [
        ("halfplane-l", l, np.pi / 2, 0.0),
        ("strip", s, 0.0, 0.0),
        ("halfplane-l", M.rotate_analytic(l, _unit(rot_l)), np.mod(np.pi / 2 - rot_l, np.pi), rot_l),
        ("strip", M.rotate_analytic(s, _unit(rot_s)), np.mod(-rot_s, np.pi), rot_s),
    ]
    lams = [_unit(float(rng.uniform(0, 2 * np.pi))) for _ in bases]
    cs = [float(rng.uniform(0, 0.8)) * _unit(float(rng.uniform(0, 2 * np.pi))) for _ in bases]
    l_rots = [float(rng.uniform(0, 2 * np.pi)) for _ in range(2)]

    out = []

    def add(f, recipe):
        out.append(Sample(f.label, recipe, f))

    for name in ("halfplane-l", "strip", "identity"):
        add(M.analytic_as_harmonic(get_analytic(name, order)), {"phi": name, "omega": "0", "theta": 0.0})

    for (name, phi, theta, rot), lam_r, c in zip(bases, lams, cs):
        # recipe strings are full precision and accepted by parse_dilatation
        dils = []
        for m in (1, 2, 3):
            for lam in (1.0 + 0j, -1.0 + 0j, lam_r):
                dils.append((M.monomial_dilatation(lam, m, order), f"{lam!r}z^{m}"))
        dils.append((M.blaschke_dilatation(c, order), f"blaschke:{c!r}"))
        for w, omega_text in dils:
            f = M.shear(phi, w, theta)
            add(f, {"phi": name, "phi_rotation": rot, "omega": omega_text, "theta": float(theta)})

    L = M.harmonic_L(order)
    add(L, {"phi": "koebe", "omega": "-z", "theta": 0.0})
    for a in l_rots:
        add(M.rotate_harmonic(L, _unit(a)), {"phi": "koebe", "omega": "-z", "theta": 0.0, "rotation": a})

    # direction-convex only: expected to fail certification
    k = M.koebe(order)
    for lam, m in ((1.0, 1), (1.0, 2)):
        add(M.shear(k, M.monomial_dilatation(lam, m, order), 0.0), {"phi": "koebe", "omega": f"{lam}z^{m}", "theta": 0.0})
    add(M.shear(M.identity_map(order), M.monomial_dilatation(1.0, 1, order), 0.0),
        {"phi": "identity", "omega": "z", "theta": 0.0})
    return out


def certified_samples(seed: int = 0, order: int = DEFAULT_ORDER) -> list:
    return [s for s in build_catalog(seed, order) if s.certified]
