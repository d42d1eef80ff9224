"""Acceptance criteria 1-11.

Each ``criterion_N`` returns ``(ok, detail)``.  Under pytest every criterion
is one test and the PASS/FAIL lines are printed in the terminal summary (see
``conftest.py``).  Run directly with ``python3 tests/test_acceptance.py`` to
get the same lines on stdout.
"""

from __future__ import annotations

import functools
import sys

import numpy as np
import pytest

from convexharm import analysis as A
from convexharm import mappings as M
from convexharm import sampler
from convexharm import series as S
from convexharm.transforms import koebe_transform, transformed_dilatation

RESULTS: dict[int, tuple[bool, str]] = {}

TITLES = {
    1: "sharpness at L",
    2: "bound sweep and falsifiability hook",
    3: "covering radii",
    4: "dilatation of L",
    5: "coefficient bounds",
    6: "shear and rigidity",
    7: "transform contract",
    8: "two-angle positivity and Schwarz chain",
    9: "envelope strictness and Koebe exclusion",
    10: "kernel oracle equivalence",
    11: "growth-order probe",
}


@functools.lru_cache(maxsize=None)
def certified():
    return tuple(sampler.certified_samples(seed=0))


def _bound_grid():
    # 10 radii x 10 angles = 100 points per sample
    return np.linspace(0.1, 0.99, 10), 2 * np.pi * np.arange(10) / 10


def criterion_1():
    r = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
    H = M.halfplane_H()
    checks = [
        (np.abs(H(r)), (2 * r - r**2) / (2 * (1 - r) ** 2)),
        (np.abs(H(-r)), (2 * r + r**2) / (2 * (1 + r) ** 2)),
        (np.abs(H.derivative(r + 0j)), 1 / (1 - r) ** 3),
        (np.abs(H.derivative(-r + 0j)), 1 / (1 + r) ** 3),
    ]
    worst = max(float(np.max(np.abs(got - want) / want)) for got, want in checks)
    return worst <= 1e-12, f"max relative error {worst:.2e}"


def criterion_2():
    radii, angles = _bound_grid()
    cs = certified()
    reports = [A.check_h_bounds(s.f, radii, angles, certify=False) for s in cs]
    n_points = min(sum(1 for x in rep.samples if x.quantity == "h-growth") for rep in reports)
    margin = min(
        min(x.lower_margin, x.upper_margin)
        for rep in reports
        for x in rep.samples
        if x.quantity in ("h-growth", "h-distortion")
    )
    scaled = [A.check_h_bounds(s.f, radii, angles, envelope_scale=0.9, certify=False) for s in cs]
    hook_fails = not all(rep.passed for rep in scaled)
    ok = len(cs) >= 30 and n_points >= 100 and margin >= -1e-8 and all(r.passed for r in reports) and hook_fails
    return ok, (f"{len(cs)} certified samples x {n_points} points, min margin {margin:.2e}, "
                f"scale 0.9 fails {sum(not r.passed for r in scaled)} samples")


def criterion_3():
    cH = A.covering_radius(M.halfplane_H()).radius
    cl = A.covering_radius(M.halfplane_l()).radius
    ok = abs(cH - 0.375) <= 0.01 and abs(cl - 0.5) <= 0.01
    return ok, f"min|H| = {cH:.5f}, min|l| = {cl:.5f} at r = 0.999"


def criterion_4():
    L = M.harmonic_L()

    def omega(z):
        return L.g.derivative(z) / L.h.derivative(z)

    c = S.extract_coeffs(omega, 30, 0.5).coeffs
    want = np.zeros(31)
    want[1] = -1.0
    err = float(np.max(np.abs(c - want)))
    return err <= 1e-10, f"max |c_n - (-z)_n| = {err:.2e} through order 30"


def criterion_5():
    worst = min(A.coefficient_check(s.f).min_margin for s in certified())
    eq = A.coefficient_equality(M.harmonic_L())
    ok = worst >= -1e-9 and eq <= 1e-10
    return ok, f"min margin over samples {worst:.2e}, equality defect at L {eq:.2e}"


def criterion_6():
    rng = np.random.default_rng(6)
    z = 0.95 * np.sqrt(rng.random(50)) * np.exp(2j * np.pi * rng.random(50))
    L = M.harmonic_L()
    f = M.shear(M.koebe(), M.monomial_dilatation(-1.0, 1), 0.0)
    err = float(np.max(np.abs(f(z) - L(z))))
    bad = M.shear(M.koebe(), M.monomial_dilatation(1.0, 1), 0.0)
    curve = A.convex_curve_check(bad, 0.9)
    lams = np.exp(2j * np.pi * np.arange(8) / 8 + 0.1j)
    probes = [A.rigidity_probe(M.rotate_harmonic(L, lam)) for lam in lams]
    perr = max(p.pointwise_error for p in probes if p.pointwise_error is not None) if probes else np.inf
    rig_ok = all(p.status == "PASS" for p in probes) and perr <= 1e-6
    ok = err <= 1e-10 and not curve.convex and rig_ok
    return ok, (f"shear(k,-z,0) vs L {err:.1e}; shear(k,z,0) convex={curve.convex}; "
                f"rigidity {sum(p.status == 'PASS' for p in probes)}/8 PASS, max error {perr:.1e}")


def _grid50():
    t = 2 * np.pi * (np.arange(25) + 0.5) / 25
    return np.concatenate([0.3 * np.exp(1j * t), 0.7 * np.exp(1j * t)])


def criterion_7():
    maps = [M.harmonic_L(), M.shear(M.strip_map(), M.monomial_dilatation(1.0, 2), 0.0)]
    z = _grid50()
    worst = {"norm": 0.0, "eq2": 0.0, "dil": 0.0}
    certified_all = True
    for f in maps:
        for a in (0.3, 0.5j, -0.6):
            res = koebe_transform(f, a)
            F = res.F
            certified_all &= M.membership(F).in_K0H
            worst["norm"] = max(worst["norm"], res.max_residual)
            aa = np.array([a], dtype=np.complex128)
            w = abs(res.omega_at_a)
            prod = abs(F.h.derivative(aa)[0]) * abs(f.h.derivative(aa)[0]) * (1 - abs(a) ** 2) ** 2 * (1 - w**2)
            worst["eq2"] = max(worst["eq2"], abs(prod - 1))
            wa = transformed_dilatation(f, a)
            worst["dil"] = max(worst["dil"], float(np.max(np.abs(wa(z) - M.dilatation(F)(z)))))
    ok = certified_all and worst["norm"] <= 1e-8 and worst["eq2"] <= 1e-8 and worst["dil"] <= 1e-8
    return ok, (f"certified={certified_all}, residual {worst['norm']:.1e}, "
                f"identity {worst['eq2']:.1e}, dilatation {worst['dil']:.1e}")


def criterion_8():
    worst_res, worst_sum, worst_rec, worst_schwarz = np.inf, np.inf, 0.0, -np.inf
    radii, angles = _bound_grid()
    grid = A.polar_points(radii, angles)
    hz = A.css_grid((0.25, 0.5, 0.75, 0.9, 0.99), 64)
    for s in certified():
        pair = A.css2_search(s.f, certify=False)
        worst_res = min(worst_res, pair.min_residual)
        worst_sum = min(worst_sum, A.check_sum_bound(s.f, pair.alpha, grid).min_margin)
        q = A.css_q(s.f, pair.alpha, pair.beta)
        gamma = pair.alpha + pair.beta
        d = A.herglotz_delta(q, gamma)
        e = np.exp(-2j * gamma)
        dz, qz = d(hz), q(hz)
        rec = float(np.max(np.abs((1 + e * dz) / (1 - dz) - qz) / np.maximum(1, np.abs(qz))))
        worst_rec = max(worst_rec, rec)
        worst_schwarz = max(worst_schwarz, float(np.max(np.abs(dz) - np.abs(hz))))
    ok = worst_res >= -1e-6 and worst_sum >= -1e-8 and worst_rec <= 1e-9 and worst_schwarz <= 1e-9
    return ok, (f"min residual {worst_res:.1e}, sum-bound margin {worst_sum:.1e}, "
                f"round trip {worst_rec:.1e}, max |delta|-|z| {worst_schwarz:.1e}")


def criterion_9():
    r = (np.arange(100) + 0.5) / 100
    gaps = A.envelope_strictness(r)
    min_gap = min(float(np.min(g)) for g in gaps.values())
    dist = min(A.koebe_distance(s.f.h) for s in certified())
    return min_gap > 0 and dist > 0.1, f"min envelope gap {min_gap:.2e}, min Koebe distance {dist:.3f}"


def criterion_10():
    c = S.extract_coeffs(lambda z: z / (1 - z) ** 2, 32, 0.5).coeffs
    kerr = float(np.max(np.abs(c - np.arange(33))))
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 33))
        a = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        b = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        oracle = np.zeros(n, dtype=complex)
        for i in range(n):
            for j in range(n - i):
                oracle[i + j] += a[i] * b[j]
        got = S.mul(S.TruncatedSeries(a), S.TruncatedSeries(b)).coeffs
        worst = max(worst, float(np.max(np.abs(got - oracle))))
    return kerr <= 1e-9 and worst <= 1e-9, f"Koebe coefficients {kerr:.1e}, convolution {worst:.1e}"


def criterion_11():
    rows = A.growth_order_L((0.9, 0.99, 0.999))
    vals = [v for _, v in rows]
    at99 = dict(rows)[0.99]
    ok = at99 >= 0.4 and all(b >= a - 1e-3 for a, b in zip(vals, vals[1:]))
    return ok, "scaled max " + ", ".join(f"{v:.4f} (r={r})" for r, v in rows)


CRITERIA = {n: globals()[f"criterion_{n}"] for n in TITLES}


def _run(n):
    try:
        ok, detail = CRITERIA[n]()
    except Exception as exc:  # a crash is a FAIL, reported with its cause
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    RESULTS[n] = (bool(ok), detail)
    return RESULTS[n]


def format_line(n):
    ok, detail = RESULTS[n]
    return f"{'PASS' if ok else 'FAIL'}  criterion {n:>2} ({TITLES[n]}): {detail}"


@pytest.mark.parametrize("n", sorted(TITLES))
def test_criterion(n):
    ok, detail = _run(n)
    print(format_line(n))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n in sorted(TITLES):
        _run(n)
        print(format_line(n), flush=True)
        failed += not RESULTS[n][0]
    sys.exit(1 if failed else 0)
