import numpy as np
import pytest
import sympy as sp

from convexharm import analysis as A
from convexharm import mappings as M
from convexharm import series as S
from convexharm.errors import DegenerateAlpha, MembershipNotCertified, NotHerglotz, RadiusOutOfRange

R = np.linspace(0.0, 0.99, 34)


@pytest.fixture(scope="module")
def L():
    return M.harmonic_L()


# -- envelopes ------------------------------------------------------------------


def test_envelopes_at_zero():
    e = A.envelopes(0.0)
    for name, (lo, hi) in e.items():
        if "growth" in name and name != "P-growth":
            assert lo == 0 and hi == 0
        else:
            assert lo == 1 and hi == 1


def test_envelope_values():
    lo, hi = A.envelope("h-growth", 0.5)
    assert hi == 1.5
    assert A.envelope("h-distortion", 0.5)[1] == pytest.approx(8.0, rel=1e-15)
    assert A.envelope("h-growth", 0.9)[1] == pytest.approx(49.5, rel=1e-13)
    assert A.envelope("h-growth", 1 - 1e-9)[0] == pytest.approx(A.H_GROWTH_LIMIT, abs=1e-8)
    with pytest.raises(RadiusOutOfRange):
        A.envelopes(1.0)
    with pytest.raises(RadiusOutOfRange):
        A.envelope("K-growth", -0.1)


def test_h_growth_is_integrated_distortion():
    r, t = sp.symbols("r t", positive=True)
    upper = sp.integrate(1 / (1 - t) ** 3, (t, 0, r))
    lower = sp.integrate(1 / (1 + t) ** 3, (t, 0, r))
    up_f, lo_f = sp.lambdify(r, upper), sp.lambdify(r, lower)
    lo, hi = A.envelope("h-growth", R)
    assert np.allclose(hi, up_f(R), rtol=1e-13)
    assert np.allclose(lo, lo_f(R), rtol=1e-13, atol=1e-16)


def test_strictness_gaps_symbolic():
    r, t = sp.symbols("r t", positive=True)
    gaps = {
        "growth-upper": r / (1 - r) ** 2 - (2 * r - r**2) / (2 * (1 - r) ** 2),
        "distortion-upper": (1 + r) / (1 - r) ** 3 - 1 / (1 - r) ** 3,
        "growth-lower": (2 * r + r**2) / (2 * (1 + r) ** 2) - r / (1 + r) ** 2,
        "distortion-lower": 1 / (1 + r) ** 3 - (1 - r) / (1 + r) ** 3,
    }
    rs = (np.arange(100) + 0.5) / 100
    got = A.envelope_strictness(rs)
    for name, expr in gaps.items():
        # r = t/(1+t) sweeps (0, 1) as t sweeps (0, oo)
        assert sp.factor(sp.simplify(expr.subs(r, t / (1 + t)))).is_positive, name
        assert np.allclose(got[name], sp.lambdify(r, expr)(rs), rtol=1e-12)
        assert np.all(got[name] > 0)


# -- h-bounds -------------------------------------------------------------------


def test_h_bounds_at_L(L):
    rep = A.check_h_bounds(L, [0.5], [0.0, np.pi])
    assert rep.passed
    hits = rep.equality_hits(quantities=("h-growth", "h-distortion"))
    assert {(round(s.where.real, 12), s.quantity) for s in hits} >= {(0.5, "h-growth"), (-0.5, "h-distortion")}


def test_h_bounds_for_ell_strict():
    f = M.analytic_as_harmonic(M.halfplane_l())
    rep = A.check_h_bounds(f, [0.5], [0.0])
    g = [s for s in rep.samples if s.quantity == "h-growth"][0]
    assert g.measured == pytest.approx(1.0) and g.upper == 1.5
    assert not rep.equality_hits(quantities=("h-growth", "h-distortion"))


def test_h_bounds_require_membership():
    with pytest.raises(MembershipNotCertified):
        A.check_h_bounds(M.analytic_as_harmonic(M.koebe()), [0.5], [0.0])


def test_envelope_scale_hook(L):
    assert not A.check_h_bounds(L, [0.5, 0.9], [0.0, np.pi], envelope_scale=0.9).passed
    assert A.check_h_bounds(L, [0.5, 0.9], [0.0, np.pi], envelope_scale=1.1).passed


def test_report_margins_and_serialization(L):
    rep = A.check_h_bounds(L, [0.3, 0.6], [0.0, 1.0])
    d = rep.to_dict(include_samples=True)
    assert d["pass"] and d["n_samples"] == len(rep.samples) == 16
    assert rep.min_margin >= -1e-12
    s = A.BoundSample(0.5j, "x", 2.0, 1.0, 3.0)
    assert s.ok(0) and not A.BoundSample(0.5j, "x", 3.5, 1.0, 3.0).ok(1e-8)


def test_f_growth_includes_nonsharp_lower(L):
    rep = A.check_f_growth(L, [0.3, 0.9], np.linspace(0, 6, 12))
    assert rep.passed


# -- sum bound / refined distortion -------------------------------------------


def test_sum_bound_equality_at_L(L):
    r = np.array([0.2, 0.5, 0.9])
    rep = A.check_sum_bound(L, 0.0, r + 0j)
    assert rep.passed
    assert all(abs(s.measured - s.upper) / s.upper < 1e-12 for s in rep.samples)


def test_sum_bound_identity():
    f = M.identity_harmonic()
    assert A.check_sum_bound(f, 1.234, A.polar_points([0.1, 0.9], [0, 2])).passed


def test_sum_bound_strip_shear():
    f = M.shear(M.strip_map(), M.monomial_dilatation(1.0, 2), 0.0)
    pair = A.css2_search(f)
    grid = A.polar_points(np.linspace(0.1, 0.99, 10), 2 * np.pi * np.arange(10) / 10)
    assert A.check_sum_bound(f, pair.alpha, grid).passed


def test_refined_distortion_equality_at_L(L):
    rep = A.refined_distortion_check(L, np.array([-0.5 + 0j]))
    refined = [s for s in rep.samples if s.quantity == "refined"][0]
    assert refined.measured == pytest.approx(8 / 27, rel=1e-14)
    assert refined.lower == pytest.approx(8 / 27, rel=1e-14)
    assert rep.passed


def test_refined_distortion_sampled(certified):
    rng = np.random.default_rng(50)
    for _ in range(50):
        s = certified[int(rng.integers(len(certified)))]
        a = 0.99 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        assert A.refined_distortion_check(s.f, np.array([a])).passed, s.label


# -- two-angle search and Herglotz step -----------------------------------------


def test_css2_on_L(L):
    pair = A.css2_search(L)
    assert (pair.alpha, pair.beta) == (0.0, 0.0)
    assert pair.admissible
    z = A.css_grid()
    # the expression reduces to Re((1+z)/(1-z))
    assert np.allclose(A.css_residual(L, 0, 0, z), ((1 + z) / (1 - z)).real, rtol=1e-12)


def test_css2_on_identity():
    f = M.identity_harmonic()
    z = A.css_grid()
    assert np.all(A.css_residual(f, 0, 0, z) >= 1 - np.abs(z) ** 2 - 1e-15)
    assert A.css2_search(f).admissible


def test_css2_on_rotated_L(L):
    phi = 1.0
    pair = A.css2_search(M.rotate_harmonic(L, np.exp(1j * phi)))
    assert pair.admissible
    # any admissible pair is (phi, -phi) up to adding pi to both
    d = np.mod(np.array([pair.alpha - phi, pair.beta + phi]), np.pi)
    d = np.minimum(d, np.pi - d)
    assert np.max(d) < 1e-6


def test_css2_requires_membership():
    with pytest.raises(MembershipNotCertified):
        A.css2_search(M.analytic_as_harmonic(M.koebe()))


def test_toeplitz_certificate_at_L(L):
    from convexharm.analysis.css import toeplitz_min

    assert toeplitz_min(L, 0.0, 0.0) >= -1e-12
    assert toeplitz_min(L, 0.1, -0.05) < -1e-4


def _analytic(func, coeffs, label):
    c = np.zeros(S.DEFAULT_ORDER + 1, dtype=complex)
    c[: len(coeffs)] = coeffs
    return M.AnalyticMap(func, S.TruncatedSeries(c), label)


def _cayley():
    # (1+z)/(1-z) = 1 + 2z + 2z^2 + ...
    return _analytic(lambda z: (1 + z) / (1 - z), [1] + [2] * S.DEFAULT_ORDER, "(1+z)/(1-z)")


def test_herglotz_examples():
    q = _cayley()
    d = A.herglotz_delta(q, 0.0)
    z = A.css_grid((0.3, 0.9), 32)
    assert np.allclose(d(z), z, atol=1e-12)
    one = _analytic(lambda z: 1 + 0 * z, [1], "1")
    assert np.max(np.abs(A.herglotz_delta(one, 0.4)(z))) < 1e-15


def test_herglotz_for_L(L):
    q = A.css_q(L, 0.0, 0.0)
    d = A.herglotz_delta(q, 0.0)
    rng = np.random.default_rng(7)
    z = 0.99 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    assert np.all(np.abs(d(z)) <= np.abs(z) + 1e-12)
    # for L the Schwarz function is z itself
    assert np.allclose(d(z), z, atol=1e-12)


def test_herglotz_errors():
    q = _cayley()
    with pytest.raises(DegenerateAlpha):
        A.herglotz_delta(q, 2.0)
    with pytest.raises(NotHerglotz):
        A.herglotz_delta(_analytic(lambda z: 2 + z, [2, 1], "2+z"), 0.0)
    with pytest.raises(NotHerglotz):
        A.herglotz_delta(_analytic(lambda z: 1 + 3 * z, [1, 3], "1+3z"), 0.0)


# -- coefficients ---------------------------------------------------------------


def test_coefficient_checks(L):
    assert A.coefficient_check(L).passed
    assert A.coefficient_equality(L) <= 1e-10
    ident = M.identity_harmonic()
    assert np.all(ident.h.series.coeffs[2:] == 0) and A.coefficient_check(ident).passed
    f = M.shear(M.halfplane_l(), M.monomial_dilatation(1.0, 1), np.pi / 2)
    assert A.coefficient_check(f).min_margin >= 0


def test_bieberbach():
    k = A.bieberbach_check(M.koebe())
    assert k.second_derivative == 4 and k.equality and k.passed
    i = A.bieberbach_check(M.identity_map())
    assert i.second_derivative == 0 and not i.equality
    L = M.harmonic_L()
    diff = M.AnalyticMap(lambda z: L.h.func(z) - L.g.func(z), L.h.series - L.g.series, "H-G")
    assert A.bieberbach_check(diff).equality
    assert A.koebe_distance(diff) < 1e-12
    assert A.koebe_distance(L.h) > 0.1


# -- extremal probes ------------------------------------------------------------


def test_covering_radius():
    ell = A.covering_radius(M.halfplane_l())
    assert ell.radius == pytest.approx(0.5, abs=1e-2)
    H = A.covering_radius(M.halfplane_H())
    assert H.radius == pytest.approx(0.375, abs=1e-2)
    assert H.radius >= A.H_GROWTH_LIMIT - 1e-2
    # the minimum sits at z = -r, so it is the lower envelope and rises toward 3/8
    assert H.trend == "nondecreasing"
    gaps = H.gaps(A.H_GROWTH_LIMIT)
    assert all(b <= a for a, b in zip(gaps, gaps[1:]))
    ident = A.covering_radius(M.identity_map(), (0.3, 0.6))
    assert ident.values == pytest.approx((0.3, 0.6), rel=1e-12)
    with pytest.raises(ValueError):
        A.covering_radius(M.identity_map(), (0.6, 0.3))


def test_growth_order_L():
    rows = A.growth_order_L((0.0, 0.9, 0.99, 0.999))
    vals = dict(rows)
    assert vals[0.0] == 0.0 and vals[0.99] >= 0.4
    seq = [vals[r] for r in (0.9, 0.99, 0.999)]
    assert all(b >= a - 1e-3 for a, b in zip(seq, seq[1:]))


def test_rigidity_examples(L):
    rot = A.rigidity_probe(M.rotate_harmonic(L, np.exp(1j * np.pi / 3)))
    assert rot.status == "PASS" and abs(rot.lam - np.exp(1j * np.pi / 3)) < 1e-12
    strip = A.rigidity_probe(M.shear(M.strip_map(), M.monomial_dilatation(1.0, 1), 0.0))
    assert strip.status == "NOT_DETECTED" and strip.distance > 0.1
    at_L = A.rigidity_probe(L)
    assert at_L.status == "PASS" and abs(at_L.mu) < 1e-12 and abs(at_L.lam - 1) < 1e-12
    assert at_L.to_dict()["lambda"] == pytest.approx([1.0, 0.0])


def test_sharpness_table():
    rows = A.sharpness_table([0.5])
    assert len(rows) == 4
    assert all(abs(r.relative_gap) <= 1e-12 for r in rows)
    by_q = {r.quantity: r for r in rows}
    assert by_q["growth-upper"].value_at_extremal == pytest.approx(1.5, rel=1e-15)
    assert by_q["growth-lower"].value_at_extremal == pytest.approx(1.25 / 4.5, rel=1e-15)
    small = A.sharpness_table([1e-8])
    for r in small:
        expect = 1.0 if r.quantity.startswith("distortion") else 0.0
        assert r.value_at_extremal == pytest.approx(expect, abs=1e-7)
    assert A.sharpness_table([]) == []


def test_equality_only_at_rotations_of_L(certified):
    radii, angles = np.linspace(0.1, 0.99, 10), 2 * np.pi * np.arange(10) / 10
    for s in certified:
        hits = A.check_h_bounds(s.f, radii, angles, certify=False).equality_hits(
            quantities=("h-growth", "h-distortion")
        )
        if hits:
            assert A.rigidity_probe(s.f).status == "PASS", s.label
