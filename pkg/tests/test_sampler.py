import numpy as np
import pytest

from convexharm import mappings as M
from convexharm import sampler
from convexharm.errors import UnknownMap


def test_catalog_is_deterministic():
    a = sampler.build_catalog(seed=3)
    b = sampler.build_catalog(seed=3)
    assert [s.label for s in a] == [s.label for s in b]
    assert [s.recipe for s in a] == [s.recipe for s in b]
    c = sampler.build_catalog(seed=4)
    assert [s.label for s in a] != [s.label for s in c]


def test_catalog_size_and_certification(catalog, certified):
    assert len(catalog) == 49
    assert len(certified) >= 30
    failing = {s.label for s in catalog if not s.certified}
    assert all(label.startswith("shear(koebe") or label.startswith("shear(identity") for label in failing)


def test_catalog_contains_L_and_rotations(catalog):
    labels = [s.label for s in catalog]
    assert "harmonic-L" in labels
    assert sum(label.startswith("rot(harmonic-L") for label in labels) == 2


def test_recipes_rebuild_samples(catalog):
    z = 0.7 * np.exp(1j * np.linspace(0, 6, 9))
    for s in catalog:
        r = s.recipe
        if r.get("phi") not in ("halfplane-l", "strip") or "phi_rotation" not in r:
            continue
        phi = M.rotate_analytic(sampler.get_analytic(r["phi"]), np.exp(1j * r["phi_rotation"]))
        f = M.shear(phi, sampler.parse_dilatation(r["omega"]), r["theta"])
        assert np.allclose(f(z), s.f(z), atol=1e-12), s.label


@pytest.mark.parametrize(
    "text, lam, m",
    [("z", 1, 1), ("-z", -1, 1), ("z^2", 1, 2), ("1j*z^3", 1j, 3), ("(0.6+0.8j)z^2", 0.6 + 0.8j, 2), ("-1*z", -1, 1)],
)
def test_parse_dilatation_monomials(text, lam, m):
    w = sampler.parse_dilatation(text)
    assert w.series.coeffs[m] == pytest.approx(lam)
    assert np.count_nonzero(w.series.coeffs) == 1


def test_parse_dilatation_other_forms():
    assert sampler.parse_dilatation("0").is_zero
    b = sampler.parse_dilatation("blaschke:0.3-0.2j")
    assert b(0.5) == pytest.approx(0.5 * (0.3 - 0.2j + 0.5) / (1 + (0.3 + 0.2j) * 0.5))
    with pytest.raises(UnknownMap):
        sampler.parse_dilatation("sin(z)")


def test_lookups():
    assert sampler.get_harmonic("harmonic-L").label == "harmonic-L"
    assert sampler.get_harmonic("koebe").g.is_zero
    with pytest.raises(UnknownMap):
        sampler.get_harmonic("nope")
    with pytest.raises(UnknownMap):
        sampler.get_analytic("harmonic-L")
