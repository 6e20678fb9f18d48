from fractions import Fraction

import pytest

from germsing.doublepoint import PreconditionError, double_point_curve
from germsing.family import (
    EQUISINGULAR_AT_SAMPLES,
    INDETERMINATE,
    NOT_EQUISINGULAR,
    UnfoldingFamily,
    sample_parameters,
    specialize,
    whitney_verdict,
)
from germsing.germfile import load_germ_file, parse_germ_text

from conftest import fixture_path, germ, x, y


def family(name):
    return UnfoldingFamily(load_germ_file(fixture_path(name)).components, name=name)


def test_sample_parameters_are_small_distinct_and_seeded():
    a = list(sample_parameters(3, 5, budget=50))
    assert a == list(sample_parameters(3, 5, budget=50))
    assert len(set(a)) == len(a)
    assert all(t != 0 and abs(t.numerator) <= 9 and t.denominator <= 9 for t in a)


def test_specialize_at_zero_is_the_base_germ():
    F = family("c5_deform")
    assert specialize(F, 0).components == germ("c5").components


def test_trivial_unfolding_from_germ():
    F = UnfoldingFamily.trivial(germ("c5"))
    assert [f for f in F.at(Fraction(5, 3))] == list(germ("c5").components)


def test_origin_preservation_is_validated():
    spec = parse_germ_text("unfolding\nvars x y t\nf1 = x + t\nf2 = y^2\nf3 = x*y\n")
    with pytest.raises(PreconditionError):
        UnfoldingFamily(spec.components)


def test_trivial_c5_is_equisingular_at_samples():
    v = whitney_verdict(family("c5_trivial"), 3, 0)
    assert v.verdict == EQUISINGULAR_AT_SAMPLES
    assert set(v.mu_W_values().values()) == {13}
    assert v.failing_invariant is None


def test_c5_deformation_is_not_equisingular():
    v = whitney_verdict(family("c5_deform"), 3, 0)
    assert v.verdict == NOT_EQUISINGULAR
    assert v.failing_invariant == "mu_D"
    for s in v.samples:
        d = s.decomposition()
        if s.t == 0:
            assert d == {"mu_D": 6, "mu_gamma": 0, "m_fD": 2, "mu_W": 13}
        else:
            assert d == {"mu_D": 4, "mu_gamma": 0, "m_fD": 2, "mu_W": 11}
    assert [s.t for s in v.samples] == sorted(s.t for s in v.samples)


def test_verdict_is_seed_invariant():
    for name, expected in (("c5_trivial", EQUISINGULAR_AT_SAMPLES), ("c5_deform", NOT_EQUISINGULAR)):
        assert {whitney_verdict(family(name), 3, seed).verdict for seed in (0, 1, 2)} == {expected}


def test_zero_samples_is_indeterminate():
    assert whitney_verdict(family("c5_trivial"), 0, 0).verdict == INDETERMINATE


def test_specialize_at_one_matches_hand_computation():
    lam = double_point_curve(specialize(family("c5_deform"), 1))
    assert lam == x * y**2 - x**5 + x**3


def test_members_leaving_supported_class_give_indeterminate():
    spec = parse_germ_text("unfolding\nvars x y t\nf1 = x + t*y^3\nf2 = y^2\nf3 = x*y\n")
    v = whitney_verdict(UnfoldingFamily(spec.components), 3, 0)
    assert v.verdict == INDETERMINATE
    assert v.rejected and all("unsupported" in why for _, why in v.rejected)
    assert [s.t for s in v.samples] == [0]
