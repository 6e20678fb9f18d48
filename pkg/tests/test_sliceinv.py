import pytest

from germsing.doublepoint import PreconditionError, classify_components, double_point_curve
from germsing.localalg import INFINITE
from germsing.sliceinv import (
    NOT_APPLICABLE,
    PASS,
    W_curve,
    certify_line,
    choose_generic_line,
    e_D,
    invariant_profile,
    source_slice,
)

from conftest import germ, profile, x, y


def data(name):
    f = germ(name)
    lam = double_point_curve(f)
    return f, lam, classify_components(f, lam)


def test_c5_image_directions_and_line_examples():
    f, lam, dp = data("c5")
    assert sorted(dp.image_tangent_directions()) == [(0, 1, 0), (1, 0, 0)]
    assert certify_line(f, dp, (1, 0, 0))[1] == "tangent_cone_avoidance"
    passed, failed = certify_line(f, dp, (1, 1, 0))
    assert failed is None and "squarefree" in passed


def test_cross_cap_line_rejected_for_squarefree():
    f, lam, dp = data("crosscap")
    assert certify_line(f, dp, (0, 1, 0))[1] == "squarefree"


def test_source_slice_and_W_curve():
    f, lam, dp = data("c5")
    assert source_slice(f, (1, 1, 0)) == x + y**2
    assert W_curve(f, lam, (1, 1, 0)) == lam * (x + y**2)
    f, lam, dp = data("crosscap")
    assert W_curve(f, lam, (1, 1, 0)) == lam * (x + y**2)
    with pytest.raises(ValueError):
        W_curve(f, lam, (1, 0, 0))


def test_line_choice_is_deterministic_and_records_certificate():
    f, lam, dp = data("c5")
    a = choose_generic_line(f, dp, 7)
    b = choose_generic_line(f, dp, 7)
    assert a.coefficients == b.coefficients
    assert a.certificate[0] == "tangent_cone_avoidance"
    for coeffs, failed in a.rejected:
        assert certify_line(f, dp, coeffs)[1] == failed


def test_c5_profile():
    r = profile("c5", 0, True)
    assert (r.mu_D, r.mu_gamma, r.m_D, r.m_gamma, r.m_fD, r.i_D_gamma, r.mu_W) == (6, 0, 3, 1, 2, 4, 13)
    checks = r.identity_checks
    assert checks["LEMMA_A"].status == PASS
    assert checks["LEMMA_B"].status == PASS
    assert checks["LEMMA_C"].status == PASS
    assert checks["COR_TRANSVERSAL"].status == NOT_APPLICABLE
    assert "COR_DOUBLE_FOLD" not in checks


def test_cross_cap_profile():
    r = profile("crosscap")
    assert (r.mu_D, r.mu_gamma, r.m_fD, r.i_D_gamma, r.mu_W) == (0, 0, 1, 2, 3)


def test_immersion_report_flags_empty_double_point_curve():
    r = invariant_profile(germ("immersion"))
    assert r.d_empty and r.mu_W is None and r.checks == []


def test_not_finitely_determined_is_rejected():
    with pytest.raises(PreconditionError):
        invariant_profile(germ("not_fd"))


@pytest.mark.parametrize("name", ["c5", "crosscap", "s1", "b2", "h2", "df1", "df2"])
def test_slice_order(name):
    r = profile(name)
    assert r.m_gamma == (2 if name.startswith("df") else 1)


def test_e_d_cross_cap():
    f, lam, dp = data("crosscap")
    assert e_D(f, lam, 0) == 1


def test_e_d_c5_is_draw_invariant():
    f, lam, dp = data("c5")
    values = {e_D(f, lam, seed) for seed in (0, 1, 2)}
    assert len(values) == 1
    assert values.pop() != INFINITE
