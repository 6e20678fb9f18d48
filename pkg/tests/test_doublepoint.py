import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from germsing.doublepoint import (
    CORANK1,
    DOUBLE_FOLD,
    FOLD,
    IDENTIFICATION,
    UNSUPPORTED,
    GermMap,
    PreconditionError,
    UnsupportedGerm,
    classify_components,
    divided_differences,
    double_point_curve,
    fold_lambda_by_lifting,
    is_finitely_determined,
    lifting_ideal,
)
from germsing.polycore import Polynomial, exact_div

from conftest import XY, germ, x, y


def same_up_to_unit(p, q):
    r = exact_div(p, q) if not q.is_zero() else None
    return r is not None and r.is_constant() and r.constant_term() != 0


@pytest.mark.parametrize("name, expected", [
    ("c5", x * y**2 - x**5),
    ("crosscap", x),
    ("s1", x**2 + y**2),
    ("s2", x**3 + y**2),
    ("s3", x**4 + y**2),
    ("b2", y**4 + x**2),
    ("c3", x**3 + x * y**2),
    ("f4", y**4 + x**3),
    ("not_fd", y**2),
])
def test_double_point_curves(name, expected):
    assert same_up_to_unit(double_point_curve(germ(name)), expected)


def test_classes():
    assert germ("c5").input_class == CORANK1
    assert germ("df1").input_class == DOUBLE_FOLD
    assert GermMap((x**2, x * y, y**3 + x**3)).input_class == UNSUPPORTED
    assert GermMap((x + y**2, y**3, x * y)).input_class == UNSUPPORTED
    with pytest.raises(UnsupportedGerm):
        double_point_curve(GermMap((x**2, x * y, y**3 + x**3)))


def test_base_point_must_be_origin():
    with pytest.raises(PreconditionError):
        GermMap((x + 1, y**2, x * y))


def test_immersion_has_empty_double_point_curve():
    lam = double_point_curve(germ("immersion"))
    assert lam.constant_term() == 1
    fd = is_finitely_determined(germ("immersion"), lam)
    assert fd.empty and fd.finitely_determined


def test_not_generically_one_to_one():
    # (x, y^2, 0) is 2-to-1 everywhere
    with pytest.raises(PreconditionError):
        double_point_curve(GermMap((x, y**2, Polynomial.constant(XY, 0))))


def test_rotated_coordinates_keep_invariants():
    # C5 composed with the source change x -> x + y
    f = germ("c5")
    sub = {"x": x + y, "y": y}
    g = GermMap([fi.subs(sub) for fi in f.components])
    assert g.input_class == CORANK1
    assert is_finitely_determined(g).mu_D == 6


def test_finite_determinacy_boundary():
    fd = is_finitely_determined(germ("c5"))
    assert fd and fd.mu_D == 6
    bad = is_finitely_determined(germ("not_fd"))
    assert not bad
    assert same_up_to_unit(bad.witness, y**2)
    assert is_finitely_determined(germ("crosscap")).mu_D == 0


def test_c5_components():
    f = germ("c5")
    dp = classify_components(f, double_point_curve(f))
    kinds = sorted(c.kind for c in dp.components)
    assert kinds == [FOLD, IDENTIFICATION, IDENTIFICATION]
    assert (dp.r_i, dp.r_f, dp.image_multiplicity_total) == (2, 1, 2)
    for i, c in enumerate(dp.components):
        if c.kind == IDENTIFICATION:
            assert dp.components[c.partner].partner == i


def test_h2_has_only_identification_components():
    f = germ("h2")
    dp = classify_components(f, double_point_curve(f))
    assert dp.r_f == 0 and dp.r_i == 2
    assert dp.r_i % 2 == 0


def test_double_fold_cross_oracle():
    for name in ("df1", "df2"):
        f = germ(name)
        product, diagonal = fold_lambda_by_lifting(f)
        assert same_up_to_unit(product, double_point_curve(f))
        assert diagonal.is_constant()


def test_lifting_vanishes_on_double_point_pairs():
    # the cross-cap identifies (0, y) with (0, -y)
    gens = lifting_ideal(germ("crosscap"))
    Y = Polynomial.var(("x", "y", "x'", "y'"), "y")
    for g in gens:
        assert g.subs({"x": 0, "x'": 0, "y'": -Y}).is_zero()
    # and a generic pair of distinct points is not a double point
    assert any(not g.subs({"x": 1, "y": 2, "x'": 3, "y'": 5}).is_zero() for g in gens)


coeff = st.integers(-3, 3)


@settings(max_examples=20, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff, max_size=4))
def test_divided_difference_identity(terms):
    # the identity is asserted inside divided_differences for every component
    extra = Polynomial(XY, {e: c for e, c in terms.items() if e != (0, 0)})
    divided_differences((x + extra, y**2, x * y + extra))
