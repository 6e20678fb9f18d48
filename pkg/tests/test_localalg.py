from hypothesis import given, settings
from hypothesis import strategies as st

from germsing.localalg import (
    INFINITE,
    colength,
    ecart,
    intersection_multiplicity,
    leading_exponent,
    milnor_number,
    mora_normal_form,
    multiplicity,
    standard_basis,
)

from conftest import x, y


def test_local_order_prefers_low_degree():
    assert leading_exponent(x**3 + y**2) == (0, 2)
    assert ecart(x**3 + y**2) == 1


def test_colength_of_jacobian_ideal_of_c5_double_point_curve():
    res = colength([y**2 - 5 * x**4, 2 * x * y])
    assert res.value == 6
    assert sorted(leading_exponent(g) for g in standard_basis([y**2 - 5 * x**4, 2 * x * y], 12)) == [
        (0, 2), (1, 1), (5, 0)]


def test_units_give_zero_colength():
    assert colength([1 + x, y]).value == 0


def test_shared_component_is_infinite():
    assert colength([x * y, x * (y + 1)]).value == INFINITE
    assert intersection_multiplicity(x * y, x + x**2) == INFINITE


def test_normal_form_reduces_ideal_members_to_zero():
    basis = standard_basis([x**2, y**3], 10)
    assert mora_normal_form(x**2 * y + 3 * y**3, basis, 10).is_zero()


def test_milnor_numbers():
    assert milnor_number(x**2 + y**2) == 1
    assert milnor_number(y**2 - x**3) == 2
    assert milnor_number(x) == 0
    assert milnor_number(x * y * (x - y) * (x + y)) == 9


def test_intersection_multiplicities():
    assert intersection_multiplicity(x, y) == 1
    assert intersection_multiplicity(y - x**2, y) == 2
    assert intersection_multiplicity(y**2 - x**3, y**3 - x**2) == 4
    assert intersection_multiplicity(y**2 - x**3, x) == 2
    assert multiplicity(y**2 - x**3) == 2


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 9), st.integers(2, 9))
def test_brieskorn_milnor_number(a, b):
    assert milnor_number(x**a + y**b) == (a - 1) * (b - 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(-3, 3))
def test_intersection_of_monomial_curves(a, b, c):
    # i(y^a + c x^(a+1), x^b) = a*b: x^b kills all but the y^a term
    assert intersection_multiplicity(y**a + c * x ** (a + 1), x**b) == a * b


@settings(max_examples=15, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3)), min_size=2, max_size=5))
def test_truncated_colength_matches_plain_mora(terms):
    g = x**5 + y**4
    for i, j, c in terms:
        if i + j >= 2:
            g = g + c * x**i * y**j
    gens = [g.diff("x"), g.diff("y")]
    assert colength(gens).value == colength(gens, truncated=False).value


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3))
def test_intersection_is_symmetric(a, b, c):
    g = y**a - x ** (a + 1)
    h = x**b + c * y ** (b + 1)
    assert intersection_multiplicity(g, h) == intersection_multiplicity(h, g)
