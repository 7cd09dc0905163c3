from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from glim.cyclotomic import cyclotomic_polynomial, get_field, norm_to_q, root_of_unity


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_zeta4_squares_to_minus_one():
    f = get_field(4)
    assert f.zeta(1) * f.zeta(1) == f.scalar(-1)


def test_inverse_of_minus_one():
    f = get_field(2)
    assert f.scalar(-1).inverse() == f.scalar(-1)


def test_product_reduces_mod_phi3():
    # (1 + z)(1 + z^2) = 1 using 1 + z + z^2 = 0
    f = get_field(3)
    assert (f.one + f.zeta(1)) * (f.one + f.zeta(2)) == f.one


def test_root_of_unity_cases():
    assert root_of_unity(4, 2) == get_field(4).scalar(-1)
    assert root_of_unity(7, 0) == get_field(7).one
    assert root_of_unity(2, 1) == get_field(2).scalar(-1)


def test_norms():
    f4 = get_field(4)
    assert norm_to_q(f4.element([1, 1])) == 2  # (1+i)(1-i)
    assert norm_to_q(f4.zero) == 0
    assert norm_to_q(get_field(2).scalar(3)) == 3


def test_norm_of_rational_is_power():
    f = get_field(5)
    assert norm_to_q(f.scalar(Fraction(2, 3))) == Fraction(2, 3) ** 4


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        get_field(4).zero.inverse()


def test_conductor_mismatch_raises():
    with pytest.raises(ValueError):
        get_field(4).one + get_field(3).one


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12])
def test_all_roots_of_unity_have_order_dividing_n(n):
    f = get_field(n)
    for k in range(n):
        assert f.zeta(k) ** n == f.one


small_rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


@st.composite
def cyc_numbers(draw, n):
    f = get_field(n)
    coeffs = draw(
        st.lists(small_rationals, min_size=f.degree, max_size=f.degree)
    )
    return f.element(coeffs)


@settings(max_examples=60, deadline=None)
@given(st.data(), st.sampled_from([2, 3, 4, 6, 8]))
def test_field_axioms(data, n):
    x = data.draw(cyc_numbers(n))
    y = data.draw(cyc_numbers(n))
    z = data.draw(cyc_numbers(n))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if not x.is_zero:
        assert x * x.inverse() == get_field(n).one


@settings(max_examples=40, deadline=None)
@given(st.data(), st.sampled_from([3, 4, 6]))
def test_norm_is_multiplicative(data, n):
    x = data.draw(cyc_numbers(n))
    y = data.draw(cyc_numbers(n))
    assert norm_to_q(x * y) == norm_to_q(x) * norm_to_q(y)


@settings(max_examples=40, deadline=None)
@given(st.data(), st.sampled_from([3, 4, 5, 8]))
def test_conjugation_fixes_norm_and_respects_products(data, n):
    from math import gcd

    x = data.draw(cyc_numbers(n))
    y = data.draw(cyc_numbers(n))
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            assert x.conjugate(k) * y.conjugate(k) == (x * y).conjugate(k)
