from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hahnpoly.exact import Undefined, as_fraction, binomial, is_undefined, leading_limit, pochhammer


@given(st.integers(-12, 12), st.integers(0, 10))
def test_pochhammer_matches_sympy_rising_factorial(a, k):
    assert pochhammer(a, k) == Fraction(int(sympy.rf(a, k)))


@given(st.fractions(max_denominator=7).filter(lambda f: abs(f) < 20), st.integers(0, 6))
def test_pochhammer_rational_argument(a, k):
    want = sympy.rf(sympy.Rational(a.numerator, a.denominator), k)
    assert pochhammer(a, k) == Fraction(int(want.p), int(want.q))


def test_pochhammer_edge_cases():
    assert pochhammer(5, 0) == 1
    assert pochhammer(-3, 4) == 0
    assert pochhammer(-3, 3) == -6
    with pytest.raises(ValueError):
        pochhammer(1, -1)


def test_binomial():
    assert binomial(6, 2) == 15
    assert binomial(4, 5) == 0
    assert binomial(4, -1) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_as_fraction_rejects_floats():
    assert as_fraction("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        as_fraction(0.5)


def test_undefined_is_falsy_and_detected():
    u = Undefined("pole")
    assert not u
    assert is_undefined(u)
    assert not is_undefined(Fraction(0))


def test_leading_limit_orders():
    # eps / eps -> 2/1 scale
    assert leading_limit([(0, 2)], [(0, 1)]) == 2
    assert leading_limit([(0, 1), (0, 1)], [(0, 1)]) == 0
    assert is_undefined(leading_limit([(3, 0)], [(0, 1)]))
    assert leading_limit([(2, 5), (3, 0)], [(6, 1)]) == 1
    assert leading_limit([(0, 0)], [(1, 0)]) == 0
