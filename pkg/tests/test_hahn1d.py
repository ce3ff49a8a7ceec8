from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hahnpoly import hahn1d as h1
from hahnpoly.exact import is_undefined
from hahnpoly.poly import Poly

x = Poly.var(0, 1)


@st.composite
def params(draw, max_ell=8):
    l1 = draw(st.integers(1, max_ell))
    l2 = draw(st.integers(1, max_ell))
    N = draw(st.integers(1, l1 + l2))
    return h1.Params1D(l1, l2, N)


def sympy_sQ(n, l1, l2, N, t):
    s = sympy.Integer(0)
    for k in range(n + 1):
        s += (sympy.rf(-n, k) * sympy.rf(n - l1 - l2 - 1, k) * sympy.rf(-t, k)
              / (sympy.rf(-l1, k) * sympy.rf(-N, k) * sympy.factorial(k)))
    return s


@settings(max_examples=40, deadline=None)
@given(params(), st.data())
def test_sQ_matches_direct_sympy_sum(p, data):
    n = data.draw(st.integers(0, min(p.ell1, p.N)))
    t = sympy.Symbol("t")
    want = sympy.Poly(sympy.expand(sympy_sQ(n, p.ell1, p.ell2, p.N, t)), t)
    got = h1.hahn_sQ(n, p)
    assert {k: v for (k,), v in got.terms.items()} == {
        k: Fraction(int(c.p), int(c.q)) for (k,), c in want.terms()}


@settings(max_examples=30, deadline=None)
@given(params())
def test_orthogonality_and_norm(p):
    qs = [h1.hahn_sQ(n, p) for n in range(p.deg_bound + 1)]
    for m, qm in enumerate(qs):
        for n, qn in enumerate(qs[: m + 1]):
            ip = h1.inner_product(qm, qn, p)
            assert ip == (h1.norm_B(n, p) if m == n else 0)


@given(params())
def test_weight_forms_agree_and_sum_to_one(p):
    w1 = [h1.weight_H(t, p, 1) for t in range(p.N + 1)]
    assert w1 == [h1.weight_H(t, p, 2) for t in range(p.N + 1)]
    assert sum(w1) == 1
    assert all(w > 0 for w in w1[p.lo: p.hi + 1])
    assert all(w == 0 for i, w in enumerate(w1) if i not in p.support())


def test_support_example():
    p = h1.Params1D(6, 8, 12)
    assert (p.lo, p.hi, p.deg_bound) == (4, 6, 2)
    assert h1.Support1D.of(p) == h1.Support1D(4, 6, 2)


def test_params_validation():
    with pytest.raises(ValueError):
        h1.Params1D(2, 3, 6)
    with pytest.raises(ValueError):
        h1.Params1D(0, 3, 2)
    with pytest.raises(h1.OutOfRangeError):
        h1.hahn_sQ(7, h1.Params1D(6, 8, 12))
    with pytest.raises(h1.OutOfRangeError):
        h1.norm_B(3, h1.Params1D(6, 8, 12))


def test_hyper_coeffs_modes():
    # numerator zero at k=2 truncates
    assert h1.hyper_coeffs(3, [-1], [5]) == [1, Fraction(3, 5)]
    # denominator zero first is a pole
    assert is_undefined(h1.hyper_coeffs(3, [4], [-1]))
    # simultaneous 0/0 truncates unless strict
    assert h1.hyper_coeffs(3, [-1], [-1]) == [1, Fraction(-3)]
    assert is_undefined(h1.hyper_coeffs(3, [-1], [-1], strict=True))


@pytest.mark.parametrize("a,b,N", [(Fraction(1, 2), Fraction(3, 2), 5), (0, 0, 4), (2, 1, 6)])
def test_classical_hahn_orthogonality(a, b, N):
    qs = [h1.hahn_classical(n, a, b, N) for n in range(N + 1)]
    w = [h1.classical_weight(t, a, b, N) for t in range(N + 1)]
    assert sum(w) == 1
    for m in range(N + 1):
        for n in range(m + 1):
            ip = sum(qs[m].eval([t]) * qs[n].eval([t]) * w[t] for t in range(N + 1))
            assert ip == (h1.classical_norm(n, a, b, N) if m == n else 0)


@given(params())
def test_three_term_relation_below_top_degree(p):
    qs = [h1.hahn_sQ(n, p) for n in range(p.deg_bound + 1)]
    for n in range(1, p.deg_bound):
        A, C = h1.three_term_coeffs(n, p)
        if is_undefined(A) or is_undefined(C):
            continue
        assert -x * qs[n] == qs[n + 1].scale(A) - qs[n].scale(A + C) + qs[n - 1].scale(C)


def test_factorization_examples():
    f = h1.factorize_thm(6, h1.Params1D(6, 8, 12))
    assert (f.prefactor, f.roots) == (Fraction(-1, 120), (4, 5, 6))
    f = h1.factorize_thm(7, h1.Params1D(8, 9, 16))
    assert (f.prefactor, f.roots) == (Fraction(1, 56), (7, 8))
    with pytest.raises(h1.NotApplicableError):
        h1.factorize_thm(1, h1.Params1D(6, 8, 12))


@settings(max_examples=40, deadline=None)
@given(params())
def test_factorization_vanishes_on_support(p):
    for n in range(p.deg_bound + 1, min(p.ell1, p.N) + 1):
        if p.ell2 > p.N:
            with pytest.raises(h1.NotApplicableError):
                h1.factorize_thm(n, p)
            continue
        f = h1.factorize_thm(n, p)
        q = f.expand()
        assert all(q.eval([t]) == 0 for t in p.support())


@given(params())
def test_generating_function(p):
    for n in range(p.deg_bound + 1):
        assert h1.genfun_check(n, p)


def test_generating_function_full_range():
    p = h1.Params1D(5, 6, 7)
    for n in range(6):
        lhs, rhs = h1.genfun_full_sides(n, p)
        assert lhs == rhs


@pytest.mark.parametrize("l1,l2", [(3, 4), (5, 5), (2, 6)])
def test_moment_functional(l1, l2):
    G = [h1.jacobi_G(n, l1, l2) for n in range(min(l1, l2) + 1)]
    assert h1.moment(0, l1, l2) == 1
    for m in range(len(G)):
        for n in range(m + 1):
            v = h1.moment_L(G[m] * G[n], l1, l2)
            assert v == (h1.h_norm(n, l1, l2) if m == n else 0)


def test_cleared_hahn_value_matches_poly():
    X, Y = Poly.gens(2)
    R = h1.cleared_hahn(3, 4, 5, X, Y)
    for a in range(5):
        for b in range(7):
            assert R.eval([a, b]) == h1.cleared_hahn_value(3, 4, 5, a, b)


@pytest.mark.parametrize("n,l1,l2", [(2, 3, 4), (3, 5, 5), (4, 6, 4), (1, 2, 7)])
def test_reflection(n, l1, l2):
    assert h1.r_reflection_check(n, l1, l2)


def test_conjecture_outcomes():
    odd_equal = h1.conjecture_check(3, 4, 4)
    assert odd_equal.factor_expected and odd_equal.factor_found and odd_equal.consistent
    assert not odd_equal.irreducible
    generic = h1.conjecture_check(2, 3, 5)
    assert not generic.factor_expected and generic.irreducible and generic.consistent
    assert h1.conjecture_check(1, 2, 2).cofactor_irreducible is None
