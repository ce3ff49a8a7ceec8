from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from hahnpoly import bispectral as bs
from hahnpoly import hahn1d as h1
from hahnpoly.exact import is_undefined, pochhammer
from hahnpoly.hahnmd import sQ_nu_poly
from hahnpoly.lattice import LatticeParams

EXAMPLE = LatticeParams((6, 4, 4), 7)


@st.composite
def lattice(draw, d=2, max_ell=4):
    N = draw(st.integers(1, max_ell))
    ell = tuple(draw(st.integers(1, N)) for _ in range(d + 1))
    assume(LatticeParams.is_valid(ell, N))
    return LatticeParams(ell, N)


def test_grid_function_domain():
    f = bs.GridFunction.from_callable(((0,), (1,)), lambda x: Fraction(x[0]))
    assert f[(1,)] == 1 and (0,) in f
    with pytest.raises(bs.DomainError):
        f[(2,)]
    with pytest.raises(ValueError):
        bs.GridFunction(((0,),), {})


def test_stencil_refuses_to_leave_domain():
    p = LatticeParams((2, 2), 2)
    partial = bs.GridFunction.from_callable(((1,),), lambda x: Fraction(1))
    with pytest.raises(bs.DomainError):
        bs.apply_Lx(1, partial, p)
    with pytest.raises(ValueError):
        bs.stencil_Lx(2, p)


@given(st.one_of(lattice(1, 6), lattice(2), lattice(3, 3)))
def test_constants_are_annihilated(p):
    one = bs.GridFunction.from_callable(p.V, lambda x: Fraction(1))
    for k in range(1, p.d + 1):
        assert all(v == 0 for v in bs.apply_Lx(k, one, p).values.values())


@settings(max_examples=30, deadline=None)
@given(lattice(1, 8), st.data())
def test_one_variable_difference_equation(p, data):
    # classical second-order difference equation, written out by hand
    l1, l2, N = p.ell[0], p.ell[1], p.N
    n = data.draw(st.integers(0, h1.Params1D(l1, l2, N).deg_bound))
    q = h1.hahn_sQ(n, h1.Params1D(l1, l2, N))
    f = bs.GridFunction.from_callable(p.V, lambda x: q.eval(x))
    g = bs.apply_Lx(1, f, p)
    for (t,) in p.V:
        up = (t - l1) * (N - t) * (q.eval([t + 1]) - q.eval([t]))
        down = t * (N - t - l2) * (q.eval([t - 1]) - q.eval([t]))
        assert g[(t,)] == up + down == -n * (n - l1 - l2 - 1) * q.eval([t])
    assert bs.eigenvalue_Lx(1, (n,), p) == -n * (n - l1 - l2 - 1)


@settings(max_examples=20, deadline=None)
@given(st.one_of(lattice(2), lattice(3, 3)))
def test_variable_family_eigen_commute_selfadjoint(p):
    assert all(ok for _, _, ok in bs.spectral_x_check(p))
    for a in range(1, p.d + 1):
        for b in range(a + 1, p.d + 1):
            assert bs.commutator_check("x", a, b, p)
    assert bs.self_adjoint_check(p, seed=1)


def test_hat_normalization():
    assert bs.hat_sQ((1, 0), EXAMPLE) == sQ_nu_poly((1, 0), EXAMPLE).scale(Fraction(-1, 7))
    assert bs.hat_value((2, 1), (1, 3), EXAMPLE) == sQ_nu_poly((2, 1), EXAMPLE).eval([1, 3]) / pochhammer(-7, 3)


def test_table_entries():
    zero = (0, 0)
    assert bs.coeff_B(0, 0, 0, zero, EXAMPLE) == 0
    assert bs.coeff_B(0, 0, 1, (2, 1), EXAMPLE) == 4
    assert bs.coeff_B(0, 0, -1, (2, 1), EXAMPLE) == 3 - 14 + 6
    assert bs.coeff_B(2, -1, 1, (2, 3), EXAMPLE) == 6
    assert bs.coeff_b(1, 1, (1, 1), EXAMPLE) == (4 - 14) * (4 - 15)
    with pytest.raises(KeyError):
        bs.coeff_B(0, 1, 0, zero, EXAMPLE)
    with pytest.raises(KeyError):
        bs.coeff_b(1, 2, zero, EXAMPLE)
    assert bs.mu_shift((1, -1)) == (2, -1)
    assert bs.mu_shift((0, 1)) == (-1, 1)
    assert len(bs.nonzero_mus(2)) == 8


@settings(max_examples=60, deadline=None)
@given(lattice(2, 6), st.data())
def test_limit_agrees_with_strict_away_from_zero_denominators(p, data):
    nu = data.draw(st.sampled_from(p.H))
    for mu in bs.nonzero_mus(2):
        _, den = bs.coeff_C_parts(mu, nu, p.ell, p.N)
        if all(f != 0 for f in den):
            assert bs.coeff_C(mu, nu, p, "limit") == bs.coeff_C(mu, nu, p, "strict")


def test_coeff_C_arguments():
    with pytest.raises(ValueError):
        bs.coeff_C((0, 0), (1, 1), EXAMPLE)
    with pytest.raises(ValueError):
        bs.coeff_C((1, 0), (1, 1), EXAMPLE, mode="other")


def test_strict_mode_gives_wrong_zeros_where_limit_is_exact():
    p = LatticeParams((1, 1, 1), 2)
    assert not bs.spectral_nu_check(p, mode="strict").ok
    rep = bs.spectral_nu_check(p)
    assert rep.ok and not rep.exclusions


@pytest.mark.parametrize("ell,N", [((3, 3, 3), 4), ((2, 3, 4), 4), ((3, 2, 2, 3), 4)])
def test_index_family(ell, N):
    p = LatticeParams(ell, N)
    rep = bs.spectral_nu_check(p)
    assert rep.ok and not rep.exclusions and rep.checked == len(p.V) * len(p.H) * p.d
    dropped, bad = bs.boundary_check(p)
    assert dropped > 0 and not bad


def test_index_family_on_restricted_function():
    p = LatticeParams((3, 3, 3), 4)
    x = (1, 2)
    g = bs.GridFunction.from_callable(p.H, lambda nu: bs.hat_value(nu, x, p))
    for k in (1, 2):
        out = bs.apply_Lnu(k, g, x, p)
        assert all(out[nu] == sum(x[:k]) * g[nu] for nu in p.H)


def test_index_family_commutes():
    assert bs.commutator_check("nu", 1, 2, LatticeParams((3, 3, 3), 4))
    assert bs.commutator_check("nu", 1, 2, EXAMPLE, x_point=(3, 2))
    with pytest.raises(ValueError):
        bs.commutator_check("y", 1, 2, EXAMPLE)


def test_reduced_params():
    assert bs.reduced_params(2, (2, 1), EXAMPLE) == ((2, 1), (6, 4, 4), 7)
    assert bs.reduced_params(1, (2, 1), EXAMPLE) == ((2,), (6, 6), 6)


def test_explicit_d2_table():
    stated = bs.explicit_d2_symbolic_check()
    assert [k for k, ok in stated.items() if not ok] == ["C(-1, -1)"]
    assert all(bs.explicit_d2_symbolic_check(corrected=True).values())


def test_explicit_d2_numeric_matches_generic():
    for nu in EXAMPLE.H:
        for mu in bs.nonzero_mus(2):
            want = bs.coeff_C(mu, nu, EXAMPLE, "strict")
            num, den = bs.explicit_C_d2(mu, nu, EXAMPLE.ell, EXAMPLE.N, corrected=True)
            if is_undefined(want) or den == 0:
                continue
            assert Fraction(num, den) == want


def test_index_family_off_H_sweep():
    off_h = [nu for nu in EXAMPLE.CH if not EXAMPLE.in_H(nu)]
    rep = bs.spectral_nu_check(EXAMPLE, indices=off_h)
    assert rep.checked > 0 and rep.ok
