"""Acceptance criteria at zero tolerance.

Each criterion records one PASS/FAIL line, shown in the terminal summary.
Where a published formula disagrees with direct computation, the check
against the formula as published is a strict xfail: the criterion line reads
FAIL, and the test run errors if the discrepancy ever disappears.
"""
from fractions import Fraction
from itertools import product

import pytest

from hahnpoly import hahnmd as hm
from hahnpoly import verify as vf
from hahnpoly.lattice import LatticeParams, d2_grid, grid
from hahnpoly.poly import Poly

from conftest import record

D2 = d2_grid(6, 8)
D3 = grid(3, 4, 5)
EXAMPLE = LatticeParams((6, 4, 4), 7)


def _failures(checks):
    return [c for c in checks if c.status == vf.FAIL]


def _run(num, checks, label):
    bad = _failures(checks)
    record(num, not bad, f"{label}: {len(checks) - len(bad)}/{len(checks)} checks pass")
    assert not bad, bad[:3]


def test_c01_orthogonality_1d():
    checks = [c for p in vf.grid_1d(8, 10) for c in vf.ortho_1d(p)]
    _run(1, checks, "1D orthogonality and norms")


def test_c02_factorization_1d():
    checks = [c for p in vf.grid_1d(8, 10) for c in vf.factor_1d(p) if c.status != vf.SKIPPED]
    checks += vf.factor_examples()
    _run(2, checks, "factorization identity and the four stated examples")


def test_c03_generating_functions():
    checks = [c for p in vf.grid_1d(8, 10) for c in vf.genfun_1d(p)]
    _run(3, checks, "generating functions and unit b")


def test_c04_moment_functional():
    checks = [c for a, b in product(range(1, 7), repeat=2) for c in vf.moments_1d(a, b)]
    _run(4, checks, "moments, orthogonality, sign of h_n")


def test_c05_cardinality():
    checks = [c for p in D2 + D3 for c in vf.cardinality_md(p)]
    checks.append(vf.Check("example has 23 points", vf.PASS if len(EXAMPLE.V) == len(EXAMPLE.H) == 23 else vf.FAIL))
    _run(5, checks, f"{len(D2)} d=2 and {len(D3)} d=3 parameter sets")


@pytest.mark.slow
def test_c06_orthogonality_and_vanishing():
    checks = [c for p in D2 for c in vf.ortho_md(p) + vf.vanishing_md(p)]
    checks += vf.example_644_7()
    _run(6, checks, "orthogonality, zero norms, vanishing on V, example polynomials")


@pytest.mark.xfail(strict=True, reason="stated constant -1/48 omits the factor (-N+nu2)_nu1 = -24")
def test_c06_example_constant_as_stated():
    x1, x2 = Poly.gens(2)
    stated = ((x1 - 4) * (x1 - 3) * (x1 - 2) * (x1 + 2 * x2 - 7)
               * (60 - 22 * x1 - 35 * x2 + 2 * x1 ** 2 + 5 * x1 * x2 + 5 * x2 ** 2)).scale(Fraction(-1, 48))
    ok = hm.sQ_nu_poly((3, 3), EXAMPLE) == stated
    record(6, ok, "(3,3) polynomial with the stated constant: " + ("matches" if ok else "off by the factor -24"))
    assert ok


def test_c07_height_function():
    checks = [c for p in D2 for c in vf.height_md(p)]
    _run(7, checks, "piecewise height and column sums")


@pytest.mark.slow
def test_c08_frontier_structure():
    checks = [c for p in D2 for c in vf.frontier_md(p)
              if "as-stated" not in c.name and "stated-scale" not in c.name]
    pairs = sorted({(p.ell[1], p.N) for p in D2 if p.ell[1] == p.ell[2]})
    checks += [c for l2, N in pairs for c in vf.sr_closed_forms(l2, N)]
    _run(8, checks, "split forms (corrected scale), exact undefinedness criterion, closed forms")


@pytest.mark.xfail(strict=True, reason="stated iff misses 165 frontier cases with |nu| = N + 1")
def test_c08_undefined_iff_as_stated():
    checks = [c for p in D2 for c in vf.frontier_md(p) if "as-stated" in c.name]
    bad = _failures(checks)
    record(8, not bad, f"iff as stated fails on {len(bad)} of {len(checks)} parameter sets")
    assert not bad


@pytest.mark.xfail(strict=True, reason="stated scale N-l2+i-1 in the even family must be max(l1, N-l2+i-1)")
def test_c08_split_scale_as_stated():
    checks = [c for p in D2 for c in vf.frontier_md(p) if "stated-scale" in c.name]
    bad = _failures(checks)
    record(8, not bad, f"even-family root scale as stated fails on {len(bad)} parameter sets")
    assert not bad


@pytest.mark.slow
def test_c09_kernels():
    checks = [c for p in D2 for c in vf.kernel_md(p)]
    checks += [c for ell in (1, 2, 3) for c in vf.poisson_triangle(ell)]
    _run(9, checks, "closed kernel, reproducing property, triangle Poisson kernel")


@pytest.mark.slow
def test_c10_bispectral():
    checks = [c for p in D2 for c in vf.bispectral_md(p) if "ch-minus-h" not in c.name]
    checks += [c for c in vf.bispectral_md(LatticeParams((3, 3, 3, 3), 4)) if "ch-minus-h" not in c.name]
    checks += [c for c in vf.explicit_d2() if "as stated" not in c.name]
    _run(10, checks, "eigen-equations in x and nu, commutation, boundary terms, explicit coefficients")


@pytest.mark.xfail(strict=True, reason="stated C_{-1,-1} has denominator b_2^{1} instead of b_2^{-1}")
def test_c10_explicit_coefficient_as_stated():
    bad = [c for c in vf.explicit_d2() if "as stated" in c.name]
    record(10, not bad, "explicit C(-1,-1) as stated differs from the generic construction")
    assert not bad


def test_c11_conjecture_evidence():
    checks = vf.conjecture_grid(4, 5)
    _run(11, checks, "conjecture check, finite instances only")
