"""Verification suites shared by the command line and the test suite.

Every suite takes one parameter set and returns a list of :class:`Check`.
Each check summarizes one property over that set; failures carry the first
offending case in ``detail``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable

from . import bispectral as bs
from . import hahn1d as h1
from . import hahnmd as hm
from .exact import is_undefined, pochhammer
from .factor import univariate_factor
from .lattice import LatticeParams, card_V_formula, d2_grid, grid, height, height_piecewise
from .poly import Poly

PASS, FAIL, UNDEFINED, SKIPPED = "pass", "fail", "undefined", "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    def to_obj(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def _check(name: str, failures: list, total: int, extra: str = "") -> Check:
    if failures:
        return Check(name, FAIL, f"{len(failures)}/{total} failed; first: {failures[0]}")
    return Check(name, PASS, f"{total} cases" + (f"; {extra}" if extra else ""))


# ---------------------------------------------------------------------------
# parameter grids

def grid_1d(max_ell: int = 8, max_N: int = 10) -> list[h1.Params1D]:
    return [h1.Params1D(a, b, N) for a in range(1, max_ell + 1) for b in range(1, max_ell + 1)
            for N in range(1, max_N + 1) if a + b >= N]


GRIDS: dict[str, Callable[[], list]] = {
    "1d": grid_1d,
    "d2-small": lambda: d2_grid(6, 8),
    "d3-small": lambda: grid(3, 4, 5),
    "d2-tiny": lambda: d2_grid(4, 5),
    "1d-l6": lambda: grid_1d(6, 12),
}


# ---------------------------------------------------------------------------
# one variable

def ortho_1d(p: h1.Params1D) -> list[Check]:
    deg = p.deg_bound
    polys = [h1.hahn_sQ(n, p) for n in range(deg + 1)]
    fails, total = [], 0
    for m in range(deg + 1):
        for n in range(m, deg + 1):
            total += 1
            got = h1.inner_product(polys[m], polys[n], p)
            want = h1.norm_B(n, p) if m == n else 0
            if got != want:
                fails.append((m, n, str(got), str(want)))
    wf = [x for x in p.support() if h1.weight_H(x, p, 1) != h1.weight_H(x, p, 2)]
    return [_check(f"ortho-1d {p.ell1},{p.ell2},{p.N}", fails, total),
            _check(f"weight-forms-1d {p.ell1},{p.ell2},{p.N}", wf, len(p.support()))]


STATED_1D_FACTORS = {
    # (n, l1, l2, N): (constant, roots, irreducible cofactors as ascending coefficient lists)
    (6, 6, 8, 12): (Fraction(-1, 120), (4, 5, 6), None),
    (7, 8, 9, 16): (Fraction(1, 56), (7, 8), None),
    (3, 3, 5, 12): (Fraction(-1, 132), (4,), [[33, -13, 2]]),
    (5, 6, 7, 16): (Fraction(-1, 24960), (), [[52, -14, 1], [-480, 159, -20, 1]]),
}


def factor_examples() -> list[Check]:
    out = []
    x = Poly.var(0, 1)
    for (n, l1, l2, N), (c, roots, cofactors) in STATED_1D_FACTORS.items():
        name = f"factor-example Q{n}({l1},{l2},{N})"
        if cofactors is None:
            f = h1.factorize_thm(n, h1.Params1D(l1, l2, N))
            ok = f.prefactor == c and f.roots == roots
            out.append(Check(name, PASS if ok else FAIL, f"constant {f.prefactor}, roots {f.roots}"))
            continue
        q = h1.hahn_sQ_raw(n, l1, l2, N)
        want = Poly.const(c, 1)
        for r in roots:
            want = want * (x - r)
        for cf in cofactors:
            want = want * Poly.from_coeffs(cf)
        fac = univariate_factor(q)
        irreducible = all(len(univariate_factor(Poly.from_coeffs(cf)).factors) == 1 for cf in cofactors)
        out.append(Check(name, PASS if q == want and irreducible else FAIL,
                         f"content {fac.content}, {len(fac.factors)} irreducible factors"))
    return out


def factor_1d(p: h1.Params1D) -> list[Check]:
    fails, total = [], 0
    if p.ell2 <= p.N:
        for n in range(p.deg_bound + 1, min(p.ell1, p.N) + 1):
            total += 1
            try:
                h1.factorize_thm(n, p)
            except (AssertionError, h1.PoleError) as e:
                fails.append((n, str(e)))
    if total == 0:
        return [Check(f"factor-1d {p.ell1},{p.ell2},{p.N}", SKIPPED, "no index above the degree bound")]
    return [_check(f"factor-1d {p.ell1},{p.ell2},{p.N}", fails, total)]


def genfun_1d(p: h1.Params1D) -> list[Check]:
    name = f"{p.ell1},{p.ell2},{p.N}"
    fails = [n for n in range(p.deg_bound + 1) if not h1.genfun_check(n, p)]
    out = [_check(f"genfun-support {name}", fails, p.deg_bound + 1)]
    top = min(p.ell1, p.ell2, p.N)
    full = []
    for n in range(top + 1):
        lhs, rhs = h1.genfun_full_sides(n, p)
        if lhs != rhs:
            full.append(n)
    out.append(_check(f"genfun-full {name}", full, top + 1))
    if p.ell2 >= p.N:
        bad = [n for n in range(p.deg_bound + 1) if h1.genfun_b(n, p) != 1]
        out.append(_check(f"genfun-b-unit {name}", bad, p.deg_bound + 1))
    return out


def moments_1d(l1: int, l2: int) -> list[Check]:
    name = f"{l1},{l2}"
    t = Poly.var(0, 1)
    u = (1 - t) / 2
    bad = [m for m in range(l1 + l2 + 1)
           if h1.moment_L(u ** m, l1, l2) != pochhammer(-l1, m) / pochhammer(-l1 - l2, m)]
    out = [_check(f"moments {name}", bad, l1 + l2 + 1)]
    top = min(l1, l2)
    G = [h1.jacobi_G(n, l1, l2) for n in range(top + 1)]
    fails, total = [], 0
    for m in range(top + 1):
        for n in range(m, top + 1):
            total += 1
            got = h1.moment_L(G[m] * G[n], l1, l2)
            want = h1.h_norm(n, l1, l2) if m == n else 0
            if got != want:
                fails.append((m, n))
    out.append(_check(f"moment-ortho {name}", fails, total))
    signs = [n for n in range(top + 1) if (h1.h_norm(n, l1, l2) > 0) != (n % 2 == 0)]
    out.append(_check(f"h-sign {name}", signs, top + 1))
    return out


def conjecture_1d(n: int, l1: int, l2: int) -> list[Check]:
    o = h1.conjecture_check(n, l1, l2)
    if o.factor_expected:
        text = ("factor (y-2x) found" if o.factor_found else "factor (y-2x) missing")
        text += {True: ", remainder irreducible", False: ", remainder reducible",
                 None: ", remainder constant"}[o.cofactor_irreducible]
    else:
        text = "irreducible" if o.irreducible else "reducible"
    return [Check(f"conjecture check R{n}({l1},{l2})", PASS if o.consistent else FAIL, text)]


def conjecture_grid(max_n: int = 4, max_ell: int = 5) -> list[Check]:
    out = []
    for l1, l2 in product(range(1, max_ell + 1), repeat=2):
        for n in range(1, min(max_n, l1, l2) + 1):
            out += conjecture_1d(n, l1, l2)
    return out


# ---------------------------------------------------------------------------
# several variables

def cardinality_md(p: LatticeParams) -> list[Check]:
    v, h, f = len(p.V), len(p.H), card_V_formula(p)
    ok = v == h == f
    return [Check(f"cardinality {p}", PASS if ok else FAIL, f"|V|={v} |H|={h} formula={f}")]


def height_md(p: LatticeParams) -> list[Check]:
    if p.d != 2:
        return []
    fails = [nu1 for nu1 in range(p.ell[0] + 1)
             if any(v != height(nu1, p) for v in height_piecewise(nu1, p)) or not height_piecewise(nu1, p)]
    total_ok = sum(height(nu1, p) for nu1 in range(p.ell[0] + 1)) == len(p.H)
    return [_check(f"height-piecewise {p}", fails, p.ell[0] + 1),
            Check(f"height-sum {p}", PASS if total_ok else FAIL, f"|H|={len(p.H)}")]


def ortho_md(p: LatticeParams) -> list[Check]:
    T = hm.value_table(p, p.H)
    W = {x: hm.weight_H_md(x, p) for x in p.V}
    fails, total = [], 0
    H = p.H
    for i, nu in enumerate(H):
        B = hm.norm_B_nu(nu, p)
        for mu in H[i:]:
            total += 1
            got = sum((T[nu][x] * T[mu][x] * W[x] for x in p.V), Fraction(0))
            want = B if nu == mu else 0
            if got != want:
                fails.append((nu, mu))
    closed = [nu for nu in H if hm.norm_B_nu(nu, p) != hm.norm_B_closed(nu, p)]
    forms = [x for x in p.V if W[x] != hm.weight_H_md(x, p, 2)]
    return [_check(f"ortho {p}", fails, total),
            _check(f"norm-closed-form {p}", closed, len(H)),
            _check(f"weight-forms {p}", forms, len(p.V)),
            Check(f"weight-total {p}", PASS if sum(W.values()) == 1 else FAIL, str(sum(W.values())))]


def vanishing_md(p: LatticeParams) -> list[Check]:
    fails, count = [], 0
    for nu in p.CH:
        B = hm.norm_B_nu(nu, p)
        vals = [hm.sQ_nu_value(nu, x, p) for x in p.V]
        in_h = p.in_H(nu)
        zero_norm = B == 0
        vanishes = not any(vals)
        count += 1
        if not (in_h != zero_norm and zero_norm == vanishes):
            fails.append((nu, in_h, str(B), vanishes))
    return [_check(f"vanishing {p}", fails, count, f"{count - len(p.H)} indices in CH minus H")]


def example_644_7() -> list[Check]:
    """The two vanishing polynomials of the (6,4,4), N=7 example."""
    p = LatticeParams((6, 4, 4), 7)
    x1, x2 = Poly.gens(2)
    quartic = (840 - 638 * x1 - 910 * x2 + 179 * x1 ** 2 + 480 * x1 * x2 + 375 * x2 ** 2
               - 22 * x1 ** 3 - 85 * x1 ** 2 * x2 - 120 * x1 * x2 ** 2 - 70 * x2 ** 3
               + x1 ** 4 + 5 * x1 ** 3 * x2 + 10 * x1 ** 2 * x2 ** 2 + 10 * x1 * x2 ** 3 + 5 * x2 ** 4)
    q05 = hm.sQ_nu_poly((0, 5), p)
    out = [Check("example (0,5) polynomial", PASS if q05 == (x1 - 3) * quartic else FAIL, "")]
    first = (x1 - 4) * (x1 - 3) * (x1 - 2) * Fraction(-1, 48)
    second = (x1 + 2 * x2 - 7) * (60 - 22 * x1 - 35 * x2 + 2 * x1 ** 2 + 5 * x1 * x2 + 5 * x2 ** 2)
    stated = first * second
    pre, f, s = hm.d2_factors((3, 3), p)
    q33 = hm.sQ_nu_poly((3, 3), p)
    out.append(Check("example (3,3) factors", PASS if f * s == stated else FAIL,
                     "stated polynomial equals first * second factor without (-N+nu2)_nu1"))
    out.append(Check("example (3,3) polynomial", PASS if q33 == stated.scale(pre) else FAIL,
                     f"polynomial = {pre} * stated"))
    common = set(hm.lattice_zeros(quartic, p)) & set(hm.lattice_zeros(second.divide_exact(x1 + 2 * x2 - 7), p))
    out.append(Check("example common zeros", PASS if len(common) == 8 else FAIL, f"{len(common)} points"))
    for nu in ((0, 5), (3, 3)):
        ok = hm.norm_B_nu(nu, p) == 0 and hm.vanishing_check(nu, p)
        out.append(Check(f"example {nu} vanishes on V", PASS if ok else FAIL, ""))
    out.append(Check("example |V| = |H| = 23", PASS if len(p.V) == len(p.H) == 23 else FAIL, ""))
    return out


def frontier_md(p: LatticeParams) -> list[Check]:
    """Split forms and definedness of the first index above each column (d = 2)."""
    if p.d != 2:
        return []
    kinds, mism, stated_scale, iff_fail, iff_exact = {}, [], [], [], []
    for nu1 in range(p.ell[0] + 1):
        try:
            r = hm.d2_frontier_classify(nu1, p)
        except AssertionError as e:
            mism.append((nu1, str(e)))
            continue
        kinds[r.kind.value] = kinds.get(r.kind.value, 0) + 1
        und = r.kind is hm.FrontierKind.UNDEFINED
        if und != hm.frontier_undefined_predicted(nu1, p):
            iff_fail.append(r.nu)
        if und != hm.frontier_undefined(nu1, p):
            iff_exact.append(r.nu)
        if r.predicted is not None:
            alt = hm.first_factor_predicted(nu1, p, root_scale="stated")
            if alt != r.first:
                stated_scale.append(r.nu)
    n = p.ell[0] + 1
    summary = ", ".join(f"{k}={v}" for k, v in sorted(kinds.items()))
    return [_check(f"frontier-split {p}", mism, n, summary),
            _check(f"frontier-iff-exact {p}", iff_exact, n),
            _check(f"frontier-iff-as-stated {p}", iff_fail, n),
            _check(f"frontier-split-stated-scale {p}", stated_scale, n)]


def sr_closed_forms(ell2: int, N: int) -> list[Check]:
    """Closed forms of the second factor for l2 = l3 (and l3 = l2 + 1 when valid)."""
    out = []
    x1, x2 = Poly.gens(2)
    name = f"l2={ell2} N={N}"
    top = hm.sR(ell2 + 1, ell2, ell2, N)
    low = hm.sR(ell2, ell2, ell2, N)
    ok = (top == hm.sR_closed_equal(ell2, N, ell2 + 1) and low == hm.sR_closed_equal(ell2, N, ell2)
          and top == (-N + ell2 + x1) * low)
    out.append(Check(f"sR-equal {name}", PASS if ok else FAIL, ""))
    if ell2 % 2:
        ok = low.divide_exact(N - x1 - 2 * x2) is not None
        out.append(Check(f"sR-linear-factor {name}", PASS if ok else FAIL, ""))
    adj = hm.sR(ell2, ell2, ell2 + 1, N)
    if not is_undefined(adj):
        ok = adj == hm.sR_closed_adjacent(ell2, N)
        out.append(Check(f"sR-adjacent {name}", PASS if ok else FAIL, ""))
    return out


def genfun_md(p: LatticeParams, limit: int | None = None) -> list[Check]:
    fails, total = [], 0
    for nu in p.H[:limit]:
        g = hm.genfun_md(nu, p)
        for a, v in g.items():
            total += 1
            if v != hm.sH_nu_value(nu, a, p):
                fails.append((nu, a))
    return [_check(f"genfun-md {p}", fails, total)]


def kernel_md(p: LatticeParams) -> list[Check]:
    fails, total = [], 0
    for n in range(p.ell_min + 1):
        a = hm.kernel_table(n, p)
        b = hm.kernel_table(n, p, "closed")
        total += len(a)
        fails += [(n,) + k for k in a if a[k] != b[k]]
    out = [_check(f"kernel-closed {p}", fails, total)]
    # reproducing property against each basis polynomial
    T = hm.value_table(p, p.H)
    W = {x: hm.weight_H_md(x, p) for x in p.V}
    rep, cnt = [], 0
    for n in range(max(sum(nu) for nu in p.H) + 1):
        K = hm.kernel_table(n, p)
        for nu in p.H:
            for x in p.V:
                cnt += 1
                got = sum((K[(x, y)] * T[nu][y] * W[y] for y in p.V), Fraction(0))
                if got != (T[nu][x] if sum(nu) == n else 0):
                    rep.append((n, nu, x))
    out.append(_check(f"kernel-reproducing {p}", rep, cnt))
    return out


def poisson_triangle(ell: int) -> list[Check]:
    p = LatticeParams((ell, ell, ell), 2 * ell)
    fails = [x for x in p.V if hm.poisson_Phi_poly(x, (0, ell), p) != hm.triangle_poisson_poly(ell, x[0])]
    return [_check(f"poisson-triangle l={ell}", fails, len(p.V), "closed form depends on x1 only")]


def bispectral_md(p: LatticeParams, nu_family: bool = True) -> list[Check]:
    out = []
    fails = [(nu, k) for nu, k, ok in bs.spectral_x_check(p) if not ok]
    out.append(_check(f"spectral-x {p}", fails, len(p.H) * p.d))
    pairs = [(a, b) for a in range(1, p.d + 1) for b in range(a + 1, p.d + 1)]
    bad = [pr for pr in pairs if not bs.commutator_check("x", *pr, p)]
    out.append(_check(f"commute-x {p}", bad, len(pairs)))
    out.append(Check(f"self-adjoint {p}", PASS if bs.self_adjoint_check(p) else FAIL, "seeded random f, g"))
    if nu_family:
        rep = bs.spectral_nu_check(p)
        extra = f"{len(rep.exclusions)} excluded, {rep.dropped_terms} dropped boundary terms"
        if rep.exclusions:
            extra += f"; first exclusion {rep.exclusions[0]}"
        out.append(_check(f"spectral-nu {p}", rep.failures, rep.checked, extra))
        dropped, nonzero = bs.boundary_check(p)
        out.append(_check(f"boundary-zero {p}", nonzero, dropped))
        # indices whose polynomial vanishes on V, kept apart from the main sweep
        off_h = [nu for nu in p.CH if not p.in_H(nu)]
        if off_h:
            rep = bs.spectral_nu_check(p, indices=off_h)
            extra = f"{len(off_h)} indices, {len(rep.exclusions)} excluded"
            out.append(_check(f"spectral-nu-ch-minus-h {p}", rep.failures, rep.checked, extra))
    return out


def explicit_d2() -> list[Check]:
    out = []
    stated = bs.explicit_d2_symbolic_check()
    corrected = bs.explicit_d2_symbolic_check(corrected=True)
    for key in stated:
        if stated[key]:
            out.append(Check(f"explicit {key}", PASS, "matches generic construction"))
        else:
            out.append(Check(f"explicit {key} as stated", FAIL, "differs from generic construction"))
            out.append(Check(f"explicit {key} corrected", PASS if corrected[key] else FAIL,
                             "denominator (2nu2-l2-l3-2)(2nu2-l2-l3-1)"))
    return out


# ---------------------------------------------------------------------------
# dispatch

MD_SUITES: dict[str, Callable[[LatticeParams], list[Check]]] = {
    "ortho": ortho_md,
    "cardinality": lambda p: cardinality_md(p) + height_md(p),
    "vanishing": vanishing_md,
    "factor": frontier_md,
    "genfun": genfun_md,
    "kernel": kernel_md,
    "bispectral": bispectral_md,
}

ONE_D_SUITES: dict[str, Callable[[h1.Params1D], list[Check]]] = {
    "ortho": ortho_1d,
    "factor": factor_1d,
    "genfun": genfun_1d,
    "moments": lambda p: moments_1d(p.ell1, p.ell2),
}

SUITES = ("ortho", "factor", "genfun", "moments", "kernel", "poisson", "bispectral",
          "cardinality", "vanishing", "conjecture")

DEFAULT_GRID = {
    "ortho": "d2-small", "factor": "d2-small", "genfun": "1d", "moments": "1d-l6",
    "kernel": "d2-small", "bispectral": "d2-small", "cardinality": "d2-small",
    "vanishing": "d2-small",
}


def workers() -> int:
    try:
        return max(1, int(os.environ.get("HAHNPOLY_WORKERS", "1")))
    except ValueError:
        return 1


def _run_one(suite: str, p) -> list[Check]:
    if isinstance(p, h1.Params1D):
        if suite not in ONE_D_SUITES:
            raise KeyError(f"suite {suite!r} has no one-variable form")
        return ONE_D_SUITES[suite](p)
    if suite not in MD_SUITES:
        raise KeyError(f"suite {suite!r} has no multivariate form")
    return MD_SUITES[suite](p)


def run_suite(suite: str, params: Iterable) -> list[Check]:
    params = list(params)
    if suite == "moments":
        # depends on (l1, l2) only
        seen = sorted({(p.ell1, p.ell2) for p in params})
        return [c for a, b in seen for c in moments_1d(a, b)]
    n = workers()
    if n > 1 and len(params) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(n) as ex:
            chunks = list(ex.map(_run_one, [suite] * len(params), params))
    else:
        chunks = [_run_one(suite, p) for p in params]
    out = [c for chunk in chunks for c in chunk]
    md = [p for p in params if isinstance(p, LatticeParams)]
    if suite == "factor":
        if len(md) < len(params):
            out += factor_examples()
        for l2, N in sorted({(p.ell[1], p.N) for p in md if p.d == 2 and p.ell[1] == p.ell[2]}):
            out += sr_closed_forms(l2, N)
    if suite == "vanishing" and LatticeParams((6, 4, 4), 7) in md:
        out += example_644_7()
    if suite == "bispectral" and any(p.d == 2 for p in md):
        out += explicit_d2()
    return out
