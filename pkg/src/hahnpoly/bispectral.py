"""Difference operators in the variables and in the indices, with eigen-equation checks.

Both families are stored as stencils: a list of shifts, each with a coefficient
rule evaluated at the current lattice point.  Coefficient tables accept plain
integers or :class:`Poly` values, so the same code evaluates them numerically
and compares them symbolically.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Mapping, Sequence

from .exact import Undefined, is_undefined, pochhammer
from .hahnmd import sQ_nu_value, weight_H_md
from .lattice import LatticeParams, MultiIndex
from .poly import Poly


class DomainError(LookupError):
    """A stencil needed a value outside the domain with a nonzero coefficient."""


class BoundaryViolation(AssertionError):
    """A shift into negative indices carried a nonzero coefficient."""


@dataclass(frozen=True)
class GridFunction:
    domain: tuple[MultiIndex, ...]
    values: Mapping[MultiIndex, Fraction]

    def __post_init__(self):
        missing = [x for x in self.domain if x not in self.values]
        if missing:
            raise ValueError(f"no value at {missing[0]}")

    def __contains__(self, x) -> bool:
        return tuple(x) in self.values

    def __getitem__(self, x) -> Fraction:
        x = tuple(x)
        if x not in self.values:
            raise DomainError(f"{x} is outside the domain")
        return self.values[x]

    @classmethod
    def from_callable(cls, domain: Sequence[MultiIndex], fn: Callable) -> "GridFunction":
        domain = tuple(domain)
        return cls(domain, {x: fn(x) for x in domain})


@dataclass(frozen=True)
class Stencil:
    shifts: list[tuple[tuple[int, ...], Callable]] = field(default_factory=list)


def _add(a, b):
    return tuple(u + v for u, v in zip(a, b))


# ---------------------------------------------------------------------------
# operators in the variables

def _x_stencil_local(m: int) -> list[tuple[tuple[int, ...], Callable]]:
    """Shifts of the operator on m variables; coefficients take (x, ell, N) with len(ell) = m + 1."""
    out = []

    def unit(i, s=1):
        e = [0] * m
        e[i] = s
        return e

    for i in range(m):
        for j in range(m):
            if i != j:
                off = unit(i)
                off[j] = -1
                out.append((tuple(off), lambda x, ell, N, i=i, j=j: x[j] * (x[i] - ell[i])))
    for i in range(m):
        out.append((tuple(unit(i)), lambda x, ell, N, i=i: (x[i] - ell[i]) * (N - sum(x))))
        out.append((tuple(unit(i, -1)), lambda x, ell, N, i=i: x[i] * (N - sum(x) - ell[-1])))
    return out


def stencil_Lx(k: int, p: LatticeParams) -> Stencil:
    """Operator acting on the last k variables with parameters ell^{d-k+1} and N - |x_bar_{d-k}|."""
    d = p.d
    if not 1 <= k <= d:
        raise ValueError(f"k={k} outside 1..{d}")
    lead = d - k
    ell_t = p.ell[lead:]
    shifts = []
    for off, rule in _x_stencil_local(k):
        full = (0,) * lead + off
        shifts.append((full, lambda x, rule=rule: rule(x[lead:], ell_t, p.N - sum(x[:lead]))))
    return Stencil(shifts)


def apply_stencil(st: Stencil, f: GridFunction, points=None) -> GridFunction:
    pts = f.domain if points is None else tuple(points)
    out = {}
    for x in pts:
        fx = f[x]
        total = Fraction(0)
        for off, rule in st.shifts:
            c = rule(x)
            if c == 0:
                continue
            y = _add(x, off)
            if y not in f:
                raise DomainError(f"shift {off} from {x} leaves the domain with coefficient {c}")
            total += c * (f[y] - fx)
        out[x] = total
    return GridFunction(pts, out)


def apply_Lx(k: int, f: GridFunction, p: LatticeParams) -> GridFunction:
    return apply_stencil(stencil_Lx(k, p), f)


def eigenvalue_Lx(k: int, nu: Sequence[int], p: LatticeParams) -> int:
    d = p.d
    s = sum(nu[d - k:])
    L = sum(p.ell[d - k:])
    return -s * (s - L - 1)


def hat_sQ(nu: Sequence[int], p: LatticeParams) -> Poly:
    from .hahnmd import Normalization, hahn_md
    return hahn_md(nu, p, Normalization.HAT).poly


def hat_value(nu: Sequence[int], x: Sequence[int], p: LatticeParams):
    v = sQ_nu_value(nu, x, p)
    if is_undefined(v):
        return v
    return v / pochhammer(-p.N, sum(nu))


def basis_function(nu: Sequence[int], p: LatticeParams) -> GridFunction:
    return GridFunction.from_callable(p.V, lambda x: hat_value(nu, x, p))


def spectral_x_check(p: LatticeParams) -> list[tuple[MultiIndex, int, bool]]:
    """(nu, k, ok) for every nu in H and every operator in the variable family."""
    out = []
    for nu in p.H:
        f = basis_function(nu, p)
        for k in range(1, p.d + 1):
            g = apply_Lx(k, f, p)
            lam = eigenvalue_Lx(k, nu, p)
            out.append((nu, k, all(g[x] == lam * f[x] for x in p.V)))
    return out


def commutator_check(family: str, k1: int, k2: int, p: LatticeParams, x_point=None) -> bool:
    if family == "x":
        if k1 == k2:
            return True
        for nu in p.H:
            f = basis_function(nu, p)
            a = apply_Lx(k1, apply_Lx(k2, f, p), p)
            b = apply_Lx(k2, apply_Lx(k1, f, p), p)
            if any(a[x] != b[x] for x in p.V):
                return False
        return True
    if family == "nu":
        if k1 == k2:
            return True
        points = p.V if x_point is None else (tuple(x_point),)
        for x in points:
            g = _index_function(x, p)
            a = _compose_nu(k1, k2, g, p)
            b = _compose_nu(k2, k1, g, p)
            for nu in p.H:
                if is_undefined(a[nu]) or is_undefined(b[nu]):
                    continue
                if a[nu] != b[nu]:
                    return False
        return True
    raise ValueError("family must be 'x' or 'nu'")


def self_adjoint_check(p: LatticeParams, seed: int = 0, trials: int = 3) -> bool:
    rng = random.Random(seed)
    W = {x: weight_H_md(x, p) for x in p.V}
    for _ in range(trials):
        f = GridFunction.from_callable(p.V, lambda x: Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        g = GridFunction.from_callable(p.V, lambda x: Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        Lf, Lg = apply_Lx(p.d, f, p), apply_Lx(p.d, g, p)
        if sum(Lf[x] * g[x] * W[x] for x in p.V) != sum(f[x] * Lg[x] * W[x] for x in p.V):
            return False
    return True


# ---------------------------------------------------------------------------
# coefficient tables for the operators in the indices

def _tail(v, i):
    return sum(v[i - 1:], 0)


def coeff_B_raw(i: int, j: int, k: int, nu: Sequence, ell: Sequence, N):
    """Table entry for index i (0..d); nu has d entries and ell has d + 1."""
    if i == 0:
        if j != 0:
            raise KeyError(f"B_0 is defined only for j = 0, got ({j}, {k})")
        n, L = sum(nu, 0), sum(ell, 0)
        if k == 0:
            return -N + L * Fraction(1, 2)
        if k == 1:
            return N - n
        if k == -1:
            return n - L + N - 1
        raise KeyError(k)
    v, li = nu[i - 1], ell[i - 1]
    ti, tn = _tail(nu, i), _tail(nu, i + 1)
    Li, Ln = _tail(ell, i), _tail(ell, i + 1)
    s = v + 2 * tn
    table = {
        (0, 0): lambda: ti * (ti - Li - 1) + tn * (tn - Ln - 1) + Ln * (Li + 2) * Fraction(1, 2),
        (0, 1): lambda: -v * (s - Li - 1),
        (0, -1): lambda: (li - v) * (s - Ln - 1),
        (1, 0): lambda: (li - v) * (s - Li - 1),
        (-1, 0): lambda: -v * (s - Ln - 1),
        (1, 1): lambda: (s - Li - 1) * (s - Li),
        (-1, 1): lambda: v * (v - 1),
        (1, -1): lambda: (li - v) * (li - v - 1),
        (-1, -1): lambda: (s - Ln - 1) * (s - Ln - 2),
    }
    if (j, k) not in table:
        raise KeyError(f"no table entry for ({j}, {k})")
    return table[(j, k)]()


def coeff_b_raw(i: int, m: int, nu: Sequence, ell: Sequence):
    t = 2 * _tail(nu, i) - _tail(ell, i)
    if m == 0:
        return t * (t - 2) * Fraction(1, 2)
    if m == 1:
        return t * (t - 1)
    if m == -1:
        return (t - 2) * (t - 1)
    raise KeyError(m)


def coeff_B(i: int, j: int, k: int, nu: Sequence[int], p: LatticeParams) -> Fraction:
    return Fraction(coeff_B_raw(i, j, k, nu, p.ell, p.N))


def coeff_b(i: int, m: int, nu: Sequence[int], p: LatticeParams) -> Fraction:
    return Fraction(coeff_b_raw(i, m, nu, p.ell))


def mu_shift(mu: Sequence[int]) -> tuple[int, ...]:
    ext = tuple(mu) + (0,)
    return tuple(ext[k] - ext[k + 1] for k in range(len(mu)))


def coeff_C_parts(mu: Sequence, nu: Sequence, ell: Sequence, N):
    """(numerator factors, denominator factors) of C_mu."""
    d = len(nu)
    ext = (0,) + tuple(mu) + (0,)
    num = [coeff_B_raw(k, ext[k], ext[k + 1], nu, ell, N) for k in range(d + 1)]
    den = [coeff_b_raw(k, ext[k], nu, ell) for k in range(1, d + 1)]
    return num, den


def _order_lead(f):
    """(order, leading coefficient) at eps = 0 of a univariate Poly or a constant; None for zero."""
    if not isinstance(f, Poly):
        f = Poly.const(f, 1)
    if f.is_zero():
        return None
    e = min(t[0] for t in f.terms)
    return e, f.terms[(e,)]


def coeff_C_generic(mu: Sequence[int], nu: Sequence[int], ell: Sequence[int], N: int,
                    mode: str = "limit"):
    """C_mu at integer parameters.

    ``mode="limit"`` takes the limit along ell_i -> ell_i + i*eps with N fixed,
    which resolves points such as 2|nu| = |ell| where numerator and denominator
    vanish together.  ``mode="strict"`` returns 0 on any zero numerator factor
    and Undefined on any zero denominator factor.  A genuine pole is Undefined.
    """
    if not any(mu):
        raise ValueError("mu must be nonzero")
    if mode not in ("limit", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    num, den = coeff_C_parts(mu, nu, ell, N)
    if mode == "strict" or all(f != 0 for f in den):
        if any(f == 0 for f in num):
            return Fraction(0)
        if any(f == 0 for f in den):
            return Undefined(f"b-denominator vanishes for mu={tuple(mu)}, nu={tuple(nu)}")
        out = Fraction(1)
        for f in num:
            out *= f
        for f in den:
            out /= f
        return out
    eps = Poly.var(0, 1)
    shifted = [l + (i + 1) * eps for i, l in enumerate(ell)]
    num, den = coeff_C_parts(mu, nu, shifted, N)
    order, value = 0, Fraction(1)
    for f in num:
        r = _order_lead(f)
        if r is None:
            return Fraction(0)
        order += r[0]
        value *= r[1]
    for f in den:
        r = _order_lead(f)
        if r is None:
            return Undefined(f"b-denominator vanishes identically for mu={tuple(mu)}, nu={tuple(nu)}")
        order -= r[0]
        value /= r[1]
    if order > 0:
        return Fraction(0)
    if order < 0:
        return Undefined(f"pole of order {-order} for mu={tuple(mu)}, nu={tuple(nu)}")
    return value


def coeff_C(mu: Sequence[int], nu: Sequence[int], p: LatticeParams, mode: str = "limit"):
    return coeff_C_generic(mu, nu, p.ell, p.N, mode)


def nonzero_mus(d: int):
    return [mu for mu in product((-1, 0, 1), repeat=d) if any(mu)]


def reduced_params(k: int, nu: Sequence[int], p: LatticeParams):
    """(nu_bar_k, ell', N') for the k-th operator in the index family."""
    d = p.d
    if k == d:
        return tuple(nu), p.ell, p.N
    ell_k = tuple(p.ell[:k]) + (p.zhat_a(k, nu),)
    return tuple(nu[:k]), ell_k, p.N - sum(nu[k:])


@dataclass
class IndexApplication:
    value: object
    dropped: list = field(default_factory=list)
    undefined: list = field(default_factory=list)


def apply_Lnu_at(k: int, g: Callable, nu: Sequence[int], p: LatticeParams,
                 mode: str = "limit") -> IndexApplication:
    """(L^nu_k g)(nu).  g maps full indices to values; negative shifts must carry zero coefficients."""
    nu = tuple(nu)
    sub, ell_k, N_k = reduced_params(k, nu, p)
    g0 = g(nu)
    total = Fraction(0)
    res = IndexApplication(None)
    for mu in nonzero_mus(k):
        shift = mu_shift(mu) + (0,) * (p.d - k)
        target = _add(nu, shift)
        c = coeff_C_generic(mu, sub, ell_k, N_k, mode)
        if min(target) < 0:
            if c != 0:
                raise BoundaryViolation(f"shift {shift} at {nu} has coefficient {c}")
            res.dropped.append((mu, target))
            continue
        if is_undefined(c):
            res.undefined.append((mu, c.reason))
            continue
        if c == 0:
            continue
        gt = g(target)
        if is_undefined(gt):
            res.undefined.append((mu, f"value at {target} undefined"))
            continue
        total += c * (gt - g0)
    res.value = Undefined("; ".join(r for _, r in res.undefined)) if res.undefined else total
    return res


def _index_function(x: Sequence[int], p: LatticeParams) -> Callable:
    cache: dict = {}

    def g(nu):
        nu = tuple(nu)
        if nu not in cache:
            if sum(nu) > p.N:
                cache[nu] = Undefined(f"|nu| > N at {nu}")
            else:
                cache[nu] = hat_value(nu, x, p)
        return cache[nu]
    return g


def apply_Lnu(k: int, g: GridFunction, x_point: Sequence[int], p: LatticeParams) -> dict:
    """Apply L^nu_k to a function on H (values outside H read as zero) at every nu in g's domain."""
    def lookup(nu):
        return g.values.get(tuple(nu), Fraction(0))
    return {nu: apply_Lnu_at(k, lookup, nu, p).value for nu in g.domain}


def _compose_nu(k_outer: int, k_inner: int, g: Callable, p: LatticeParams) -> dict:
    inner_cache: dict = {}

    def inner(nu):
        nu = tuple(nu)
        if nu not in inner_cache:
            if sum(nu) > p.N:
                inner_cache[nu] = Undefined("outside |nu| <= N")
            else:
                inner_cache[nu] = apply_Lnu_at(k_inner, g, nu, p).value
        return inner_cache[nu]
    return {nu: apply_Lnu_at(k_outer, inner, nu, p).value for nu in p.H}


@dataclass
class SpectralReport:
    checked: int = 0
    failures: list = field(default_factory=list)
    exclusions: list = field(default_factory=list)
    dropped_terms: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def spectral_nu_check(p: LatticeParams, points=None, mode: str = "limit",
                      indices=None) -> SpectralReport:
    """L^nu_k hatQ_nu(x) = |x_bar_k| hatQ_nu(x) for nu in H, and the differences give x_k."""
    rep = SpectralReport()
    for x in (p.V if points is None else points):
        g = _index_function(x, p)
        for nu in (p.H if indices is None else indices):
            prev = Fraction(0)
            prev_ok = True
            for k in range(1, p.d + 1):
                app = apply_Lnu_at(k, g, nu, p, mode)
                rep.dropped_terms += len(app.dropped)
                if is_undefined(app.value):
                    rep.exclusions.append((x, nu, k, app.value.reason))
                    prev_ok = False
                    continue
                expect = sum(x[:k]) * g(nu)
                rep.checked += 1
                if app.value != expect:
                    rep.failures.append((x, nu, k, "spectral"))
                if prev_ok and app.value - prev != x[k - 1] * g(nu):
                    rep.failures.append((x, nu, k, "difference"))
                prev, prev_ok = app.value, True
    return rep


def boundary_check(p: LatticeParams, mode: str = "limit") -> tuple[int, list]:
    """Count dropped negative-index terms over nu in H; list any with nonzero coefficient."""
    dropped, bad = 0, []
    for nu in p.H:
        for k in range(1, p.d + 1):
            sub, ell_k, N_k = reduced_params(k, nu, p)
            for mu in nonzero_mus(k):
                target = _add(nu, mu_shift(mu) + (0,) * (p.d - k))
                if min(target) < 0:
                    dropped += 1
                    c = coeff_C_generic(mu, sub, ell_k, N_k, mode)
                    if c != 0:
                        bad.append((nu, k, mu, c))
    return dropped, bad


# ---------------------------------------------------------------------------
# explicit d = 2 coefficients

def explicit_C_d2(mu: tuple[int, int], nu: Sequence, ell: Sequence, N, corrected: bool = False):
    """Two-dimensional coefficients as (numerator, denominator).

    By default C_{-1,-1} carries (2nu2-l2-l3)(2nu2-l2-l3-1) in the denominator.
    The generic construction and the eigen-equation both require
    (2nu2-l2-l3-2)(2nu2-l2-l3-1), which ``corrected=True`` selects.
    """
    n1, n2 = nu
    l1, l2, l3 = ell
    n = n1 + n2
    L = l1 + l2 + l3
    s23 = l2 + l3
    q = 2 * n2 * (n2 - s23 - 1) + l3 * (s23 + 2)
    table = {
        (1, 0): ((N - n) * (l1 - n1) * (n1 + 2 * n2 - L - 1) * q,
                 (2 * n - L) * (2 * n - L - 1) * (2 * n2 - s23) * (2 * n2 - s23 - 2)),
        (-1, 0): (-(n - L + N - 1) * n1 * (n1 + 2 * n2 - s23 - 1) * q,
                  (2 * n - L - 2) * (2 * n - L - 1) * (2 * n2 - s23) * (2 * n2 - s23 - 2)),
        (0, 1): ((2 * N - L) * n1 * (n1 + 2 * n2 - L - 1) * (l2 - n2) * (n2 - s23 - 1),
                 (2 * n - L) * (2 * n - L - 2) * (2 * n2 - s23) * (2 * n2 - s23 - 1)),
        (0, -1): ((2 * N - L) * (l1 - n1) * (n1 + 2 * n2 - s23 - 1) * n2 * (n2 - l3 - 1),
                  (2 * n - L) * (2 * n - L - 2) * (2 * n2 - s23 - 2) * (2 * n2 - s23 - 1)),
        (1, 1): ((N - n) * (n1 + 2 * n2 - L - 1) * (n1 + 2 * n2 - L) * (l2 - n2) * (n2 - s23 - 1),
                 (2 * n - L) * (2 * n - L - 1) * (2 * n2 - s23) * (2 * n2 - s23 - 1)),
        (-1, 1): ((n - L + N - 1) * n1 * (n1 - 1) * (l2 - n2) * (n2 - s23 - 1),
                  (2 * n - L - 2) * (2 * n - L - 1) * (2 * n2 - s23) * (2 * n2 - s23 - 1)),
        (1, -1): (-(N - n) * (l1 - n1) * (l1 - n1 - 1) * n2 * (n2 - l3 - 1),
                  (2 * n - L) * (2 * n - L - 1) * (2 * n2 - s23 - 2) * (2 * n2 - s23 - 1)),
        (-1, -1): (-(n - L + N - 1) * (n1 + 2 * n2 - s23 - 1) * (n1 + 2 * n2 - s23 - 2) * n2 * (n2 - l3 - 1),
                   (2 * n - L - 2) * (2 * n - L - 1) * (2 * n2 - s23) * (2 * n2 - s23 - 1)),
    }
    if corrected:
        num, _ = table[(-1, -1)]
        table[(-1, -1)] = (num, (2 * n - L - 2) * (2 * n - L - 1) * (2 * n2 - s23 - 2) * (2 * n2 - s23 - 1))
    return table[tuple(mu)]


def explicit_C1_d2(m: int, nu: Sequence, ell: Sequence, N):
    n1, n2 = nu
    l1, l2, l3 = ell
    n, L, s23 = n1 + n2, l1 + l2 + l3, l2 + l3
    if m == 1:
        return ((N - n) * (l1 - n1) * (n1 + 2 * n2 - L - 1), (2 * n - L) * (2 * n - L - 1))
    if m == -1:
        return (-(n - L + N - 1) * n1 * (n1 + 2 * n2 - s23 - 1), (2 * n - L - 2) * (2 * n - L - 1))
    raise KeyError(m)


def _prod(factors, one):
    out = one
    for f in factors:
        out = out * f
    return out


def explicit_d2_symbolic_check(corrected: bool = False) -> dict[str, bool]:
    """Cross-multiplied comparison of generic and tabulated coefficients in Q[nu1, nu2, l1, l2, l3, N]."""
    n1, n2, l1, l2, l3, N = Poly.gens(6)
    one = Poly.one(6)
    nu, ell = (n1, n2), (l1, l2, l3)
    out = {}
    for mu in nonzero_mus(2):
        num, den = coeff_C_parts(mu, nu, ell, N)
        gn, gd = _prod(num, one), _prod(den, one)
        en, ed = explicit_C_d2(mu, nu, ell, N, corrected)
        out[f"C{mu}"] = gn * ed == en * gd
    # the first operator uses (nu1; l1, l2 + l3 - 2 nu2; N - nu2)
    for m in (1, -1):
        num, den = coeff_C_parts((m,), (n1,), (l1, l2 + l3 - 2 * n2), N - n2)
        gn, gd = _prod(num, one), _prod(den, one)
        en, ed = explicit_C1_d2(m, nu, ell, N)
        out[f"C1'({m})"] = gn * ed == en * gd
    return out
