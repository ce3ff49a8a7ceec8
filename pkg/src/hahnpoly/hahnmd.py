"""Multivariate Hahn polynomials on the cut simplex, their norms and kernels.

Each polynomial is a product of one-variable factors R_{nu_j}(x_j; l_j, a_j, N_j)
in cleared form, where a_j = |ell^{j+1}| - 2|nu^{j+1}| and
N_j = N - |x_bar_{j-1}| - |nu^{j+1}|.  The cleared form never divides by a
quantity depending on x, so the product is a polynomial for every nu in CH.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Sequence

from .exact import Undefined, binomial, is_undefined, leading_limit, pochhammer
from .factor import univariate_factor
from .hahn1d import (NotApplicableError, OutOfRangeError, _G_coeffs, cleared_hahn,
                     cleared_hahn_value, hahn_sQ_raw)
from .lattice import LatticeParams, MultiIndex, grlex, head, height, tail
from .poly import Poly, linear_roots_product, rising


class Normalization(enum.Enum):
    Q = "Q"
    H = "H"
    HAT = "hat"


def zhat_a(j: int, nu: Sequence[int], p: LatticeParams) -> int:
    return p.zhat_a(j, nu)


def _check_index(nu, p: LatticeParams):
    if len(nu) != p.d:
        raise ValueError(f"index {tuple(nu)} has length {len(nu)}, expected {p.d}")
    if min(nu) < 0 or sum(nu) > p.N:
        raise OutOfRangeError(f"{tuple(nu)} needs nonnegative entries and |nu| <= N for {p}")


def sQ_nu_poly(nu: Sequence[int], p: LatticeParams):
    """Q-normalized polynomial for |nu| <= N.

    On CH the result is always a polynomial.  Beyond CH a vanishing
    denominator either coincides with a vanishing numerator, in which case the
    sum is truncated there, or is a genuine pole and :class:`Undefined` is returned.
    """
    nu = tuple(nu)
    _check_index(nu, p)
    return _sQ_poly(nu, p)


@lru_cache(maxsize=4096)
def _sQ_poly(nu: MultiIndex, p: LatticeParams):
    d = p.d
    xs = Poly.gens(d)
    out = Poly.one(d)
    partial = Poly.zero(d)
    for j in range(1, d + 1):
        Nj = p.N - tail(nu, j + 1) - partial
        factor = cleared_hahn(nu[j - 1], p.ell[j - 1], p.zhat_a(j, nu), xs[j - 1], Nj)
        if is_undefined(factor):
            return factor
        out = out * factor
        partial = partial + xs[j - 1]
    return out


def sQ_nu_value(nu: Sequence[int], x: Sequence[int], p: LatticeParams):
    """Value at an integer point without building the polynomial; Undefined on a pole."""
    nu = tuple(nu)
    _check_index(nu, p)
    out = Fraction(1)
    partial = 0
    for j in range(1, p.d + 1):
        Nj = p.N - tail(nu, j + 1) - partial
        v = cleared_hahn_value(nu[j - 1], p.ell[j - 1], p.zhat_a(j, nu), x[j - 1], Nj)
        if is_undefined(v):
            return v
        out *= v
        partial += x[j - 1]
    return out


def normalization_constant(nu: Sequence[int], p: LatticeParams, normalization: Normalization) -> Fraction:
    n = sum(nu)
    if normalization is Normalization.Q:
        return Fraction(1)
    if normalization is Normalization.HAT:
        return 1 / pochhammer(-p.N, n)
    c = Fraction((-1) ** n) / pochhammer(-p.N, n)
    for j in range(1, p.d + 1):
        c *= pochhammer(-p.ell[j - 1], nu[j - 1]) / pochhammer(-p.zhat_a(j, nu), nu[j - 1])
    return c


@dataclass(frozen=True)
class HahnMD:
    nu: MultiIndex
    params: LatticeParams
    poly: Poly
    normalization: Normalization


def hahn_md(nu: Sequence[int], p: LatticeParams, normalization: Normalization = Normalization.Q) -> HahnMD:
    nu = tuple(nu)
    q = sQ_nu_poly(nu, p)
    if normalization is not Normalization.Q:
        if not p.in_H(nu):
            raise OutOfRangeError(f"{normalization.value}-normalization needs nu in H, got {nu}")
        q = q.scale(normalization_constant(nu, p, normalization))
    return HahnMD(nu, p, q, normalization)


# ---------------------------------------------------------------------------
# weight and norms

def weight_H_md(x: Sequence[int], p: LatticeParams, form: int = 1) -> Fraction:
    if any(v < 0 for v in x):
        raise ValueError("x must be nonnegative")
    rest = p.N - sum(x)
    if rest < 0:
        return Fraction(0)
    if form == 1:
        out = binomial(p.ell[-1], rest) / binomial(p.total, p.N)
        for xi, li in zip(x, p.ell):
            out *= binomial(li, xi)
        return out
    if form == 2:
        out = Fraction(factorial(p.N)) / pochhammer(-p.total, p.N)
        for xi, li in zip(tuple(x) + (rest,), p.ell):
            out *= pochhammer(-li, xi) / factorial(xi)
        return out
    raise ValueError("form must be 1 or 2")


def _poch_factors(c: int, m: int, k: int) -> list[tuple[int, int]]:
    # (c + m*eps)_k as linear factors
    return [(c + t, m) for t in range(k)]


def norm_B_nu(nu: Sequence[int], p: LatticeParams):
    """Squared norm, taken as the limit of the positive-parameter norm at kappa = -ell - 1 + eps.

    The limit is zero exactly on CH minus H.  It is also taken for indices
    beyond CH with |nu| <= N, where it is the limit of the classical norm.
    """
    nu = tuple(nu)
    _check_index(nu, p)
    d, N, n = p.d, p.N, sum(nu)
    num: list[tuple[int, int]] = _poch_factors(-N, 0, n) + _poch_factors(-p.total, d + 1, N + n)
    den: list[tuple[int, int]] = _poch_factors(-p.total, d + 1, N) + _poch_factors(-p.total, d + 1, 2 * n)
    for j in range(1, d + 1):
        a, lj, vj, w = p.zhat_a(j, nu), p.ell[j - 1], nu[j - 1], d + 1 - j
        num += _poch_factors(-a, w, vj) + _poch_factors(-lj - a - 1, w + 1, 2 * vj)
        num += [(t, 0) for t in range(1, vj + 1)]
        den += _poch_factors(-lj, 1, vj) + _poch_factors(-lj - a - 1, w + 1, vj)
    value = leading_limit(num, den)
    if is_undefined(value):
        return value
    return (-1) ** n * value


def norm_B_closed(nu: Sequence[int], p: LatticeParams) -> Fraction:
    """Closed form of the squared norm, usable when none of its denominators vanish (nu in H)."""
    n = sum(nu)
    out = ((-1) ** n * pochhammer(-p.N, n) * pochhammer(-p.total, p.N + n)
           / (pochhammer(-p.total, p.N) * pochhammer(-p.total, 2 * n)))
    for j in range(1, p.d + 1):
        a, lj, vj = p.zhat_a(j, nu), p.ell[j - 1], nu[j - 1]
        out *= (pochhammer(-a, vj) * pochhammer(-lj - a - 1, 2 * vj) * factorial(vj)
                / (pochhammer(-lj, vj) * pochhammer(-lj - a - 1, vj)))
    return out


def value_table(p: LatticeParams, indices=None) -> dict[MultiIndex, dict[MultiIndex, Fraction]]:
    """nu -> {x -> sQ_nu(x)} over V; indices default to CH."""
    return _value_table(p, tuple(p.CH if indices is None else indices))


@lru_cache(maxsize=64)
def _value_table(p: LatticeParams, indices: tuple) -> dict:
    return {nu: {x: sQ_nu_value(nu, x, p) for x in p.V} for nu in indices}


def inner_product_md(f, g, p: LatticeParams) -> Fraction:
    """f and g are callables or mappings on V."""
    f = f if callable(f) else f.__getitem__
    g = g if callable(g) else g.__getitem__
    return sum((f(x) * g(x) * weight_H_md(x, p) for x in p.V), Fraction(0))


def vanishing_check(nu: Sequence[int], p: LatticeParams) -> bool:
    """True iff the polynomial for an index outside H is zero at every point of V."""
    nu = tuple(nu)
    _check_index(nu, p)
    if p.in_H(nu):
        raise NotApplicableError(f"{nu} lies in H for {p}")
    values = [sQ_nu_value(nu, x, p) for x in p.V]
    if any(is_undefined(v) for v in values):
        raise NotApplicableError(f"polynomial for {nu} is undefined")
    return not any(values)


def lattice_zeros(poly: Poly, p: LatticeParams) -> list[MultiIndex]:
    """Zeros of ``poly`` in the bounding box of V, in grlex order."""
    box = product(*(range(li + 1) for li in p.ell[:-1]))
    return list(grlex(x for x in box if poly.eval(x) == 0))


# ---------------------------------------------------------------------------
# d = 2 frontier structure

def d2_factors(nu: Sequence[int], p: LatticeParams, strict: bool = True):
    """(prefactor, first, second) with sQ_nu = prefactor * first(x1) * second(x1, x2).

    ``first`` is the raw one-variable polynomial in x1 with parameters
    (l1, l2 + l3 - 2 nu2, N - nu2) and ``second`` is the cleared factor
    (-N + x1)_{nu2} Q_{nu2}(x2; l2, l3, N - x1).  Either can be Undefined
    when its hypergeometric sum has a pole; ``strict`` also marks 0/0 as Undefined.
    """
    if p.d != 2:
        raise ValueError("d2_factors needs d = 2")
    nu1, nu2 = nu
    l1, l2, l3 = p.ell
    x1, x2 = Poly.gens(2)
    pre = pochhammer(-p.N + nu2, nu1)
    first = hahn_sQ_raw(nu1, l1, l2 + l3 - 2 * nu2, p.N - nu2, strict=strict, x=x1)
    second = sR(nu2, l2, l3, p.N, strict=strict)
    return pre, first, second


def sR(nu2: int, ell2: int, ell3: int, N: int, strict: bool = False):
    """(-N + x1)_{nu2} Q_{nu2}(x2; l2, l3, N - x1) in cleared form, as a polynomial in (x1, x2).

    In the default mode a simultaneous zero of numerator and denominator
    truncates the sum, which is the limiting value of the series.
    """
    x1, x2 = Poly.gens(2)
    return cleared_hahn(nu2, ell2, ell3, x2, N - x1, strict=strict)


def sR_closed_equal(ell2: int, N: int, nu2: int):
    """Closed forms for l2 = l3 and nu2 in {l2, l2 + 1}."""
    x1, x2 = Poly.gens(2)
    top = rising(-N + x1 + x2, ell2 + 1) - rising(-x2, ell2 + 1).scale((-1) ** (ell2 + 1))
    if nu2 == ell2 + 1:
        return top
    if nu2 == ell2:
        q = top.divide_exact(-N + ell2 + x1)
        if q is None:
            raise AssertionError("closed form is not divisible by -N + l2 + x1")
        return q
    raise ValueError("closed forms exist for nu2 = l2 and l2 + 1")


def sR_closed_adjacent(ell2: int, N: int) -> Poly:
    """Explicit form of sR_{l2}(x; l2, l2 + 1, N), cleared of its denominators."""
    x1, x2 = Poly.gens(2)
    u = -N + ell2 + x1
    u2 = u * (u + 1)
    num = (rising(-N + x1 + x2, ell2 + 2)
           - (u + 1) * rising(-x2, ell2 + 1).scale((-1) ** (ell2 + 1) * (ell2 + 2))
           - rising(-x2, ell2 + 2).scale((-1) ** ell2))
    q = num.divide_exact(u2)
    if q is None:
        raise AssertionError("explicit form does not reduce to a polynomial")
    return q


class FrontierKind(enum.Enum):
    UNDEFINED = "undefined"
    SPLITS = "splits"
    GENERAL = "general"


@dataclass(frozen=True)
class FrontierResult:
    nu: MultiIndex
    kind: FrontierKind
    first: object
    second: object
    predicted: Poly | None = None
    detail: str = ""


def frontier_undefined_predicted(nu1: int, p: LatticeParams) -> bool:
    """The iff-conditions for an ill-defined polynomial just above column nu1."""
    l1, l2, l3 = p.ell
    return ((l3 >= l2 and nu1 <= l3 - l2)
            or (p.total > 2 * p.N and nu1 >= 2 * p.N + 1 - l2 - l3))


def frontier_undefined(nu1: int, p: LatticeParams) -> bool:
    """Exact criterion, matching direct evaluation.

    Differs from :func:`frontier_undefined_predicted` only where the frontier
    index has |nu| = N + 1: the lower bound drops by one and |ell| = 2N is included.
    """
    l1, l2, l3 = p.ell
    return ((l3 >= l2 and nu1 <= l3 - l2)
            or (p.total >= 2 * p.N and nu1 >= 2 * p.N - l2 - l3))


def first_factor_predicted(nu1: int, p: LatticeParams, root_scale: str = "derived") -> Poly | None:
    """Split form of the x1 factor from the explicit families, or None when no family covers nu1."""
    l1, l2, l3 = p.ell
    if l3 < l2:
        l2, l3 = l3, l2
    N, tot = p.N, p.total
    x1 = Poly.var(0, 2)
    if nu1 < 1:
        return None
    j = nu1 - (l3 - l2)
    if j >= -1 and nu1 <= l1 - abs(2 * N - tot):
        if j % 2:
            i = (j + 1) // 2
            c = 1 / pochhammer(-N + l2 - i + 1, nu1)
            return linear_roots_product(range(N - l3 - i + 1, N - l2 + i), 2).scale(c)
        i = j // 2
        m = max(l1, N - l2 + i - 1) if root_scale == "derived" else N - l2 + i - 1
        if (N - l3 - i) * m == 0:
            return None
        a = Fraction(l1 + l2 - l3 - 2 * i, (N - l3 - i) * m)
        c = Fraction(-N + l3 + i) / pochhammer(-N + l2 - i + 1, nu1)
        return (1 - x1.scale(a)) * linear_roots_product(range(N - l3 - i + 1, N - l2 + i), 2).scale(c)
    if tot <= 2 * N:
        j = nu1 - (l1 + tot - 2 * N)
        if 1 <= j <= 2 * N - tot:
            c = 1 / pochhammer(-l1, nu1)
            return linear_roots_product(range(2 * N - tot - j + 1, l1 + 1), 2).scale(c)
    return None


def _splits_x1(q: Poly) -> bool:
    uni = Poly(1, {(e[0],): c for e, c in q.terms.items()})
    return all(f.total_degree() == 1 for f, _ in univariate_factor(uni).factors)


def d2_frontier_classify(nu1: int, p: LatticeParams) -> FrontierResult:
    """Classify the polynomial with nu2 = height(nu1), the first index above column nu1."""
    nu2 = height(nu1, p)
    nu = (nu1, nu2)
    _, first, second = d2_factors(nu, p, strict=True)
    if is_undefined(first) or is_undefined(second):
        why = first.reason if is_undefined(first) else second.reason
        return FrontierResult(nu, FrontierKind.UNDEFINED, first, second, detail=why)
    predicted = first_factor_predicted(nu1, p)
    if predicted is not None:
        if predicted != first:
            raise AssertionError(f"split form disagrees with direct evaluation at nu={nu}, {p}")
        return FrontierResult(nu, FrontierKind.SPLITS, first, second, predicted)
    kind = FrontierKind.SPLITS if _splits_x1(first) else FrontierKind.GENERAL
    return FrontierResult(nu, kind, first, second)


# ---------------------------------------------------------------------------
# generating function

def _jacobi_G_homog(n: int, a: int, b: int, S_next: Poly, S_j: Poly) -> Poly:
    """S_j^n G_n^{(a,b)}(2 y_j / S_j - 1) for S_j = y_j + S_next, expanded as a polynomial."""
    coeffs = _G_coeffs(n, a, b)
    if is_undefined(coeffs):
        raise ArithmeticError(coeffs.reason)
    # (1 - t)/2 with t = 2 y_j/S_j - 1 equals S_next / S_j
    out = Poly.zero(S_j.nvars)
    for k, c in enumerate(coeffs):
        out = out + (S_next ** k * S_j ** (n - k)).scale(c)
    return out


def genfun_md_poly(nu: Sequence[int], p: LatticeParams) -> Poly:
    """|y|^N G_nu(y'/|y|) as a homogeneous polynomial in y_1..y_{d+1}."""
    nu = tuple(nu)
    if not p.in_H(nu):
        raise OutOfRangeError(f"{nu} is not in H for {p}")
    d = p.d
    ys = Poly.gens(d + 1)
    S = [None] * (d + 2)
    S[d + 1] = ys[d]
    for j in range(d, 0, -1):
        S[j] = ys[j - 1] + S[j + 1]
    out = S[1] ** (p.N - sum(nu))
    for j in range(1, d + 1):
        out = out * _jacobi_G_homog(nu[j - 1], p.zhat_a(j, nu), p.ell[j - 1], S[j + 1], S[j])
    return out


def genfun_md(nu: Sequence[int], p: LatticeParams) -> dict[MultiIndex, Fraction]:
    """alpha -> coefficient of y^alpha divided by N!/alpha!, over all |alpha| = N."""
    poly = genfun_md_poly(nu, p)
    out = {}
    for alpha in _compositions(p.N, p.d + 1):
        multinom = Fraction(factorial(p.N))
        for a in alpha:
            multinom /= factorial(a)
        out[alpha] = poly.coeff(alpha) / multinom
    return out


def sH_nu_value(nu: Sequence[int], alpha: Sequence[int], p: LatticeParams) -> Fraction:
    """H-normalized polynomial at the first d homogeneous coordinates of alpha."""
    return normalization_constant(nu, p, Normalization.H) * sQ_nu_value(nu, alpha[:-1], p)


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# kernels

def elementary_E(k: int, x: Sequence[int], y: Sequence[int], p: LatticeParams) -> Fraction:
    """Sum over compositions g of k into d+1 parts of prod (-X_i)_g (-Y_i)_g / ((-l_i)_g g!)."""
    series = _E_series(tuple(x), tuple(y), p)
    return series[k] if k < len(series) else Fraction(0)


@lru_cache(maxsize=1 << 16)
def _E_series(x: MultiIndex, y: MultiIndex, p: LatticeParams) -> tuple[Fraction, ...]:
    # coefficient of t^k in the product of one-coordinate series
    X = x + (p.N - sum(x),)
    Y = y + (p.N - sum(y),)
    out = [Fraction(1)]
    for Xi, Yi, li in zip(X, Y, p.ell):
        row = [pochhammer(-Xi, g) * pochhammer(-Yi, g) / (pochhammer(-li, g) * factorial(g))
               for g in range(li + 1)]
        conv = [Fraction(0)] * (len(out) + len(row) - 1)
        for a, u in enumerate(out):
            if u:
                for b, v in enumerate(row):
                    conv[a + b] += u * v
        out = conv
    return tuple(out)


def kernel_P(n: int, x: Sequence[int], y: Sequence[int], p: LatticeParams, method: str = "direct") -> Fraction:
    x, y = tuple(x), tuple(y)
    if method == "direct":
        total = Fraction(0)
        for nu in p.H:
            if sum(nu) == n:
                total += sQ_nu_value(nu, x, p) * sQ_nu_value(nu, y, p) / norm_B_nu(nu, p)
        return total
    if method == "closed":
        if n > p.ell_min:
            raise NotApplicableError(f"closed form needs n <= l_min = {p.ell_min}")
        if not (p.in_V(x) and p.in_V(y)):
            raise NotApplicableError("closed form needs x, y in V")
        pre, coeffs = _closed_kernel_coeffs(n, p)
        return pre * sum((c * elementary_E(k, x, y, p) for k, c in enumerate(coeffs)), Fraction(0))
    raise ValueError("method must be 'direct' or 'closed'")


@lru_cache(maxsize=256)
def _closed_kernel_coeffs(n: int, p: LatticeParams):
    L, N = p.total, p.N
    pre = (pochhammer(-N, n) * pochhammer(-L, N) * pochhammer(-L, n) * (L + 1 - 2 * n)
           / (factorial(n) * pochhammer(-L, N + n) * (L + 1 - n)))
    coeffs = tuple(pochhammer(-n, k) * pochhammer(n - 1 - L, k) / pochhammer(-N, k) ** 2
                   for k in range(n + 1))
    return pre, coeffs


@lru_cache(maxsize=64)
def _norms_H(p: LatticeParams) -> dict:
    return {nu: norm_B_nu(nu, p) for nu in p.H}


def kernel_table(n: int, p: LatticeParams, method: str = "direct") -> dict[tuple, Fraction]:
    """(x, y) -> P_n(x, y) for x, y in V."""
    if method == "closed":
        return {(x, y): kernel_P(n, x, y, p, "closed") for x in p.V for y in p.V}
    if method != "direct":
        raise ValueError("method must be 'direct' or 'closed'")
    layer = [nu for nu in p.H if sum(nu) == n]
    T = value_table(p, p.H)
    B = _norms_H(p)
    return {(x, y): sum((T[nu][x] * T[nu][y] / B[nu] for nu in layer), Fraction(0))
            for x in p.V for y in p.V}


def max_degree_H(p: LatticeParams) -> int:
    return max(sum(nu) for nu in p.H)


def poisson_Phi(r, x: Sequence[int], y: Sequence[int], p: LatticeParams) -> Fraction:
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValueError("r must lie in [0, 1]")
    return sum((kernel_P(n, x, y, p) * r ** n for n in range(max_degree_H(p) + 1)), Fraction(0))


def poisson_Phi_poly(x: Sequence[int], y: Sequence[int], p: LatticeParams) -> Poly:
    """The Poisson kernel as a polynomial in r."""
    return Poly.from_coeffs([kernel_P(n, x, y, p) for n in range(max_degree_H(p) + 1)])


def triangle_poisson_poly(ell: int, x1: int) -> Poly:
    """Closed form in r for the triangle case l_i = l, N = 2l, second point (0, l)."""
    coeffs = []
    for n in range(ell + 1):
        c = ((-1) ** n * pochhammer(-3 * ell - 1, n) * pochhammer(-3 * ell, 2 * n)
             / (factorial(n) * pochhammer(-3 * ell - 1, 2 * n)))
        q = hahn_sQ_raw(n, ell, 2 * ell, 2 * ell)
        coeffs.append(c * q.eval([x1]))
    return Poly.from_coeffs(coeffs)


def sign_changes(poly: Poly, samples: int = 64) -> int:
    """Sign changes of a polynomial in r over an evenly spaced rational grid on [0, 1]."""
    signs = []
    for i in range(samples + 1):
        v = poly.eval([Fraction(i, samples)])
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)
