"""Hahn polynomials of one variable with negative integer parameters.

The weight is the hypergeometric distribution with parameters (l1, l2, N).
Every polynomial is built symbolically from its terminating hypergeometric
sum, so identities between them are equality tests on :class:`Poly`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .exact import Undefined, as_fraction, binomial, is_undefined, pochhammer
from .poly import Poly, rising


class OutOfRangeError(ValueError):
    pass


class NotApplicableError(ValueError):
    pass


class PoleError(ArithmeticError):
    """A denominator Pochhammer vanished where the sum had not yet terminated."""


# ---------------------------------------------------------------------------
# terminating hypergeometric coefficients

def hyper_coeffs(n: int, upper: Sequence, lower: Sequence, strict: bool = False):
    """Coefficients c_k = (-n)_k prod (a)_k / (prod (b)_k k!) for k = 0..n.

    The symbolic parameter (usually -x) is left out; callers attach it.
    The list stops early once a numerator factor vanishes, so later terms are
    never divided by a vanishing denominator.  A denominator that vanishes
    first is a pole and yields :class:`Undefined`.  When numerator and
    denominator vanish at the same index the sum is truncated there, unless
    ``strict`` is set, in which case the 0/0 is reported as Undefined.
    """
    upper = [as_fraction(a) for a in upper]
    lower = [as_fraction(b) for b in lower]
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, n + 1):
        num = Fraction(-n + k - 1)
        for a in upper:
            num *= a + k - 1
        den = Fraction(k)
        for b in lower:
            den *= b + k - 1
        if den == 0:
            if num != 0:
                return Undefined(f"pole: denominator vanishes at term {k}")
            if strict:
                return Undefined(f"indeterminate 0/0 at term {k}")
            break
        if num == 0:
            break
        c = c * num / den
        coeffs.append(c)
    return coeffs


def _series(coeffs, x: Poly, extra=None) -> Poly:
    out = Poly.zero(x.nvars)
    for k, c in enumerate(coeffs):
        term = rising(-x, k).scale(c)
        if extra is not None:
            term = term * extra(k)
        out = out + term
    return out


def hahn_sQ_raw(n: int, l1: int, l2: int, N: int, strict: bool = False, x: Poly | None = None):
    """3F2(-n, n-l1-l2-1, -x; -l1, -N; 1) for arbitrary integer parameters.

    Returns a Poly or Undefined; ``x`` defaults to the variable of Q[x].
    """
    coeffs = hyper_coeffs(n, [n - l1 - l2 - 1], [-l1, -N], strict=strict)
    if is_undefined(coeffs):
        return coeffs
    return _series(coeffs, Poly.var(0, 1) if x is None else x)


def cleared_hahn(n: int, l1: int, l2: int, x: Poly, y: Poly, strict: bool = False):
    """(-y)_n * 3F2(-n, n-l1-l2-1, -x; -l1, -y; 1) with the y-denominators cleared.

    Both ``x`` and ``y`` are polynomials in a common ring.  This is the
    polynomial R_n(x; l1, l2, y); it never divides by a value depending on y.
    """
    coeffs = hyper_coeffs(n, [n - l1 - l2 - 1], [-l1], strict=strict)
    if is_undefined(coeffs):
        return coeffs
    return _series(coeffs, x, lambda k: rising(k - y, n - k))


@lru_cache(maxsize=None)
def _cleared_coeffs(n: int, l1: int, l2: int, strict: bool):
    return hyper_coeffs(n, [n - l1 - l2 - 1], [-l1], strict=strict)


def cleared_hahn_value(n: int, l1: int, l2: int, x: int, y: int, strict: bool = False):
    """Numeric value of :func:`cleared_hahn` at integers x, y."""
    coeffs = _cleared_coeffs(n, l1, l2, strict)
    if is_undefined(coeffs):
        return coeffs
    total = Fraction(0)
    for k, c in enumerate(coeffs):
        px = pochhammer(-x, k)
        if px:
            total += c * px * pochhammer(k - y, n - k)
    return total


# ---------------------------------------------------------------------------
# parameters and weight

@dataclass(frozen=True)
class Params1D:
    ell1: int
    ell2: int
    N: int

    def __post_init__(self):
        if min(self.ell1, self.ell2, self.N) < 1:
            raise ValueError("l1, l2 and N must be positive integers")
        if self.ell1 + self.ell2 < self.N:
            raise ValueError(f"need l1 + l2 >= N, got {self}")

    @property
    def lo(self) -> int:
        return self.N - min(self.ell2, self.N)

    @property
    def hi(self) -> int:
        return min(self.ell1, self.N)

    @property
    def deg_bound(self) -> int:
        return min(self.ell1, self.N) + min(self.ell2, self.N) - self.N

    def support(self) -> range:
        return range(self.lo, self.hi + 1)


@dataclass(frozen=True)
class Support1D:
    lo: int
    hi: int
    deg_bound: int

    @classmethod
    def of(cls, p: Params1D) -> "Support1D":
        return cls(p.lo, p.hi, p.deg_bound)


def _inv_factorial(m: int) -> Fraction:
    # 1/m! is zero at negative integers
    return Fraction(0) if m < 0 else Fraction(1, factorial(m))


def weight_H(x: int, p: Params1D, form: int = 1) -> Fraction:
    """Hypergeometric distribution at x, by the binomial form or the min/max form."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    l1, l2, N = p.ell1, p.ell2, p.N
    if form == 1:
        if x > N:
            return Fraction(0)
        return binomial(l1, x) * binomial(l2, N - x) / binomial(l1 + l2, N)
    if form == 2:
        if x > N:
            return Fraction(0)
        a, b = max(l1, N), max(l2, N)
        pre = Fraction(factorial(a) * factorial(b), factorial(N)) / pochhammer(-l1 - l2, N)
        return (pre * pochhammer(-min(l1, N), x) * pochhammer(-min(l2, N), N - x)
                * _inv_factorial(x - N + b) * _inv_factorial(a - x))
    raise ValueError("form must be 1 or 2")


def inner_product(f: Poly, g: Poly, p: Params1D) -> Fraction:
    return sum((f.eval([x]) * g.eval([x]) * weight_H(x, p) for x in p.support()), Fraction(0))


# ---------------------------------------------------------------------------
# the polynomials

def hahn_classical(n: int, a, b, N: int) -> Poly:
    """Classical Hahn polynomial Q_n(x; a, b, N) for rational a, b."""
    if not 0 <= n <= N:
        raise OutOfRangeError(f"need 0 <= n <= N, got n={n}, N={N}")
    a, b = as_fraction(a), as_fraction(b)
    coeffs = hyper_coeffs(n, [n + a + b + 1], [a + 1, -N])
    if is_undefined(coeffs):
        raise PoleError(coeffs.reason)
    return _series(coeffs, Poly.var(0, 1))


def classical_weight(x: int, a, b, N: int) -> Fraction:
    a, b = as_fraction(a), as_fraction(b)
    return (Fraction(factorial(N)) / pochhammer(a + b + 2, N) * pochhammer(a + 1, x)
            * pochhammer(b + 1, N - x) / (factorial(x) * factorial(N - x)))


def classical_norm(n: int, a, b, N: int) -> Fraction:
    a, b = as_fraction(a), as_fraction(b)
    return ((-1) ** n * factorial(n) * pochhammer(b + 1, n) * pochhammer(a + b + N + 2, n) * (n + a + b + 1)
            / (pochhammer(a + 1, n) * pochhammer(a + b + 2, n) * pochhammer(-N, n) * (2 * n + a + b + 1)))


def hahn_sQ(n: int, p: Params1D) -> Poly:
    if not 0 <= n <= min(p.ell1, p.N):
        raise OutOfRangeError(f"n={n} outside 0..min(l1, N) for {p}")
    out = hahn_sQ_raw(n, p.ell1, p.ell2, p.N)
    assert not is_undefined(out)
    return out


def norm_B(n: int, p: Params1D) -> Fraction:
    if not 0 <= n <= p.deg_bound:
        raise OutOfRangeError(f"n={n} outside 0..{p.deg_bound}")
    l1, l2, N = p.ell1, p.ell2, p.N
    return ((-1) ** n * factorial(n) * pochhammer(-l2, n) * pochhammer(-l1 - l2 + N, n) * (-n + l1 + l2 + 1)
            / (pochhammer(-l1, n) * pochhammer(-l1 - l2, n) * pochhammer(-N, n) * (-2 * n + l1 + l2 + 1)))


@dataclass(frozen=True)
class FactoredHahn:
    prefactor: Fraction
    roots: tuple[int, ...]
    reduced: Poly

    def expand(self) -> Poly:
        out = self.reduced.scale(self.prefactor)
        x = Poly.var(0, 1)
        for r in self.roots:
            out = out * (x - r)
        return out


def factorize_thm(n: int, p: Params1D) -> FactoredHahn:
    """Split a vanishing polynomial into constant, linear factors over the support, and a Hahn cofactor."""
    l1, l2, N = p.ell1, p.ell2, p.N
    if not (l2 <= N and p.deg_bound < n <= min(l1, N)):
        raise NotApplicableError(f"factorization needs l2 <= N and {p.deg_bound} < n <= {min(l1, N)}")
    m = n - p.deg_bound - 1
    pre = pochhammer(-N + l2 + 1, m) / pochhammer(-min(l1, N), n)
    reduced = hahn_sQ_raw(m, N - l2 - 1, abs(N - l1) - 1, max(l1, N))
    if is_undefined(reduced):
        raise PoleError(reduced.reason)
    out = FactoredHahn(pre, tuple(range(N - l2, min(l1, N) + 1)), reduced)
    if out.expand() != hahn_sQ(n, p):
        raise AssertionError(f"factorization mismatch for n={n}, {p}")
    return out


# ---------------------------------------------------------------------------
# Jacobi-type polynomials, generating functions and the moment functional

def _G_coeffs(n: int, l1: int, l2: int):
    # coefficients of G_n in powers of (1 - t)/2
    return hyper_coeffs(n, [n - l1 - l2 - 1], [-l1])


def jacobi_G_raw(n: int, l1: int, l2: int) -> Poly:
    coeffs = _G_coeffs(n, l1, l2)
    if is_undefined(coeffs):
        raise PoleError(coeffs.reason)
    t = Poly.var(0, 1)
    u = (1 - t) / 2
    return sum((u ** k * c for k, c in enumerate(coeffs)), Poly.zero(1))


def jacobi_G(n: int, ell1: int, ell2: int) -> Poly:
    if not 0 <= n <= min(ell1, ell2):
        raise OutOfRangeError(f"n={n} outside 0..min(l1, l2)")
    return jacobi_G_raw(n, ell1, ell2)


def _moebius_expand(n: int, a: int, b: int, M: int) -> Poly:
    """(1+t)^M G_n^{(a,b)}((1-t)/(1+t)) as a polynomial in t; needs M >= n."""
    coeffs = _G_coeffs(n, a, b)
    if is_undefined(coeffs):
        raise PoleError(coeffs.reason)
    t = Poly.var(0, 1)
    return sum((t ** k * (1 + t) ** (M - k) * c for k, c in enumerate(coeffs)), Poly.zero(1))


def genfun_b(n: int, p: Params1D) -> Fraction:
    l1, l2, N = p.ell1, p.ell2, p.N
    m2 = min(l2, N)
    return (pochhammer(-l2, n) * pochhammer(-l1 - m2 + N, n)
            / (pochhammer(-l1, n) * pochhammer(-l2 + m2 - N, n)))


def genfun_sides(n: int, p: Params1D) -> tuple[Poly, Poly]:
    """Both sides of the generating function summed over the support only."""
    if not 0 <= n <= p.deg_bound:
        raise OutOfRangeError(f"n={n} outside 0..{p.deg_bound}")
    l1, l2, N = p.ell1, p.ell2, p.N
    m1, m2 = min(l1, N), min(l2, N)
    alpha, beta = l1 + m2 - m1, l2 + m1 - m2
    t = Poly.var(0, 1)
    lhs = t ** (N - m2) * _moebius_expand(n, alpha, beta, p.deg_bound) * genfun_b(n, p)
    q = hahn_sQ(n, p)
    rhs = Poly.zero(1)
    for x in p.support():
        rhs = rhs + t ** x * (binomial(p.deg_bound, m1 - x) * q.eval([x]))
    return lhs, rhs


def genfun_check(n: int, p: Params1D) -> bool:
    lhs, rhs = genfun_sides(n, p)
    return lhs == rhs


def genfun_full_sides(n: int, p: Params1D) -> tuple[Poly, Poly]:
    """Both sides of the generating function summed over x = 0..N."""
    if not 0 <= n <= min(p.ell1, p.ell2, p.N):
        raise OutOfRangeError(f"n={n} outside 0..min(l1, l2, N)")
    t = Poly.var(0, 1)
    lhs = _moebius_expand(n, p.ell1, p.ell2, p.N)
    q = hahn_sQ(n, p)
    rhs = Poly.zero(1)
    for x in range(p.N + 1):
        rhs = rhs + t ** x * (binomial(p.N, x) * q.eval([x]))
    return lhs, rhs


@lru_cache(maxsize=None)
def moment(k: int, ell1: int, ell2: int) -> Fraction:
    """L(x^k) = 2F1(-k, -l1; -l1-l2; 2)."""
    if not 0 <= k <= ell1 + ell2:
        raise OutOfRangeError(f"moment index {k} outside 0..{ell1 + ell2}")
    return sum((pochhammer(-k, j) * pochhammer(-ell1, j) * 2 ** j
                / (pochhammer(-ell1 - ell2, j) * factorial(j)) for j in range(k + 1)), Fraction(0))


def moment_L(q: Poly, ell1: int, ell2: int) -> Fraction:
    if q.degree() > ell1 + ell2:
        raise OutOfRangeError(f"degree {q.degree()} exceeds l1 + l2 = {ell1 + ell2}")
    return sum((c * moment(e, ell1, ell2) for (e,), c in q.terms.items()), Fraction(0))


def h_norm(n: int, ell1: int, ell2: int) -> Fraction:
    return (factorial(n) * pochhammer(-ell2, n) * (1 + ell1 + ell2 - n)
            / (pochhammer(-ell1, n) * pochhammer(-ell1 - ell2, n) * (1 + ell1 + ell2 - 2 * n)))


def three_term_coeffs(n: int, p: Params1D):
    """(A_n, C_n); either entry is Undefined when its denominator vanishes."""
    if not 0 <= n <= p.deg_bound:
        raise OutOfRangeError(f"n={n} outside 0..{p.deg_bound}")
    l1, l2, N = p.ell1, p.ell2, p.N
    s = l1 + l2
    den_a = (2 * n - s - 1) * (2 * n - s)
    den_c = (2 * n - s - 1) * (2 * n - s - 2)
    a = (Undefined(f"pole in A_{n}") if den_a == 0
         else Fraction((n - s - 1) * (n - l1) * (N - n), den_a))
    c = (Undefined(f"pole in C_{n}") if den_c == 0
         else Fraction(n * (n + N - s - 1) * (n - l2 - 1), den_c))
    return a, c


def r_poly(n: int, ell1: int, ell2: int) -> Poly:
    """R_n(x; l1, l2, y) in Q[x, y]."""
    if not 0 <= n <= min(ell1, ell2):
        raise OutOfRangeError(f"n={n} outside 0..min(l1, l2)")
    x, y = Poly.gens(2)
    out = cleared_hahn(n, ell1, ell2, x, y)
    assert not is_undefined(out)
    return out


def r_reflection_check(n: int, ell1: int, ell2: int) -> bool:
    """R_n(x; l1, l2, y) = (-1)^n (-l2)_n / (-l1)_n * R_n(y - x; l2, l1, y)."""
    x, y = Poly.gens(2)
    lhs = r_poly(n, ell1, ell2)
    rhs = r_poly(n, ell2, ell1).compose([y - x, y])
    return lhs == rhs.scale((-1) ** n * pochhammer(-ell2, n) / pochhammer(-ell1, n))


@dataclass(frozen=True)
class ConjectureOutcome:
    """Finite-instance evidence for the irreducibility pattern of R_n; not a proof."""
    n: int
    ell1: int
    ell2: int
    factor_expected: bool
    factor_found: bool
    irreducible: bool
    cofactor_irreducible: bool | None

    @property
    def consistent(self) -> bool:
        if self.factor_expected != self.factor_found:
            return False
        if not self.factor_expected:
            return self.irreducible
        return self.cofactor_irreducible in (True, None)


def conjecture_check(n: int, ell1: int, ell2: int) -> ConjectureOutcome:
    """Test whether R_n is irreducible, or (y - 2x) times an irreducible cofactor when l1 = l2 and n is odd.

    A constant cofactor (n = 1) is reported as ``None``.
    """
    from .factor import bivariate_irreducible

    x, y = Poly.gens(2)
    R = r_poly(n, ell1, ell2)
    q = R.divide_exact(y - 2 * x)
    cof = None
    if q is not None and q.total_degree() > 0:
        cof = bivariate_irreducible(q)
    return ConjectureOutcome(n, ell1, ell2, ell1 == ell2 and n % 2 == 1, q is not None,
                             bivariate_irreducible(R), cof)
