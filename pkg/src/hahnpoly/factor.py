"""Factorization over the rationals at desk scale.

Univariate polynomials are factored by Zassenhaus' method: square-free
decomposition, factorization modulo a small prime (distinct-degree plus
Cantor-Zassenhaus splitting), Hensel lifting past a coefficient bound, and
exhaustive recombination of the lifted factors.  Bivariate irreducibility is
decided by a specialization certificate when one exists, otherwise by
Kronecker substitution and exhaustive recombination.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt

from .poly import Poly, DimensionError

MAX_UNIVARIATE_DEGREE = 12
MAX_BIVARIATE_DEGREE = 8


class UnsupportedDegreeError(ValueError):
    pass


@dataclass
class Factorization:
    content: Fraction
    factors: list[tuple[Poly, int]] = field(default_factory=list)

    def expand(self) -> Poly:
        nvars = self.factors[0][0].nvars if self.factors else 1
        out = Poly.const(self.content, nvars)
        for f, m in self.factors:
            out = out * f ** m
        return out

    def degrees(self) -> list[int]:
        return sorted(f.total_degree() for f, m in self.factors for _ in range(m))


# ---------------------------------------------------------------------------
# dense integer polynomials, coefficient lists lowest degree first

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zcontent(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _zprimitive(a):
    g = _zcontent(a)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _zdivexact(a, b):
    """Exact quotient a/b over Z, or None."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None if any(a) else []
    q = [0] * (len(a) - db)
    lb = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c % lb:
            return None
        c //= lb
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    if any(a[:db]):
        return None
    return q


def _qdivmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / b[-1]
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def _zgcd(a, b):
    """Primitive gcd of two integer polynomials (primitive remainder sequence)."""
    a, b = _zprimitive(a), _zprimitive(b)
    while b:
        _, r = _qdivmod([Fraction(c) for c in a], [Fraction(c) for c in b])
        if not r:
            return b
        den = 1
        for c in r:
            den = den * c.denominator // gcd(den, c.denominator)
        a, b = b, _zprimitive([int(c * den) for c in r])
    return a


def _zderiv(a):
    return [i * a[i] for i in range(1, len(a))]


def _squarefree_decomposition(f):
    """Yun's algorithm: list of (g_i, i) with f = lc * prod g_i^i, g_i primitive."""
    fq = [Fraction(c) for c in f]
    df = _qderiv(fq)
    a0 = _qgcd(fq, df)
    b, _ = _qdivmod(fq, a0)
    c, _ = _qdivmod(df, a0)
    out = []
    i = 1
    while len(b) > 1:
        d = _qsub(c, _qderiv(b))
        a = _qgcd(b, d)
        if len(a) > 1:
            out.append((_zprimitive(_frac_to_int(a)), i))
        b, _ = _qdivmod(b, a)
        c, _ = _qdivmod(d, a)
        i += 1
    return out


def _qderiv(a):
    return [i * a[i] for i in range(1, len(a))]


def _qsub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return [Fraction(x) for x in out]


def _qgcd(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    lc = a[-1]
    return [x / lc for x in a]


def _frac_to_int(a):
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in a]


# ---------------------------------------------------------------------------
# polynomials over GF(p)

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, p):
    return _ptrim([c % p for c in a])


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pmul(a, b, p):
    return _pmod(_zmul(a, b), p)


def _pdivmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _ptrim(a)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _ptrim(q), _ptrim(a[:db])


def _pmonic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return _pmonic(a, p) if a else a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pdivmod(_pmul(base, base, p), mod, p)[1]
    return result


def _pegcd(a, b, p):
    """s, t with s*a + t*b = 1 mod p for coprime a, b."""
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _distinct_degree(f, p):
    out = []
    h = [0, 1]
    i = 0
    f = list(f)
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _ppowmod(h, p, f, p)
        g = _pgcd(f, _psub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, i))
            f = _pdivmod(f, g, p)[0]
            h = _pdivmod(h, f, p)[1]
    if len(f) > 1:
        out.append((_pmonic(f, p), len(f) - 1))
    return out


def _equal_degree(f, d, p, rng):
    if len(f) - 1 == d:
        return [f]
    n = len(f) - 1
    while True:
        a = _ptrim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = _psub(_ppowmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = _pgcd(f, b, p)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, p, rng) + _equal_degree(_pdivmod(f, g, p)[0], d, p, rng)


def _factor_mod_p(f, p, rng):
    f = _pmonic(_pmod(f, p), p)
    out = []
    for g, d in _distinct_degree(f, p):
        out.extend(_equal_degree(g, d, p, rng))
    return out


def _primes():
    n = 3
    while True:
        if all(n % q for q in range(3, isqrt(n) + 1, 2)):
            yield n
        n += 2


# ---------------------------------------------------------------------------
# Hensel lifting and recombination

def _hensel_two(f, g, h, p, k):
    """Lift monic g*h = f mod p to mod p**k (f monic modulo p**k)."""
    s, t = _pegcd(g, h, p)
    modulus = p
    for _ in range(1, k):
        e = _psub(f, _zmul(g, h), modulus * p)
        e = [c // modulus % p for c in e]
        e = _ptrim(e)
        if e:
            q, dg = _pdivmod(_pmul(e, t, p), g, p)
            dh = _padd(_pmul(e, s, p), _pmul(q, h, p), p)
            g = _padd_scaled(g, dg, modulus)
            h = _padd_scaled(h, dh, modulus)
        modulus *= p
    return g, h


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _padd_scaled(a, b, scale):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + scale * (b[i] if i < len(b) else 0) for i in range(n)]


def _hensel_multi(f, factors, p, k):
    if len(factors) == 1:
        return [_pmod(f, p ** k)]
    mid = len(factors) // 2
    g = [1]
    for u in factors[:mid]:
        g = _pmul(g, u, p)
    h = [1]
    for u in factors[mid:]:
        h = _pmul(h, u, p)
    G, H = _hensel_two(f, g, h, p, k)
    P = p ** k
    return _hensel_multi(_pmod(G, P), factors[:mid], p, k) + _hensel_multi(_pmod(H, P), factors[mid:], p, k)


def _symmetric(a, m):
    half = m // 2
    return [c - m if c > half else c for c in (x % m for x in a)]


def _factor_squarefree(f, rng):
    """Irreducible factors of a primitive square-free integer polynomial."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    lc = f[-1]
    best = None
    tried = 0
    for p in _primes():
        if lc % p == 0:
            continue
        fp = _pmod(f, p)
        if len(_pgcd(fp, _pmod(_zderiv(f), p), p)) > 1:
            continue
        facs = _factor_mod_p(f, p, rng)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 5:
            break
    p, facs = best
    if len(facs) == 1:
        return [f]
    norm2 = isqrt(sum(c * c for c in f)) + 1
    bound = 2 * abs(lc) * (2 ** n) * norm2
    k = 1
    while p ** k <= bound:
        k += 1
    P = p ** k
    fmonic = _pmod([c * pow(lc, -1, P) for c in f], P)
    lifted = _hensel_multi(fmonic, facs, p, k)

    found = []
    remaining = list(range(len(lifted)))
    size = 1
    g = list(f)
    while 2 * size <= len(remaining):
        hit = False
        for subset in combinations(remaining, size):
            cand = [g[-1]]
            for i in subset:
                cand = _pmod(_zmul(cand, lifted[i]), P)
            cand = _zprimitive(_symmetric(cand, P))
            q = _zdivexact(g, cand)
            if q is not None:
                found.append(cand)
                g = q
                remaining = [i for i in remaining if i not in subset]
                hit = True
                break
        if not hit:
            size += 1
    found.append(_zprimitive(g))
    return found


def factor_int_coeffs(coeffs: list[int], seed: int = 0):
    """Irreducible factorization of a nonzero integer polynomial: (sign*content, [(factor, mult)])."""
    f = _trim([int(c) for c in coeffs])
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    cont = _zcontent(f)
    if f[-1] < 0:
        cont = -cont
    f = [c // cont for c in f]
    rng = random.Random(seed)
    out = []
    # powers of x first; they confuse nothing but are cheap to strip
    shift = 0
    while f[shift] == 0:
        shift += 1
    if shift:
        out.append(([0, 1], shift))
        f = f[shift:]
    if len(f) > 1:
        for g, m in _squarefree_decomposition(f):
            for h in _factor_squarefree(g, rng):
                out.append((_zprimitive(h), m))
    return cont, out


def _sort_key(item):
    f, m = item
    return (len(f), [abs(c) for c in reversed(f)], list(reversed(f)), m)


def univariate_factor(p: Poly) -> Factorization:
    """Complete factorization over Q of a univariate polynomial of degree at most 12."""
    if p.nvars != 1:
        raise DimensionError("univariate_factor needs nvars == 1")
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    deg = p.degree()
    if deg > MAX_UNIVARIATE_DEGREE:
        raise UnsupportedDegreeError(f"degree {deg} exceeds the supported bound {MAX_UNIVARIATE_DEGREE}")
    return _univariate_factor_any(p)


def _univariate_factor_any(p: Poly) -> Factorization:
    c = p.content()
    ints = [int(x / c) for x in p.coeffs()]
    sign, facs = factor_int_coeffs(ints)
    merged: dict[tuple[int, ...], int] = {}
    for f, m in facs:
        merged[tuple(f)] = merged.get(tuple(f), 0) + m
    items = sorted(merged.items(), key=_sort_key)
    return Factorization(c * sign, [(Poly.from_coeffs(list(f)), m) for f, m in items])


# ---------------------------------------------------------------------------
# bivariate irreducibility

def _as_poly_in(p: Poly, var: int) -> dict[int, list[Fraction]]:
    """Coefficients of p as a polynomial in ``var`` over Q[other]."""
    other = 1 - var
    out: dict[int, dict[int, Fraction]] = {}
    for exp, c in p.terms.items():
        out.setdefault(exp[var], {})[exp[other]] = c
    res = {}
    for k, d in out.items():
        lst = [Fraction(0)] * (max(d) + 1)
        for e, c in d.items():
            lst[e] = c
        res[k] = lst
    return res


def _content_in(p: Poly, var: int) -> list[Fraction]:
    g: list[Fraction] = []
    for coeffs in _as_poly_in(p, var).values():
        g = coeffs if not g else _qgcd(g, coeffs)
        if len(g) == 1:
            break
    return g


def _specialize(p: Poly, var: int, value: int) -> Poly:
    subs = [Poly.var(0, 1), Poly.var(0, 1)]
    subs[1 - var] = Poly.const(value, 1)
    return p.compose(subs)


def _squarefree_univariate(q: Poly) -> bool:
    coeffs = [int(x) for x in (q / q.content()).coeffs()]
    return len(_zgcd(coeffs, _zderiv(coeffs))) == 1


def _is_irreducible_univariate(q: Poly) -> bool:
    if q.degree() <= 0:
        return False
    fac = _univariate_factor_any(q)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def bivariate_irreducible(p: Poly, max_specializations: int = 12) -> bool:
    """True iff p (two variables, total degree <= 8) has no nontrivial factorization over Q."""
    if p.nvars != 2:
        raise DimensionError("bivariate_irreducible needs nvars == 2")
    deg = p.total_degree()
    if deg > MAX_BIVARIATE_DEGREE:
        raise UnsupportedDegreeError(f"total degree {deg} exceeds the supported bound {MAX_BIVARIATE_DEGREE}")
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for var in (0, 1):
        if p.degree(var) == 0:
            # polynomial in one variable only
            only = p.compose([Poly.var(0, 1), Poly.var(0, 1)])
            return _is_irreducible_univariate(only)
    for var in (0, 1):
        if len(_content_in(p, var)) > 1:
            return False
    # specialization certificate: p(x, y0) irreducible of full degree in x
    for var in (0, 1):
        dvar = p.degree(var)
        for i in range(max_specializations):
            value = (i + 1) // 2 * (1 if i % 2 else -1) if i else 0
            q = _specialize(p, var, value)
            if q.degree() != dvar or not _squarefree_univariate(q):
                continue
            if _is_irreducible_univariate(q):
                return True
    return _kronecker_irreducible(p)


def _kronecker_irreducible(p: Poly) -> bool:
    D = p.degree(0) + 1
    image = {}
    for (i, j), c in p.terms.items():
        image[(i + D * j,)] = c
    u = Poly(1, image)
    fac = _univariate_factor_any(u)
    pieces = [f for f, m in fac.factors for _ in range(m)]
    r = len(pieces)
    deg = p.total_degree()
    for size in range(1, r // 2 + 1):
        for subset in combinations(range(r), size):
            prod = Poly.one(1)
            for i in subset:
                prod = prod * pieces[i]
            cand = Poly(2, {(e % D, e // D): c for (e,), c in prod.terms.items()})
            if 0 < cand.total_degree() < deg and p.divide_exact(cand) is not None:
                return False
    return True
