"""Multivariate polynomials over the rationals in canonical exponent-map form."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import as_fraction


class DimensionError(ValueError):
    pass


def grlex_key(exp: tuple[int, ...]) -> tuple:
    return (sum(exp), exp)


class Poly:
    """Polynomial in ``nvars`` variables with Fraction coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients, so two polynomials
    are equal exactly when their term maps are equal.  Instances are treated
    as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise DimensionError(f"exponent {exp} does not have {nvars} entries")
                c = as_fraction(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        c = as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def gens(cls, nvars: int) -> list["Poly"]:
        return [cls.var(i, nvars) for i in range(nvars)]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "Poly":
        """Univariate polynomial from coefficients listed lowest degree first."""
        return cls(1, {(i,): c for i, c in enumerate(coeffs)})

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Poly":
        if isinstance(c, Poly):
            return NotImplemented
        return self.scale(1 / as_fraction(c))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self.terms == Poly.const(other, self.nvars).terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, i: int = 0) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def coeffs(self) -> list[Fraction]:
        """Univariate coefficient list, lowest degree first."""
        if self.nvars != 1:
            raise DimensionError("coeffs() needs a univariate polynomial")
        out = [Fraction(0)] * (self.degree() + 1)
        for (e,), c in self.terms.items():
            out[e] = c
        return out

    # -- evaluation and substitution --------------------------------------
    def __call__(self, *point):
        return self.eval(point)

    def eval(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [as_fraction(v) for v in point]
        powers: list[dict[int, Fraction]] = [{0: Fraction(1)} for _ in pt]
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = pt[i] ** e
                    term *= cache[e]
            total += term
        return total

    def compose(self, subs: Sequence["Poly"]) -> "Poly":
        """Substitute ``subs[i]`` for variable ``i``; all substitutes share one ring."""
        if len(subs) != self.nvars:
            raise DimensionError("need one substitute per variable")
        if not subs:
            return self
        m = subs[0].nvars
        if any(s.nvars != m for s in subs):
            raise DimensionError("substitutes live in different rings")
        cache: list[dict[int, Poly]] = [{0: Poly.one(m), 1: s} for s in subs]

        def power(i: int, e: int) -> Poly:
            c = cache[i]
            if e not in c:
                c[e] = power(i, e - 1) * subs[i]
            return c[e]

        out = Poly.zero(m)
        for exp, c in self.terms.items():
            term = Poly.const(c, m)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def shift(self, offsets: Sequence) -> "Poly":
        """p(x + offsets)."""
        gens = Poly.gens(self.nvars)
        return self.compose([g + o for g, o in zip(gens, offsets)])

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Reinterpret variable ``i`` as variable ``positions[i]`` of a bigger ring."""
        out = {}
        for exp, c in self.terms.items():
            e = [0] * nvars
            for i, k in enumerate(exp):
                e[positions[i]] += k
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return Poly(nvars, out)

    # -- content and division ---------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self/c primitive with integer coefficients."""
        from math import gcd

        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-coefficient primitive part with positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return self / c

    def divide_exact(self, divisor: "Poly") -> "Poly | None":
        """Quotient q with self == q*divisor, or None when divisor does not divide self."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lexp, lc = divisor.leading_term()
        rem = self
        quot: dict[tuple[int, ...], Fraction] = {}
        while rem.terms:
            rexp, rc = rem.leading_term()
            if any(a < b for a, b in zip(rexp, lexp)):
                return None
            qexp = tuple(a - b for a, b in zip(rexp, lexp))
            qc = rc / lc
            quot[qexp] = qc
            rem = rem - Poly._raw(self.nvars, {qexp: qc}) * divisor
        return Poly._raw(self.nvars, quot)

    def divides(self, other: "Poly") -> bool:
        return other.divide_exact(self) is not None

    def derivative(self, i: int = 0) -> "Poly":
        out = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return Poly._raw(self.nvars, out)

    # -- output -----------------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Poly":
        nvars = int(obj["nvars"])
        terms = {}
        for t in obj["terms"]:
            exp = tuple(int(e) for e in t["exp"])
            if exp in terms:
                raise ValueError(f"duplicate exponent {exp}")
            terms[exp] = Fraction(int(t["num"]), int(t["den"]))
        return cls(nvars, terms)

    @classmethod
    def from_json(cls, text: str) -> "Poly":
        return cls.from_json_obj(json.loads(text))

    def format(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = ["x"] if self.nvars == 1 else [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.format()})"


def poly_arith(op: str, p: Poly, q) -> Poly:
    """Dispatch by name; used by the command line and the tests."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: Poly, point: Iterable) -> Fraction:
    return p.eval(list(point))


def rising(p: Poly, k: int) -> Poly:
    """Symbolic Pochhammer (p)_k = p(p+1)...(p+k-1)."""
    out = Poly.one(p.nvars)
    for t in range(k):
        out = out * (p + t)
    return out


def linear_roots_product(roots: Iterable[int], nvars: int = 1, var: int = 0) -> Poly:
    x = Poly.var(var, nvars)
    out = Poly.one(nvars)
    for r in roots:
        out = out * (x - r)
    return out
