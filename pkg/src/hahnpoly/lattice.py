"""Lattice domains and index sets for the multivariate hypergeometric distribution.

For ell = (l_1, ..., l_{d+1}) and N the domain is the simplex
{x in N_0^d : |x| <= N} with corners cut off by x_i <= l_i and |x| >= N - l_{d+1}.
All sets are returned as tuples sorted in graded-lex order.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import comb
from typing import Iterable, Iterator, Sequence

MultiIndex = tuple[int, ...]


def grlex(points: Iterable[MultiIndex]) -> tuple[MultiIndex, ...]:
    return tuple(sorted(points, key=lambda p: (sum(p), p)))


def tail(v: Sequence[int], j: int) -> int:
    """|v^j| = v_j + ... + v_end with 1-based j."""
    return sum(v[j - 1:])


def head(v: Sequence[int], j: int) -> int:
    """|v_bar_j| = v_1 + ... + v_j."""
    return sum(v[:j])


@dataclass(frozen=True)
class LatticeParams:
    ell: tuple[int, ...]
    N: int

    def __post_init__(self):
        object.__setattr__(self, "ell", tuple(int(v) for v in self.ell))
        if len(self.ell) < 2:
            raise ValueError("ell needs at least two entries")
        if self.N < 1 or min(self.ell) < 1:
            raise ValueError("ell and N must be positive")
        if max(self.ell) > self.N:
            raise ValueError(f"every l_i must be <= N, got {self.ell}, N={self.N}")
        for i in range(len(self.ell)):
            for j in range(i + 1, len(self.ell)):
                if self.ell[i] + self.ell[j] < self.N:
                    raise ValueError(f"need l_i + l_j >= N, got {self.ell}, N={self.N}")

    @classmethod
    def is_valid(cls, ell: Sequence[int], N: int) -> bool:
        try:
            cls(tuple(ell), N)
        except ValueError:
            return False
        return True

    @property
    def d(self) -> int:
        return len(self.ell) - 1

    @property
    def total(self) -> int:
        return sum(self.ell)

    @property
    def ell_min(self) -> int:
        return min(self.ell)

    def zhat_a(self, j: int, nu: Sequence[int]) -> int:
        """|ell^{j+1}| - 2|nu^{j+1}| for 1 <= j <= d."""
        if not 1 <= j <= self.d:
            raise IndexError(f"j={j} outside 1..{self.d}")
        return tail(self.ell, j + 1) - 2 * tail(nu, j + 1)

    def in_V(self, x: Sequence[int]) -> bool:
        s = sum(x)
        return (all(0 <= xi <= li for xi, li in zip(x, self.ell))
                and self.N - self.ell[-1] <= s <= self.N)

    def in_CH(self, nu: Sequence[int]) -> bool:
        return all(0 <= v <= li for v, li in zip(nu, self.ell)) and sum(nu) <= self.N

    def in_H(self, nu: Sequence[int]) -> bool:
        s = sum(nu)
        if not (self.in_CH(nu) and s <= self.total - self.N):
            return False
        return all(nu[j - 1] <= self.zhat_a(j, nu) for j in range(1, self.d + 1))

    @cached_property
    def V(self) -> tuple[MultiIndex, ...]:
        return grlex(x for x in _box(self.ell[:-1]) if self.in_V(x))

    @cached_property
    def CH(self) -> tuple[MultiIndex, ...]:
        return grlex(nu for nu in _box(self.ell[:-1]) if sum(nu) <= self.N)

    @cached_property
    def H(self) -> tuple[MultiIndex, ...]:
        return tuple(nu for nu in self.CH if self.in_H(nu))

    def __str__(self) -> str:
        return f"ell={','.join(map(str, self.ell))} N={self.N}"


def _box(bounds: Sequence[int]) -> Iterator[MultiIndex]:
    return product(*(range(b + 1) for b in bounds))


def enum_V(p: LatticeParams) -> tuple[MultiIndex, ...]:
    return p.V


def enum_H(p: LatticeParams) -> tuple[MultiIndex, ...]:
    return p.H


def enum_CH(p: LatticeParams) -> tuple[MultiIndex, ...]:
    return p.CH


def contains(points: Sequence[MultiIndex], item: Sequence[int]) -> bool:
    """Membership in a grlex-sorted tuple by binary search."""
    item = tuple(item)
    key = (sum(item), item)
    keys = [(sum(q), q) for q in points]
    i = bisect_left(keys, key)
    return i < len(points) and points[i] == item


def card_V_formula(p: LatticeParams) -> int:
    d, N = p.d, p.N
    return comb(N + d, d) - sum(comb(N - lk + d - 1, d) for lk in p.ell)


def _check_d2(p: LatticeParams, nu1: int):
    if p.d != 2:
        raise ValueError("the height function is defined for d = 2 only")
    if not 0 <= nu1 <= p.ell[0]:
        raise ValueError(f"nu1={nu1} outside 0..{p.ell[0]}")


def height(nu1: int, p: LatticeParams) -> int:
    """Number of admissible nu2 in column nu1 of H."""
    _check_d2(p, nu1)
    l1, l2, l3 = p.ell
    return min(l2, l3, (l2 + l3 - nu1) // 2, l1 + l2 + l3 - p.N - nu1, p.N - nu1) + 1


def height_piecewise(nu1: int, p: LatticeParams) -> list[int]:
    """Values given by every piece of the explicit three-range description that covers nu1.

    Ranges overlap at their endpoints, so more than one value can come back;
    all of them should agree with :func:`height`.
    """
    _check_d2(p, nu1)
    l1, l2, l3 = p.ell
    gap = abs(l3 - l2)
    excess = abs(2 * p.N - p.total)
    out = []
    if nu1 <= gap:
        out.append(min(l2, l3) + 1)
    if gap <= nu1 <= l1 - excess:
        out.append(min(l2, l3) - (nu1 - gap + 1) // 2 + 1)
    if l1 - excess <= nu1 <= l1:
        out.append(p.total - p.N - nu1 + 1 if p.total <= 2 * p.N else p.N - nu1 + 1)
    return out


def d2_grid(max_ell: int = 6, max_N: int = 8) -> list[LatticeParams]:
    """All valid d = 2 parameter sets with l_i <= max_ell and N <= max_N."""
    out = []
    for N in range(1, max_N + 1):
        for ell in product(range(1, max_ell + 1), repeat=3):
            if LatticeParams.is_valid(ell, N):
                out.append(LatticeParams(ell, N))
    return out


def grid(d: int, max_ell: int, max_N: int) -> list[LatticeParams]:
    out = []
    for N in range(1, max_N + 1):
        for ell in product(range(1, max_ell + 1), repeat=d + 1):
            if LatticeParams.is_valid(ell, N):
                out.append(LatticeParams(ell, N))
    return out
