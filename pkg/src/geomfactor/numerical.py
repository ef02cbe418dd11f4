"""Numerical monoids, with closed forms for arithmetic-sequence generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import NamedTuple, Sequence

from .core import GeomFactorError, NotMember


class NotArithmetic(GeomFactorError, ValueError):
    """The generators are not an arithmetic sequence n, n+d, ..., n+kd with k < n."""


@dataclass(frozen=True)
class NumericalMonoid:
    generators: tuple[int, ...]
    params: tuple[int, int, int] | None = None

    def __post_init__(self):
        gens = tuple(sorted(set(self.generators)))
        if not gens or gens[0] < 1:
            raise ValueError("generators must be positive integers")
        if reduce(gcd, gens) != 1:
            raise ValueError(f"generators {gens} do not have gcd 1")
        object.__setattr__(self, "generators", gens)
        if self.params is None:
            object.__setattr__(self, "params", _detect_arithmetic(gens))

    @classmethod
    def arithmetic(cls, n: int, d: int, k: int) -> NumericalMonoid:
        if n < 1 or d < 0 or k < 0:
            raise ValueError("need n >= 1, d >= 0, k >= 0")
        if k > n - 1:
            raise ValueError(f"k = {k} exceeds n - 1 = {n - 1}")
        if k > 0 and d == 0:
            raise ValueError("d must be positive when k > 0")
        return cls(tuple(n + i * d for i in range(k + 1)), (n, d, k) if k else None)

    @classmethod
    def from_generators(cls, generators: Sequence[int]) -> NumericalMonoid:
        return cls(tuple(int(g) for g in generators))

    @property
    def is_trivial(self) -> bool:
        return self.generators[0] == 1

    def __str__(self):
        return "<" + ", ".join(map(str, self.generators)) + ">"


def _detect_arithmetic(gens: tuple[int, ...]) -> tuple[int, int, int] | None:
    if len(gens) < 2:
        return None
    n, d, k = gens[0], gens[1] - gens[0], len(gens) - 1
    if k > n - 1 or any(g != n + i * d for i, g in enumerate(gens)):
        return None
    return n, d, k


class ClosedForms(NamedTuple):
    rho: Fraction
    delta: frozenset[int]
    catenary: int


def nm_closed_forms(N: NumericalMonoid) -> ClosedForms:
    if N.is_trivial:
        raise NotArithmetic(f"{N} is N_0: rho = 1, delta empty, catenary 0")
    if N.params is None:
        raise NotArithmetic(f"{N} is not generated by an arithmetic sequence with k < n")
    n, d, k = N.params
    return ClosedForms(Fraction(n + d * k, n), frozenset({d}), -(-n // k) + d)


def _member_table(N: NumericalMonoid, limit: int) -> list[bool]:
    reach = [False] * (limit + 1)
    reach[0] = True
    for x in range(1, limit + 1):
        reach[x] = any(g <= x and reach[x - g] for g in N.generators)
    return reach


def nm_member(N: NumericalMonoid, x: int) -> bool:
    if x < 0:
        return False
    return _member_table(N, x)[x]


def nm_frobenius(N: NumericalMonoid) -> int:
    """Largest gap, found by sweeping until min(generators) consecutive members."""
    if N.is_trivial:
        return -1
    g0 = N.generators[0]
    reach = [True]
    run, x = 1, 0
    while run < g0:
        x += 1
        hit = any(g <= x and reach[x - g] for g in N.generators)
        reach.append(hit)
        run = run + 1 if hit else 0
    return x - g0


def nm_length_set(N: NumericalMonoid, x: int) -> frozenset[int]:
    """All factorization lengths of ``x``, by a DP over lengths reachable per value."""
    if not nm_member(N, x):
        raise NotMember(f"{x} is not in {N}")
    lengths: list[set[int]] = [set() for _ in range(x + 1)]
    lengths[0].add(0)
    for g in N.generators:
        for y in range(g, x + 1):
            if lengths[y - g]:
                lengths[y].update(length + 1 for length in lengths[y - g])
    return frozenset(lengths[x])
