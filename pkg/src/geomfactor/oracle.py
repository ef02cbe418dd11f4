"""Brute-force ground truth over a finite list of positive rational atoms.

Nothing here knows about normal forms: factorizations are found by exhaustive
bounded search, so results can be used to check the closed forms elsewhere in
the package.  Factorizations are keyed by atom *index*; for the atom list
``[r**0, ..., r**E]`` of a cyclic semiring the index is the exponent.
"""

from __future__ import annotations

import os
import sys
from itertools import combinations_with_replacement
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import Factorization, GeomFactorError, fact_distance


class Truncated(GeomFactorError):
    """An exact answer needs the full factorization set, but it was cut off."""


@dataclass(frozen=True)
class OracleBudget:
    max_exponent: int = 12
    max_length: int = 40
    max_bundle: int = 8

    def __post_init__(self):
        if self.max_exponent < 0 or self.max_length < 1 or self.max_bundle < 1:
            raise ValueError(f"invalid budget {self}")

    @classmethod
    def parse(cls, text: str) -> OracleBudget:
        """Parse ``"max_exponent,max_length,max_bundle"`` or ``"default"``."""
        if text.strip() == "default":
            return cls()
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"budget needs three comma-separated integers, got {text!r}")
        return cls(*parts)

    @classmethod
    def from_env(cls, var: str = "GEOMFACTOR_BUDGET") -> OracleBudget:
        text = os.environ.get(var)
        return cls.parse(text) if text else cls()

    def to_json(self) -> dict[str, int]:
        return {
            "max_exponent": self.max_exponent,
            "max_length": self.max_length,
            "max_bundle": self.max_bundle,
        }


class Enumeration(NamedTuple):
    factorizations: tuple[Factorization, ...]
    truncated: bool


class LengthReport(NamedTuple):
    lengths: frozenset[int]
    truncated: bool


class OmegaReport(NamedTuple):
    value: int
    certified: bool
    witness: Factorization | None


class _Scaled:
    """Atoms and targets cleared of denominators."""

    def __init__(self, atoms: Sequence[Fraction]):
        atoms = [Fraction(a) for a in atoms]
        if not atoms:
            raise ValueError("need at least one atom")
        if any(a <= 0 for a in atoms):
            raise ValueError("atoms must be positive")
        if len(set(atoms)) != len(atoms):
            raise ValueError("atoms must be distinct")
        self.atoms = atoms
        self.scale = reduce(lcm, (a.denominator for a in atoms), 1)
        self.values = [int(a * self.scale) for a in atoms]
        n = len(self.values)
        self.suffix_gcd = [0] * (n + 1)
        self.suffix_max = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            self.suffix_gcd[i] = gcd(self.suffix_gcd[i + 1], self.values[i])
            self.suffix_max[i] = max(self.suffix_max[i + 1], self.values[i])

    def bounded_by(self, target: int, cap: int) -> bool:
        # no factorization of `target` can be longer than target / min(values)
        return target // min(self.values) <= cap

    def target(self, x: Fraction) -> int | None:
        t = Fraction(x) * self.scale
        return int(t) if t.denominator == 1 else None


_INT64_SAFE = 1 << 62


def _solutions_python(sc: _Scaled, target: int, cap: int) -> tuple[list[tuple[int, ...]], bool]:
    values, sgcd, smax = sc.values, sc.suffix_gcd, sc.suffix_max
    n = len(values)
    out: list[tuple[int, ...]] = []
    coeffs = [0] * n
    truncated = False
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))

    def walk(i: int, rest: int, room: int) -> None:
        nonlocal truncated
        if rest == 0:
            out.append(tuple(coeffs))
            return
        if i == n or rest % sgcd[i]:
            return
        if rest > room * smax[i]:
            truncated = True
            return
        v = values[i]
        if rest // v > room:
            truncated = True
        for c in range(min(rest // v, room), -1, -1):
            coeffs[i] = c
            walk(i + 1, rest - c * v, room - c)
        coeffs[i] = 0

    walk(0, target, cap)
    return out, truncated


def _solutions_numpy(sc: _Scaled, target: int, cap: int) -> tuple[np.ndarray, bool]:
    # breadth-first over atoms; rows stay in canonical (lexicographically
    # descending) order because each parent expands into descending coefficients
    values, sgcd, smax = sc.values, sc.suffix_gcd, sc.suffix_max
    n = len(values)
    rows = np.zeros((1, 0), dtype=np.int64)
    rest = np.array([target], dtype=np.int64)
    used = np.zeros(1, dtype=np.int64)
    truncated = False
    for i, v in enumerate(values):
        room = cap - used
        by_value = rest // v
        truncated |= bool(np.any(by_value > room))
        top = np.minimum(by_value, room)
        reps = top + 1
        parent = np.repeat(np.arange(len(rest)), reps)
        offset = np.arange(int(reps.sum()), dtype=np.int64) - np.repeat(np.cumsum(reps) - reps, reps)
        c = top[parent] - offset
        rest = rest[parent] - c * v
        used = used[parent] + c
        if i == n - 1:
            keep = rest == 0
        else:
            keep = rest % sgcd[i + 1] == 0
            reachable = rest <= (cap - used) * smax[i + 1]
            truncated |= bool(np.any(keep & ~reachable))
            keep &= reachable
        rows = np.column_stack([rows[parent[keep]], c[keep]])
        rest, used = rest[keep], used[keep]
    return rows, truncated


def solution_matrix(
    atoms: Sequence[Fraction], x, budget: OracleBudget | None = None
) -> tuple[np.ndarray, bool]:
    """Coefficient vectors of all factorizations of ``x``, one row each.

    Rows come in canonical order: atom index ascending, coefficient descending.
    """
    budget = budget or OracleBudget()
    sc = _Scaled(atoms)
    x = Fraction(x)
    if x < 0:
        raise ValueError("target must be nonnegative")
    target = sc.target(x)
    n = len(sc.values)
    if target is None:
        return np.zeros((0, n), dtype=np.int64), False
    if target == 0:
        return np.zeros((1, n), dtype=np.int64), False
    cap = budget.max_length
    if max(target, cap * sc.suffix_max[0]) < _INT64_SAFE:
        rows, truncated = _solutions_numpy(sc, target, cap)
    else:
        found, truncated = _solutions_python(sc, target, cap)
        rows = np.array(found, dtype=object).reshape(len(found), n)
    return rows, truncated and not sc.bounded_by(target, cap)


def enumerate_factorizations(
    atoms: Sequence[Fraction], x, budget: OracleBudget | None = None
) -> Enumeration:
    """All factorizations of ``x`` of length at most ``budget.max_length``.

    ``truncated`` is set when some branch was cut because of the length cap,
    i.e. when longer factorizations may exist.
    """
    rows, truncated = solution_matrix(atoms, x, budget)
    zs = tuple(Factorization((j, int(c)) for j, c in enumerate(row) if c) for row in rows)
    return Enumeration(zs, truncated)


def oracle_length_set(
    atoms: Sequence[Fraction], x, budget: OracleBudget | None = None
) -> LengthReport:
    """Lengths of all factorizations of ``x`` up to ``budget.max_length``.

    Memoized over (atom index, remaining value) so it stays cheap even when
    the factorization count is large.
    """
    budget = budget or OracleBudget()
    sc = _Scaled(atoms)
    x = Fraction(x)
    target = sc.target(x)
    if target is None:
        return LengthReport(frozenset(), False)
    values, sgcd, smax = sc.values, sc.suffix_gcd, sc.suffix_max
    n = len(values)
    cap = budget.max_length
    full = (1 << (cap + 1)) - 1
    memo: dict[tuple[int, int], tuple[int, bool]] = {}

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))

    def masks(i: int, rest: int) -> tuple[int, bool]:
        # bit l set <=> a factorization of `rest` over atoms[i:] of length l
        if rest == 0:
            return 1, False
        if i == n or rest % sgcd[i]:
            return 0, False
        key = (i, rest)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if rest > cap * smax[i]:
            memo[key] = (0, True)
            return 0, True
        v = values[i]
        acc, over = 0, False
        if i == n - 1:
            if rest % v == 0:
                c = rest // v
                if c <= cap:
                    acc = 1 << c
                else:
                    over = True
        else:
            for c in range(rest // v + 1):
                if c > cap:
                    over = True
                    break
                sub, sub_over = masks(i + 1, rest - c * v)
                over |= sub_over
                shifted = sub << c
                if shifted > full:
                    over = True
                acc |= shifted & full
        memo[key] = (acc, over)
        return acc, over

    mask, over = masks(0, target)
    lengths = frozenset(l for l in range(cap + 1) if mask >> l & 1)
    return LengthReport(lengths, over and not sc.bounded_by(target, cap))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.components = n

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        self.parent[ri] = rj
        self.components -= 1
        return True


def catenary_of(factorizations: Sequence[Factorization]) -> int:
    """Least N making the distance-<=N graph on the factorizations connected.

    Kruskal-style: pairwise distances in ascending order, merging components
    until one remains; the last merging distance is the answer.
    """
    zs = list(factorizations)
    if len(zs) <= 1:
        return 0
    edges = sorted(
        (fact_distance(zs[i], zs[j]), i, j)
        for i in range(len(zs))
        for j in range(i + 1, len(zs))
    )
    uf = _UnionFind(len(zs))
    for dist, i, j in edges:
        if uf.union(i, j) and uf.components == 1:
            return dist
    raise AssertionError("complete graph is always connected")


def _trades_by_size(sc: _Scaled, columns: Sequence[int], limit: int):
    """Yield ``(size, u, v)``: equal-valued atom multisets with disjoint supports.

    ``size = max(|u|, |v|)`` is the factorization distance the trade realizes.
    Grouped by size ascending, each unordered pair once.
    """
    by_value: dict[int, list[tuple[int, dict[int, int]]]] = {}
    for size in range(1, limit + 1):
        fresh = []
        for combo in combinations_with_replacement(columns, size):
            u: dict[int, int] = {}
            for j in combo:
                u[j] = u.get(j, 0) + 1
            value = sum(sc.values[j] * c for j, c in u.items())
            for other_size, v in by_value.get(value, ()):
                if not (u.keys() & v.keys()):
                    fresh.append((size, u, v))
            by_value.setdefault(value, []).append((size, u))
        yield size, fresh


def catenary_of_matrix(
    rows: np.ndarray, sc: _Scaled, max_trade: int | None = None, pairwise_up_to: int = 40
) -> int:
    """Exact catenary degree of the factorization set given as coefficient rows.

    An edge of length N joins z and z' exactly when ``z - gcd`` and
    ``z' - gcd`` form a trade of size N, so the distance-<=N graph is built by
    applying every trade of size <= N to every row that contains it.  Sets of
    at most ``pairwise_up_to`` factorizations use plain pairwise distances.
    """
    m = len(rows)
    if m <= 1:
        return 0
    if m <= pairwise_up_to or rows.dtype == object:
        zs = [Factorization((j, int(c)) for j, c in enumerate(row) if c) for row in rows]
        return catenary_of(zs)
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    keys = rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()
    order = np.argsort(keys)
    sorted_keys = keys[order]
    columns = [j for j in range(rows.shape[1]) if rows[:, j].any()]
    limit = max_trade or int(rows.sum(axis=1).max())
    src: list[np.ndarray] = []
    dst: list[np.ndarray] = []
    for size, trades in _trades_by_size(sc, columns, limit):
        for _, u, v in trades:
            ucols = list(u)
            mask = np.all(rows[:, ucols] >= [u[j] for j in ucols], axis=1)
            if not mask.any():
                continue
            moved = rows[mask].copy()
            for j, c in u.items():
                moved[:, j] -= c
            for j, c in v.items():
                moved[:, j] += c
            mkeys = moved.view(keys.dtype).ravel()
            pos = np.searchsorted(sorted_keys, mkeys)
            src.append(np.nonzero(mask)[0])
            dst.append(order[pos])
        if src:
            graph = coo_matrix(
                (np.ones(sum(len(e) for e in src)), (np.concatenate(src), np.concatenate(dst))),
                shape=(m, m),
            )
            count, _ = connected_components(graph, directed=False)
            if count == 1:
                return size
    raise Truncated(f"factorization graph not connected by trades of size <= {limit}")


def oracle_catenary(
    atoms: Sequence[Fraction], x, budget: OracleBudget | None = None
) -> int:
    rows, truncated = solution_matrix(atoms, x, budget)
    if truncated:
        raise Truncated(f"enumeration of Z({x}) was cut by the length budget")
    return catenary_of_matrix(rows, _Scaled(atoms))


def oracle_omega(
    atoms: Sequence[Fraction],
    x,
    budget: OracleBudget | None,
    divisibility_test: Callable[[Fraction, Fraction], bool],
    *,
    atoms_complete: bool = False,
    upper_bound: int | None = None,
    seeds: Sequence[Factorization] = (),
) -> OmegaReport:
    """Largest minimal bundle of atoms divisible by ``x`` within the budget.

    A bundle is a multiset of atom indices (at most ``max_bundle`` atoms, index
    at most ``max_exponent``) whose sum ``x`` divides while no proper
    sub-multiset sum does.  The search runs level by level and only extends
    bundles that ``x`` does not divide, since any extension of a divisible
    bundle is not minimal.

    ``certified`` is set when either the search provably exhausted every
    minimal bundle (``atoms_complete`` and the frontier died out), or the value
    found meets a proven ``upper_bound``.  ``seeds`` are extra candidate
    bundles (e.g. a known witness family) checked for minimality and counted.
    """
    budget = budget or OracleBudget()
    x = Fraction(x)
    pool = [Fraction(a) for a in atoms[: budget.max_exponent + 1]]
    atoms_complete = atoms_complete and len(pool) == len(atoms)
    cache: dict[Fraction, bool] = {}

    def div(bundle: Factorization) -> bool:
        y = sum((c * Fraction(atoms[e]) for e, c in bundle.items()), Fraction(0))
        hit = cache.get(y)
        if hit is None:
            hit = cache[y] = divisibility_test(x, y)
        return hit

    def minimal(bundle: Factorization) -> bool:
        return all(not div(bundle - {e: 1}) for e in bundle)

    best, witness = 0, None
    frontier = [Factorization()]
    exhausted = False
    for size in range(1, budget.max_bundle + 1):
        nxt = []
        for bundle in frontier:
            start = bundle.top if bundle else 0
            for e in range(start, len(pool)):
                grown = bundle + {e: 1}
                if div(grown):
                    if size > best and minimal(grown):
                        best, witness = size, grown
                else:
                    nxt.append(grown)
        frontier = nxt
        if not frontier:
            exhausted = True
            break

    for z in seeds:
        if z.length > best and div(z) and minimal(z):
            best, witness = z.length, z

    certified = (exhausted and atoms_complete) or (
        upper_bound is not None and best == upper_bound
    )
    return OmegaReport(best, certified, witness)
