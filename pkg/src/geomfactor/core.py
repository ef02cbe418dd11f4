"""Exact arithmetic on the cyclic rational semirings S_r = <r^n | n >= 0>.

Rationals are plain :class:`fractions.Fraction` values.  A factorization is a
finitely supported map ``exponent -> coefficient`` standing for the formal sum
``sum(c * r**e)`` of atoms.  The two canonical normal forms (minimum and
maximum length) are computed by modular digit extraction, which doubles as the
membership test.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union


class GeomFactorError(Exception):
    """Base class for all errors raised by this package."""


class ZeroDenominator(GeomFactorError, ZeroDivisionError):
    pass


class NegativeRational(GeomFactorError, ValueError):
    pass


class NotMember(GeomFactorError, ValueError):
    pass


class NotAtomic(GeomFactorError, ValueError):
    pass


class Unsupported(GeomFactorError, ValueError):
    pass


class InvalidTarget(GeomFactorError, ValueError):
    pass


class UniqueFactorization(GeomFactorError, ValueError):
    pass


class _Infinity:
    """Order-theoretic +infinity, comparable with ints and Fractions."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("geomfactor.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()

Extended = Union[int, Fraction, _Infinity]


# ---------------------------------------------------------------------------
# rationals


def make_rational(p: int, q: int = 1) -> Fraction:
    """Return the reduced nonnegative fraction ``p/q``."""
    if q == 0:
        raise ZeroDenominator(f"zero denominator in {p}/{q}")
    value = Fraction(p, q)
    if value < 0:
        raise NegativeRational(f"{p}/{q} is negative")
    return value


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a nonnegative Fraction."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    value = Fraction(value)
    if value < 0:
        raise NegativeRational(f"{value} is negative")
    return value


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        p, _, q = text.partition("/")
        return make_rational(int(p), int(q))
    return make_rational(int(text), 1)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def format_extended(v: Extended) -> str:
    """``"p/q"`` for finite values, ``"inf"`` otherwise."""
    if v is INF:
        return "inf"
    return format_rational(v)


# ---------------------------------------------------------------------------
# semirings


class SemiringClass(enum.Enum):
    FACTORIAL_INTEGER = "factorial"
    ATOMIC_NON_INTEGER = "atomic"
    ANTIMATTER = "antimatter"


@dataclass(frozen=True)
class CyclicSemiring:
    """The Puiseux monoid generated by the powers of ``r``."""

    r: Fraction

    def __post_init__(self):
        r = Fraction(self.r)
        if r <= 0:
            raise NegativeRational(f"r must be positive, got {r}")
        object.__setattr__(self, "r", r)

    @property
    def a(self) -> int:
        return self.r.numerator

    @property
    def b(self) -> int:
        return self.r.denominator

    @property
    def kind(self) -> SemiringClass:
        if self.b == 1:
            return SemiringClass.FACTORIAL_INTEGER
        if self.a == 1:
            return SemiringClass.ANTIMATTER
        return SemiringClass.ATOMIC_NON_INTEGER

    @property
    def is_atomic(self) -> bool:
        return self.kind is not SemiringClass.ANTIMATTER

    @property
    def is_integral(self) -> bool:
        return self.b == 1

    @property
    def is_bf(self) -> bool:
        # bounded factorization iff r >= 1 (for atomic S_r)
        return self.is_atomic and self.r >= 1

    @property
    def difference(self) -> int:
        """The common gap |n(r) - d(r)| of every non-singleton length set."""
        return abs(self.a - self.b)

    def atom(self, exponent: int) -> Fraction:
        return self.r**exponent

    def atoms(self, max_exponent: int) -> list[Fraction]:
        if self.is_integral:
            return [Fraction(1)]
        return [self.r**i for i in range(max_exponent + 1)]

    def __str__(self):
        return f"S_{format_rational(self.r)}"


def classify(r) -> CyclicSemiring:
    return CyclicSemiring(as_rational(r))


def require_atomic(S: CyclicSemiring) -> None:
    if not S.is_atomic:
        raise NotAtomic(f"{S} is antimatter: it has no atoms")


# ---------------------------------------------------------------------------
# factorizations


class Factorization(Mapping):
    """Immutable finitely supported map ``exponent -> positive coefficient``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            e, c = int(e), int(c)
            if e < 0 or c < 0:
                raise ValueError(f"invalid term {e}: {c}")
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = tuple(sorted(acc.items()))
        self._hash = None

    @classmethod
    def from_bundle(cls, exponents: Iterable[int]) -> Factorization:
        """Build from a multiset of exponents, one entry per atom."""
        acc: dict[int, int] = {}
        for e in exponents:
            acc[e] = acc.get(e, 0) + 1
        return cls(acc)

    def __getitem__(self, e):
        for k, c in self._terms:
            if k == e:
                return c
        raise KeyError(e)

    def get(self, e, default=0):
        for k, c in self._terms:
            if k == e:
                return c
        return default

    def __iter__(self) -> Iterator[int]:
        return (k for k, _ in self._terms)

    def __len__(self):
        return len(self._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Factorization):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self == Factorization(other)
        return NotImplemented

    def __lt__(self, other):
        return self._terms < other._terms

    def __repr__(self):
        inner = ", ".join(f"{e}: {c}" for e, c in self._terms)
        return f"Factorization({{{inner}}})"

    def __add__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return Factorization(list(self._terms) + list(other.items()))

    def __sub__(self, other):
        acc = dict(self._terms)
        for e, c in other.items():
            left = acc.get(e, 0) - c
            if left < 0:
                raise ValueError("subtraction leaves a negative coefficient")
            acc[e] = left
        return Factorization(acc)

    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    @property
    def length(self) -> int:
        return sum(c for _, c in self._terms)

    @property
    def top(self) -> int:
        """Largest exponent in the support (-1 for the empty factorization)."""
        return self._terms[-1][0] if self._terms else -1

    def divides(self, other: Mapping) -> bool:
        return all(other.get(e, 0) >= c for e, c in self._terms)

    def shifted(self, by: int) -> Factorization:
        return Factorization((e + by, c) for e, c in self._terms)

    def to_json(self) -> dict[str, str]:
        return {str(e): str(c) for e, c in self._terms}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> Factorization:
        return cls((int(e), int(c)) for e, c in data.items())


EMPTY = Factorization()


def evaluate(S: CyclicSemiring, z: Mapping[int, int]) -> Fraction:
    require_atomic(S)
    return sum((c * S.r**e for e, c in z.items()), Fraction(0))


def fact_length(z: Mapping[int, int]) -> int:
    return sum(z.values())


def fact_gcd(z: Mapping[int, int], z2: Mapping[int, int]) -> Factorization:
    return Factorization((e, min(c, z2.get(e, 0))) for e, c in z.items())


def fact_distance(z: Mapping[int, int], z2: Mapping[int, int]) -> int:
    common = fact_length(fact_gcd(z, z2))
    return max(fact_length(z) - common, fact_length(z2) - common)


# ---------------------------------------------------------------------------
# normal forms


def _denominator_exponent(x: Fraction, b: int) -> int | None:
    """Smallest m with x * b**m integral, or None if d(x) has a prime not dividing b."""
    den = rest = x.denominator
    g = gcd(rest, b)
    while g > 1:
        rest //= g
        g = gcd(rest, b)
    if rest != 1:
        return None
    m, power = 0, 1
    while power % den:
        m += 1
        power *= b
    return m


def _digits_top_down(S: CyclicSemiring, x: Fraction) -> Factorization:
    """Factorization with every coefficient at exponent >= 1 below d(r).

    Each step reads the top digit off ``x * d(r)**m`` modulo d(r), with m the
    least exponent clearing the denominator of x.
    """
    a, b = S.a, S.b
    digits: dict[int, int] = {}
    while x:
        m = _denominator_exponent(x, b)
        if m is None:
            raise NotMember(f"{format_rational(x)} is not in {S}")
        if m == 0:
            digits[0] = int(x)
            break
        scaled = x.numerator * (b**m // x.denominator)
        alpha = scaled * pow(a, -m, b) % b
        x -= alpha * S.r**m
        if x < 0:
            raise NotMember(f"negative remainder while factoring in {S}")
        digits[m] = alpha
    return Factorization(digits)


def _digits_bottom_up(S: CyclicSemiring, x: Fraction) -> Factorization:
    """Factorization with every coefficient below n(r); requires r > 1."""
    a, b = S.a, S.b
    digits: dict[int, int] = {}
    i = 0
    while x:
        if x < 1:
            # S_r meets (0, 1) trivially when r > 1
            raise NotMember(f"remainder below 1 while factoring in {S}")
        m = _denominator_exponent(x, b)
        if m is None:
            raise NotMember(f"{format_rational(x)} is not in {S}")
        scaled = x.numerator * (b**m // x.denominator)
        alpha = scaled * pow(b, -m, a) % a
        if alpha > x:
            raise NotMember(f"negative remainder while factoring in {S}")
        if alpha:
            digits[i] = alpha
        x = (x - alpha) / S.r
        i += 1
    return Factorization(digits)


def _integral_form(S: CyclicSemiring, x: Fraction) -> Factorization:
    if x.denominator != 1:
        raise NotMember(f"{format_rational(x)} is not in {S}")
    return Factorization({0: int(x)})


def min_length_factorization(S: CyclicSemiring, x) -> Factorization:
    """The unique factorization of ``x`` of minimum length."""
    require_atomic(S)
    x = as_rational(x)
    if S.is_integral:
        return _integral_form(S, x)
    if S.r > 1:
        return _digits_bottom_up(S, x)
    return _digits_top_down(S, x)


def max_length_factorization(S: CyclicSemiring, x) -> Factorization | _Infinity:
    """The unique maximum-length factorization, or INF when L(x) is unbounded."""
    require_atomic(S)
    x = as_rational(x)
    if S.is_integral:
        return _integral_form(S, x)
    if S.r > 1:
        return _digits_top_down(S, x)
    z = _digits_top_down(S, x)
    if any(c >= S.a for c in z.values()):
        return INF
    return z


def member(S: CyclicSemiring, x) -> bool:
    require_atomic(S)
    try:
        min_length_factorization(S, x)
    except NotMember:
        return False
    return True


def divides(S: CyclicSemiring, x, y) -> bool:
    """Whether ``x`` divides ``y`` in S_r, i.e. ``y - x`` lies in S_r."""
    diff = Fraction(as_rational(x)) - as_rational(y)
    if diff > 0:
        return False
    return member(S, -diff)


def has_unique_factorization(S: CyclicSemiring, x) -> bool:
    zmin = min_length_factorization(S, x)
    if S.is_integral:
        return True
    if S.r > 1:
        return zmin == max_length_factorization(S, x)
    return all(c < S.a for c in zmin.values())


def is_min_form(S: CyclicSemiring, z: Mapping[int, int]) -> bool:
    """Coefficient bounds characterizing the minimum-length factorization."""
    if S.r > 1:
        return all(c < S.a for c in z.values())
    return all(c < S.b for e, c in z.items() if e >= 1)


def is_max_form(S: CyclicSemiring, z: Mapping[int, int]) -> bool:
    """Coefficient bounds characterizing the maximum-length factorization (r > 1)."""
    return all(c < S.b for e, c in z.items() if e >= 1)


def trade_down(S: CyclicSemiring, z: Mapping[int, int], i: int) -> Factorization:
    """Replace d(r) copies of r^i by n(r) copies of r^(i-1)."""
    if i < 1:
        raise ValueError("no atom below r^0")
    return Factorization(z) - {i: S.b} + {i - 1: S.a}


def trade_up(S: CyclicSemiring, z: Mapping[int, int], i: int) -> Factorization:
    """Replace n(r) copies of r^i by d(r) copies of r^(i+1)."""
    return Factorization(z) - {i: S.a} + {i + 1: S.b}


# ---------------------------------------------------------------------------
# length sets


@dataclass(frozen=True)
class LengthSet:
    """The arithmetic progression ``{start + j*difference : 0 <= j < count}``."""

    start: int
    difference: int
    count: int | _Infinity

    def __post_init__(self):
        if self.start < 0 or self.difference < 0:
            raise ValueError(f"invalid progression {self}")
        if self.count is not INF and self.count < 1:
            raise ValueError("a length set is never empty")
        if self.difference == 0 and self.count != 1:
            raise ValueError("difference 0 forces a singleton")
        if self.count == 1 and self.difference:
            object.__setattr__(self, "difference", 0)

    @classmethod
    def singleton(cls, length: int) -> LengthSet:
        return cls(length, 0, 1)

    @property
    def min(self) -> int:
        return self.start

    @property
    def max(self) -> int | _Infinity:
        if self.count is INF:
            return INF
        return self.start + (self.count - 1) * self.difference

    @property
    def is_finite(self) -> bool:
        return self.count is not INF

    def __contains__(self, n) -> bool:
        if n < self.start or n > self.max:
            return False
        if self.difference == 0:
            return n == self.start
        return (n - self.start) % self.difference == 0

    def truncated(self, limit: int) -> frozenset[int]:
        """Elements not exceeding ``limit``."""
        if self.difference == 0:
            return frozenset({self.start} if self.start <= limit else ())
        top = limit if self.max is INF else min(limit, self.max)
        return frozenset(range(self.start, top + 1, self.difference))

    def as_set(self) -> frozenset[int]:
        if not self.is_finite:
            raise ValueError("infinite length set")
        return self.truncated(self.max)

    def delta(self) -> frozenset[int]:
        return frozenset({self.difference}) if self.difference else frozenset()

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "difference": self.difference,
            "count": "inf" if self.count is INF else self.count,
        }
