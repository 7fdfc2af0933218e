"""Exact eventual-positivity certificates and interval enclosures by rational functions.

A polynomial P with positive leading coefficient is positive on n >= N as soon
as P(t + N) has nonnegative coefficients and P(N) > 0.  Both conditions are
preserved when N grows, so the least such N can be found by bisection below a
root bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence, Union

from ..polycore import Poly, int_taylor_shift, integer_coeffs

IntPoly = tuple  # tuple[int, ...], constant term first


def _trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _as_ints(P: Union[Poly, Sequence[int]]) -> tuple:
    if isinstance(P, Poly):
        return _trim(integer_coeffs(P))
    return _trim(int(c) for c in P)


def _shift_ok(a: tuple, n: int) -> bool:
    b = int_taylor_shift(list(a), n)
    return b[0] > 0 and all(c >= 0 for c in b)


def _root_bound(a: tuple) -> int:
    """Integer strictly above the absolute value of every complex root (Cauchy)."""
    lead = abs(a[-1])
    m = max((abs(c) for c in a[:-1]), default=0)
    return 1 + -(-m // lead)


def eventual_positive_from(P: Union[Poly, Sequence[int]], start: int = 0) -> Optional[int]:
    """Least N >= start with P(t + N) coefficientwise nonnegative and P(N) > 0.

    None when the leading coefficient is not positive (including P = 0).
    """
    a = _as_ints(P)
    if not a or a[-1] <= 0:
        return None
    if len(a) == 1:
        return start
    if _shift_ok(a, start):
        return start
    hi = max(_root_bound(a), start + 1)
    # gallop up from start, then bisect; the predicate is upward closed
    lo, step = start, 1
    while lo + step < hi:
        if _shift_ok(a, lo + step):
            hi = lo + step
            break
        lo += step
        step *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _shift_ok(a, mid):
            hi = mid
        else:
            lo = mid
    return hi


def nonnegative_from(P: Union[Poly, Sequence[int]], start: int = 0) -> Optional[int]:
    """Like eventual_positive_from, but the zero polynomial holds everywhere."""
    a = _as_ints(P)
    if not a:
        return start
    return eventual_positive_from(a, start)


# -- integer polynomial helpers ------------------------------------------------

def _imul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _iadd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return _trim(out)


def _iscale(a: tuple, k: int) -> tuple:
    return _trim(k * c for c in a)


def _ieval(a: tuple, n) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * n + c
    return acc


def _content(a: tuple) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


@dataclass(frozen=True)
class RatFunc:
    """num(n)/den(n) with integer coefficients; den has positive leading coefficient."""

    num: IntPoly
    den: IntPoly

    def __post_init__(self):
        num, den = _trim(self.num), _trim(self.den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if den[-1] < 0:
            num, den = _iscale(num, -1), _iscale(den, -1)
        g = math.gcd(_content(num), _content(den)) if num else _content(den)
        if g > 1:
            num = tuple(c // g for c in num)
            den = tuple(c // g for c in den)
        if not num:
            den = (1,)
        else:
            # cancel a common power of n
            k = 0
            while num[k] == 0 and den[k] == 0:
                k += 1
            if k:
                num, den = num[k:], den[k:]
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls((c.numerator,), (c.denominator,))

    @classmethod
    def from_poly(cls, p: Poly, den: Optional[Poly] = None) -> "RatFunc":
        # both sides are scaled by the same integer so the quotient is unchanged
        q = Poly([1]) if den is None else den
        scale = 1
        for c in (*p.coeffs, *q.coeffs):
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
        return cls(tuple(int(c * scale) for c in p.coeffs), tuple(int(c * scale) for c in q.coeffs))

    def __call__(self, n) -> Fraction:
        return Fraction(_ieval(self.num, n)) / _ieval(self.den, n)

    def shift(self, k: int) -> "RatFunc":
        """n -> n + k."""
        return RatFunc(tuple(int_taylor_shift(list(self.num), k)), tuple(int_taylor_shift(list(self.den), k)))

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        if self.den == other.den:
            return RatFunc(_iadd(self.num, other.num), self.den)
        return RatFunc(_iadd(_imul(self.num, other.den), _imul(other.num, self.den)), _imul(self.den, other.den))

    def __neg__(self):
        return RatFunc(_iscale(self.num, -1), self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return RatFunc(_imul(self.num, other.num), _imul(self.den, other.den))

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.const(other)
        return RatFunc(_imul(self.num, other.den), _imul(self.den, other.num))

    @property
    def degree_pair(self) -> tuple[int, int]:
        return len(self.num) - 1, len(self.den) - 1

    def positive_from(self, start: int = 0) -> Optional[int]:
        """Some N >= start with num(n)/den(n) > 0 for every n >= N, or None."""
        a = eventual_positive_from(self.num, start)
        if a is None:
            return None
        b = eventual_positive_from(self.den, start)
        return None if b is None else max(a, b)

    def to_json(self) -> dict:
        return {"num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        return cls(tuple(int(c) for c in data["num"]), tuple(int(c) for c in data["den"]))


@dataclass(frozen=True)
class Interval:
    """lo(n) <= value(n) <= hi(n) for every integer n >= valid_from."""

    lo: RatFunc
    hi: RatFunc
    valid_from: int

    def shift(self, k: int = 1) -> "Interval":
        return Interval(self.lo.shift(k), self.hi.shift(k), self.valid_from - k)

    @cached_property
    def positive_from(self) -> Optional[int]:
        """Index from which lo > 0 (hence the whole interval is positive)."""
        return self.lo.positive_from(self.valid_from)

    def _pos_start(self) -> int:
        p = self.positive_from
        if p is None:
            raise ValueError("interval is not eventually positive")
        return p

    def mul_pos(self, other: "Interval") -> "Interval":
        vf = max(self._pos_start(), other._pos_start())
        return Interval(self.lo * other.lo, self.hi * other.hi, vf)

    def div_pos(self, other: "Interval") -> "Interval":
        vf = max(self._pos_start(), other._pos_start())
        return Interval(self.lo / other.hi, self.hi / other.lo, vf)

    def square_pos(self) -> "Interval":
        return self.mul_pos(self)

    def add_const(self, c) -> "Interval":
        return Interval(self.lo + c, self.hi + c, self.valid_from)

    def to_json(self) -> dict:
        return {"lo": self.lo.to_json(), "hi": self.hi.to_json(), "valid_from": self.valid_from}
