"""Exact dense univariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction` values stored constant term
first.  A :class:`Poly` is immutable and hashable, so it can be used as a
cache key by the root isolation code.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence

from .errors import UndefinedGcdError

__all__ = [
    "Poly",
    "to_rat",
    "rat_str",
    "poly_mul",
    "poly_derivative",
    "hadamard",
    "poly_gcd",
    "poly_squarefree",
    "poly_gcd_squarefree",
    "poly_shift",
    "poly_eval",
    "poly_shift_eval",
    "squarefree_decomposition",
    "integer_coeffs",
    "int_taylor_shift",
]


def to_rat(x) -> Fraction:
    """Coerce ints, Fractions and decimal-rational strings ("-22/3") to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        # gmpy2.mpz / mpq
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def rat_str(x) -> str:
    """Decimal-rational string encoding used in every JSON document."""
    return str(to_rat(x))


class Poly:
    """Immutable dense polynomial with rational coefficients.

    ``Poly([1, 4, 1])`` is 1 + 4t + t^2.  The zero polynomial has no stored
    coefficients and degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, cs: Sequence[Fraction]) -> "Poly":
        # cs must already be Fractions; trailing zeros are stripped here
        p = object.__new__(cls)
        cs = list(cs)
        while cs and cs[-1] == 0:
            cs.pop()
        p.coeffs = tuple(cs)
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        p = cls.const(lead)
        for r in roots:
            p = p * cls([-to_rat(r), 1])
        return p

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    # ring operations
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = Fraction(other)
            if c == 0:
                return Poly()
            return Poly._raw([c * a for a in self.coeffs])
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        return poly_divmod(self, _coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, _coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, _coerce(other))[1]

    def __call__(self, x):
        return poly_eval(self, x)

    # convenience wrappers
    def derivative(self) -> "Poly":
        return poly_derivative(self)

    def shift(self, k) -> "Poly":
        return poly_shift(self, k)

    def hadamard(self, other: "Poly") -> "Poly":
        return hadamard(self, other)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * (1 / self.lead)

    def primitive(self) -> "Poly":
        """Integer primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        ints = integer_coeffs(self)
        g = abs(reduce(math.gcd, ints))
        if ints[-1] < 0:
            g = -g
        return Poly._raw([Fraction(c // g) for c in ints])

    def sign_at_infinity(self, negative: bool = False) -> int:
        if not self.coeffs:
            return 0
        s = 1 if self.lead > 0 else -1
        if negative and self.degree % 2:
            s = -s
        return s

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Poly":
        if not isinstance(data, list):
            raise ValueError("polynomial JSON must be an array of coefficient strings")
        return cls(to_rat(c) for c in data)


def _coerce(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    return None


def poly_mul(f: Poly, g: Poly) -> Poly:
    if not f.coeffs or not g.coeffs:
        return Poly()
    a, b = f.coeffs, g.coeffs
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return Poly._raw(out)


def poly_derivative(f: Poly) -> Poly:
    return Poly._raw([i * c for i, c in enumerate(f.coeffs)][1:])


def hadamard(f: Poly, g: Poly) -> Poly:
    """Coefficientwise product, truncated at min(deg f, deg g)."""
    return Poly._raw([a * b for a, b in zip(f.coeffs, g.coeffs)])


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if g is None or g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f.coeffs)
    dg = g.degree
    lead = g.lead
    if len(rem) - 1 < dg:
        return Poly(), f
    quot = [Fraction(0)] * (len(rem) - dg)
    gc = g.coeffs
    for k in range(len(rem) - 1 - dg, -1, -1):
        q = rem[k + dg] / lead
        quot[k] = q
        if q:
            for i in range(dg + 1):
                rem[k + i] -= q * gc[i]
    return Poly._raw(quot), Poly._raw(rem[:dg])


def integer_coeffs(f: Poly) -> list[int]:
    """Scale f by the lcm of its denominators; returns plain ints."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in f.coeffs]


def _content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def int_prem(a: list[int], b: list[int]) -> list[int]:
    """A positive multiple of (a mod b) for integer coefficient lists, made primitive."""
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    alc = abs(lc)
    sgn = 1 if lc > 0 else -1
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        top = a[-1]
        a = [alc * c for c in a]
        for i in range(db + 1):
            a[k + i] -= sgn * top * b[i]
        while a and a[-1] == 0:
            a.pop()
        g = _content(a)
        if g > 1:
            a = [c // g for c in a]
    return a


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """gcd normalised to the primitive integer part with positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise UndefinedGcdError("gcd(0, 0) is undefined")
    a = integer_coeffs(f)
    b = integer_coeffs(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, int_prem(a, b)
    return Poly(a).primitive()


def poly_squarefree(f: Poly) -> Poly:
    """f / gcd(f, f'), normalised like :func:`poly_gcd`."""
    if f.is_zero():
        raise UndefinedGcdError("squarefree part of the zero polynomial")
    if f.degree <= 0:
        return Poly.const(1)
    g = poly_gcd(f, f.derivative())
    return (f // g).primitive()


def poly_gcd_squarefree(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    return poly_gcd(f, g), poly_squarefree(f)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: f = c * prod q_i^i with the q_i squarefree and coprime.

    Returns the nonconstant factors as (q_i, i) pairs.
    """
    if f.is_zero():
        raise UndefinedGcdError("squarefree decomposition of the zero polynomial")
    out = []
    if f.degree <= 0:
        return out
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f // a
    c = fp // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def poly_eval(f: Poly, x):
    x = to_rat(x)
    acc = Fraction(0)
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def int_taylor_shift(a: list[int], k: int) -> list[int]:
    """Coefficients of p(t + k) for integer p and integer k; O(d^2) in place."""
    a = list(a)
    d = len(a) - 1
    if k == 0 or d < 1:
        return a
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            a[j] += k * a[j + 1]
    return a


def poly_shift(f: Poly, k) -> Poly:
    """f(t + k), exact."""
    k = to_rat(k)
    if f.degree < 1 or k == 0:
        return f
    a = list(f.coeffs)
    d = len(a) - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            a[j] += k * a[j + 1]
    return Poly._raw(a)


def poly_shift_eval(f: Poly, *, shift=None, eval=None):
    """Either f(t + shift) as a polynomial or f(eval) as a rational."""
    if (shift is None) == (eval is None):
        raise ValueError("give exactly one of shift= or eval=")
    if shift is not None:
        return poly_shift(f, shift)
    return poly_eval(f, eval)
