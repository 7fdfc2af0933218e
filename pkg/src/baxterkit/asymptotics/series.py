"""Truncated power series in x = 1/n with Fraction coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Series = list  # list[Fraction], index = power of x


def s_mul(a: Sequence, b: Sequence, order: int) -> Series:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += x * y
    return out


def s_add(a: Sequence, b: Sequence, order: int) -> Series:
    out = [Fraction(0)] * (order + 1)
    for i in range(order + 1):
        if i < len(a):
            out[i] += a[i]
        if i < len(b):
            out[i] += b[i]
    return out


def s_scale(a: Sequence, c, order: int) -> Series:
    return [Fraction(c) * a[i] if i < len(a) else Fraction(0) for i in range(order + 1)]


def s_inv(a: Sequence, order: int) -> Series:
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    out = [Fraction(0)] * (order + 1)
    out[0] = 1 / Fraction(a[0])
    for k in range(1, order + 1):
        acc = sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
        out[k] = -acc * out[0]
    return out


def binom_series(nu, order: int) -> Series:
    """(1 + x)^nu for rational nu."""
    nu = Fraction(nu)
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, order + 1):
        c = c * (nu - k + 1) / k
        out.append(c)
    return out


def shift_one(a: Sequence, order: int) -> Series:
    """Re-expand sum a_i n^-i at n + 1: (n+1)^-i = x^i (1 + x)^-i."""
    out = [Fraction(0)] * (order + 1)
    for i, c in enumerate(a[: order + 1]):
        if c == 0:
            continue
        if i == 0:
            out[0] += c
            continue
        for k, b in enumerate(binom_series(-i, order - i)):
            out[i + k] += c * b
    return out


def poly_in_x(p, top: int, order: int) -> Series:
    """x^top * p(n) as a series in x = 1/n (requires deg p <= top)."""
    out = [Fraction(0)] * (order + 1)
    for k, c in enumerate(p.coeffs):
        m = top - k
        if 0 <= m <= order:
            out[m] += c
    return out
