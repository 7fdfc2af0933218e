"""Ratio-ansatz asymptotic expansions for order 1 and 2 P-recurrences.

The ratio r(n) = a_{n+1}/a_n is sought as rho (1 + d_1/n + ... + d_eta/n^eta);
substituting into the recurrence and matching powers of 1/n gives one linear
equation per coefficient.  From the ratio series we recover

    a_n ~ C rho^n n^nu (1 + l_1/n + l_2/n^2 + ...)

and the expansion of R^2(a)_n = a_n a_{n+2} / a_{n+1}^2.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt
from typing import Optional

from ..errors import (
    CriterionNotApplicable,
    DegenerateClassError,
    DomainError,
    InconclusiveError,
    UnsupportedClassError,
)
from ..precursive import PRecurrence, iter_terms
from .series import binom_series, poly_in_x, s_add, s_inv, s_mul, s_scale, shift_one

PRECISION_ENV = "BAXTERKIT_DECIMAL_PRECISION"
DEFAULT_PRECISION = 40


@dataclass(frozen=True)
class RatioExpansion:
    """r(n) ~ rho (1 + d_1/n + ... + d_eta/n^eta)."""

    rho: Fraction
    d: tuple[Fraction, ...]
    eta: int

    def series(self) -> list[Fraction]:
        return [Fraction(1), *self.d]

    def approx(self, n) -> Fraction:
        n = Fraction(n)
        return self.rho * (1 + sum(c / n ** (i + 1) for i, c in enumerate(self.d)))

    def to_json(self) -> dict:
        return {"rho": str(self.rho), "eta": self.eta, "d": [str(c) for c in self.d]}


@dataclass(frozen=True)
class SequenceExpansion:
    """a_n ~ C rho^n n^nu (1 + l_1/n + ...)."""

    rho: Fraction
    nu: Fraction
    ell: tuple[Fraction, ...]
    leading_constant_estimate: Optional[Decimal] = None

    def to_json(self) -> dict:
        d = {"rho": str(self.rho), "nu": str(self.nu), "ell": [str(c) for c in self.ell]}
        if self.leading_constant_estimate is not None:
            d["leading_constant_estimate"] = str(self.leading_constant_estimate)
        return d


@dataclass(frozen=True)
class R2Expansion:
    """R^2(a)_n = 1 + c/n^alpha + ... + o(1/n^beta)."""

    c: Fraction
    alpha: int
    tail: tuple[Fraction, ...]  # coefficients of orders alpha+1 .. beta
    beta: int

    def coefficients(self) -> list[Fraction]:
        """Coefficients of 1/n^k for k = 1..beta."""
        return [Fraction(0)] * (self.alpha - 1) + [self.c, *self.tail]

    def to_json(self) -> dict:
        return {"c": str(self.c), "alpha": self.alpha, "beta": self.beta, "tail": [str(t) for t in self.tail]}


def _top_degree(rec: PRecurrence) -> int:
    return max(p.degree for p in rec.coeff_polys)


def _leading_coeffs(rec: PRecurrence) -> list[Fraction]:
    top = _top_degree(rec)
    return [p[top] for p in rec.coeff_polys]


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def characteristic_roots(rec: PRecurrence) -> list[Fraction]:
    """Rational roots of the characteristic equation, by decreasing absolute value."""
    if rec.order not in (1, 2):
        raise UnsupportedClassError("only order 1 and 2 recurrences are supported")
    cs = _leading_coeffs(rec)
    if rec.order == 1:
        c0, c1 = cs
        if c1 == 0:
            raise UnsupportedClassError("leading coefficient has lower degree than the others")
        return [c0 / c1]
    c0, c1, c2 = cs
    if c2 == 0:
        raise UnsupportedClassError("leading coefficient has lower degree than the others")
    disc = c1 * c1 + 4 * c2 * c0
    if disc == 0:
        raise DegenerateClassError("repeated characteristic root")
    root = _rational_sqrt(disc)
    if root is None:
        kind = "non-real" if disc < 0 else "irrational"
        raise UnsupportedClassError(f"{kind} characteristic roots (discriminant {disc})")
    roots = [(c1 + root) / (2 * c2), (c1 - root) / (2 * c2)]
    roots.sort(key=lambda r: (-abs(r), -r))
    return roots


def dominant_root(rec: PRecurrence) -> Fraction:
    roots = characteristic_roots(rec)
    if len(roots) > 1 and abs(roots[0]) == abs(roots[1]):
        raise DegenerateClassError("no strictly dominant characteristic root")
    return roots[0]


def _residual(rec: PRecurrence, rho: Fraction, s: list, order: int) -> list:
    top = _top_degree(rec)
    A = [poly_in_x(p, top, order) for p in rec.coeff_polys]
    if rec.order == 1:
        return s_add(s_scale(s_mul(A[1], s, order), rho, order), s_scale(A[0], -1, order), order)
    s1 = shift_one(s, order)
    e = s_scale(s_mul(A[2], s_mul(s, s1, order), order), rho * rho, order)
    e = s_add(e, s_scale(s_mul(A[1], s, order), -rho, order), order)
    return s_add(e, s_scale(A[0], -1, order), order)


def ratio_residual(rec: PRecurrence, rx: RatioExpansion, order: Optional[int] = None) -> list[Fraction]:
    """1/n-expansion of p_2 r(n) r(n+1) - p_1 r(n) - p_0 (x^top scaled), truncated."""
    order = rx.eta if order is None else order
    return _residual(rec, rx.rho, rx.series() + [Fraction(0)] * (order - rx.eta), order)


def ratio_expansion(rec: PRecurrence, rho, eta: int) -> RatioExpansion:
    """Solve for d_1..d_eta order by order."""
    rho = Fraction(rho)
    if rec.order not in (1, 2):
        raise UnsupportedClassError("only order 1 and 2 recurrences are supported")
    if eta < 0:
        raise DomainError("eta must be nonnegative")
    if rho == 0:
        raise UnsupportedClassError("rho = 0 is outside the ratio ansatz")
    cs = _leading_coeffs(rec)
    if _residual(rec, rho, [Fraction(1)], 0)[0] != 0:
        raise DomainError(f"{rho} is not a characteristic root")
    if rec.order == 1:
        pivot = rho * cs[1]
    else:
        pivot = rho * (2 * cs[2] * rho - cs[1])
    if pivot == 0:
        raise DegenerateClassError("zero pivot: characteristic roots are not distinct")
    s = [Fraction(1)]
    for k in range(1, eta + 1):
        s.append(Fraction(0))
        e = _residual(rec, rho, s, k)[k]
        s[k] = -e / pivot
    return RatioExpansion(rho, tuple(s[1:]), eta)


def sequence_expansion(rx: RatioExpansion) -> SequenceExpansion:
    """nu = d_1 and l_1..l_{eta-1}; l_k is fixed by the 1/n^(k+1) coefficient of the ratio."""
    nu = rx.d[0] if rx.eta >= 1 else Fraction(0)
    s = rx.series()
    ells = [Fraction(1)]
    for k in range(1, rx.eta):
        order = k + 1
        ells.append(Fraction(0))
        lhs = s_mul(binom_series(nu, order), shift_one(ells, order), order)
        rhs = s_mul(s, ells, order)
        e = lhs[order] - rhs[order]
        ells[k] = e / k
    return SequenceExpansion(rx.rho, nu, tuple(ells[1:]))


def ratio_from_sequence(sx: SequenceExpansion, eta: int) -> RatioExpansion:
    """Regenerate d_1..d_eta from nu and l_1..l_{eta-1}."""
    t = [Fraction(1), *sx.ell[: max(0, eta - 1)]]
    r = s_mul(s_mul(binom_series(sx.nu, eta), shift_one(t, eta), eta), s_inv(t, eta), eta)
    return RatioExpansion(sx.rho, tuple(r[1: eta + 1]), eta)


def r2_expansion(rx: RatioExpansion) -> R2Expansion:
    """R^2(a)_n = r(n+1)/r(n) expanded through 1/n^eta."""
    eta = rx.eta
    if eta < 2:
        raise DomainError("r2_expansion needs eta >= 2")
    s = rx.series()
    ratio = s_mul(shift_one(s, eta), s_inv(s, eta), eta)
    coeffs = ratio[1:]
    alpha = next((i + 1 for i, c in enumerate(coeffs) if c != 0), None)
    if alpha is None:
        raise InconclusiveError(f"R^2 - 1 vanishes through order {eta}; raise eta")
    return R2Expansion(coeffs[alpha - 1], alpha, tuple(coeffs[alpha:]), eta)


def asymptotic_order(r2: R2Expansion) -> int:
    """floor((beta - alpha)/2) + 1, valid when c > 0 and alpha >= 2."""
    if r2.c <= 0 or r2.alpha < 2:
        raise CriterionNotApplicable(f"needs c > 0 and alpha >= 2 (got c = {r2.c}, alpha = {r2.alpha})")
    return (r2.beta - r2.alpha) // 2 + 1


def decimal_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_PRECISION
    try:
        p = int(raw)
    except ValueError:
        raise DomainError(f"{PRECISION_ENV} must be an integer, got {raw!r}")
    if p < 5:
        raise DomainError(f"{PRECISION_ENV} must be at least 5")
    return p


def _to_decimal(x: Fraction) -> Decimal:
    return Decimal(x.numerator) / Decimal(x.denominator)


def estimate_leading_constant(rec: PRecurrence, sx: SequenceExpansion, n_probe: int,
                              precision: Optional[int] = None) -> Decimal:
    """a_n / (rho^n n^nu (1 + sum l_i n^-i)) at n = n_probe, in high-precision decimal.

    Diagnostic only: the result is an approximation of C, not an exact value.
    """
    if n_probe < rec.start_index:
        raise DomainError("n_probe precedes the first term")
    a_n = None
    for n, v in iter_terms(rec):
        if n == n_probe:
            a_n = Fraction(v)
            break
    n = Fraction(n_probe)
    corr = 1 + sum(c / n ** (i + 1) for i, c in enumerate(sx.ell))
    exact_part = a_n / (sx.rho ** n_probe * corr)
    with localcontext() as ctx:
        ctx.prec = precision or decimal_precision()
        val = _to_decimal(exact_part)
        if sx.nu != 0:
            val = val / (Decimal(n_probe).ln() * _to_decimal(sx.nu)).exp()
        return +val
