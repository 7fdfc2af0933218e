"""Exact real-root isolation and certified interlacing verdicts.

Roots are isolated with classical Sturm chains over the integers and
rational bisection, so every verdict is backed by exact sign counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import DomainError
from .polycore import (
    Poly,
    int_prem,
    integer_coeffs,
    poly_gcd,
    poly_squarefree,
    squarefree_decomposition,
)

__all__ = [
    "SturmChain",
    "IsolatingInterval",
    "RootIsolation",
    "Relation",
    "RootWitness",
    "InterlaceVerdict",
    "FamilyVerdict",
    "isolate_real_roots",
    "is_real_rooted",
    "interlace_verdict",
    "check_family_sturm",
]


def _primitive_ints(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return a
    if g in (0, 1):
        return a
    return [c // g for c in a]


def _sign_at(a: list[int], num: int, den: int) -> int:
    # sign of sum a_i num^i den^(d-i), den > 0
    acc = a[-1]
    pw = den
    for c in reversed(a[:-1]):
        acc = acc * num + c * pw
        pw *= den
    return (acc > 0) - (acc < 0)


class SturmChain:
    """Sturm chain of a squarefree polynomial, with integer members."""

    def __init__(self, p: Poly):
        if p.degree < 1:
            raise DomainError("Sturm chain needs a nonconstant polynomial")
        p0 = _primitive_ints(integer_coeffs(p))
        if p0[-1] < 0:
            p0 = [-c for c in p0]
        p1 = _primitive_ints(integer_coeffs(p.derivative()))
        if p1[-1] < 0:
            p1 = [-c for c in p1]
        chain = [p0, p1]
        while len(chain[-1]) > 1:
            r = int_prem(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-c for c in r])
        self.poly = p
        self.chain = chain

    def _variations(self, signs) -> int:
        v = 0
        last = 0
        for s in signs:
            if s == 0:
                continue
            if last and s != last:
                v += 1
            last = s
        return v

    def variations(self, x: Fraction) -> int:
        num, den = x.numerator, x.denominator
        return self._variations(_sign_at(a, num, den) for a in self.chain)

    def variations_at_infinity(self, negative: bool) -> int:
        signs = []
        for a in self.chain:
            s = 1 if a[-1] > 0 else -1
            if negative and (len(a) - 1) % 2:
                s = -s
            signs.append(s)
        return self._variations(signs)

    def sign(self, x: Fraction) -> int:
        return _sign_at(self.chain[0], x.numerator, x.denominator)

    def count_open(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct roots in the open interval (lo, hi)."""
        return self.variations(lo) - self.variations(hi) - (self.sign(hi) == 0)

    def count_real(self) -> int:
        return self.variations_at_infinity(True) - self.variations_at_infinity(False)


@dataclass(frozen=True)
class IsolatingInterval:
    """Interval holding exactly one distinct root, or the exact root lo == hi.

    Non-degenerate intervals from isolate_real_roots have width at most 1 and
    endpoints that are not roots, so distinct intervals are disjoint as closed sets.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "multiplicity": self.multiplicity}


def _cauchy_pow2(p: Poly) -> Fraction:
    lead = abs(p.lead)
    bound = 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    e = max(0, math.ceil(math.log2(bound)) if bound > 1 else 0) + 1
    return Fraction(2) ** e


def _separation_bits(p: Poly) -> int:
    # Mahler-type lower bound on root separation of a squarefree integer polynomial,
    # returned as a bit count: sep >= 2^-bits.
    ints = integer_coeffs(p)
    d = max(1, len(ints) - 1)
    norm_bits = max(abs(c) for c in ints).bit_length() + math.ceil(math.log2(d + 1) / 2)
    return math.ceil((d + 2) / 2 * math.log2(d + 1)) + (d - 1) * norm_bits + 2


def _split_point(lo: Fraction, hi: Fraction) -> Fraction:
    if lo < 0 < hi:
        return Fraction(0)
    if lo >= 0:
        a, b = lo, hi
        neg = False
    else:
        a, b = -hi, -lo
        neg = True
    if a > 0 and b > 4 * a:
        m = Fraction(2) ** ((math.floor(math.log2(a)) + math.ceil(math.log2(b))) // 2)
        if not a < m < b:
            m = (a + b) / 2
    else:
        m = (a + b) / 2
    return -m if neg else m


@dataclass(frozen=True)
class RootIsolation:
    poly: Poly
    intervals: tuple[IsolatingInterval, ...]
    real_root_count_with_multiplicity: int
    squarefree: Poly = field(repr=False, compare=False, default=None)
    chain: Optional[SturmChain] = field(repr=False, compare=False, default=None)

    @property
    def is_real_rooted(self) -> bool:
        return self.real_root_count_with_multiplicity == self.poly.degree

    def refine(self, iv: IsolatingInterval) -> IsolatingInterval:
        """One bisection step; the root stays isolated."""
        if iv.exact:
            return iv
        m = _split_point(iv.lo, iv.hi)
        if self.chain.sign(m) == 0:
            return IsolatingInterval(m, m, iv.multiplicity)
        if self.chain.count_open(iv.lo, m) == 1:
            return IsolatingInterval(iv.lo, m, iv.multiplicity)
        return IsolatingInterval(m, iv.hi, iv.multiplicity)

    def refine_to_width(self, iv: IsolatingInterval, width) -> IsolatingInterval:
        width = Fraction(width)
        if width <= 0:
            raise DomainError("width must be positive")
        while not iv.exact and iv.width > width:
            iv = self.refine(iv)
        return iv

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "intervals": [iv.to_json() for iv in self.intervals],
            "real_root_count_with_multiplicity": self.real_root_count_with_multiplicity,
        }


@lru_cache(maxsize=4096)
def _chain_for(p: Poly) -> SturmChain:
    return SturmChain(p)


@lru_cache(maxsize=2048)
def isolate_real_roots(f: Poly) -> RootIsolation:
    """Isolating intervals, sorted increasingly, for all distinct real roots of f."""
    if f.is_zero():
        raise DomainError("cannot isolate the roots of the zero polynomial")
    sq = poly_squarefree(f)
    if sq.degree < 1:
        return RootIsolation(f, (), 0, sq, None)
    chain = _chain_for(sq)
    bound = _cauchy_pow2(sq)
    budget = _separation_bits(sq) + 4 * (bound.numerator.bit_length() + 8)
    found: list[tuple[Fraction, Fraction]] = []
    total = chain.count_open(-bound, bound)
    stack = [(-bound, bound, total, 0)]
    while stack:
        lo, hi, cnt, depth = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            found.append((lo, hi))
            continue
        if depth > budget:
            raise RuntimeError("root isolation exceeded its separation-bound budget")
        m = _split_point(lo, hi)
        left = chain.count_open(lo, m)
        if chain.sign(m) == 0:
            found.append((m, m))
            right = cnt - left - 1
        else:
            right = cnt - left
        stack.append((lo, m, left, depth + 1))
        stack.append((m, hi, right, depth + 1))
    found.sort()
    found = [(lo, hi) if lo == hi else _tidy(chain, lo, hi) for lo, hi in found]
    found = _pin_rational_roots(f, sq, found)
    mults = _multiplicities(f, sq, found)
    intervals = tuple(IsolatingInterval(lo, hi, k) for (lo, hi), k in zip(found, mults))
    return RootIsolation(f, intervals, sum(mults), sq, chain)


def _tidy(chain: SturmChain, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink to width <= 1 with endpoints that are not roots, so closed intervals are disjoint."""
    while hi - lo > 1:
        m = _split_point(lo, hi)
        if chain.sign(m) == 0:
            return m, m
        if chain.count_open(lo, m) == 1:
            hi = m
        else:
            lo = m
    if chain.sign(lo) == 0:
        step = (hi - lo) / 2
        while chain.count_open(lo, lo + step) or chain.sign(lo + step) == 0:
            step /= 2
        lo = lo + step
    if chain.sign(hi) == 0:
        step = (hi - lo) / 2
        while chain.count_open(hi - step, hi) or chain.sign(hi - step) == 0:
            step /= 2
        hi = hi - step
    return lo, hi


def _pin_rational_roots(f: Poly, sq: Poly, found):
    # linear squarefree factors give their root exactly
    linear = [sq] if sq.degree == 1 else []
    if sq.degree != f.degree:
        linear += [q for q, _ in squarefree_decomposition(f) if q.degree == 1]
    out = list(found)
    for q in linear:
        r = -q[0] / q[1]
        for i, (lo, hi) in enumerate(out):
            if lo < r < hi:
                out[i] = (r, r)
    return out


def _multiplicities(f: Poly, sq: Poly, found) -> list[int]:
    if sq.degree == f.degree:
        return [1] * len(found)
    factors = squarefree_decomposition(f)
    out = []
    for lo, hi in found:
        k = 0
        for q, i in factors:
            if lo == hi:
                hit = q(lo) == 0
            else:
                hit = _chain_for(q.primitive()).count_open(lo, hi) == 1
            if hit:
                k = i
                break
        assert k > 0
        out.append(k)
    return out


def is_real_rooted(f: Poly) -> bool:
    if f.is_zero():
        raise DomainError("real-rootedness of the zero polynomial is undefined")
    return isolate_real_roots(f).is_real_rooted


class Relation(str, Enum):
    STRICTLY_INTERLACES = "StrictlyInterlaces"
    INTERLACES = "Interlaces"
    STRICTLY_ALTERNATES_LEFT = "StrictlyAlternatesLeft"
    ALTERNATES_LEFT = "AlternatesLeft"
    INCOMPARABLE = "Incomparable"
    NOT_REAL_ROOTED = "NotRealRooted"

    @property
    def strict(self) -> bool:
        return self in (Relation.STRICTLY_INTERLACES, Relation.STRICTLY_ALTERNATES_LEFT)

    @property
    def weak(self) -> bool:
        """True for every relation implying g <= f (weak or strict)."""
        return self.strict or self in (Relation.INTERLACES, Relation.ALTERNATES_LEFT)


@dataclass(frozen=True)
class RootWitness:
    """One distinct real root of f*g, with its multiplicity in each polynomial."""

    lo: Fraction
    hi: Fraction
    mult_f: int
    mult_g: int
    g_lo: Optional[Fraction] = None
    g_hi: Optional[Fraction] = None

    def to_json(self) -> dict:
        d = {"lo": str(self.lo), "hi": str(self.hi), "mult_f": self.mult_f, "mult_g": self.mult_g}
        if self.g_lo is not None:
            d["g_interval"] = [str(self.g_lo), str(self.g_hi)]
        return d


@dataclass(frozen=True)
class InterlaceVerdict:
    relation: Relation
    witness: tuple[RootWitness, ...]
    shared_roots: Poly
    convention: Optional[str] = None
    detail: str = ""

    @property
    def strict(self) -> bool:
        return self.relation.strict

    @property
    def holds(self) -> bool:
        return self.relation.weak

    def to_json(self) -> dict:
        d = {
            "relation": self.relation.value,
            "shared_roots": self.shared_roots.to_json(),
            "witness": [w.to_json() for w in self.witness],
        }
        if self.convention:
            d["convention"] = self.convention
        if self.detail:
            d["detail"] = self.detail
        return d


class _Item:
    __slots__ = ("iso", "iv", "owner", "idx", "shared")

    def __init__(self, iso, iv, owner, idx):
        self.iso = iso
        self.iv = iv
        self.owner = owner
        self.idx = idx
        self.shared = None  # index among shared roots

    def left_of(self, other: "_Item") -> bool:
        a, b = self.iv, other.iv
        if a.hi < b.lo:
            return True
        return a.hi == b.lo and not (a.exact and b.exact)


def _in_interval(chain_or_poly, iv: IsolatingInterval) -> bool:
    if iv.exact:
        return chain_or_poly.poly(iv.lo) == 0
    return chain_or_poly.count_open(iv.lo, iv.hi) == 1


def interlace_verdict(g: Poly, f: Poly) -> InterlaceVerdict:
    """Classify g against f: does g interlace, or alternate left of, f?"""
    zero = Poly()
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        if other.is_zero() or other.degree == 0 or is_real_rooted(other):
            clause = "f <= 0" if f.is_zero() else "0 <= f"
            return InterlaceVerdict(Relation.INTERLACES, (), zero, convention=clause)
        return InterlaceVerdict(Relation.NOT_REAL_ROOTED, (), zero, detail="nonzero side has non-real roots")

    if f.degree == 0 and g.degree == 0:
        if f.lead > 0 and g.lead > 0:
            return InterlaceVerdict(Relation.ALTERNATES_LEFT, (), Poly.const(1), convention="a <= bx + c")
        return InterlaceVerdict(Relation.INCOMPARABLE, (), Poly.const(1), detail="two constants")

    iso_f = isolate_real_roots(f)
    iso_g = isolate_real_roots(g)
    if not iso_f.is_real_rooted or not iso_g.is_real_rooted:
        bad = "f" if not iso_f.is_real_rooted else "g"
        return InterlaceVerdict(Relation.NOT_REAL_ROOTED, (), poly_gcd(f, g), detail=f"{bad} is not real-rooted")

    h = poly_gcd(f, g)
    if f.degree == g.degree + 1:
        kind = "interlace"
    elif f.degree == g.degree:
        kind = "alternate"
    else:
        return InterlaceVerdict(Relation.INCOMPARABLE, (), h, detail="degree mismatch")

    items_f = [_Item(iso_f, iv, "f", i) for i, iv in enumerate(iso_f.intervals)]
    items_g = [_Item(iso_g, iv, "g", i) for i, iv in enumerate(iso_g.intervals)]
    if h.degree > 0:
        hchain = _chain_for(poly_squarefree(h))
        sf = [it for it in items_f if _in_interval(hchain, it.iv)]
        sg = [it for it in items_g if _in_interval(hchain, it.iv)]
        assert len(sf) == len(sg) == hchain.poly.degree
        for k, (a, b) in enumerate(zip(sf, sg)):
            a.shared = b.shared = k

    _separate(items_f, items_g, f, g)

    points = []
    for it in items_f:
        mg = 0
        g_iv = None
        if it.shared is not None:
            mate = next(b for b in items_g if b.shared == it.shared)
            mg = mate.iv.multiplicity
            g_iv = mate.iv
        points.append((it, it.iv.multiplicity, mg, g_iv))
    for it in items_g:
        if it.shared is None:
            points.append((it, 0, it.iv.multiplicity, None))
    points.sort(key=lambda p: (p[0].iv.lo, p[0].iv.hi))
    points.reverse()  # weakly decreasing order, as in u_1 >= u_2 >= ...

    witness = tuple(
        RootWitness(it.iv.lo, it.iv.hi, mf, mg, g_iv.lo if g_iv else None, g_iv.hi if g_iv else None)
        if it.owner == "f"
        else RootWitness(it.iv.lo, it.iv.hi, mf, mg)
        for it, mf, mg, g_iv in points
    )
    # positions: 0 is the largest root
    u = [pos for pos, (_, mf, _, _) in enumerate(points) for _ in range(mf)]
    v = [pos for pos, (_, _, mg, _) in enumerate(points) for _ in range(mg)]

    # "a <= b" on roots is "pos(a) >= pos(b)"
    ok = True
    strict = True
    pairs = []
    n = len(u)
    if kind == "interlace":
        for i in range(n - 1):
            pairs.append((u[i + 1], v[i]))  # u_{i+1} <= v_i
            pairs.append((v[i], u[i]))  # v_i <= u_i
    else:
        for i in range(n):
            pairs.append((v[i], u[i]))
            if i + 1 < n:
                pairs.append((u[i + 1], v[i]))
    for small, large in pairs:
        if small < large:
            ok = False
        elif small == large:
            strict = False
    if not ok:
        return InterlaceVerdict(Relation.INCOMPARABLE, witness, h, detail="root chain violated")
    if strict and h.degree <= 0:
        rel = Relation.STRICTLY_INTERLACES if kind == "interlace" else Relation.STRICTLY_ALTERNATES_LEFT
    else:
        rel = Relation.INTERLACES if kind == "interlace" else Relation.ALTERNATES_LEFT
    return InterlaceVerdict(rel, witness, h)


def _separate(items_f, items_g, f: Poly, g: Poly) -> None:
    """Refine until every f-root interval is disjoint from every g-root interval
    except for matched shared roots."""
    # the squarefree part of f*g has height at most 2^deg times that of f*g
    fg = f * g
    budget = _separation_bits(fg) + 2 * fg.degree ** 2 + 4 * (_cauchy_pow2(fg).numerator.bit_length() + 8)
    for _ in range(budget):
        clash = set()
        for a in items_f:
            for b in items_g:
                if a.shared is not None and a.shared == b.shared:
                    continue
                if not (a.left_of(b) or b.left_of(a)):
                    clash.add(a)
                    clash.add(b)
        if not clash:
            return
        for it in clash:
            it.iv = it.iso.refine(it.iv)
    raise RuntimeError("interlacing refinement exceeded its separation-bound budget")


@dataclass(frozen=True)
class FamilyVerdict:
    verdict: bool
    first_failure: Optional[int]
    per_pair: tuple[InterlaceVerdict, ...]
    mode: str

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "first_failure": self.first_failure,
            "pairs": [v.to_json() for v in self.per_pair],
        }


def check_family_sturm(polys: Sequence[Poly], mode: str = "strict") -> FamilyVerdict:
    """Adjacent-pair check f_i < f_{i+1} (strict) or f_i <= f_{i+1} (generalized)."""
    if not polys:
        raise DomainError("family must be nonempty")
    if mode not in ("strict", "generalized"):
        raise DomainError(f"unknown mode {mode!r}")
    verdicts = []
    first = None
    for i in range(len(polys) - 1):
        v = interlace_verdict(polys[i], polys[i + 1])
        verdicts.append(v)
        good = v.strict if mode == "strict" else v.holds
        if not good and first is None:
            first = i
    if len(polys) == 1 and first is None:
        # a single member still has to be real-rooted
        p = polys[0]
        if not (p.is_zero() or p.degree == 0 or is_real_rooted(p)):
            first = 0
    return FamilyVerdict(first is None, first, tuple(verdicts), mode)
