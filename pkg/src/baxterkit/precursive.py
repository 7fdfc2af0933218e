"""P-recursive sequences: term extension, recurrence checks, the L operator,
exact initial-segment r-log-convexity and Hankel minors.

A recurrence of order j is stored as polynomials p_0, ..., p_j in n with

    p_j(n) a_{n+j} = p_{j-1}(n) a_{n+j-1} + ... + p_0(n) a_n.

Terms are kept as Python ints whenever the division is exact and fall back
to Fraction otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .errors import DomainError, SingularPointError
from .polycore import Poly, integer_coeffs, to_rat

__all__ = [
    "PRecurrence",
    "SequenceWindow",
    "RLogCheck",
    "baxter_recurrence",
    "catalan_recurrence",
    "iter_terms",
    "extend_sequence",
    "verify_recurrence",
    "apply_L",
    "check_initial_rlogconvexity",
    "hankel_leading_minors",
    "bareiss_det",
    "baxter_hankel_window",
    "hankel_offset_scan",
]


def _exact(x):
    """Collapse integral Fractions to int so the hot loops stay in int arithmetic."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class PRecurrence:
    order: int
    coeff_polys: tuple[Poly, ...]  # p_0 .. p_order
    start_index: int
    initial_values: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("order must be positive")
        if len(self.coeff_polys) != self.order + 1:
            raise DomainError(f"need {self.order + 1} coefficient polynomials, got {len(self.coeff_polys)}")
        if self.coeff_polys[-1].is_zero():
            raise DomainError("leading coefficient polynomial is identically zero")
        if len(self.initial_values) != self.order:
            raise DomainError(f"need {self.order} initial values, got {len(self.initial_values)}")
        # polynomial form with integer coefficients: clear the common denominator
        den = 1
        for p in self.coeff_polys:
            for c in p.coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
        polys = tuple(p * den for p in self.coeff_polys)
        object.__setattr__(self, "coeff_polys", polys)
        object.__setattr__(self, "initial_values", tuple(_exact(to_rat(v)) for v in self.initial_values))

    @property
    def leading(self) -> Poly:
        return self.coeff_polys[-1]

    def evaluate_coeffs(self, n: int) -> list[int]:
        return [_exact(p(n)) for p in self.coeff_polys]

    def residual(self, n: int, values: Sequence) -> Fraction:
        """p_j(n) a_{n+j} - sum_{i<j} p_i(n) a_{n+i} for the given a_n .. a_{n+j}."""
        cs = self.evaluate_coeffs(n)
        return cs[-1] * values[-1] - sum(c * v for c, v in zip(cs[:-1], values[:-1]))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeff_polys": [p.to_json() for p in self.coeff_polys],
            "start_index": self.start_index,
            "initial": [str(v) for v in self.initial_values],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = "") -> "PRecurrence":
        try:
            return cls(
                order=int(data["order"]),
                coeff_polys=tuple(Poly.from_json(p) for p in data["coeff_polys"]),
                start_index=int(data.get("start_index", 0)),
                initial_values=tuple(to_rat(v) for v in data["initial"]),
                name=name,
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"malformed sequence spec: {exc}") from exc


def baxter_recurrence() -> PRecurrence:
    """(n+4)(n+5) B_{n+2} = (7n^2+35n+40) B_{n+1} + 8n(n+1) B_n, B_1 = 1, B_2 = 2."""
    return PRecurrence(
        order=2,
        coeff_polys=(Poly([0, 8, 8]), Poly([40, 35, 7]), Poly([20, 9, 1])),
        start_index=1,
        initial_values=(1, 2),
        name="baxter",
    )


def catalan_recurrence() -> PRecurrence:
    """(n+2) C_{n+1} = (4n+2) C_n, C_0 = 1."""
    return PRecurrence(
        order=1,
        coeff_polys=(Poly([2, 4]), Poly([2, 1])),
        start_index=0,
        initial_values=(1,),
        name="catalan",
    )


@dataclass(frozen=True)
class SequenceWindow:
    start_index: int
    terms: tuple

    def __len__(self):
        return len(self.terms)

    @property
    def stop_index(self) -> int:
        """Index of the last term."""
        return self.start_index + len(self.terms) - 1

    def __getitem__(self, n: int):
        i = n - self.start_index
        if not 0 <= i < len(self.terms):
            raise IndexError(f"index {n} outside window [{self.start_index}, {self.stop_index}]")
        return self.terms[i]

    def sub(self, lo: int, hi: int) -> "SequenceWindow":
        """Sub-window holding indices lo..hi inclusive."""
        return SequenceWindow(lo, self.terms[lo - self.start_index: hi - self.start_index + 1])

    def to_json(self) -> dict:
        return {"start_index": self.start_index, "terms": [str(t) for t in self.terms]}


def iter_terms(rec: PRecurrence) -> Iterator[tuple[int, object]]:
    """Yield (n, a_n) for n = start_index, start_index + 1, ... forever."""
    j = rec.order
    n0 = rec.start_index
    buf = list(rec.initial_values)
    for i, v in enumerate(buf):
        yield n0 + i, v
    polys = [integer_coeffs(p) for p in rec.coeff_polys]
    lead = polys[-1]
    n = n0
    while True:
        pj = _ieval(lead, n)
        if pj == 0:
            raise SingularPointError(n, f"leading coefficient p_{j}(n) vanishes at n = {n} "
                                        f"(needed for a_{n + j})")
        s = 0
        for p, a in zip(polys[:-1], buf):
            c = _ieval(p, n)
            if c:
                s += c * a
        if isinstance(s, int):
            q, r = divmod(s, pj)
            new = q if r == 0 else Fraction(s, pj)
        else:
            new = _exact(s / pj)
        buf.append(new)
        buf.pop(0)
        yield n + j, new
        n += 1


def _ieval(a: list[int], n: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * n + c
    return acc


def extend_sequence(rec: PRecurrence, upto: int) -> SequenceWindow:
    """Terms a_{n0} .. a_{upto} computed exactly from the recurrence."""
    n0 = rec.start_index
    if upto < n0 + rec.order - 1:
        raise DomainError(f"upto must be at least {n0 + rec.order - 1}")
    terms = tuple(v for _, v in islice(iter_terms(rec), upto - n0 + 1))
    return SequenceWindow(n0, terms)


def verify_recurrence(rec: PRecurrence, oracle: Callable[[int], object], lo: int, hi: int) -> tuple[bool, Optional[int]]:
    """Check the recurrence identity at every n in [lo, hi] using oracle values only.

    An index n uses a_n .. a_{n+order}; all must be supplied by the oracle.
    """
    cache: dict[int, object] = {}

    def a(k):
        if k not in cache:
            cache[k] = _exact(to_rat(oracle(k)))
        return cache[k]

    for n in range(lo, hi + 1):
        vals = [a(n + i) for i in range(rec.order + 1)]
        if rec.residual(n, vals) != 0:
            return False, n
    return True, None


def apply_L(window: SequenceWindow) -> SequenceWindow:
    """L(a)_n = a_n a_{n+2} - a_{n+1}^2 on every index where it is defined."""
    t = window.terms
    if len(t) < 3:
        raise DomainError("the L operator needs at least three terms")
    return SequenceWindow(window.start_index, tuple(t[i] * t[i + 2] - t[i + 1] * t[i + 1] for i in range(len(t) - 2)))


@dataclass(frozen=True)
class RLogCheck:
    ok: bool
    strict: bool
    first_failure: Optional[tuple[int, int]]  # (level j, index n)
    first_zero: Optional[tuple[int, int]]
    r: int
    start_index: int
    checked_upto: int  # last term index consumed
    checked_counts: tuple[int, ...]  # entries verified per level 1..r

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "strict": self.strict,
            "first_failure": list(self.first_failure) if self.first_failure else None,
            "first_zero": list(self.first_zero) if self.first_zero else None,
            "r": self.r,
            "start_index": self.start_index,
            "checked_upto": self.checked_upto,
            "checked_counts": list(self.checked_counts),
        }


def _scan_levels(pairs: Iterable[tuple[int, object]], r: int, start: int, last: int) -> RLogCheck:
    # streaming: level j keeps its last three entries only
    tails: list[list] = [[] for _ in range(r + 1)]
    counts = [0] * r
    first_zero = None
    checked = start - 1
    for n, v in pairs:
        if n > last:
            break
        checked = n
        tails[0].append(v)
        for j in range(1, r + 1):
            prev = tails[j - 1]
            if len(prev) < 3:
                break
            x, y, z = prev[-3], prev[-2], prev[-1]
            val = x * z - y * y
            idx = n - 2 * j
            counts[j - 1] += 1
            if val < 0:
                return RLogCheck(False, False, (j, idx), first_zero, r, start, n, tuple(counts))
            if val == 0 and first_zero is None:
                first_zero = (j, idx)
            tails[j].append(val)
            if len(tails[j]) > 3:
                del tails[j][0]
        if len(tails[0]) > 3:
            del tails[0][0]
    return RLogCheck(True, first_zero is None, None, first_zero, r, start, checked, tuple(counts))


def check_initial_rlogconvexity(
    source: Union[PRecurrence, SequenceWindow], r: int, upto: Optional[int] = None
) -> RLogCheck:
    """Exact check that L^j(a)_n >= 0 for j = 1..r over every index the terms up to ``upto`` reach.

    ``source`` is a recurrence (terms are streamed, so long ranges stay cheap in
    memory) or an explicit window.  Strict positivity is reported separately.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    if isinstance(source, SequenceWindow):
        last = source.stop_index if upto is None else min(upto, source.stop_index)
        pairs = ((source.start_index + i, v) for i, v in enumerate(source.terms))
        return _scan_levels(pairs, r, source.start_index, last)
    if upto is None:
        raise DomainError("upto is required when checking a recurrence")
    return _scan_levels(iter_terms(source), r, source.start_index, upto)


def bareiss_det(matrix: Sequence[Sequence]) -> object:
    """Determinant by fraction-free elimination with row pivoting."""
    m = [list(row) for row in matrix]
    k = len(m)
    if k == 0:
        return 1
    integral = all(isinstance(x, int) for row in m for x in row)
    sign = 1
    prev = 1
    for i in range(k - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if m[r][i] != 0), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        piv = m[i][i]
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                num = m[r][c] * piv - m[r][i] * m[i][c]
                m[r][c] = num // prev if integral else num / prev
            m[r][i] = 0
        prev = piv
    return sign * m[k - 1][k - 1]


def hankel_leading_minors(window: SequenceWindow, upto_order: int, first: Optional[int] = None) -> list:
    """det [a_{first+i+j}]_{0<=i,j<k} for k = 1..upto_order; ``first`` defaults to the window start."""
    if upto_order < 1:
        raise DomainError("upto_order must be positive")
    first = window.start_index if first is None else first
    need = first + 2 * upto_order - 2
    if first < window.start_index or need > window.stop_index:
        raise DomainError(f"Hankel minors of order {upto_order} need a_{first} .. a_{need}")
    out = []
    for k in range(1, upto_order + 1):
        mat = [[window[first + i + j] for j in range(k)] for i in range(k)]
        out.append(_exact(bareiss_det(mat)))
    return out


def baxter_hankel_window(upto: int) -> SequenceWindow:
    """B_0 .. B_upto with the empty-permutation value B_0 = 1 in front.

    This is the default Hankel indexing: entry (i, j) is B_{i+j}.
    """
    if upto < 1:
        raise DomainError("upto must be positive")
    tail = extend_sequence(baxter_recurrence(), max(upto, 2)).terms
    return SequenceWindow(0, (1,) + tail[:upto])


def hankel_offset_scan(window: SequenceWindow, upto_order: int, offsets: Iterable[int]) -> list[dict]:
    """Leading minors for several top-left indices, with the first negative order (1-based) if any."""
    out = []
    for first in offsets:
        minors = hankel_leading_minors(window, upto_order, first)
        neg = next((k + 1 for k, v in enumerate(minors) if v < 0), None)
        out.append({"first": first, "minors": minors, "first_negative_order": neg})
    return out
