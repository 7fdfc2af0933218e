"""Certified ratio enclosures and r-log-convexity certificates.

The enclosure phi_-(n) <= a_{n+1}/a_n <= phi_+(n) is proved by induction on n
using the Riccati map r(n+1) = (p_1(n) + p_0(n)/r(n)) / p_2(n).  Positivity of
L^j(a) is then pushed level by level through interval rational functions:

    L(v)_n = v_{n+1}^2 (R^2(v)_n - 1),
    R(L v)_n = R(v)_{n+1}^2 * w(n+1)/w(n),   w(n) = R^2(v)_n - 1.

Every "for all n >= N" claim reduces to eventual_positive_from, and the
finitely many indices below max N_j are checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Optional

from ..errors import DomainError, UnsupportedClassError
from ..polycore import Poly
from ..precursive import PRecurrence, RLogCheck, check_initial_rlogconvexity, iter_terms
from .expansion import RatioExpansion, dominant_root, ratio_expansion
from .positivity import Interval, RatFunc, eventual_positive_from, nonnegative_from

__all__ = [
    "CERTIFICATE_SCHEMA",
    "DEFAULT_BASE_CAP",
    "DEFAULT_INITIAL_CAP",
    "RatioEnclosure",
    "LogConvexityCertificate",
    "certify_ratio_enclosure",
    "certify_rlogconvexity",
    "verify_certificate",
]

CERTIFICATE_SCHEMA = "baxterkit.rlogconvexity/1"
DEFAULT_BASE_CAP = 20000
DEFAULT_INITIAL_CAP = 50000


@dataclass(frozen=True)
class RatioEnclosure:
    ok: bool
    rho: Fraction
    eta: int
    margin: Fraction
    lower: Optional[RatFunc]
    upper: Optional[RatFunc]
    n0: Optional[int]  # base index of the induction
    step_from: Optional[int]  # every step condition holds for n >= step_from
    conditions: tuple = ()  # (name, N or None)
    blocking: Optional[str] = None

    def contains(self, n: int, ratio: Fraction) -> bool:
        return self.lower(n) <= ratio <= self.upper(n)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rho": str(self.rho),
            "eta": self.eta,
            "margin": str(self.margin),
            "lower": self.lower.to_json() if self.lower else None,
            "upper": self.upper.to_json() if self.upper else None,
            "N0": self.n0,
            "step_from": self.step_from,
            "conditions": [{"name": k, "from": v} for k, v in self.conditions],
            "blocking": self.blocking,
        }


def _normalized_polys(rec: PRecurrence) -> list[Poly]:
    polys = list(rec.coeff_polys)
    if polys[-1].lead < 0:
        polys = [-p for p in polys]
    return polys


def _phi(rho: Fraction, d: tuple, eta: int, offset: Fraction) -> RatFunc:
    # rho (n^eta + d_1 n^(eta-1) + ... + d_eta + offset) / n^eta
    coeffs = [Fraction(0)] * (eta + 1)
    coeffs[eta] = Fraction(1)
    for i, c in enumerate(d[:eta], start=1):
        coeffs[eta - i] += c
    coeffs[0] += offset
    return RatFunc.from_poly(Poly(coeffs) * rho, Poly.monomial(eta))


def _nonneg_rf_from(f: RatFunc, start: int) -> Optional[int]:
    a = nonnegative_from(f.num, start)
    b = eventual_positive_from(f.den, start)
    if a is None or b is None:
        return None
    return max(a, b)


def _step_conditions(polys: list[Poly], lower: RatFunc, upper: RatFunc, start: int) -> list[tuple[str, Optional[int]]]:
    conds: list[tuple[str, Optional[int]]] = [("lower bound positive", lower.positive_from(start))]
    if conds[0][1] is None:
        return conds
    if len(polys) == 2:
        exact = RatFunc.from_poly(polys[0], polys[1])
        conds.append(("leading coefficient positive", eventual_positive_from(polys[1], start)))
        conds.append(("upper bound above ratio", _nonneg_rf_from(upper - exact, start)))
        conds.append(("ratio above lower bound", _nonneg_rf_from(exact - lower, start)))
        return conds
    p0, p1, p2 = (RatFunc.from_poly(p) for p in polys)
    conds.append(("leading coefficient positive", eventual_positive_from(polys[2], start)))
    sign = 0 if polys[0].is_zero() else (1 if polys[0].lead > 0 else -1)
    if sign:
        conds.append((f"p_0 has sign {sign:+d}", eventual_positive_from(polys[0] * sign, start)))

    def psi(x: RatFunc) -> RatFunc:
        return (p1 + p0 / x) / p2

    # the map is decreasing in x when p_0/p_2 > 0, increasing when < 0
    top_src, bottom_src = (lower, upper) if sign >= 0 else (upper, lower)
    conds.append(("image stays below upper bound", _nonneg_rf_from(upper.shift(1) - psi(top_src), start)))
    conds.append(("image stays above lower bound", _nonneg_rf_from(psi(bottom_src) - lower.shift(1), start)))
    return conds


def _ratio_stream(rec: PRecurrence):
    """Yield (n, a_n, a_{n+1})."""
    it = iter_terms(rec)
    n, prev = next(it)
    for m, cur in it:
        yield n, prev, cur
        n, prev = m, cur


def certify_ratio_enclosure(rec: PRecurrence, rx: RatioExpansion, *, margin=1,
                            base_cap: int = DEFAULT_BASE_CAP) -> RatioEnclosure:
    """Prove phi_-(n) <= a_{n+1}/a_n <= phi_+(n) for all n >= N0.

    phi_+- keeps d_1..d_{eta-1} and perturbs d_eta by +-margin.  For a first
    order recurrence whose exact ratio already equals the truncated expansion
    the margin collapses to zero.
    """
    if rec.order not in (1, 2):
        raise UnsupportedClassError("ratio enclosures are implemented for order 1 and 2")
    rho = rx.rho
    if rho <= 0:
        raise UnsupportedClassError("the enclosure needs a positive dominant root")
    eta = rx.eta
    margin = Fraction(margin)
    polys = _normalized_polys(rec)
    start = rec.start_index

    if rec.order == 1:
        exact = RatFunc.from_poly(polys[0], polys[1])
        if (exact - _phi(rho, rx.d, eta, Fraction(0))).num == ():
            margin = Fraction(0)

    def fail(msg, lower=None, upper=None, conds=(), step=None):
        return RatioEnclosure(False, rho, eta, margin, lower, upper, None, step, tuple(conds), msg)

    if eta == 0:
        lower = RatFunc.const(rho * (1 - margin))
        upper = RatFunc.const(rho * (1 + margin))
    else:
        lower = _phi(rho, rx.d, eta, -margin)
        upper = _phi(rho, rx.d, eta, margin)
    conds = _step_conditions(polys, lower, upper, start)
    for name, val in conds:
        if val is None:
            return fail(f"{name}: never holds (raise eta)", lower, upper, conds)
    step = max(v for _, v in conds)

    for n, a, b in _ratio_stream(rec):
        if n > base_cap:
            return fail(f"no base index found in [{step}, {base_cap}]", lower, upper, conds, step)
        if n < step or a <= 0:
            continue
        if lower(n) <= Fraction(b) / a <= upper(n):
            return RatioEnclosure(True, rho, eta, margin, lower, upper, n, step, tuple(conds))
    raise AssertionError("unreachable")  # pragma: no cover


@dataclass
class LogConvexityCertificate:
    sequence: str
    recurrence: PRecurrence
    r: int
    eta: int
    expansion: RatioExpansion
    enclosure: RatioEnclosure
    level_bounds: list = field(default_factory=list)  # N_1 .. N_r, None when a level fails
    level_lower: list = field(default_factory=list)  # lower enclosure of w^(j-1), one per level
    initial_check: Optional[RLogCheck] = None
    initial_upto: Optional[int] = None
    initial_cap: int = DEFAULT_INITIAL_CAP
    verdict: str = "failed"  # certified | eventual_only | failed
    reason: Optional[str] = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    @property
    def eventual_certified(self) -> bool:
        return bool(self.level_bounds) and all(b is not None for b in self.level_bounds) and len(self.level_bounds) == self.r

    @property
    def bound(self) -> Optional[int]:
        """max N_j: L^j(a)_n > 0 for all j <= r and n >= bound."""
        return max(self.level_bounds) if self.eventual_certified else None

    def to_json(self, include_levels: bool = True) -> dict:
        out = {
            "schema": CERTIFICATE_SCHEMA,
            "sequence": self.sequence,
            "recurrence": self.recurrence.to_json(),
            "r": self.r,
            "eta": self.eta,
            "expansion": self.expansion.to_json(),
            "enclosure": self.enclosure.to_json(),
            "level_bounds": [{"level": j + 1, "N": b} for j, b in enumerate(self.level_bounds)],
            "initial_check": {
                "range": [self.recurrence.start_index, self.initial_upto],
                "cap": self.initial_cap,
                "result": self.initial_check.to_json() if self.initial_check else None,
            },
            "verdict": self.verdict,
            "reason": self.reason,
        }
        if include_levels:
            out["level_lower"] = [w.to_json() for w in self.level_lower]
        return out


def _levels(enc: RatioEnclosure, r: int):
    """Yield (lower enclosure of w^(j-1), N_j) for j = 1..r; N_j is None once a level fails."""
    R = Interval(enc.lower, enc.upper, enc.n0)
    for j in range(1, r + 1):
        w = R.shift(1).div_pos(R).add_const(-1)
        nj = w.positive_from
        yield w.lo, nj
        if nj is None:
            return
        if j < r:
            R = R.shift(1).square_pos().mul_pos(w.shift(1).div_pos(w))


def certify_rlogconvexity(rec: PRecurrence, r: int, eta: int, *, margin=1,
                          base_cap: int = DEFAULT_BASE_CAP,
                          initial_cap: int = DEFAULT_INITIAL_CAP,
                          run_initial: bool = True) -> LogConvexityCertificate:
    """Certificate that L^j(a)_n >= 0 for j = 1..r and every n >= start index.

    The eventual half is symbolic; the gap below max N_j is closed exactly
    when it fits under ``initial_cap``, otherwise the verdict is eventual_only.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    if eta < 0:
        raise DomainError("eta must be nonnegative")
    rho = dominant_root(rec)
    rx = ratio_expansion(rec, rho, eta)
    enc = certify_ratio_enclosure(rec, rx, margin=margin, base_cap=base_cap)
    cert = LogConvexityCertificate(rec.name, rec, r, eta, rx, enc, initial_cap=initial_cap)
    if not enc.ok:
        cert.reason = f"ratio enclosure failed: {enc.blocking}"
        return cert
    for j, (lo, nj) in enumerate(_levels(enc, r), start=1):
        cert.level_lower.append(lo)
        cert.level_bounds.append(nj)
        if nj is None:
            cert.reason = f"enclosure too weak at level {j}; increase eta"
            return cert
    upto = cert.bound + 2 * r
    cert.initial_upto = upto
    if not run_initial:
        cert.verdict = "eventual_only"
        cert.reason = "initial check skipped"
        return cert
    if upto > initial_cap:
        cert.verdict = "eventual_only"
        cert.reason = f"initial check needs terms up to {upto}, above the cap {initial_cap}"
        return cert
    chk = check_initial_rlogconvexity(rec, r, upto)
    cert.initial_check = chk
    if chk.ok:
        cert.verdict = "certified"
    else:
        j, n = chk.first_failure
        cert.reason = f"L^{j}(a)_{n} < 0"
    return cert


def verify_certificate(data: dict, *, recheck_initial: bool = True) -> tuple[bool, list[str]]:
    """Re-derive every claim of a certificate JSON from the recurrence and the stated bounds.

    Only the recurrence, the enclosure and the stated indices are read; the
    interval algebra and the exact initial check are recomputed.
    """
    problems: list[str] = []
    try:
        rec = PRecurrence.from_json(data["recurrence"], data.get("sequence", ""))
        enc_d = data["enclosure"]
        lower = RatFunc.from_json(enc_d["lower"])
        upper = RatFunc.from_json(enc_d["upper"])
        n0 = int(enc_d["N0"])
        r = int(data["r"])
        bounds = [int(b["N"]) for b in data["level_bounds"]]
    except (KeyError, TypeError, ValueError) as exc:
        return False, [f"malformed certificate: {exc}"]
    if n0 < rec.start_index:
        problems.append("N0 precedes the first term")
    polys = _normalized_polys(rec)
    for name, val in _step_conditions(polys, lower, upper, n0):
        if val != n0:
            problems.append(f"step condition '{name}' does not hold from N0 = {n0}")
    a, b = next(islice(((x, y) for m, x, y in _ratio_stream(rec) if m == n0), 1))
    if not (a > 0 and lower(n0) <= Fraction(b) / a <= upper(n0)):
        problems.append(f"base case fails at N0 = {n0}")
    if len(bounds) != r:
        problems.append(f"expected {r} level bounds, got {len(bounds)}")
    else:
        enc = RatioEnclosure(True, Fraction(0), 0, Fraction(0), lower, upper, n0, n0)
        for j, (lo, nj) in enumerate(_levels(enc, r), start=1):
            claimed = bounds[j - 1]
            if nj is None or claimed < nj:
                problems.append(f"level {j}: positivity from {claimed} not established")
                break
    verdict = data.get("verdict")
    if verdict == "certified" and not problems:
        rng = data["initial_check"]["range"]
        if int(rng[1]) < max(bounds) + 2 * r:
            problems.append("initial check range does not reach the symbolic bound")
        elif recheck_initial:
            chk = check_initial_rlogconvexity(rec, r, int(rng[1]))
            if not chk.ok:
                problems.append(f"initial check fails at {chk.first_failure}")
    return not problems, problems
