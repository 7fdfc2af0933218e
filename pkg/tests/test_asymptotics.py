import json
import math
import random
from decimal import Decimal
from fractions import Fraction

import pytest

from baxterkit.asymptotics.certificate import (
    certify_ratio_enclosure,
    certify_rlogconvexity,
    verify_certificate,
)
from baxterkit.asymptotics.expansion import (
    R2Expansion,
    asymptotic_order,
    characteristic_roots,
    decimal_precision,
    dominant_root,
    estimate_leading_constant,
    r2_expansion,
    ratio_expansion,
    ratio_from_sequence,
    ratio_residual,
    sequence_expansion,
)
from baxterkit.asymptotics.positivity import Interval, RatFunc, eventual_positive_from, nonnegative_from
from baxterkit.errors import (
    CriterionNotApplicable,
    DegenerateClassError,
    DomainError,
    InconclusiveError,
    UnsupportedClassError,
)
from baxterkit.polycore import Poly
from baxterkit.precursive import PRecurrence, baxter_recurrence, catalan_recurrence, iter_terms

F = Fraction


def geometric(ratio=3, first=7):
    return PRecurrence(1, (Poly([ratio]), Poly([1])), 0, (first,), name="geometric")


def fibonacci():
    return PRecurrence(2, (Poly([1]), Poly([1]), Poly([1])), 0, (0, 1), name="fibonacci")


def ratios(rec, indices):
    want = set(indices)
    out = {}
    prev = None
    for n, v in iter_terms(rec):
        if prev is not None and n - 1 in want:
            out[n - 1] = F(v) / prev
            if len(out) == len(want):
                return out
        prev = v


# -- characteristic roots ----------------------------------------------------------

def test_characteristic_roots():
    assert characteristic_roots(baxter_recurrence()) == [8, -1]
    assert characteristic_roots(catalan_recurrence()) == [4]
    assert dominant_root(baxter_recurrence()) == 8


def test_irrational_roots_are_unsupported():
    with pytest.raises(UnsupportedClassError):
        characteristic_roots(fibonacci())


def test_repeated_root_is_degenerate():
    rec = PRecurrence(2, (Poly([-1]), Poly([2]), Poly([1])), 0, (1, 2))
    with pytest.raises(DegenerateClassError):
        characteristic_roots(rec)


def test_tied_dominant_roots():
    rec = PRecurrence(2, (Poly([1]), Poly([0]), Poly([1])), 0, (1, 2))
    with pytest.raises(DegenerateClassError):
        dominant_root(rec)


# -- expansions ---------------------------------------------------------------------

def test_baxter_ratio_expansion():
    rx = ratio_expansion(baxter_recurrence(), 8, 2)
    assert rx.rho == 8 and rx.d == (-4, F(52, 3))


def test_catalan_ratio_expansion():
    rx = ratio_expansion(catalan_recurrence(), 4, 2)
    assert rx.d == (F(-3, 2), 3)


def test_geometric_expansion_is_flat():
    rx = ratio_expansion(geometric(), 3, 5)
    assert rx.d == (0,) * 5
    sx = sequence_expansion(rx)
    assert sx.nu == 0 and all(x == 0 for x in sx.ell)
    with pytest.raises(InconclusiveError):
        r2_expansion(rx)


def test_wrong_root_is_rejected():
    with pytest.raises(DomainError):
        ratio_expansion(baxter_recurrence(), 7, 2)
    with pytest.raises(DomainError):
        ratio_expansion(baxter_recurrence(), 8, -1)


def test_baxter_sequence_expansion():
    sx = sequence_expansion(ratio_expansion(baxter_recurrence(), 8, 3))
    assert sx.rho == 8 and sx.nu == -4
    assert sx.ell == (F(-22, 3), F(955, 27))


def test_catalan_nu():
    assert sequence_expansion(ratio_expansion(catalan_recurrence(), 4, 2)).nu == F(-3, 2)


@pytest.mark.parametrize("rec", [baxter_recurrence(), catalan_recurrence()], ids=["baxter", "catalan"])
@pytest.mark.parametrize("eta", [1, 2, 4, 6])
def test_residual_vanishes_and_round_trip(rec, eta):
    rx = ratio_expansion(rec, dominant_root(rec), eta)
    assert all(c == 0 for c in ratio_residual(rec, rx))
    assert ratio_from_sequence(sequence_expansion(rx), eta) == rx


def test_residual_detects_perturbation():
    rx = ratio_expansion(baxter_recurrence(), 8, 3)
    bad = type(rx)(rx.rho, (rx.d[0], rx.d[1] + 1, rx.d[2]), 3)
    assert any(c != 0 for c in ratio_residual(baxter_recurrence(), bad))


def test_r2_expansions():
    r2 = r2_expansion(ratio_expansion(baxter_recurrence(), 8, 2))
    assert (r2.c, r2.alpha, r2.beta) == (4, 2, 2)
    r2 = r2_expansion(ratio_expansion(catalan_recurrence(), 4, 2))
    assert (r2.c, r2.alpha) == (F(3, 2), 2)
    with pytest.raises(DomainError):
        r2_expansion(ratio_expansion(catalan_recurrence(), 4, 1))


def test_asymptotic_order_examples():
    assert asymptotic_order(R2Expansion(F(4), 2, (), 2)) == 1
    assert asymptotic_order(R2Expansion(F(4), 2, (F(0),) * 4, 6)) == 3
    with pytest.raises(CriterionNotApplicable):
        asymptotic_order(R2Expansion(F(-1), 2, (), 2))
    with pytest.raises(CriterionNotApplicable):
        asymptotic_order(R2Expansion(F(1), 1, (), 2))


@pytest.mark.parametrize("r", range(1, 7))
def test_asymptotic_order_at_even_beta(r):
    r2 = r2_expansion(ratio_expansion(baxter_recurrence(), 8, 2 * r))
    assert (r2.c, r2.alpha) == (4, 2)
    assert asymptotic_order(r2) == r


def test_asymptotic_order_is_monotone_in_beta():
    orders = [asymptotic_order(r2_expansion(ratio_expansion(baxter_recurrence(), 8, eta))) for eta in range(2, 13)]
    assert orders == sorted(orders)


@pytest.mark.parametrize("rec", [baxter_recurrence(), catalan_recurrence()], ids=["baxter", "catalan"])
@pytest.mark.parametrize("eta", [1, 2])
def test_truncation_error_scales_like_next_power(rec, eta):
    rx = ratio_expansion(rec, dominant_root(rec), eta)
    got = ratios(rec, [100, 1000, 10000])
    ks = [abs(got[n] - rx.approx(n)) * n ** (eta + 1) for n in (100, 1000, 10000)]
    assert all(k > 0 for k in ks)
    assert max(ks) / min(ks) <= 2


# -- leading constant -----------------------------------------------------------------

def test_baxter_constant():
    sx = sequence_expansion(ratio_expansion(baxter_recurrence(), 8, 2))
    est = estimate_leading_constant(baxter_recurrence(), sx, 2000)
    target = 32 / (math.sqrt(3) * math.pi)
    assert abs(float(est) - target) / target < 0.01


def test_catalan_constant():
    sx = sequence_expansion(ratio_expansion(catalan_recurrence(), 4, 2))
    est = estimate_leading_constant(catalan_recurrence(), sx, 2000)
    assert abs(float(est) - 1 / math.sqrt(math.pi)) < 1e-4


def test_geometric_constant_is_exact():
    sx = sequence_expansion(ratio_expansion(geometric(), 3, 2))
    assert estimate_leading_constant(geometric(), sx, 50) == Decimal(7)


def test_precision_env(monkeypatch):
    monkeypatch.setenv("BAXTERKIT_DECIMAL_PRECISION", "60")
    assert decimal_precision() == 60
    monkeypatch.setenv("BAXTERKIT_DECIMAL_PRECISION", "many")
    with pytest.raises(DomainError):
        decimal_precision()


# -- eventual positivity ----------------------------------------------------------------

@pytest.mark.parametrize("coeffs,want", [([-100, 0, 1], 11), ([-5, 1], 6), ([-1], None), ([3], 0),
                                         ([0, -1], None), ([1, -3, 1], 3)])
def test_eventual_positive_from(coeffs, want):
    assert eventual_positive_from(Poly(coeffs)) == want


def test_eventual_positive_respects_start():
    assert eventual_positive_from(Poly([-5, 1]), start=20) == 20
    assert nonnegative_from(Poly([])) == 0
    assert nonnegative_from(Poly([-5, 1])) == 6


def test_eventual_positivity_is_a_certificate():
    rng = random.Random(5)
    for _ in range(200):
        p = Poly([rng.randint(-50, 50) for _ in range(rng.randint(1, 5))] + [rng.randint(1, 5)])
        N = eventual_positive_from(p)
        assert N is not None
        assert all(p(n) > 0 for n in range(N, N + 60))
        assert all(c >= 0 for c in p.shift(N).coeffs)


def test_ratfunc_arithmetic():
    f = RatFunc.from_poly(Poly([1, 1]), Poly([0, 1]))  # (n+1)/n
    g = f.shift(1)
    assert (f * g)(3) == F(4, 3) * F(5, 4)
    assert (f - f).num == ()
    assert (f / f)(10) == 1
    assert RatFunc.from_json(json.loads(json.dumps(f.to_json()))) == f
    assert (f - RatFunc.const(1)).positive_from() == 1


def test_interval_division():
    lo = RatFunc.const(2)
    hi = RatFunc.const(3)
    iv = Interval(lo, hi, 0)
    q = iv.div_pos(iv)
    assert q.lo(5) == F(2, 3) and q.hi(5) == F(3, 2)


# -- enclosures and certificates ----------------------------------------------------------

def test_baxter_enclosure_eta2():
    rec = baxter_recurrence()
    enc = certify_ratio_enclosure(rec, ratio_expansion(rec, 8, 2))
    assert enc.ok and enc.n0 is not None
    r100 = ratios(rec, [100])[100]
    assert enc.lower(100) < r100 < enc.upper(100)


def test_enclosure_membership_at_sampled_indices():
    rec = baxter_recurrence()
    enc = certify_ratio_enclosure(rec, ratio_expansion(rec, 8, 4))
    assert enc.ok
    rng = random.Random(11)
    sample = sorted(rng.sample(range(enc.n0, enc.n0 + 3000), 50))
    got = ratios(rec, sample)
    assert all(enc.contains(n, got[n]) for n in sample)


def test_geometric_enclosure_is_exact():
    rec = geometric()
    enc = certify_ratio_enclosure(rec, ratio_expansion(rec, 3, 2))
    assert enc.ok and enc.n0 == rec.start_index
    assert enc.lower == enc.upper == RatFunc.const(3)


def test_eta_zero_enclosure_fails():
    rec = baxter_recurrence()
    enc = certify_ratio_enclosure(rec, ratio_expansion(rec, 8, 0))
    assert not enc.ok and enc.blocking


def test_log_convexity_certificate():
    cert = certify_rlogconvexity(baxter_recurrence(), 1, 2)
    assert cert.certified
    assert cert.initial_check.ok and cert.initial_upto >= cert.bound


def test_weak_enclosure_fails_at_level_two():
    cert = certify_rlogconvexity(baxter_recurrence(), 2, 2)
    assert cert.verdict == "failed" and "level 2" in cert.reason


def test_initial_cap_gives_eventual_only():
    cert = certify_rlogconvexity(baxter_recurrence(), 2, 4, initial_cap=100)
    assert cert.verdict == "eventual_only" and cert.eventual_certified


def test_certificate_json_verifies():
    cert = certify_rlogconvexity(baxter_recurrence(), 1, 2)
    data = json.loads(json.dumps(cert.to_json()))
    ok, problems = verify_certificate(data)
    assert ok, problems


def test_tampered_certificate_is_rejected():
    cert = certify_rlogconvexity(baxter_recurrence(), 1, 2)
    data = json.loads(json.dumps(cert.to_json()))
    data["level_bounds"][0]["N"] = 3
    ok, problems = verify_certificate(data)
    assert not ok and problems
    data = json.loads(json.dumps(cert.to_json()))
    data["enclosure"]["N0"] = 2
    assert not verify_certificate(data)[0]
    assert not verify_certificate({"r": 1})[0]
