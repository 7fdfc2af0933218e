from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baxterkit.combinat import baxter_polynomial, hoggatt_polynomial
from baxterkit.errors import DomainError
from baxterkit.polycore import Poly, poly_gcd, poly_squarefree
from baxterkit.realroots import (
    Relation,
    SturmChain,
    check_family_sturm,
    interlace_verdict,
    is_real_rooted,
    isolate_real_roots,
)

T1 = Poly([1, 1])


def test_isolate_sqrt2():
    iso = isolate_real_roots(Poly([-2, 0, 1]))
    assert len(iso.intervals) == 2
    a, b = iso.intervals
    assert -2 <= a.lo and a.hi <= -1 and 1 <= b.lo and b.hi <= 2
    assert a.multiplicity == b.multiplicity == 1


def test_repeated_rational_root_is_pinned():
    iso = isolate_real_roots(T1 ** 2)
    (iv,) = iso.intervals
    assert iv.lo == iv.hi == -1 and iv.multiplicity == 2
    assert iso.real_root_count_with_multiplicity == 2


def test_pb3_roots():
    iso = isolate_real_roots(Poly([1, 4, 1]))
    a, b = iso.intervals
    assert -4 <= a.lo and a.hi <= -3 and -1 <= b.lo and b.hi <= 0


def test_refinement_reaches_width():
    iso = isolate_real_roots(Poly([-2, 0, 1]))
    iv = iso.refine_to_width(iso.intervals[1], Fraction(1, 10 ** 6))
    assert iv.width <= Fraction(1, 10 ** 6)
    assert iv.lo ** 2 <= 2 <= iv.hi ** 2


def test_zero_polynomial_rejected():
    with pytest.raises(DomainError):
        isolate_real_roots(Poly([]))
    with pytest.raises(DomainError):
        is_real_rooted(Poly([]))


def test_real_rootedness():
    assert not is_real_rooted(Poly([1, 0, 1]))
    assert is_real_rooted(T1 ** 3)
    assert is_real_rooted(baxter_polynomial(5))


def test_sturm_chain_counts():
    p = Poly.from_roots([-3, -1, 2, 5])
    ch = SturmChain(p)
    assert ch.count_real() == 4
    assert ch.count_open(Fraction(-2), Fraction(3)) == 2
    # an endpoint root is excluded from the open interval
    assert ch.count_open(Fraction(-1), Fraction(2)) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=8), min_size=1, max_size=7),
       st.integers(0, 3))
def test_isolation_sound_and_complete(roots, complex_pairs):
    p = Poly.from_roots(roots)
    for i in range(complex_pairs):
        p = p * Poly([i + 1, 0, 1])
    iso = isolate_real_roots(p)
    distinct = sorted(set(roots))
    assert len(iso.intervals) == len(distinct)
    assert iso.real_root_count_with_multiplicity == len(roots)
    sq = poly_squarefree(p)
    ch = SturmChain(sq)
    assert ch.count_real() == len(iso.intervals)
    for iv, r in zip(iso.intervals, distinct):
        assert iv.lo <= r <= iv.hi
        assert iv.multiplicity == roots.count(r)
        if not iv.exact:
            assert sq(iv.lo) * sq(iv.hi) < 0
    for a, b in zip(iso.intervals, iso.intervals[1:]):
        assert a.hi <= b.lo


@pytest.mark.parametrize("g,f,rel", [
    (T1, Poly([1, 4, 1]), Relation.STRICTLY_INTERLACES),
    (T1, T1 ** 2, Relation.INTERLACES),
    (Poly([2, 1]), T1, Relation.STRICTLY_ALTERNATES_LEFT),
    (T1, Poly([2, 1]), Relation.INCOMPARABLE),
    (T1, Poly([1, 0, 1]), Relation.NOT_REAL_ROOTED),
])
def test_verdict_examples(g, f, rel):
    assert interlace_verdict(g, f).relation is rel


def test_shared_root_reported():
    v = interlace_verdict(T1, T1 ** 2)
    assert v.shared_roots == T1
    assert not v.strict and v.holds


def test_degenerate_conventions():
    assert interlace_verdict(Poly([3]), Poly([1, 2])).holds
    assert interlace_verdict(Poly([]), Poly([1, 4, 1])).holds
    assert interlace_verdict(Poly([1, 4, 1]), Poly([])).holds
    assert interlace_verdict(Poly([1]), Poly([1])).holds
    assert not interlace_verdict(Poly([]), Poly([1, 0, 1])).holds


def test_verdict_json_has_witness():
    d = interlace_verdict(T1, T1 ** 2).to_json()
    assert d["relation"] == "Interlaces"
    assert d["shared_roots"] == ["1", "1"]
    assert d["witness"]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=5), min_size=1, max_size=5, unique=True),
       st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=5), min_size=1, max_size=5, unique=True))
def test_verdict_coherence(ra, rb):
    g, f = Poly.from_roots(ra), Poly.from_roots(rb)
    v = interlace_verdict(g, f)
    if v.relation is Relation.STRICTLY_INTERLACES:
        assert f.degree == g.degree + 1
    if v.relation is Relation.STRICTLY_ALTERNATES_LEFT:
        assert f.degree == g.degree
    if v.strict:
        assert poly_gcd(f, g).degree == 0


def test_family_examples():
    assert check_family_sturm([baxter_polynomial(n) for n in range(1, 11)], "strict").verdict
    binom = [T1 ** k for k in range(10)]
    assert check_family_sturm(binom, "generalized").verdict
    strict = check_family_sturm(binom, "strict")
    assert not strict.verdict and strict.first_failure == 1
    bad = check_family_sturm([T1, Poly([1, 0, 1])], "strict")
    assert not bad.verdict and bad.first_failure == 0


def test_family_validation():
    with pytest.raises(DomainError):
        check_family_sturm([], "strict")
    with pytest.raises(DomainError):
        check_family_sturm([T1], "sideways")


def test_hoggatt_m4_family_short():
    assert check_family_sturm([hoggatt_polynomial(n, 4) for n in range(1, 12)], "strict").verdict
