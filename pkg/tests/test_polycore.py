from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baxterkit.combinat import f_poly
from baxterkit.errors import UndefinedGcdError
from baxterkit.polycore import (
    Poly,
    hadamard,
    int_taylor_shift,
    integer_coeffs,
    poly_divmod,
    poly_gcd,
    poly_shift_eval,
    poly_squarefree,
    rat_str,
    squarefree_decomposition,
    to_rat,
)

small = st.integers(-20, 20)
polys = st.lists(small, max_size=7).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_rational_parsing_and_printing():
    assert to_rat("-22/3") == Fraction(-22, 3)
    assert to_rat(5) == 5
    assert rat_str(Fraction(955, 27)) == "955/27"
    assert rat_str(Fraction(4)) == "4"


def test_zero_polynomial_has_degree_minus_one():
    assert Poly([]).degree == -1
    assert Poly([0, 0]).is_zero()


def test_trailing_zeros_are_trimmed():
    assert Poly([1, 2, 0, 0]).coeffs == (1, 2)


def test_json_round_trip():
    p = Poly([Fraction(-22, 3), 0, 1])
    assert p.to_json() == ["-22/3", "0", "1"]
    assert Poly.from_json(p.to_json()) == p


def test_hadamard_truncates_to_shorter():
    assert hadamard(Poly([1, 2, 3]), Poly([4, 5])) == Poly([4, 10])
    assert Poly([1, 4, 1]).hadamard(Poly([1, 1])) == Poly([1, 4])


def test_division_with_remainder():
    q, r = poly_divmod(Poly([1, 0, 1]), Poly([1, 1]))
    assert q == Poly([-1, 1]) and r == Poly([2])


def test_gcd_normalisation():
    f = Poly.from_roots([-1, -1, -2])
    g = Poly.from_roots([-1, 3]) * 6
    assert poly_gcd(f, g) == Poly([1, 1])
    assert poly_gcd(Poly([-5]), Poly([3, 1])) == Poly([1])
    assert poly_gcd(Poly([0]), Poly([-2, -4])) == Poly([1, 2])


def test_gcd_of_two_zeros_is_undefined():
    with pytest.raises(UndefinedGcdError):
        poly_gcd(Poly([]), Poly([]))


def test_squarefree_and_yun():
    f = Poly.from_roots([-1, -1, -1, 2, 2, 5])
    assert poly_squarefree(f) == Poly.from_roots([-1, 2, 5])
    dec = dict((m, q) for q, m in squarefree_decomposition(f))
    assert dec == {1: Poly.from_roots([5]), 2: Poly.from_roots([2]), 3: Poly.from_roots([-1])}


def test_taylor_shift_and_eval():
    p = Poly([-100, 0, 1])
    assert int_taylor_shift([-100, 0, 1], 10) == [0, 20, 1]
    assert poly_shift_eval(p, shift=10) == Poly([0, 20, 1])
    assert poly_shift_eval(p, eval=Fraction(1, 2)) == Fraction(-399, 4)
    with pytest.raises(ValueError):
        poly_shift_eval(p)


def test_integer_coeffs_clears_denominators():
    assert integer_coeffs(Poly([Fraction(1, 2), Fraction(1, 3)])) == [3, 2]


def test_str_form():
    assert str(Poly([1, 4, 1])) == "1 + 4*t + t^2"


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys, nonzero_polys)
def test_division_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides_and_contains_common_factor(a, b, c):
    g = poly_gcd(a * c, b * c)
    assert (a * c % g).is_zero() and (b * c % g).is_zero()
    assert (g % c.primitive()).is_zero() if c.degree > 0 else True
    assert g.lead > 0


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(-5, 5), st.integers(-5, 5))
def test_shift_commutes_with_eval(p, k, x):
    assert p.shift(k)(x) == p(x + k)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_derivative_is_a_derivation(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_documented_examples():
    t1 = Poly([1, 1])
    assert t1 * t1 == Poly([1, 2, 1])
    assert Poly([1, 4, 1]) * t1 == Poly([1, 5, 5, 1])
    assert (Poly([]) * t1).is_zero()
    assert Poly([1, 4, 1]).derivative() == Poly([4, 2])
    assert Poly([7]).derivative().is_zero()
    g32 = Poly([1, 3, 3, 1]).hadamard(Poly([1, 2, 1]))
    assert g32 == Poly([1, 6, 3])
    assert g32.derivative() == Poly([6, 6])
    assert g32.derivative() == f_poly(2, 2) * 3
    assert Poly([1, 1]).hadamard(Poly([1, 1, 1])) == Poly([1, 1])
    assert Poly([1, 2]).hadamard(Poly([5])) == Poly([5])
    assert poly_gcd(t1 * t1, t1 * Poly([2, 1])) == t1
    assert poly_squarefree(t1 * t1) == t1
    assert poly_gcd(t1, Poly([2, 1])) == Poly([1])
    assert poly_shift_eval(Poly([0, 0, 1]), shift=1) == Poly([1, 2, 1])
    assert poly_shift_eval(Poly([1, 4, 1]), eval=1) == 6
    assert poly_shift_eval(Poly([9, 4, 1]), eval=0) == 9
