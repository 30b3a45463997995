from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from helpx.cyclotomic import (CycNumber, divisors, from_json, galois_apply, is_integral, is_totally_ramified,
                              lift_to_conductor, make_root, mobius, one, phi, ramanujan_traces, residue_mod_p,
                              to_json, trace_to_Q, try_descend, zero)
from helpx.errors import ConductorMismatch, NonCoprimeIndex, NotApplicable, NotInSubfield, NotIntegral

from oracles import brute_trace, close, complex_value, root_sum

I = make_root(4)
Z3 = make_root(3)

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24]


@st.composite
def cyc(draw, conductors=CONDUCTORS, lo=-6, hi=6, integral=False):
    n = draw(st.sampled_from(conductors))
    if integral:
        coords = draw(st.lists(st.integers(lo, hi), min_size=phi(n), max_size=phi(n)))
    else:
        coords = draw(st.lists(st.fractions(min_value=lo, max_value=hi, max_denominator=5),
                               min_size=phi(n), max_size=phi(n)))
    return CycNumber(n, coords)


# ---------------------------------------------------------------------------
# examples

def test_make_root_examples():
    assert make_root(1, 0) == one()
    assert make_root(4, 2) == CycNumber.rational(-1)
    r = make_root(3, 2)
    assert r.conductor == 3 and r.coords == (-1, -1)


def test_ring_examples():
    assert I * I == CycNumber.rational(-1)
    assert Z3 + Z3 ** 2 == CycNumber.rational(-1)
    assert (1 + I) * (1 - I) == CycNumber.rational(2)
    assert close(complex_value((1 + I) * (1 - I)), 2)


def test_galois_examples():
    assert galois_apply(make_root(8), 3) == make_root(8, 3)
    assert galois_apply(I, 3) == -I
    x = 1 + 2 * Z3
    assert galois_apply(x, 2) == 1 + 2 * Z3 ** 2 == -1 - 2 * Z3
    with pytest.raises(NonCoprimeIndex):
        galois_apply(I, 2)


def test_trace_examples():
    assert trace_to_Q(one(4)) == 2
    assert trace_to_Q(I) == 0
    assert trace_to_Q(Z3) == -1
    # Z3 written at conductor 12 lies in Q(zeta_12^4)
    assert trace_to_Q(Z3.lift(12), 4) == -1
    with pytest.raises(NotInSubfield):
        trace_to_Q(I.lift(12), 4)


def test_lift_descend_examples():
    m1 = CycNumber.rational(-1, 2)
    lifted = lift_to_conductor(m1, 4)
    assert lifted.conductor == 4 and lifted.coords == (-1, 0)
    assert try_descend(make_root(6, 2), 3) == Z3
    assert try_descend(make_root(6, 2), 3).conductor == 3
    assert try_descend(I.lift(12), 3) is None
    with pytest.raises(ConductorMismatch):
        lift_to_conductor(I, 6)
    with pytest.raises(ConductorMismatch):
        try_descend(I, 3)


def test_integrality_examples():
    assert is_integral(1 + I)
    assert not is_integral(CycNumber.rational(Fraction(1, 2)))
    assert is_integral((1 + Z3) * Z3)


def test_ramification_examples():
    assert is_totally_ramified(2, 4)
    assert not is_totally_ramified(2, 12)
    assert is_totally_ramified(3, 6)
    assert is_totally_ramified(3, 9) and not is_totally_ramified(3, 12)


def test_residue_examples():
    assert residue_mod_p(-I - 1, 2) == 0
    assert residue_mod_p(one(4), 2) == 1
    assert residue_mod_p(Z3, 3) == 1
    with pytest.raises(NotApplicable):
        residue_mod_p(one(12), 2)
    with pytest.raises(NotIntegral):
        residue_mod_p(CycNumber.rational(Fraction(1, 2), 4), 2)


def test_equality_across_conductors():
    assert Z3.lift(12) == Z3
    assert hash(Z3.lift(12)) == hash(Z3)
    assert make_root(6) == -Z3 ** 2
    assert make_root(12) ** 3 == I


def test_json_round_trip():
    x = Fraction(1, 3) - 2 * make_root(9, 4)
    assert from_json(to_json(x)) == x
    assert from_json(3) == CycNumber.rational(3)
    assert from_json("-2/7") == CycNumber.rational(Fraction(-2, 7))
    with pytest.raises(ValueError):
        from_json({"conductor": 4, "coords": [0.5, 0]})
    with pytest.raises(ValueError):
        CycNumber(4, [1, 2, 3])


def test_degenerate_conductors():
    for n in (1, 2):
        x = CycNumber(n, [Fraction(3, 2)])
        assert x * x == CycNumber.rational(Fraction(9, 4))
        assert trace_to_Q(x) == Fraction(3, 2)


# ---------------------------------------------------------------------------
# properties

@settings(max_examples=300, deadline=None)
@given(cyc(), cyc(), cyc())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == zero()
    if not x.is_zero():
        assert (y / x) * x == y


@settings(max_examples=1200, deadline=None)
@given(cyc())
def test_trace_matches_complex_evaluation(x):
    t = trace_to_Q(x)
    assert close(float(t), brute_trace(x))
    # sum of Galois images, evaluated independently
    n = x.conductor
    s = sum((galois_apply(x, j) for j in range(1, n + 1) if gcd(j, n) == 1), zero())
    assert s == CycNumber.rational(t)


@settings(max_examples=300, deadline=None)
@given(cyc(), cyc())
def test_products_match_complex_evaluation(x, y):
    assert close(complex_value(x * y), complex_value(x) * complex_value(y), 1e-8)
    assert close(complex_value(x + y), complex_value(x) + complex_value(y), 1e-8)
    assert close(complex_value(x.conj()), complex_value(x).conjugate(), 1e-8)


@pytest.mark.parametrize("n", range(1, 61))
def test_ramanujan_sums(n):
    rt = ramanujan_traces(n)
    for k in range(n):
        g = n // gcd(n, k)
        expect = Fraction(mobius(g) * phi(n), phi(g))
        assert trace_to_Q(make_root(n, k)) == expect == rt[k]
        assert close(root_sum(n, k), float(expect))


@settings(max_examples=300, deadline=None)
@given(cyc(), st.sampled_from([1, 2, 3, 5]))
def test_lift_then_descend(x, k):
    m = x.conductor * k
    y = lift_to_conductor(x, m)
    assert y == x
    assert try_descend(y, x.conductor).coords == x.coords
    assert x.minimal() == x
    assert x.minimal().conductor in divisors(x.conductor)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_residue_is_a_ring_map(data):
    n = data.draw(st.sampled_from([2, 3, 4, 5, 8, 9, 10, 16, 25, 27, 18]))
    x = data.draw(cyc([n], integral=True))
    y = data.draw(cyc([n], integral=True))
    p = next(q for q in (2, 3, 5) if n % q == 0 and is_totally_ramified(q, n))
    rx, ry = residue_mod_p(x, p), residue_mod_p(y, p)
    assert residue_mod_p(x * y, p) == (rx * ry) % p
    assert residue_mod_p(x + y, p) == (rx + ry) % p
    # p itself and (1 - zeta) lie in the prime
    assert residue_mod_p(CycNumber.rational(p, n), p) == 0
    assert residue_mod_p(1 - make_root(n), p) == 0 or n % 4 == 2 and p != 2
