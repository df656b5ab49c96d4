import pytest
from hypothesis import given, strategies as st

from klkit.poly import (DegreeBoundError, IntPoly, LaurentPoly, bar_involution, eval_int,
                        twist_kl, untwist_kl)

coeffs = st.lists(st.integers(-20, 20), max_size=6)
ints = coeffs.map(IntPoly)
laurents = st.builds(LaurentPoly, st.integers(-4, 4), coeffs)


def test_small_products():
    one_q = IntPoly([1, 1])
    assert one_q * one_q == IntPoly([1, 2, 1])
    assert IntPoly([-1, 1]) * IntPoly([1, 1]) == IntPoly([-1, 0, 1])
    assert one_q + (-one_q) == IntPoly()
    assert (one_q + (-one_q)).degree == -1


def test_evaluation_at_minus_one():
    assert eval_int(IntPoly([0, 1]), -1) == -1
    assert eval_int(IntPoly([1]), -1) == 1
    assert eval_int(IntPoly([1, 0, 1]), -1) == 2


def test_twist_examples():
    assert twist_kl(IntPoly([1]), 0) == IntPoly([1])
    assert twist_kl(IntPoly([1]), 3) == IntPoly.monomial(3)
    assert twist_kl(IntPoly([1, 1]), 4) == IntPoly([0, 0, 1, 0, 1])
    with pytest.raises(DegreeBoundError):
        twist_kl(IntPoly([1, 1]), 1)


def test_bar_examples():
    assert bar_involution(IntPoly([1])) == LaurentPoly(0, [1])
    assert bar_involution(IntPoly([0, 1])) == LaurentPoly(-1, [1])
    assert bar_involution(IntPoly([-1, 1])) == LaurentPoly(-1, [1, -1])


def test_format_and_json():
    assert IntPoly([1, 1]).format("q") == "1 + q"
    assert IntPoly().format() == "0"
    p = LaurentPoly(-2, [3, 0, -1])
    assert LaurentPoly.from_json(p.to_json()) == p
    assert IntPoly.from_json(IntPoly([2, 0, 5]).to_json()) == IntPoly([2, 0, 5])


def test_immutable():
    with pytest.raises(AttributeError):
        IntPoly([1]).coeffs = (2,)


@given(ints, ints, ints)
def test_ring_axioms_intpoly(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == IntPoly()


@given(laurents, laurents, laurents)
def test_ring_axioms_laurent(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(laurents)
def test_bar_is_involution(a):
    assert a.bar().bar() == a
    assert bar_involution(bar_involution(a)) == a


@given(laurents, laurents)
def test_bar_is_multiplicative(a, b):
    assert (a * b).bar() == a.bar() * b.bar()


@given(ints, st.integers(0, 14))
def test_twist_values_at_plus_minus_one(p, d):
    if 2 * p.degree > d:
        return
    a = twist_kl(p, d)
    assert a(1) == p(1)
    assert a(-1) == (-1) ** d * p(1)
    assert untwist_kl(a, d) == p


@given(ints, st.integers(-3, 3))
def test_evaluation_is_homomorphism(p, n):
    q = p * p + p
    assert q(n) == p(n) * p(n) + p(n)
