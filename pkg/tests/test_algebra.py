import random
from fractions import Fraction

import pytest

from realcharvar.algebra import (HalfPowerPolynomial, ONE, Q, Q_MINUS_ONE,
                                 RF_ONE, RationalFunction, TruncatedSeries, U,
                                 ConstantTermNotOne, NonzeroConstantTerm,
                                 OddExponent, adams, format_poly,
                                 half_poly_eval, moebius, pleth_exp,
                                 pleth_log, poly_divmod, poly_gcd,
                                 rational_exponent_pow)


def q_power(k, c=1):
    return HalfPowerPolynomial.q_power(k, c)


def test_half_poly_eval_examples():
    assert half_poly_eval(Q - ONE, Fraction(5)) == 4
    assert half_poly_eval(ONE, Fraction(7)) == 1
    # the rank-2 worked value at q=5, frozen from the three-term closed form
    e2 = (Q_MINUS_ONE ** 2) * (
        (q_power(3) - Q) * 2 + (q_power(2) - ONE) * 2 - (q_power(2) - Q) * 2
    ) * Fraction(1, 2)
    assert half_poly_eval(e2, Fraction(5)) == 1984


def test_half_poly_eval_rejects_odd_exponents():
    with pytest.raises(OddExponent):
        half_poly_eval(U, Fraction(3))


def test_laurent_predicates():
    p = HalfPowerPolynomial({-2: 1, 0: -2, 3: 1})
    assert not p.is_q_polynomial()
    assert p.min_exp() == -2 and p.max_exp() == 3
    assert (p - p).is_zero()
    assert HalfPowerPolynomial({0: 1}).is_one()


def test_exchange_format_roundtrip():
    p = HalfPowerPolynomial({-1: Fraction(2, 3), 0: 1, 4: -5})
    triples = p.to_triples()
    assert triples == [[-1, 2, 3], [0, 1, 1], [4, -5, 1]]
    assert HalfPowerPolynomial.from_triples(triples) == p
    r = RationalFunction(p, Q - ONE)
    assert RationalFunction.from_pair(r.to_pair()) == r


def _random_poly(rng, span=4):
    return HalfPowerPolynomial({rng.randint(-span, span):
                                Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                                for _ in range(rng.randint(0, 5))})


def test_ring_axioms_random():
    rng = random.Random(20240901)
    for _ in range(200):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_rational_function_normalization():
    r = RationalFunction(q_power(2) - ONE, Q - ONE)
    assert r == RationalFunction(Q + ONE)
    assert r.is_polynomial()
    # denominator normalized to constant coefficient 1
    r2 = RationalFunction(ONE, (Q - ONE) * 3)
    assert r2.den.terms[0] == 1
    assert r2 == RationalFunction(ONE, Q - ONE) * Fraction(1, 3)


def test_rational_function_field_axioms_random():
    rng = random.Random(7)
    polys = []
    while len(polys) < 12:
        p = _random_poly(rng, span=2)
        if not p.is_zero():
            polys.append(p)
    fs = [RationalFunction(polys[i], polys[i + 1]) for i in range(0, 12, 2)]
    for a in fs:
        for b in fs:
            assert a + b == b + a
            assert a * b == b * a
            if not b.is_zero():
                assert (a / b) * b == a


def test_division_and_gcd():
    a = (Q - ONE) * (Q + ONE)
    quo, rem = poly_divmod(a, Q - ONE)
    assert rem.is_zero() and quo == Q + ONE
    g = poly_gcd((Q - ONE) ** 2 * (Q + ONE), (Q - ONE) * Q)
    # monic gcd of the ordinary parts
    quo2, rem2 = poly_divmod(Q - ONE, g)
    assert rem2.is_zero()


def test_adams_examples():
    assert adams(RationalFunction(Q - ONE), 2) == RationalFunction(q_power(2) - ONE)
    assert adams(RationalFunction(U), 2) == RationalFunction(Q)
    assert (adams(RationalFunction(ONE, Q - ONE), 3)
            == RationalFunction(ONE, q_power(3) - ONE))
    f = RationalFunction(Q + ONE, q_power(2) - Q)
    assert adams(f, 1) == f


def test_adams_is_ring_endomorphism():
    rng = random.Random(99)
    for _ in range(40):
        a, b = _random_poly(rng), _random_poly(rng)
        fa, fb = RationalFunction(a), RationalFunction(b)
        for d in (2, 3):
            assert adams(fa * fb, d) == adams(fa, d) * adams(fb, d)
            assert adams(fa + fb, d) == adams(fa, d) + adams(fb, d)


def test_pleth_exp_geometric():
    n = 8
    e = pleth_exp(TruncatedSeries(n, {1: RF_ONE}))
    assert all(e.coefficient(i) == RF_ONE for i in range(n + 1))
    eq = pleth_exp(TruncatedSeries(n, {1: RationalFunction(Q)}))
    assert all(eq.coefficient(i) == RationalFunction(q_power(i))
               for i in range(n + 1))


def test_pleth_exp_two_factors():
    # Exp(T + T^2) = 1/((1-T)(1-T^2)): 1 + T + 2T^2 + 2T^3 + 3T^4 + ...
    n = 6
    e = pleth_exp(TruncatedSeries(n, {1: RF_ONE, 2: RF_ONE}))
    expected = [1, 1, 2, 2, 3, 3, 4]
    got = [e.coefficient(i).evaluate(Fraction(3)) for i in range(n + 1)]
    assert got == expected


def test_pleth_exp_multiplicative():
    n = 7
    v = TruncatedSeries(n, {1: RationalFunction(Q), 3: RationalFunction(Q - ONE)})
    w = TruncatedSeries(n, {2: RF_ONE})
    assert pleth_exp(v + w) == pleth_exp(v) * pleth_exp(w)


def test_pleth_log_examples():
    n = 8
    inv_1mt = pleth_exp(TruncatedSeries(n, {1: RF_ONE}))
    assert pleth_log(inv_1mt) == TruncatedSeries(n, {1: RF_ONE})
    both = inv_1mt * pleth_exp(TruncatedSeries(n, {1: RationalFunction(Q)}))
    assert pleth_log(both) == TruncatedSeries(
        n, {1: RationalFunction(Q + ONE)})


def test_pleth_log_exp_roundtrip_random():
    rng = random.Random(5)
    n = 6
    for _ in range(10):
        v = TruncatedSeries(n, {i: RationalFunction(_random_poly(rng, span=2))
                                for i in range(1, n + 1)})
        assert pleth_log(pleth_exp(v)) == v


def test_pleth_preconditions():
    n = 4
    with pytest.raises(NonzeroConstantTerm):
        pleth_exp(TruncatedSeries.one(n))
    with pytest.raises(ConstantTermNotOne):
        pleth_log(TruncatedSeries(n, {1: RF_ONE}))


def test_rational_exponent_pow():
    n = 6
    f = TruncatedSeries(n, {0: RF_ONE, 1: RF_ONE})
    sq = rational_exponent_pow(f, 2)
    assert sq == f * f
    back = rational_exponent_pow(sq, Fraction(1, 2))
    assert back == f
    # binomial series of (1-T)^(-1/2): 1 + T/2 + 3T^2/8 + 5T^3/16
    geo = pleth_exp(TruncatedSeries(n, {1: RF_ONE}))
    half = rational_exponent_pow(geo, Fraction(1, 2))
    assert half.coefficient(1).evaluate(Fraction(2)) == Fraction(1, 2)
    assert half.coefficient(2).evaluate(Fraction(2)) == Fraction(3, 8)
    assert half.coefficient(3).evaluate(Fraction(2)) == Fraction(5, 16)


def test_rational_pow_root_roundtrip_random():
    rng = random.Random(11)
    n = 5
    for c in (2, 3, 4):
        coeffs = {i: RationalFunction(_random_poly(rng, 2))
                  for i in range(1, n + 1)}
        coeffs[0] = RF_ONE
        f = TruncatedSeries(n, coeffs)
        root = rational_exponent_pow(f, Fraction(1, c))
        assert rational_exponent_pow(root, c) == f


def test_moebius():
    assert [moebius(d) for d in range(1, 13)] == \
        [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_format_poly():
    assert format_poly(Q_MINUS_ONE ** 2) == "q^2 - 2*q + 1"
    assert format_poly(HalfPowerPolynomial()) == "0"
    assert format_poly(HalfPowerPolynomial({1: 1})) == "q^(1/2)"
