import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ipword.errors import InvalidArgument
from ipword.quadratic import (
    QuadraticReal,
    continued_fraction,
    convergent_denominators,
    floor_surd,
    parse_linear,
    surd_sign,
)

mpmath.mp.prec = 200

SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13]


def mp_value(x: QuadraticReal):
    return mpmath.mpf(x.a.numerator) / x.a.denominator + \
        mpmath.mpf(x.b.numerator) / x.b.denominator * mpmath.sqrt(x.d)


def rand_q(rng, d):
    def frac():
        return Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
    return QuadraticReal(frac(), frac(), d)


def test_random_floor_and_order_against_mpmath():
    rng = random.Random(7)
    for _ in range(10_000):
        d = rng.choice(SQUAREFREE)
        x, y = rand_q(rng, d), rand_q(rng, d)
        vx, vy = mp_value(x), mp_value(y)
        assert x.floor() == int(mpmath.floor(vx))
        assert x.ceil() == int(mpmath.ceil(vx))
        assert (x < y) == (vx < vy)
        assert x.sign() == int(mpmath.sign(vx))


@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30), st.sampled_from(SQUAREFREE),
       st.integers(1, 10**9))
@settings(max_examples=300)
def test_floor_surd_matches_high_precision(a, b, d, den):
    v = (mpmath.mpf(a) + b * mpmath.sqrt(d)) / den
    assert floor_surd(a, b, d, den) == int(mpmath.floor(v))
    assert surd_sign(a, b, d) == int(mpmath.sign(mpmath.mpf(a) + b * mpmath.sqrt(d)))


@given(st.fractions(max_denominator=1000), st.fractions(max_denominator=1000),
       st.fractions(max_denominator=1000), st.fractions(max_denominator=1000))
def test_field_identities(a, b, c, e):
    x, y = QuadraticReal(a, b), QuadraticReal(c, e)
    assert x + y - y == x
    assert (x * y) == (y * x)
    if y != 0:
        assert (x / y) * y == x
    assert x * x.conjugate() == QuadraticReal.rational(a * a - 5 * b * b)


def test_golden_alpha_basics(alpha):
    assert 0 < alpha < 1
    assert alpha * alpha - 3 * alpha + 1 == 0
    assert alpha.floor() == 0
    assert (1 - alpha).frac() == 1 - alpha


def test_continued_fraction_of_golden_alpha(alpha):
    # (3 - sqrt5)/2 = [0; 2, 1, 1, 1, ...]
    assert continued_fraction(alpha, 8) == [0, 2, 1, 1, 1, 1, 1, 1]
    assert convergent_denominators(alpha, 8) == [1, 2, 3, 5, 8, 13, 21, 34]
    assert continued_fraction(QuadraticReal(0, 1, 2), 6) == [1, 2, 2, 2, 2, 2]


def test_parse_literals(alpha):
    assert QuadraticReal.parse("(3-sqrt(5))/2") == alpha
    assert QuadraticReal.parse("(3 - √5)/2") == alpha
    assert QuadraticReal.parse(str(alpha)) == alpha
    assert QuadraticReal.parse("(1/2) + (1/3)*sqrt(7)") == QuadraticReal(Fraction(1, 2), Fraction(1, 3), 7)
    lin = parse_linear("1/2+(2/3)alpha")
    assert (lin.one, lin.alpha) == (Fraction(1, 2), Fraction(2, 3))


@pytest.mark.parametrize("bad", ["1/0", "(1+", "sqrt(2)+sqrt(3)", "alpha"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidArgument):
        QuadraticReal.parse(bad)


def test_square_root_of_square_is_rational():
    assert QuadraticReal.parse("sqrt(4)") == 2


def test_rejects_square_radicand():
    with pytest.raises(InvalidArgument):
        QuadraticReal(1, 1, 9)


def test_hash_ignores_radicand_for_rationals():
    assert QuadraticReal(2, 0, 5) == QuadraticReal(2, 0, 3)
    assert hash(QuadraticReal(2, 0, 5)) == hash(QuadraticReal(2, 0, 3))
