from fractions import Fraction

import mpmath
import numpy as np
import pytest

from ipword.errors import Degenerate, InvalidArgument, NotProlongable
from ipword.generators import (
    GOLDEN_ALPHA,
    Substitution,
    SturmianParams,
    characteristic_word,
    fibonacci,
    fixed_point,
    generalized_tm_fixed_point,
    generalized_tm_substitution,
    is_primitive,
    m_bonacci,
    mechanical_word,
    weak_mixing,
)
from ipword.quadratic import QuadraticReal
from ipword.words import complexity_profile


def digit_sum(n, r):
    s = 0
    while n:
        s += n % r
        n //= r
    return s


def test_fibonacci_prefix():
    assert "".join(map(str, fibonacci().prefix(20))) == "01001010010010100101"


def test_characteristic_word_is_fibonacci_word():
    n = 100_000
    assert np.array_equal(characteristic_word(GOLDEN_ALPHA).array(n), fibonacci().array(n))


def test_rho_zero_lower_is_zero_then_characteristic():
    lower = mechanical_word(SturmianParams(GOLDEN_ALPHA))
    char = characteristic_word(GOLDEN_ALPHA)
    assert lower.letter_at(0) == 0
    assert lower.prefix(1001)[1:] == char.prefix(1000)
    upper = mechanical_word(SturmianParams(GOLDEN_ALPHA, convention="upper"))
    assert upper.letter_at(0) == 1
    assert upper.prefix(1001)[1:] == char.prefix(1000)


def test_mechanical_word_against_rational_floor_oracle():
    mpmath.mp.prec = 200
    alpha = QuadraticReal(0, Fraction(1, 2), 2)  # sqrt(2)/2
    params = SturmianParams(alpha, Fraction(1, 3), Fraction(2, 7))
    w = mechanical_word(params)
    got = w.prefix(2000)
    a, r = mpmath.sqrt(2) / 2, mpmath.mpf(1) / 3 + mpmath.sqrt(2) / 7

    def edge(n):
        return int(mpmath.floor(a * n + r))

    assert got == tuple(edge(n + 1) - edge(n) for n in range(2000))


def test_intercept_is_reduced():
    p = SturmianParams(GOLDEN_ALPHA, Fraction(5, 2), Fraction(1))
    assert 0 <= p.rho < 1
    other = SturmianParams(GOLDEN_ALPHA, Fraction(1, 2), Fraction(1))
    assert mechanical_word(p).prefix(300) == mechanical_word(other).prefix(300)


def test_params_validation():
    with pytest.raises(InvalidArgument):
        SturmianParams(QuadraticReal(Fraction(1, 2), 0))
    with pytest.raises(InvalidArgument):
        SturmianParams(QuadraticReal(0, 1, 5))
    with pytest.raises(InvalidArgument):
        SturmianParams(GOLDEN_ALPHA, convention="middle")


@pytest.mark.parametrize("alpha", [GOLDEN_ALPHA, QuadraticReal(-1, 1, 2), QuadraticReal(0, Fraction(1, 3), 3)])
def test_sturmian_complexity(alpha):
    w = mechanical_word(SturmianParams(alpha, Fraction(1, 5), 0))
    assert complexity_profile(w, 30, 20_000).counts == tuple(range(2, 32))


@pytest.mark.parametrize("r", [2, 3, 4])
def test_thue_morse_digit_sum_oracle(r):
    for i in range(1, r + 1):
        w = generalized_tm_fixed_point(r, i)
        expect = tuple((i - 1 + digit_sum(n, r)) % r + 1 for n in range(5000))
        assert w.prefix(5000) == expect


def test_thue_morse_images():
    assert generalized_tm_substitution(3).images == {1: (1, 2, 3), 2: (2, 3, 1), 3: (3, 1, 2)}
    assert "".join(map(str, generalized_tm_fixed_point(2, 1).prefix(8))) == "12212112"


def test_other_presets():
    assert "".join(map(str, m_bonacci(3).prefix(13))) == "0102010010201"
    assert "".join(map(str, weak_mixing().prefix(11))) == "00100111001"
    assert weak_mixing("11100").prefix(6) == (0, 0, 1, 0, 0, 1)


def test_fixed_point_errors():
    with pytest.raises(NotProlongable):
        fixed_point(Substitution({0: "10", 1: "0"}), 0)
    with pytest.raises(Degenerate):
        fixed_point(Substitution({0: "0", 1: "10"}), 0)
    with pytest.raises(InvalidArgument):
        Substitution({0: "02", 1: "0"})
    with pytest.raises(InvalidArgument):
        Substitution.parse("0 => 01")


def test_fixed_point_is_fixed():
    for sub, a in [(Substitution.parse("0->01;1->0"), 0), (Substitution.parse("0->001;1->11001"), 0),
                   (generalized_tm_substitution(3), 2)]:
        w = fixed_point(sub, a).prefix(3000)
        assert sub(w)[:3000] == w


def test_primitivity():
    assert is_primitive(Substitution.parse("0->01;1->0"))
    assert not is_primitive(Substitution.parse("0->01;1->1"))
    assert Substitution.parse("0->01;1->0").rules() == "0->01;1->0"
