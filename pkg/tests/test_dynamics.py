from fractions import Fraction

import numpy as np
import pytest

from ipword.dynamics import (
    classify_singularity,
    coincidence_check,
    ip_verdict_sturmian,
    n_epsilon,
    proximality_scan,
    rotation_gaps,
    separation_analysis,
    t3_build,
    t4_partition,
    thickness_profile,
    verify_separation,
)
from ipword.errors import InvalidArgument, StreamsIdentical
from ipword.generators import (
    GOLDEN_ALPHA,
    Substitution,
    SturmianParams,
    characteristic_word,
    fibonacci,
    generalized_tm_fixed_point,
    mechanical_word,
    weak_mixing,
    weak_mixing_substitution,
)
from ipword.quadratic import QuadraticReal
from ipword.words import PrependStream, complexity_profile, factors_of_length

A = GOLDEN_ALPHA
SQRT2 = QuadraticReal(-1, 1, 2)  # sqrt2 - 1


def mech(p=0, q=0, conv="lower", alpha=A):
    return mechanical_word(SturmianParams(alpha, Fraction(p), Fraction(q), conv))


def brute_n_epsilon(alpha, eps):
    n = 1
    while max(rotation_gaps(alpha, n)) >= eps:
        n += 1
    return n


def test_lower_upper_at_zero_merge():
    cert = separation_analysis(mech(), mech(conv="upper"), 10_000, characteristic_word(A))
    assert cert.verdict == "merge" and cert.n0 <= 2
    assert cert.characteristic_tail
    assert verify_separation(cert.to_dict())


def test_zero_and_half_separate():
    cert = separation_analysis(mech(), mech(Fraction(1, 2)), 10_000)
    assert cert.verdict == "separated"
    x, y = mech().prefix(10_000), mech(Fraction(1, 2)).prefix(10_000)
    n = cert.window
    assert all(x[i:i + n] != y[i:i + n] for i in range(10_000 - n + 1))
    assert any(x[i:i + n - 1] == y[i:i + n - 1] for i in range(10_000 - n + 2))
    assert verify_separation(cert.to_dict())


def test_identical_streams():
    with pytest.raises(StreamsIdentical):
        separation_analysis(fibonacci(), fibonacci(), 100)
    with pytest.raises(InvalidArgument):
        separation_analysis(fibonacci(), mech(), 50)


def test_tampered_separation_fails():
    doc = separation_analysis(mech(), mech(Fraction(1, 2)), 1000).to_dict()
    doc["window"] -= 1
    assert not verify_separation(doc)


@pytest.mark.parametrize("alpha", [A, SQRT2])
@pytest.mark.parametrize("eps", [Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 10), Fraction(1, 100),
                                 Fraction(7, 360)])
def test_n_epsilon_is_minimal(alpha, eps):
    assert n_epsilon(alpha, eps) == brute_n_epsilon(alpha, eps)


def test_n_epsilon_examples():
    assert n_epsilon(A, Fraction(1)) == 2
    assert n_epsilon(A, Fraction(1, 2)) <= 5
    assert max(rotation_gaps(A, n_epsilon(A, Fraction(1, 100)))) < Fraction(1, 100)
    with pytest.raises(InvalidArgument):
        n_epsilon(A, Fraction(0))


@pytest.mark.parametrize("rho,rho2", [
    ((0, 0), (Fraction(1, 2), 0)),
    ((Fraction(1, 3), 0), (Fraction(1, 2), 0)),
    ((0, 0), (0, Fraction(1, 2))),
    ((Fraction(1, 5), 1), (Fraction(1, 7), 2)),
    ((Fraction(1, 10), 0), (0, Fraction(1, 3))),
])
def test_separation_window_bounded_by_rotation_gaps(rho, rho2):
    x, y = mech(*rho), mech(*rho2)
    delta = (mech(*rho2).params.rho - mech(*rho).params.rho).frac()
    eps = min(A, 1 - A, delta, 1 - delta)
    cert = separation_analysis(x, y, 10_000)
    assert cert.verdict == "separated"
    assert cert.window <= n_epsilon(A, eps)


def test_classify_examples():
    assert str(classify_singularity(SturmianParams(A))) == "singular(1)"
    assert str(classify_singularity(SturmianParams(A, 0, 1))) == "singular(0)"
    assert not classify_singularity(SturmianParams(A, Fraction(1, 2))).singular
    assert classify_singularity(SturmianParams(A, 3, -2)).n == 3


PARAMS = [(0, 0), (0, 1), (0, -1), (0, -4), (Fraction(1, 2), 0), (0, Fraction(1, 2)),
          (Fraction(1, 3), 1), (2, -7), (0, 2), (Fraction(2, 3), Fraction(-1, 3))]


@pytest.mark.parametrize("p,q", PARAMS)
def test_singularity_agrees_with_companion_behaviour(p, q):
    params = SturmianParams(A, Fraction(p), Fraction(q))
    s = classify_singularity(params)
    lower, upper = mechanical_word(params), mechanical_word(params.companion())
    diff = np.flatnonzero(lower.array(5000) != upper.array(5000)).tolist()
    if s.singular:
        assert diff == [i for i in (s.n - 2, s.n - 1) if i >= 0]
        if diff:
            cert = separation_analysis(lower, upper, 5000)
            assert cert.verdict == "merge" and cert.n0 == s.n
    else:
        assert diff == []


def test_verdict_nonsingular():
    params = SturmianParams(A, Fraction(1, 2))
    w = mechanical_word(params).prefix(10_000)
    prefix = w[:3]
    assert ip_verdict_sturmian(params, prefix, 10_000).reason == "prefix-of-ω"
    for u in factors_of_length(mechanical_word(params), 3, 10_000) - {prefix}:
        v = ip_verdict_sturmian(params, u, 10_000)
        assert v.verdict == "not-IP" and v.reason == "neither"


def test_verdict_singular_pair():
    params = SturmianParams(A)
    char = characteristic_word(A).prefix(6)
    assert ip_verdict_sturmian(params, (0,) + char, 10_000).reason == "prefix-of-ω"
    assert ip_verdict_sturmian(params, (1,) + char, 10_000).reason == "prefix-of-ω′"


def test_verdict_requires_factor():
    with pytest.raises(InvalidArgument):
        ip_verdict_sturmian(SturmianParams(A), "11", 1000)


def test_proximality_examples():
    char = characteristic_word(A)
    rep = proximality_scan(PrependStream((0,), char), PrependStream((1,), char), 5000)
    assert rep.runs == ((1, 4999),) and rep.max_run == 4999
    tm = proximality_scan(generalized_tm_fixed_point(2, 1), generalized_tm_fixed_point(2, 2), 100_000)
    assert tm.max_run == 0
    assert proximality_scan(fibonacci(), fibonacci(), 300).runs == ((0, 300),)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_no_coincidence(r):
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i != j:
                assert coincidence_check(r, i, j, 20_000) is None
    with pytest.raises(InvalidArgument):
        coincidence_check(r, 1, 1, 10)


def test_thickness_weak_mixing():
    prof = thickness_profile(weak_mixing_substitution(), "0", "0", 200, 100_000)
    assert prof.longest_run >= 50
    w = weak_mixing().prefix(100_000)
    for n, pos in prof.witnesses.items():
        assert w[pos] == 0 and w[pos + 1 + n] == 0


def test_thickness_boundaries():
    with pytest.raises(InvalidArgument):
        thickness_profile(Substitution.parse("0->01;1->0"), "11", "11", 10, 1000)
    fib = thickness_profile(Substitution.parse("0->01;1->0"), "1", "1", 0, 1000)
    assert fib.hits == frozenset()  # 11 is not a factor
    wm = thickness_profile(weak_mixing_substitution(), "0", "0", 0, 1000)
    assert wm.hits == frozenset({0})


def test_t3():
    part = t3_build(2, 3)
    classes = part.classes(10_000)
    assert sorted(classes[1] + classes[2]) == list(range(10_000))
    for n in (1, 2, 3):
        assert part.verdict(1, n) and part.verdict(2, n)
    x = generalized_tm_fixed_point(2, 1).prefix(1000)
    for n in range(4, 1001):
        v = [part.verdict(i, n) for i in (1, 2)]
        assert v.count(True) == 1
        assert v[x[n - 4] - 1]
    assert part.word.prefix(4) == tuple(reversed(x[:4]))


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_t4(r):
    part = t4_partition(r, 10_000)
    prof = complexity_profile(weak_mixing(), part.m, 10_000)
    assert prof.rho(part.m) >= r
    if part.m > 1:
        assert prof.rho(part.m - 1) < r
    assert part.verified
    assert len(part.classes) == r and all(part.classes)
    assert sorted(p for c in part.classes for p in c) == list(range(10_000 - part.m + 1))
