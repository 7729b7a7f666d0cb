import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernstirling.combinatorics import (
    UsageError,
    bell_partial,
    binomial,
    faa_di_bruno_nth,
    factorial,
    faulhaber_coefficients,
    power_sum,
    stirling,
    stirling_explicit,
    stirling_table,
)

from oracles import bell_by_set_partitions, pascal, stirling_by_enumeration


def test_factorial_binomial():
    assert factorial(0) == 1
    rows = pascal(12)
    assert binomial(5, 2) == rows[5][2] == 10
    for n, row in enumerate(rows):
        assert [binomial(n, k) for k in range(n + 1)] == row
    assert binomial(3, 7) == 0
    with pytest.raises(UsageError):
        factorial(-1)


def test_stirling_explicit_examples():
    assert stirling_explicit(0, 0) == 1
    for n in range(21):
        assert stirling_explicit(n, n) == 1
    assert stirling_explicit(4, 2) == 7
    assert stirling_explicit(3, 5) == 0


@pytest.mark.parametrize("n", range(8))
def test_stirling_matches_enumeration(n):
    table = stirling_table(n)
    for k in range(n + 1):
        expected = stirling_by_enumeration(n, k)
        assert stirling_explicit(n, k) == expected
        assert table(n, k) == expected


def test_stirling_table_rows():
    assert stirling_table(0).rows == ((1,),)
    assert stirling_table(4).row(4) == (0, 1, 7, 6, 1)
    assert stirling_table(3).row(3) == (0, 1, 3, 1)
    t = stirling_table(5)
    assert t(2, 4) == 0
    with pytest.raises(UsageError):
        t(6, 1)


def test_stirling_dual_algorithm_to_60():
    table = stirling_table(60)
    for n in range(61):
        for k in range(n + 1):
            assert table(n, k) == stirling_explicit(n, k)
    assert table(60, 0) == 0 and table(60, 60) == 1


def test_shared_table_grows():
    assert stirling(70, 35) == stirling_explicit(70, 35)


def test_stirling_table_csv():
    text = stirling_table(2).to_csv().splitlines()
    assert text == ["n,k,S", "0,0,1", "1,0,0", "1,1,1", "2,0,0", "2,1,1", "2,2,1"]


def test_bell_examples():
    assert bell_partial(3, 2, [1, 5]) == 15
    assert bell_partial(4, 4, [2]) == 16
    assert bell_partial(5, 3, [1, 1, 1]) == 25 == stirling_explicit(5, 3)


def test_bell_argument_length_checked():
    with pytest.raises(UsageError):
        bell_partial(4, 2, [1, 1])
    with pytest.raises(UsageError):
        bell_partial(3, 0, [1, 1, 1, 1])


@pytest.mark.parametrize("n", range(1, 8))
def test_bell_matches_set_partition_oracle(n):
    rng = random.Random(n)
    for k in range(1, n + 1):
        xs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n - k + 1)]
        assert bell_partial(n, k, xs) == bell_by_set_partitions(n, k, xs)


small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_bell_homogeneity(data):
    n = data.draw(st.integers(1, 9))
    k = data.draw(st.integers(1, n))
    a = data.draw(small_q)
    b = data.draw(small_q)
    xs = data.draw(st.lists(small_q, min_size=n - k + 1, max_size=n - k + 1))
    scaled = [a * b ** (i + 1) * x for i, x in enumerate(xs)]
    assert bell_partial(n, k, scaled) == a**k * b**n * bell_partial(n, k, xs)


def test_bell_specialization_to_12():
    for n in range(1, 13):
        for k in range(1, n + 1):
            assert bell_partial(n, k, [1] * (n - k + 1)) == stirling_explicit(n, k)


def test_faa_di_bruno_examples():
    # exp(exp(x)-1) style: every derivative 1, gives the Bell number
    assert faa_di_bruno_nth(3, [1] * 3, [1] * 3) == 5
    assert faa_di_bruno_nth(1, [Fraction(3)], [Fraction(7, 2)]) == Fraction(21, 2)
    with pytest.raises(UsageError):
        faa_di_bruno_nth(3, [1, 1], [1, 1, 1])


def test_faa_di_bruno_second_proof_integrand():
    # f(y)=1/y, g(x)=1+(e^x-1)t at x=0, t=1/2: g(0)=1, f^(k)(1)=(-1)^k k!, g^(j)(0)=t
    t = Fraction(1, 2)
    value = faa_di_bruno_nth(2, [-1, 2], [t, t])
    # 1/(1+(e^x-1)/2) = 2/(1+e^x); its second derivative at 0 is 0
    assert value == 0
    # closed form from the proof: sum_k (-1)^k k! t^k S(2,k)
    assert value == sum((-1) ** k * factorial(k) * t**k * stirling_explicit(2, k) for k in (1, 2))


@pytest.mark.parametrize(
    "p, expected",
    [
        (0, [0, 1]),
        (1, [0, Fraction(1, 2), Fraction(1, 2)]),
        (2, [0, Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)]),
        (3, [0, 0, Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]),
    ],
)
def test_faulhaber_examples(p, expected):
    fc = faulhaber_coefficients(p)
    assert list(fc.coeffs) == expected
    for n in range(1, p + 3):
        assert fc.evaluate(n) == power_sum(n, p)


@pytest.mark.parametrize("p", range(0, 40, 3))
def test_faulhaber_out_of_sample(p):
    fc = faulhaber_coefficients(p)
    assert fc[0] == 0
    for n in range(p + 2, p + 11):
        assert fc.evaluate(n) == power_sum(n, p)


@pytest.mark.parametrize("p", range(0, 22))
def test_faulhaber_solvers_agree(p):
    assert faulhaber_coefficients(p) == faulhaber_coefficients(p, method="bareiss")
