from fractions import Fraction

import pytest

from bernstirling.combinatorics import UsageError
from bernstirling.engines import (
    TANGENT_VARIANTS,
    BernoulliMethod,
    ParityError,
    bernoulli_ct,
    bernoulli_double_stirling,
    bernoulli_gf,
    bernoulli_new_stirling,
    bernoulli_recursion_A,
    bernoulli_stirling,
    bernoulli_stirling_from_one,
    bernoulli_tangent,
    compute,
    cross_check,
    tangent_sweep,
)

F = Fraction

# B_0..B_12 as produced by the generating-function route (self-checked division)
GF_VALUES = {
    0: F(1), 1: F(-1, 2), 2: F(1, 6), 3: F(0), 4: F(-1, 30), 5: F(0), 6: F(1, 42),
    7: F(0), 8: F(-1, 30), 9: F(0), 10: F(5, 66), 11: F(0), 12: F(-691, 2730),
}


def test_gf_oracle_frozen_values():
    for n, v in GF_VALUES.items():
        assert bernoulli_gf(n) == v


def test_gf_oracle_satisfies_binomial_recurrence():
    # sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1 follows from x = (e^x-1) * x/(e^x-1)
    from math import comb
    values = [bernoulli_gf(n) for n in range(31)]
    for n in range(1, 31):
        assert sum(comb(n + 1, j) * values[j] for j in range(n + 1)) == 0


@pytest.mark.parametrize(
    "route", [bernoulli_stirling, bernoulli_ct, bernoulli_new_stirling]
)
def test_all_index_routes(route):
    for n, v in GF_VALUES.items():
        assert route(n) == v


@pytest.mark.parametrize(
    "route", [bernoulli_recursion_A, bernoulli_double_stirling]
)
def test_even_routes(route):
    for k in range(1, 7):
        assert route(k) == GF_VALUES[2 * k]


def test_stirling_route_examples():
    assert bernoulli_stirling(0) == 1
    assert bernoulli_stirling(1) == F(-1, 2)
    assert bernoulli_stirling(12) == F(-691, 2730)


def test_ct_route_single_term():
    assert bernoulli_ct(1) == F(-1, 2)
    assert bernoulli_ct(7) == 0


def test_recursion_k1_is_empty_sum():
    assert bernoulli_recursion_A(1) == F(1, 2) - F(1, 3) == F(1, 6)


def test_recursion_needs_exponent_2k_minus_1():
    from bernstirling.combinatorics import faulhaber_coefficients
    # with exponent 2k the even-index coefficients A_{2(k-i)} vanish for k >= 2
    for k in range(2, 6):
        A = faulhaber_coefficients(2 * k)
        assert all(A[2 * (k - i)] == 0 for i in range(1, k))
    assert faulhaber_coefficients(3)[2] == F(1, 4)


def test_double_stirling_by_hand():
    # k=1: 1 + S(3,2)S(2,1)/C(2,1) - (2/3)(S(2,1)S(3,2)/C(2,0) + S(2,2)S(3,1)/C(2,1))
    assert 1 + F(3 * 1, 2) - F(2, 3) * (3 + F(1, 2)) == F(1, 6)
    assert bernoulli_double_stirling(1) == F(1, 6)
    assert bernoulli_double_stirling(5) == F(5, 66)


def test_new_stirling_small():
    assert bernoulli_new_stirling(0) == 1
    assert bernoulli_new_stirling(1) == F(-1, 2)
    assert bernoulli_new_stirling(6) == F(1, 42)


def test_tangent_literal_and_variants():
    assert bernoulli_tangent(1) == F(1, 3)
    assert bernoulli_tangent(1) != bernoulli_gf(2)
    assert bernoulli_tangent(1, exponent=1) == F(1, 6)
    # exponent only enters as the power of two
    for k in range(1, 5):
        assert bernoulli_tangent(k, exponent=0) == bernoulli_tangent(k) * 4 ** (k - 1)


def test_tangent_sweep_report():
    sweep = tangent_sweep(8)
    assert sweep.consistent()
    assert sweep.full_matches() == []
    m = sweep.matches("2k-1")
    assert m[1] and not any(m[k] for k in range(2, 9))
    assert sweep.power_of_two_exponent(1) == 1
    assert all(sweep.power_of_two_exponent(k) is None for k in range(2, 9))
    assert sweep.required_scale[2] == 12 and sweep.required_scale[3] == 82
    assert set(sweep.values) == set(TANGENT_VARIANTS)
    assert len(sweep.rows()) == 8 * len(TANGENT_VARIANTS)


def test_compute_dispatch_and_parity():
    assert compute(12, "double_stirling") == F(-691, 2730)
    assert compute(0, BernoulliMethod.GF_DIVISION) == 1
    for bad in (0, 3):
        with pytest.raises(ParityError):
            compute(bad, "recursion_faulhaber")
    with pytest.raises(UsageError):
        compute(-1, "stirling_sum")
    with pytest.raises(ValueError):
        compute(2, "no_such_method")


def test_method_domains():
    assert {m.value for m in BernoulliMethod if m.even_only} == {
        "recursion_faulhaber", "double_stirling", "tangent_formula"
    }
    assert not BernoulliMethod.DOUBLE_STIRLING.defined_at(0)
    assert BernoulliMethod.NEW_STIRLING.defined_at(0)


def test_truncation_equivalence():
    for n in range(1, 40):
        assert bernoulli_stirling(n) == bernoulli_stirling_from_one(n)


def test_cross_check_zero():
    r = cross_check(0)
    assert r.verdict == "agree"
    assert r.values == {0: {m: F(1) for m in ("constant_term", "gf_division", "new_stirling", "stirling_sum")}}


def test_cross_check_twelve():
    r = cross_check(12)
    assert r.verdict == "agree"
    assert set(r.values[12]) == {
        "constant_term", "double_stirling", "gf_division",
        "new_stirling", "recursion_faulhaber", "stirling_sum",
    }
    assert "recursion_faulhaber" not in r.values[11]
    assert sorted(r.literal_transcription) == list(range(2, 13, 2))
    assert not any(ok for _, _, ok in r.literal_transcription.values())
    assert all(t >= 0 for t in r.timings.values())
    assert list(r.values) == sorted(r.values)


def test_cross_check_reports_disagreement(monkeypatch):
    from bernstirling import engines
    broken = dict(engines._ALL_N)
    broken[BernoulliMethod.NEW_STIRLING] = lambda n: bernoulli_gf(n) + (n == 4)
    monkeypatch.setattr(engines, "_ALL_N", broken)
    r = cross_check(6)
    assert r.verdict == "disagree"
    assert [(d.n, d.method) for d in r.disagreements] == [(4, "new_stirling")]
    assert r.disagreements[0].reference == F(-1, 30)


def test_sign_alternation():
    for k in range(1, 31):
        b = bernoulli_stirling(2 * k)
        assert (b > 0) == (k % 2 == 1)
