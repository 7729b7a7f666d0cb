"""Bernoulli numbers by several independent routes, and a cross-check harness.

All routes use the convention B_1 = -1/2.  The generating-function route
(:func:`bernoulli_gf`) is the reference every other route is compared with.

Routes that only make sense for even indices take ``k`` and return B_{2k}.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .combinatorics import UsageError, binomial, faulhaber_coefficients, stirling
from .series import PowerSeries, exp_minus_one, ps_div

__all__ = [
    "BernoulliMethod",
    "ParityError",
    "bernoulli_stirling",
    "bernoulli_stirling_from_one",
    "bernoulli_gf",
    "bernoulli_ct",
    "bernoulli_recursion_A",
    "bernoulli_double_stirling",
    "bernoulli_tangent",
    "bernoulli_new_stirling",
    "compute",
    "TANGENT_VARIANTS",
    "TangentSweep",
    "tangent_sweep",
    "Disagreement",
    "CrossCheckReport",
    "cross_check",
]


class BernoulliMethod(str, enum.Enum):
    STIRLING_SUM = "stirling_sum"
    GF_DIVISION = "gf_division"
    CONSTANT_TERM = "constant_term"
    RECURSION_FAULHABER = "recursion_faulhaber"
    DOUBLE_STIRLING = "double_stirling"
    TANGENT_FORMULA = "tangent_formula"
    NEW_STIRLING = "new_stirling"

    @property
    def even_only(self) -> bool:
        return self in _EVEN_ONLY

    def defined_at(self, n: int) -> bool:
        if self.even_only:
            return n >= 2 and n % 2 == 0
        return n >= 0


_EVEN_ONLY = frozenset(
    {
        BernoulliMethod.RECURSION_FAULHABER,
        BernoulliMethod.DOUBLE_STIRLING,
        BernoulliMethod.TANGENT_FORMULA,
    }
)


class ParityError(UsageError):
    """An even-only method was asked for an odd (or zero) index."""


def _check_n(n: int) -> None:
    if n < 0:
        raise UsageError(f"negative index {n}")


def _check_k(k: int) -> None:
    if k < 1:
        raise UsageError(f"even-index routes need k >= 1, got {k}")


def bernoulli_stirling(n: int) -> Fraction:
    """B_n = sum_{k=0}^n (-1)^k k!/(k+1) S(n,k)."""
    _check_n(n)
    total = Fraction(0)
    f = 1
    for k in range(n + 1):
        if k:
            f *= k
        term = Fraction(f * stirling(n, k), k + 1)
        total += -term if k % 2 else term
    return total


def bernoulli_stirling_from_one(n: int) -> Fraction:
    """Same sum started at k=1, valid for n >= 1 because S(n, 0) = 0 there."""
    if n < 1:
        raise UsageError("the k=1 form needs n >= 1")
    total = Fraction(0)
    f = 1
    for k in range(1, n + 1):
        f *= k
        term = Fraction(f * stirling(n, k), k + 1)
        total += -term if k % 2 else term
    return total


def bernoulli_gf(n: int) -> Fraction:
    """n! times the x^n coefficient of x/(e^x - 1), by series division.

    The quotient is multiplied back and checked against the numerator.
    """
    _check_n(n)
    num = PowerSeries.x(n + 1)
    den = exp_minus_one(n + 1)
    q = ps_div(num, den)
    # den*q must reproduce num (with the shared x factor cancelled)
    recon = (den * PowerSeries(q.coeffs, n + 1)).coeffs
    if recon[: n + 2] != num.coeffs[: n + 2]:
        raise ArithmeticError("series division failed its den*quotient == num check")
    return q.coeffs[n] * math.factorial(n)


def bernoulli_ct(n: int) -> Fraction:
    """n! [x^n] of sum_{k=1}^n (-1)^k (e^x - 1)^k / (k + 1).

    Terms with k > n start at x^k and cannot reach x^n.
    """
    _check_n(n)
    if n == 0:
        return Fraction(1)
    u = exp_minus_one(n)
    total = PowerSeries.constant(0, n)
    power = PowerSeries.constant(1, n)
    for k in range(1, n + 1):
        power = power * u
        total = total + power * Fraction(-1 if k % 2 else 1, k + 1)
    return total.coeffs[n] * math.factorial(n)


def bernoulli_recursion_A(k: int) -> Fraction:
    """B_{2k} = 1/2 - 1/(2k+1) - 2k sum_{i=1}^{k-1} A_{2(k-i)}/(2(k-i)+1).

    A_m is the n^m coefficient of the power-sum polynomial for exponent
    2k-1.  Only :func:`faulhaber_coefficients` is consulted, never
    another Bernoulli route.
    """
    _check_k(k)
    A = faulhaber_coefficients(2 * k - 1)
    s = sum((A[2 * (k - i)] / (2 * (k - i) + 1) for i in range(1, k)), Fraction(0))
    return Fraction(1, 2) - Fraction(1, 2 * k + 1) - 2 * k * s


def bernoulli_double_stirling(k: int) -> Fraction:
    """Two-sum formula in S(2k+1, .) and S(2k, .) for B_{2k}."""
    _check_k(k)
    n = 2 * k
    first = sum(
        (
            Fraction(stirling(n + 1, m + 1) * stirling(n, n - m), binomial(n, m))
            for m in range(1, n)
        ),
        Fraction(0),
    )
    second = sum(
        (
            Fraction(stirling(n, m) * stirling(n + 1, n - m + 1), binomial(n, m - 1))
            for m in range(1, n + 1)
        ),
        Fraction(0),
    )
    return 1 + first - Fraction(n, n + 1) * second


def _tangent_inner_sum(k: int) -> int:
    total = 0
    for i in range(k):
        for ell in range(k - i):
            term = binomial(2 * k, ell) * (k - i - ell) ** (2 * k - 1)
            total += -term if (i + ell) % 2 else term
    return total


def bernoulli_tangent(k: int, exponent: int | None = None) -> Fraction:
    """Tangent-derived double sum for B_{2k}, prefactor taken literally.

    The prefactor is (-1)^(k-1) k / (2^e (2^{2k} - 1)) with e = 2(k-1) as
    written.  Passing ``exponent`` replaces e; nothing else changes.  The
    literal formula does not reproduce B_{2k} (k=1 gives 1/3), see
    :func:`tangent_sweep`.
    """
    _check_k(k)
    e = 2 * (k - 1) if exponent is None else exponent
    sign = 1 if k % 2 else -1
    pre = Fraction(sign * k, 4**k - 1) / Fraction(2) ** e
    return pre * _tangent_inner_sum(k)


def bernoulli_new_stirling(n: int) -> Fraction:
    """B_n = sum_{i=0}^n (-1)^i C(n+1, i+1)/C(n+i, i) S(n+i, i)."""
    _check_n(n)
    total = Fraction(0)
    for i in range(n + 1):
        term = Fraction(binomial(n + 1, i + 1) * stirling(n + i, i), binomial(n + i, i))
        total += -term if i % 2 else term
    return total


_ALL_N: dict[BernoulliMethod, Callable[[int], Fraction]] = {
    BernoulliMethod.STIRLING_SUM: bernoulli_stirling,
    BernoulliMethod.GF_DIVISION: bernoulli_gf,
    BernoulliMethod.CONSTANT_TERM: bernoulli_ct,
    BernoulliMethod.NEW_STIRLING: bernoulli_new_stirling,
}
_EVEN_K: dict[BernoulliMethod, Callable[[int], Fraction]] = {
    BernoulliMethod.RECURSION_FAULHABER: bernoulli_recursion_A,
    BernoulliMethod.DOUBLE_STIRLING: bernoulli_double_stirling,
    BernoulliMethod.TANGENT_FORMULA: bernoulli_tangent,
}


def compute(n: int, method: BernoulliMethod | str) -> Fraction:
    """B_n by the named method; even-only methods need even n >= 2."""
    method = BernoulliMethod(method)
    _check_n(n)
    if method.even_only:
        if not method.defined_at(n):
            raise ParityError(f"{method.value} is defined only for even n >= 2, got {n}")
        return _EVEN_K[method](n // 2)
    return _ALL_N[method](n)


# Candidate power-of-two exponents for the tangent prefactor, as functions of k.
TANGENT_VARIANTS: dict[str, Callable[[int], int]] = {
    "2(k-1)": lambda k: 2 * (k - 1),
    "2k-1": lambda k: 2 * k - 1,
    "2k": lambda k: 2 * k,
    "2k-3": lambda k: 2 * k - 3,
    "k-1": lambda k: k - 1,
    "0": lambda k: 0,
}


@dataclass
class TangentSweep:
    """Outcome of evaluating the tangent formula under each exponent variant.

    ``values[variant][k]`` is the formula's value, ``reference[k]`` is B_{2k}
    from the generating function.  ``required_scale[k]`` is the factor the
    literal prefactor would have to be divided by to give B_{2k}; a variant
    of the form 2^e can only work at k if that factor is a power of two.
    """

    max_k: int
    reference: dict[int, Fraction]
    values: dict[str, dict[int, Fraction]]
    required_scale: dict[int, Fraction]

    def matches(self, variant: str) -> dict[int, bool]:
        return {k: v == self.reference[k] for k, v in self.values[variant].items()}

    def full_matches(self) -> list[str]:
        """Variants that agree with the reference at every k of the sweep."""
        return [name for name in self.values if all(self.matches(name).values())]

    def power_of_two_exponent(self, k: int) -> int | None:
        """e such that 2^e (2^{2k}-1) fixes the prefactor at k, if one exists."""
        r = self.required_scale[k]
        if r <= 0 or r.numerator & (r.numerator - 1) or r.denominator & (r.denominator - 1):
            return None
        return r.numerator.bit_length() - r.denominator.bit_length()

    def consistent(self) -> bool:
        """Check the report against its own data.

        A variant matching at k must reproduce the power-of-two exponent
        implied by ``required_scale``.
        """
        for name, fn in TANGENT_VARIANTS.items():
            if name not in self.values:
                continue
            for k, ok in self.matches(name).items():
                if ok != (self.power_of_two_exponent(k) == fn(k)):
                    return False
        return True

    def rows(self) -> list[dict]:
        out = []
        for name, vals in self.values.items():
            m = self.matches(name)
            for k in sorted(vals):
                out.append(
                    {
                        "variant": name,
                        "k": k,
                        "value": vals[k],
                        "reference": self.reference[k],
                        "match": m[k],
                    }
                )
        return out


def tangent_sweep(max_k: int, variants: dict[str, Callable[[int], int]] | None = None) -> TangentSweep:
    if max_k < 1:
        raise UsageError("tangent sweep needs max_k >= 1")
    variants = TANGENT_VARIANTS if variants is None else variants
    ks = range(1, max_k + 1)
    reference = {k: bernoulli_gf(2 * k) for k in ks}
    values = {
        name: {k: bernoulli_tangent(k, exponent=fn(k)) for k in ks}
        for name, fn in variants.items()
    }
    # with e = 0 the prefactor is k/(2^{2k}-1); B_{2k} = that * inner / scale
    required = {}
    for k in ks:
        unscaled = bernoulli_tangent(k, exponent=0)
        ref = reference[k]
        required[k] = unscaled / ref if ref else Fraction(0)
    return TangentSweep(max_k, reference, values, required)


@dataclass(frozen=True)
class Disagreement:
    n: int
    method: str
    value: Fraction
    reference: Fraction


@dataclass
class CrossCheckReport:
    """Values of every route over 0..n_max against the gf reference.

    ``values[n][method]`` holds each defined route's B_n.  The tangent
    formula is evaluated as written and kept apart in ``literal_transcription``
    (keyed by n = 2k) so its known discrepancy does not decide ``verdict``.
    ``timings`` holds total elapsed nanoseconds per method.
    """

    n_max: int
    values: dict[int, dict[str, Fraction]] = field(default_factory=dict)
    disagreements: list[Disagreement] = field(default_factory=list)
    timings: dict[str, int] = field(default_factory=dict)
    literal_transcription: dict[int, tuple[Fraction, Fraction, bool]] = field(
        default_factory=dict
    )

    @property
    def verdict(self) -> str:
        return "agree" if not self.disagreements else "disagree"

    @property
    def agree(self) -> bool:
        return not self.disagreements


REFERENCE = BernoulliMethod.GF_DIVISION


def cross_check(
    n_max: int,
    methods: list[BernoulliMethod | str] | None = None,
    include_tangent: bool = True,
) -> CrossCheckReport:
    """Run every applicable route for n = 0..n_max and compare with the gf route."""
    _check_n(n_max)
    if methods is None:
        chosen = [m for m in BernoulliMethod if m is not BernoulliMethod.TANGENT_FORMULA]
    else:
        chosen = [BernoulliMethod(m) for m in methods]
    chosen = sorted(set(chosen) | {REFERENCE}, key=lambda m: m.value)
    tangent = include_tangent or BernoulliMethod.TANGENT_FORMULA in chosen
    chosen = [m for m in chosen if m is not BernoulliMethod.TANGENT_FORMULA]

    report = CrossCheckReport(n_max)
    timings = {m.value: 0 for m in chosen}
    for n in range(n_max + 1):
        row: dict[str, Fraction] = {}
        for m in chosen:
            if not m.defined_at(n):
                continue
            t0 = time.perf_counter_ns()
            row[m.value] = compute(n, m)
            timings[m.value] += time.perf_counter_ns() - t0
        ref = row[REFERENCE.value]
        for name in sorted(row):
            if row[name] != ref:
                report.disagreements.append(Disagreement(n, name, row[name], ref))
        report.values[n] = dict(sorted(row.items()))
        if tangent and n >= 2 and n % 2 == 0:
            t0 = time.perf_counter_ns()
            lit = bernoulli_tangent(n // 2)
            timings[BernoulliMethod.TANGENT_FORMULA.value] = timings.get(
                BernoulliMethod.TANGENT_FORMULA.value, 0
            ) + time.perf_counter_ns() - t0
            report.literal_transcription[n] = (lit, ref, lit == ref)
    report.timings = dict(sorted(timings.items()))
    return report
