"""Verification suites behind ``bernstirling verify``.

Each suite returns a list of :class:`CheckResult`.  Randomized checks take a
seed so a failing case can be replayed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import (
    bell_partial,
    faa_di_bruno_nth,
    stirling_explicit,
    stirling_table,
)
from .engines import (
    BernoulliMethod,
    bernoulli_stirling,
    bernoulli_stirling_from_one,
    cross_check,
    tangent_sweep,
)
from .rational import rat_format
from .series import (
    PowerSeries,
    exp_minus_one,
    ps_compose,
    verify_ct_identity,
    verify_exp_deriv_identity,
)

SUITES = ("all", "routes", "bell", "stirling", "exp-deriv", "tangent-sweep")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    quarantined: bool = False


def _random_rational(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        r = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if r or not nonzero:
            return r


# -- routes -----------------------------------------------------------------


def routes_suite(max_index: int = 60) -> list[CheckResult]:
    report = cross_check(max_index)
    results = []
    if report.agree:
        detail = f"{len(report.values)} indices"
    else:
        d = report.disagreements[0]
        detail = (
            f"n={d.n} {d.method}={rat_format(d.value)} "
            f"reference={rat_format(d.reference)}"
        )
    results.append(CheckResult(f"routes agree for n=0..{max_index}", report.agree, detail))

    bad = [
        (n, name)
        for n, row in report.values.items()
        if n >= 3 and n % 2
        for name, v in row.items()
        if v != 0
    ]
    results.append(
        CheckResult(
            "odd-index values vanish",
            not bad,
            f"first nonzero at n={bad[0][0]} ({bad[0][1]})" if bad else "",
        )
    )

    wrong_sign = [
        n
        for n, row in report.values.items()
        if n >= 2 and n % 2 == 0
        and (row[BernoulliMethod.GF_DIVISION.value] > 0) != ((n // 2) % 2 == 1)
    ]
    results.append(
        CheckResult(
            "sign of B_2k is (-1)^(k+1)",
            not wrong_sign,
            f"fails at n={wrong_sign[0]}" if wrong_sign else "",
        )
    )

    trunc = [n for n in range(1, max_index + 1)
             if bernoulli_stirling(n) != bernoulli_stirling_from_one(n)]
    results.append(
        CheckResult(
            "k=0 and k=1 starts of the Stirling sum agree",
            not trunc,
            f"fails at n={trunc[0]}" if trunc else "",
        )
    )
    results.append(
        CheckResult(
            "anchors B_0=1, B_1=-1/2",
            report.values[0][BernoulliMethod.GF_DIVISION.value] == 1
            and (max_index < 1 or report.values[1][BernoulliMethod.GF_DIVISION.value] == Fraction(-1, 2)),
        )
    )
    lit = report.literal_transcription
    mism = sorted(n for n, (_, _, ok) in lit.items() if not ok)
    results.append(
        CheckResult(
            "tangent formula as printed",
            not mism,
            f"differs from reference at n={mism}" if mism else "",
            quarantined=True,
        )
    )
    return results


# -- stirling ---------------------------------------------------------------


def stirling_suite(max_index: int = 60, gf_max: int = 20) -> list[CheckResult]:
    table = stirling_table(max_index)
    bad = next(
        (
            (n, k)
            for n in range(max_index + 1)
            for k in range(n + 1)
            if table(n, k) != stirling_explicit(n, k)
        ),
        None,
    )
    results = [
        CheckResult(
            f"recurrence table equals explicit sum for n<={max_index}",
            bad is None,
            f"differs at S{bad}" if bad else "",
        )
    ]
    gf_max = min(gf_max, max_index)
    u = exp_minus_one(gf_max)
    power = PowerSeries.constant(1, gf_max)
    bad = None
    for k in range(gf_max + 1):
        if k:
            power = power * u
        for n in range(gf_max + 1):
            c = power.coeffs[n] * math.factorial(n) / math.factorial(k)
            if c != table(n, k):
                bad = (n, k)
                break
        if bad:
            break
    results.append(
        CheckResult(
            f"n! [x^n] (e^x-1)^k/k! = S(n,k) for n<={gf_max}",
            bad is None,
            f"differs at (n,k)={bad}" if bad else "",
        )
    )
    return results


# -- bell -------------------------------------------------------------------


def _poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_derivs_at(coeffs, x: Fraction, count: int) -> list[Fraction]:
    """[p'(x), p''(x), ..., p^(count)(x)] for a coefficient list p."""
    out = []
    cur = list(coeffs)
    for _ in range(count):
        cur = [i * c for i, c in enumerate(cur)][1:] or [Fraction(0)]
        out.append(_poly_eval(cur, x))
    return out


def _taylor_shift(coeffs, c: Fraction) -> list[Fraction]:
    """Coefficients of p(c + y) in y, by binomial expansion."""
    out = [Fraction(0)] * len(coeffs)
    for j, a in enumerate(coeffs):
        for i in range(j + 1):
            out[i] += a * math.comb(j, i) * c ** (j - i)
    return out


def faa_di_bruno_vs_compose(f, g, n: int) -> tuple[Fraction, Fraction]:
    """(Faa di Bruno value, n! [x^n] f(g(x))) for polynomials f, g at x=0."""
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    g0 = g[0]
    f_derivs = _poly_derivs_at(f, g0, n)
    g_derivs = _poly_derivs_at(g, Fraction(0), n)
    via_bell = faa_di_bruno_nth(n, f_derivs, g_derivs)
    outer = PowerSeries(_taylor_shift(f, g0), n)
    inner = PowerSeries([0] + g[1:], n)
    via_series = ps_compose(outer, inner).coeffs[n] * math.factorial(n)
    return via_bell, via_series


def bell_suite(
    max_index: int = 12,
    seed: int = 0,
    homogeneity_cases: int = 200,
    fdb_cases: int = 100,
) -> list[CheckResult]:
    rng = random.Random(seed)
    results = []

    hom_n = min(max_index, 9)
    bad = None
    for _ in range(homogeneity_cases):
        n = rng.randint(1, hom_n)
        k = rng.randint(1, n)
        a = _random_rational(rng)
        b = _random_rational(rng)
        xs = [_random_rational(rng) for _ in range(n - k + 1)]
        scaled = [a * b ** (i + 1) * x for i, x in enumerate(xs)]
        if bell_partial(n, k, scaled) != a**k * b**n * bell_partial(n, k, xs):
            bad = (n, k, a, b, xs)
            break
    results.append(
        CheckResult(
            f"Bell homogeneity, {homogeneity_cases} random cases n<={hom_n}",
            bad is None,
            f"counterexample {bad}" if bad else "",
        )
    )

    bad = next(
        (
            (n, k)
            for n in range(1, max_index + 1)
            for k in range(1, n + 1)
            if bell_partial(n, k, [1] * (n - k + 1)) != stirling_explicit(n, k)
        ),
        None,
    )
    results.append(
        CheckResult(
            f"B_nk(1,...,1) = S(n,k) for n<={max_index}",
            bad is None,
            f"differs at {bad}" if bad else "",
        )
    )

    fdb_n = min(max_index, 8)
    bad = None
    for _ in range(fdb_cases):
        f = [_random_rational(rng) for _ in range(rng.randint(1, 7))]
        g = [_random_rational(rng) for _ in range(rng.randint(1, 7))]
        n = rng.randint(1, fdb_n)
        lhs, rhs = faa_di_bruno_vs_compose(f, g, n)
        if lhs != rhs:
            bad = (f, g, n, lhs, rhs)
            break
    results.append(
        CheckResult(
            f"Faa di Bruno vs series composition, {fdb_cases} random pairs n<={fdb_n}",
            bad is None,
            f"counterexample {bad}" if bad else "",
        )
    )
    return results


# -- exp-deriv ----------------------------------------------------------------


def exp_deriv_suite(max_index: int = 10, order: int = 30) -> list[CheckResult]:
    results = []
    for k in range(max_index + 1):
        v = verify_exp_deriv_identity(k, order)
        detail = f"x^{v.lo}..x^{v.hi}"
        if not v.equal:
            e, lhs, rhs = v.first_difference
            detail = f"x^{e}: {rat_format(lhs)} != {rat_format(rhs)}"
        results.append(CheckResult(f"derivative identity k={k} order={order}", v.equal, detail))
    v = verify_ct_identity(max(order, 1))
    results.append(
        CheckResult(
            f"constant-term series identity to x^{max(order, 1)}",
            v.equal,
            "" if v.equal else f"first difference {v.first_difference}",
        )
    )
    return results


# -- tangent sweep ------------------------------------------------------------


def tangent_suite(max_index: int = 8) -> tuple[list[CheckResult], object]:
    sweep = tangent_sweep(max_index)
    results = []
    for name in sweep.values:
        m = sweep.matches(name)
        hits = [k for k, ok in m.items() if ok]
        results.append(
            CheckResult(
                f"tangent variant e={name}",
                all(m.values()),
                f"matches at k={hits}" if hits else "matches nowhere",
                quarantined=True,
            )
        )
    full = sweep.full_matches()
    results.append(
        CheckResult(
            f"single exponent variant matching k=1..{max_index}",
            bool(full),
            f"{full}" if full else "none",
            quarantined=True,
        )
    )
    results.append(CheckResult("tangent sweep report internally consistent", sweep.consistent()))
    return results, sweep


def run_suite(suite: str, order: int = 30, max_index: int | None = None, seed: int = 0) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    if suite == "routes":
        return routes_suite(60 if max_index is None else max_index)
    if suite == "stirling":
        return stirling_suite(60 if max_index is None else max_index)
    if suite == "bell":
        return bell_suite(12 if max_index is None else max_index, seed=seed)
    if suite == "exp-deriv":
        return exp_deriv_suite(10 if max_index is None else max_index, order)
    if suite == "tangent-sweep":
        return tangent_suite(8 if max_index is None else max_index)[0]
    results = []
    results += routes_suite(60 if max_index is None else max_index)
    results += stirling_suite(60 if max_index is None else max_index)
    results += bell_suite(12, seed=seed)
    results += exp_deriv_suite(10, order)
    return results
