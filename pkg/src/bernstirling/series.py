"""Truncated formal power series and Laurent series over the rationals.

A :class:`PowerSeries` of order N knows the coefficients of x^0..x^N and
nothing beyond; every operation returns a result whose order only covers
coefficients that are fully determined by its operands.  Orders are never
extended silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .combinatorics import UsageError, stirling

__all__ = [
    "SeriesError",
    "PowerSeries",
    "LaurentSeries",
    "ps_add",
    "ps_mul",
    "ps_scale",
    "ps_derive",
    "ps_div",
    "ps_compose",
    "coefficient",
    "exp_minus_one",
    "log1p",
    "laurent_of_bernoulli_kernel",
    "IdentityVerdict",
    "verify_exp_deriv_identity",
    "verify_ct_identity",
]


class SeriesError(ArithmeticError):
    """A series operation is undefined for its operands."""


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], length: int) -> list[Fraction]:
    """First ``length`` coefficients of the product of two coefficient lists.

    Multiplies over a common denominator so the inner loop is pure integer
    arithmetic.
    """
    da = math.lcm(*(c.denominator for c in a)) if a else 1
    db = math.lcm(*(c.denominator for c in b)) if b else 1
    ia = [c.numerator * (da // c.denominator) for c in a]
    ib = [c.numerator * (db // c.denominator) for c in b]
    d = da * db
    out = []
    for n in range(length):
        lo = max(0, n - len(ib) + 1)
        hi = min(n, len(ia) - 1)
        acc = 0
        for i in range(lo, hi + 1):
            if ia[i]:
                acc += ia[i] * ib[n - i]
        out.append(Fraction(acc, d))
    return out


class PowerSeries:
    """c_0 + c_1 x + ... + c_N x^N + O(x^(N+1))."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise UsageError(f"negative series order {order}")
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        if not cs:
            raise UsageError("a power series needs at least one coefficient")
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c, order: int) -> PowerSeries:
        return cls([c], order)

    @classmethod
    def x(cls, order: int) -> PowerSeries:
        return cls([0, 1], order)

    @classmethod
    def monomial(cls, c, j: int, order: int) -> PowerSeries:
        return cls([0] * j + [c], order)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all are zero."""
        return next((i for i, c in enumerate(self._coeffs) if c), None)

    def __getitem__(self, j: int) -> Fraction:
        return coefficient(self, j)

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise UsageError(f"cannot extend order {self.order} to {order}")
        return PowerSeries(self._coeffs[: order + 1])

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        terms = []
        for j, c in enumerate(self._coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"({c})*x^{j}")
        return f"PowerSeries({' + '.join(terms) or '0'} + O(x^{self.order + 1}))"

    def _coerce(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ps_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return ps_scale(self, -1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ps_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ps_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ps_scale(self, other)
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise SeriesError("division of a series by zero")
            return ps_scale(self, Fraction(1) / other)
        if isinstance(other, PowerSeries):
            return ps_div(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> PowerSeries:
        if k < 0:
            raise UsageError("negative powers are not supported; use ps_div")
        result = PowerSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derive(self) -> PowerSeries:
        return ps_derive(self)

    def compose(self, inner: PowerSeries) -> PowerSeries:
        return ps_compose(self, inner)


def ps_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    return PowerSeries(a.coeffs[i] + b.coeffs[i] for i in range(n + 1))


def ps_scale(a: PowerSeries, c) -> PowerSeries:
    c = Fraction(c)
    return PowerSeries(c * x for x in a.coeffs)


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = min(a.order, b.order)
    return PowerSeries(_convolve(a.coeffs[: n + 1], b.coeffs[: n + 1], n + 1))


def ps_derive(a: PowerSeries) -> PowerSeries:
    """Term-wise derivative; the result has order N-1 (a constant stays order 0)."""
    if a.order == 0:
        return PowerSeries([0])
    return PowerSeries(k * a.coeffs[k] for k in range(1, a.order + 1))


def ps_div(num: PowerSeries, den: PowerSeries) -> PowerSeries:
    """Quotient num/den.

    If den starts with x^j (j > 0) the first j coefficients of num must
    vanish as well; the common factor is cancelled and the quotient has
    order min(orders) - j.
    """
    j = den.valuation()
    if j is None:
        raise SeriesError("division by the zero series")
    order = min(num.order, den.order)
    if j > order:
        raise SeriesError("denominator vanishes to the retained order")
    if any(num.coeffs[i] for i in range(j)):
        raise SeriesError(
            f"denominator has a factor x^{j} that the numerator does not share"
        )
    n = num.coeffs[j : order + 1]
    d = den.coeffs[j : order + 1]
    length = order - j + 1
    inv = 1 / d[0]
    q: list[Fraction] = []
    for m in range(length):
        acc = n[m]
        for i in range(1, m + 1):
            if d[i]:
                acc -= d[i] * q[m - i]
        q.append(acc * inv)
    return PowerSeries(q)


def ps_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """outer(inner(x)); the inner series must have zero constant term."""
    if inner.coeffs[0] != 0:
        raise SeriesError("composition needs an inner series with zero constant term")
    n = min(outer.order, inner.order)
    inner = inner.truncate(n)
    # Horner: valuation of inner >= 1 makes truncation at order n exact
    acc = PowerSeries.constant(outer.coeffs[n] if n <= outer.order else 0, n)
    for c in reversed(outer.coeffs[:n]):
        acc = acc * inner + c
    return acc


def coefficient(s: PowerSeries, j: int) -> Fraction:
    if j < 0 or j > s.order:
        raise UsageError(f"coefficient x^{j} is outside retained order {s.order}")
    return s.coeffs[j]


def exp_minus_one(order: int) -> PowerSeries:
    """e^x - 1 = x + x^2/2! + ... to the given order."""
    coeffs = [Fraction(0)]
    f = 1
    for k in range(1, order + 1):
        f *= k
        coeffs.append(Fraction(1, f))
    return PowerSeries(coeffs, order)


def log1p(order: int) -> PowerSeries:
    """ln(1 + x) = x - x^2/2 + x^3/3 - ... to the given order."""
    coeffs = [Fraction(0)]
    for k in range(1, order + 1):
        coeffs.append(Fraction(1 if k % 2 else -1, k))
    return PowerSeries(coeffs, order)


@dataclass(frozen=True)
class LaurentSeries:
    """sum_{e=valuation}^{top} c_e x^e + O(x^(top+1)).

    ``coeffs[i]`` is the coefficient of x^(valuation + i).  Construction
    strips leading zeros so ``valuation`` is exact unless the series is zero.
    """

    valuation: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not cs:
            raise UsageError("a Laurent series needs at least one coefficient")
        v = self.valuation
        lead = next((i for i, c in enumerate(cs) if c), None)
        if lead is None:
            # zero series: keep the truncation point, normalize valuation
            top = v + len(cs) - 1
            v, cs = top, (Fraction(0),)
        elif lead:
            v, cs = v + lead, cs[lead:]
        object.__setattr__(self, "valuation", v)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_power_series(cls, s: PowerSeries, shift: int = 0) -> LaurentSeries:
        """x^shift * s."""
        return cls(shift, s.coeffs)

    @property
    def top(self) -> int:
        """Highest exponent whose coefficient is known."""
        return self.valuation + len(self.coeffs) - 1

    @property
    def pole_order(self) -> int:
        return max(0, -self.valuation) if self.coeffs[0] else 0

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __getitem__(self, e: int) -> Fraction:
        if e > self.top:
            raise UsageError(f"coefficient x^{e} is beyond retained exponent {self.top}")
        if e < self.valuation:
            return Fraction(0)
        return self.coeffs[e - self.valuation]

    def _window(self, lo: int, hi: int) -> list[Fraction]:
        return [self[e] for e in range(lo, hi + 1)]

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        lo = min(self.valuation, other.valuation)
        hi = min(self.top, other.top)
        if hi < lo:
            return LaurentSeries(hi, (0,))
        return LaurentSeries(
            lo, [a + b for a, b in zip(self._window(lo, hi), other._window(lo, hi))]
        )

    def __neg__(self) -> LaurentSeries:
        return self.scale(-1)

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        return self + (-other)

    def scale(self, c) -> LaurentSeries:
        c = Fraction(c)
        return LaurentSeries(self.valuation, [c * x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        v = self.valuation + other.valuation
        # unknown terms of either factor enter at top+1 times the other's lead
        top = min(self.top + other.valuation, other.top + self.valuation)
        if top < v:
            return LaurentSeries(top, (0,))
        return LaurentSeries(v, _convolve(self.coeffs, other.coeffs, top - v + 1))

    __rmul__ = __mul__

    def __pow__(self, m: int) -> LaurentSeries:
        """Repeated multiplication; the j-th power keeps track of pole order m*j."""
        if m < 1:
            raise UsageError("only positive powers of Laurent series are supported")
        result = self
        for _ in range(m - 1):
            result = result * self
        return result

    def derive(self) -> LaurentSeries:
        if self.is_zero():
            return LaurentSeries(self.top - 1, (0,))
        return LaurentSeries(
            self.valuation - 1,
            [(self.valuation + i) * c for i, c in enumerate(self.coeffs)],
        )


def laurent_of_bernoulli_kernel(order: int) -> LaurentSeries:
    """1/(e^x - 1) = x^-1 * (x/(e^x - 1)), coefficients kept through x^order."""
    if order < -1:
        raise UsageError(f"order {order} too small")
    n = order + 1
    # x/(e^x-1) to order n needs operands of order n+1
    q = ps_div(PowerSeries.x(n + 1), exp_minus_one(n + 1))
    return LaurentSeries.from_power_series(q, -1)


@dataclass(frozen=True)
class IdentityVerdict:
    equal: bool
    lo: int
    hi: int
    first_difference: tuple[int, Fraction, Fraction] | None = None

    def __bool__(self):
        return self.equal


def _compare(lhs: LaurentSeries, rhs: LaurentSeries) -> IdentityVerdict:
    lo = min(lhs.valuation, rhs.valuation)
    hi = min(lhs.top, rhs.top)
    for e in range(lo, hi + 1):
        if lhs[e] != rhs[e]:
            return IdentityVerdict(False, lo, hi, (e, lhs[e], rhs[e]))
    return IdentityVerdict(True, lo, hi)


def verify_exp_deriv_identity(k: int, order: int) -> IdentityVerdict:
    """Check (1/(e^x-1))^(k) = (-1)^k sum_{m=1}^{k+1} (m-1)! S(k+1,m) (1/(e^x-1))^m.

    Both sides are expanded as Laurent series from 1/(e^x-1) kept through
    x^order and compared on every exponent known on both sides.
    """
    if k < 0:
        raise UsageError(f"negative derivative order {k}")
    kernel = laurent_of_bernoulli_kernel(order)
    lhs = kernel
    for _ in range(k):
        lhs = lhs.derive()
    power = kernel
    rhs = kernel.scale(math.factorial(0) * stirling(k + 1, 1))
    for m in range(2, k + 2):
        power = power * kernel
        rhs = rhs + power.scale(math.factorial(m - 1) * stirling(k + 1, m))
    if k % 2:
        rhs = -rhs
    return _compare(lhs, rhs)


def verify_ct_identity(terms: int) -> IdentityVerdict:
    """Check sum_{k=1}^K (-1)^k (e^x-1)^k/(k+1) against ((ln(1+u)-u)/u)(e^x-1).

    Coefficients x^1..x^K are compared (the truncated sum is exact there).
    """
    if terms < 1:
        raise UsageError("need at least one term")
    order = terms
    u = exp_minus_one(order)
    total = PowerSeries.constant(0, order)
    power = PowerSeries.constant(1, order)
    for k in range(1, terms + 1):
        power = power * u
        total = total + power * Fraction(-1 if k % 2 else 1, k + 1)
    # (ln(1+y) - y)/y through y^order needs the numerator to order+1
    y = PowerSeries.x(order + 1)
    outer = ps_div(log1p(order + 1) - y, y)
    closed = ps_compose(outer, u)
    lhs = LaurentSeries(1, total.coeffs[1:])
    rhs = LaurentSeries(1, closed.coeffs[1:])
    return _compare(lhs, rhs)
