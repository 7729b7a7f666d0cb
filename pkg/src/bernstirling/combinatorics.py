"""Factorials, binomials, Stirling numbers of the second kind, partial Bell
polynomials, Faa di Bruno's formula and power-sum (Faulhaber) coefficients.

Everything is exact: integers stay ``int`` and anything fractional is a
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "UsageError",
    "factorial",
    "binomial",
    "stirling_explicit",
    "StirlingTable",
    "stirling_table",
    "stirling",
    "bell_partial",
    "faa_di_bruno_nth",
    "FaulhaberCoefficients",
    "faulhaber_coefficients",
    "power_sum",
]


class UsageError(ValueError):
    """Arguments violate an operation's preconditions."""


def factorial(n: int) -> int:
    if n < 0:
        raise UsageError(f"factorial of negative number {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k) with the convention C(n, k) = 0 for k > n."""
    if n < 0 or k < 0:
        raise UsageError(f"binomial({n}, {k}) needs non-negative arguments")
    return math.comb(n, k)


def stirling_explicit(n: int, k: int) -> int:
    """S(n, k) from the alternating sum over l of (-1)^(k-l) C(k, l) l^n, over k!."""
    if n < 0 or k < 0:
        raise UsageError(f"stirling_explicit({n}, {k}) needs non-negative arguments")
    if k > n:
        return 0
    total = 0
    for ell in range(k + 1):
        term = math.comb(k, ell) * ell**n
        total += -term if (k - ell) % 2 else term
    q, r = divmod(total, math.factorial(k))
    if r:
        raise ArithmeticError(f"inexact division by {k}! computing S({n}, {k})")
    return q


@dataclass(frozen=True)
class StirlingTable:
    """Triangle of S(n, k) for 0 <= k <= n <= max_n, built by the recurrence
    S(n, k) = k S(n-1, k) + S(n-1, k-1)."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def max_n(self) -> int:
        return len(self.rows) - 1

    def __call__(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise UsageError(f"S({n}, {k}) needs non-negative arguments")
        if n > self.max_n:
            raise UsageError(f"S({n}, {k}) is beyond table bound {self.max_n}")
        if k > n:
            return 0
        return self.rows[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n]

    def extended(self, max_n: int) -> StirlingTable:
        """Table with at least ``max_n`` rows, reusing the rows already built."""
        rows = list(self.rows)
        while len(rows) <= max_n:
            prev = rows[-1]
            n = len(rows)
            new = [0] * (n + 1)
            for k in range(1, n):
                new[k] = k * prev[k] + prev[k - 1]
            new[n] = 1
            rows.append(tuple(new))
        return StirlingTable(tuple(rows))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "k", "S"])
        for n, row in enumerate(self.rows):
            for k, value in enumerate(row):
                writer.writerow([n, k, value])
        return buf.getvalue()


def stirling_table(max_n: int) -> StirlingTable:
    if max_n < 0:
        raise UsageError(f"negative table bound {max_n}")
    return StirlingTable(((1,),)).extended(max_n)


_shared_table = stirling_table(0)


def stirling(n: int, k: int) -> int:
    """S(n, k) looked up in a process-wide table that grows on demand."""
    global _shared_table
    table = _shared_table
    if n > table.max_n:
        table = table.extended(max(n, 2 * table.max_n))
        _shared_table = table
    return table(n, k)


def bell_partial(n: int, k: int, xs: Sequence) -> Fraction:
    """Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}).

    Sums n! / prod(l_i! (i!)^l_i) * prod(x_i^l_i) over all multiplicity
    vectors (l_1, ..., l_{n-k+1}) with sum(i l_i) = n and sum(l_i) = k.
    """
    if not 1 <= k <= n:
        raise UsageError(f"bell_partial needs 1 <= k <= n, got n={n}, k={k}")
    width = n - k + 1
    if len(xs) != width:
        raise UsageError(
            f"bell_partial({n}, {k}) takes {width} arguments, got {len(xs)}"
        )
    xs = [Fraction(x) for x in xs]
    fact = [math.factorial(i) for i in range(n + 1)]
    total = Fraction(0)

    # Descend from the largest part size; `weight` accumulates
    # prod(x_i^l_i / (l_i! (i!)^l_i)) for the parts chosen so far.
    def descend(size: int, rem_n: int, rem_k: int, weight: Fraction) -> None:
        nonlocal total
        if rem_k == 0:
            if rem_n == 0:
                total += weight
            return
        if size == 0:
            return
        # rem_k parts of size <= `size` must sum to rem_n
        if rem_n < rem_k or rem_n > rem_k * size:
            return
        x = xs[size - 1] / fact[size]
        term = weight
        for ell in range(min(rem_k, rem_n // size) + 1):
            if ell:
                term = term * x / ell
            descend(size - 1, rem_n - ell * size, rem_k - ell, term)

    descend(width, n, k, Fraction(1))
    return total * fact[n]


def faa_di_bruno_nth(n: int, f_derivs: Sequence, g_derivs: Sequence) -> Fraction:
    """n-th derivative of f(g(x)) at a point.

    ``f_derivs[k-1]`` is f^(k) evaluated at g(x0) and ``g_derivs[j-1]`` is
    g^(j)(x0); both need at least ``n`` entries.
    """
    if n < 1:
        raise UsageError(f"faa_di_bruno_nth needs n >= 1, got {n}")
    if len(f_derivs) < n or len(g_derivs) < n:
        raise UsageError(
            f"need {n} derivatives of f and g, got {len(f_derivs)} and {len(g_derivs)}"
        )
    return sum(
        (
            Fraction(f_derivs[k - 1]) * bell_partial(n, k, g_derivs[: n - k + 1])
            for k in range(1, n + 1)
        ),
        Fraction(0),
    )


def power_sum(n: int, p: int) -> int:
    """1^p + 2^p + ... + n^p (zero for n = 0)."""
    return sum(m**p for m in range(1, n + 1))


@dataclass(frozen=True)
class FaulhaberCoefficients:
    """Coefficients A_0..A_{p+1} with sum_{m=1}^n m^p = sum_j A_j n^j."""

    p: int
    coeffs: tuple[Fraction, ...]

    def __getitem__(self, m: int) -> Fraction:
        return self.coeffs[m]

    def evaluate(self, n: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc


def _solve_fraction_free(matrix: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Solve an integer linear system exactly.

    Bareiss elimination keeps every intermediate entry an integer; the only
    divisions are exact.  Back substitution happens over Fraction.
    """
    size = len(matrix)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    prev = 1
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot_row is None:
            raise ArithmeticError("singular interpolation system")
        a[col], a[pivot_row] = a[pivot_row], a[col]
        piv = a[col][col]
        for r in range(col + 1, size):
            for c in range(col + 1, size + 1):
                num = a[r][c] * piv - a[r][col] * a[col][c]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss step must divide exactly"
                a[r][c] = q
            a[r][col] = 0
        prev = piv
    x = [Fraction(0)] * size
    for r in reversed(range(size)):
        acc = Fraction(a[r][size])
        for c in range(r + 1, size):
            acc -= a[r][c] * x[c]
        x[r] = acc / a[r][r]
    return x


def _solve_binomial_basis(p: int) -> list[Fraction]:
    """Interpolate the power sum in the basis C(n, j), then expand to monomials.

    In that basis the interpolation matrix at n = 0..p+1 is unit lower
    triangular, so elimination is integer forward substitution.
    """
    size = p + 2
    values = [power_sum(n, p) for n in range(size)]
    d = []
    for n in range(size):
        acc = values[n]
        for j in range(n):
            acc -= math.comb(n, j) * d[j]
        d.append(acc)
    # falling holds the integer coefficients of n(n-1)...(n-j+1)
    coeffs = [Fraction(0)] * size
    falling = [1]
    for j in range(size):
        if j:
            nxt = [0] * (j + 1)
            for i, c in enumerate(falling):
                nxt[i + 1] += c
                nxt[i] -= (j - 1) * c
            falling = nxt
        if d[j]:
            scale = Fraction(d[j], math.factorial(j))
            for i, c in enumerate(falling):
                if c:
                    coeffs[i] += scale * c
    return coeffs


def faulhaber_coefficients(p: int, method: str = "binomial") -> FaulhaberCoefficients:
    """Coefficients of the power-sum polynomial of exponent ``p``.

    Found by exact interpolation through (n, sum_{m=1}^n m^p) at n = 0..p+1;
    no Bernoulli numbers are involved.  ``method="binomial"`` solves the
    system in the binomial basis (fast); ``method="bareiss"`` runs
    fraction-free elimination on the monomial Vandermonde system.
    """
    if p < 0:
        raise UsageError(f"negative exponent {p}")
    if method == "binomial":
        coeffs = _solve_binomial_basis(p)
    elif method == "bareiss":
        nodes = range(p + 2)
        matrix = [[n**j for j in range(p + 2)] for n in nodes]
        coeffs = _solve_fraction_free(matrix, [power_sum(n, p) for n in nodes])
    else:
        raise UsageError(f"unknown solve method {method!r}")
    assert coeffs[0] == 0
    return FaulhaberCoefficients(p, tuple(coeffs))
