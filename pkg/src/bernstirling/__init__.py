"""Exact Bernoulli numbers through Stirling-number, generating-function and
power-sum routes, with formal-series checks of the identities behind them."""

from .combinatorics import (
    FaulhaberCoefficients,
    StirlingTable,
    UsageError,
    bell_partial,
    binomial,
    faa_di_bruno_nth,
    factorial,
    faulhaber_coefficients,
    stirling,
    stirling_explicit,
    stirling_table,
)
from .engines import (
    BernoulliMethod,
    CrossCheckReport,
    ParityError,
    bernoulli_ct,
    bernoulli_double_stirling,
    bernoulli_gf,
    bernoulli_new_stirling,
    bernoulli_recursion_A,
    bernoulli_stirling,
    bernoulli_tangent,
    compute,
    cross_check,
    tangent_sweep,
)
from .rational import Rational, rat_format, rat_parse
from .series import (
    LaurentSeries,
    PowerSeries,
    SeriesError,
    laurent_of_bernoulli_kernel,
    verify_exp_deriv_identity,
)

__version__ = "0.1.0"
