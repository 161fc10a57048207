"""Shared statistical fixtures and oracles for the test suite."""

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln


def diffs_with_moments(n, mean, sd):
    """Difference vector with exact sample mean and sample sd (ddof=1)."""
    z = np.arange(n, dtype=np.float64)
    z = (z - z.mean()) / z.std(ddof=1)
    return mean + sd * z


def t_density(x, df):
    logc = gammaln((df + 1) / 2.0) - gammaln(df / 2.0) - 0.5 * np.log(df * np.pi)
    return np.exp(logc - ((df + 1) / 2.0) * np.log1p(x * x / df))


def two_sided_p_by_quadrature(t, df):
    """Independent oracle: numerically integrate the t density tail."""
    tail, _ = quad(t_density, abs(t), np.inf, args=(df,), limit=200)
    return 2.0 * tail
