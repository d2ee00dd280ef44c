"""
Matrix elements of the flux unitary in the lowest Landau level.

In the basis ``|n> ~ z**n exp(-|z|**2/2)`` the operator ``P U P`` is a
weighted shift, ``<m+1|U|m> = w[m] = Gamma(m + 3/2) / (m! sqrt(m + 1))``.
The weights tend to 1 like ``1 - 1/(8m)``, so ``PUP`` is a compact
perturbation of the pure shift.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli, gammaln

__all__ = ["LandauWeights", "landau_pup_weights", "log_half_gamma_ratio",
           "compactness_witness", "landau_table"]

# series truncation error is below 1e-17 from here on
_SERIES_FROM = 10.0
_SERIES_TERMS = 8
_B = bernoulli(2 * _SERIES_TERMS)


def log_half_gamma_ratio(x):
    """
    ``log Gamma(x + 1/2) - log Gamma(x) - log(x)/2`` for ``x > 0``.

    Large arguments use the Stirling series of the difference,
    ``sum_n (2**(1-n) - 2) B_n / (n (n-1) x**(n-1))`` over even ``n``,
    which avoids cancelling two numbers of size ``x log x``.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < _SERIES_FROM
    xs = x[small]
    out[small] = gammaln(xs + 0.5) - gammaln(xs) - 0.5 * np.log(xs)
    xl = x[~small]
    acc = np.zeros_like(xl)
    for n in range(2 * _SERIES_TERMS, 1, -2):
        acc += (2.0 ** (1 - n) - 2.0) * _B[n] / (n * (n - 1)) * xl ** (1.0 - n)
    out[~small] = acc
    return out


@dataclass(frozen=True)
class LandauWeights:
    """Weights ``w[m]``, ``m = 0..m_max``, of the weighted shift ``P U P``."""

    m_max: int
    w: np.ndarray

    def asymptote(self, m):
        m = np.asarray(m, dtype=float)
        return 1.0 - 1.0 / (8.0 * m)


def landau_pup_weights(m_max):
    """Exact weights ``Gamma(m + 3/2) / (m! sqrt(m + 1))`` for ``m = 0..m_max``."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    x = np.arange(m_max + 1, dtype=float) + 1.0
    return LandauWeights(int(m_max), np.exp(log_half_gamma_ratio(x)))


def compactness_witness(weights):
    """``sup_{m >= m_max/2} |w[m] - 1|``; tends to 0 iff the perturbation is compact."""
    if weights.m_max < 10:
        raise ValueError("m_max must be >= 10")
    start = weights.m_max // 2
    return float(np.max(np.abs(weights.w[start:] - 1.0)))


def landau_table(weights):
    """Rows ``(m, w, asymptote, residual)`` for ``m >= 1``."""
    m = np.arange(1, weights.m_max + 1)
    w = weights.w[1:]
    a = weights.asymptote(m)
    return np.column_stack([m, w, a, w - a])
