"""The invariant probability measure of the Renyi-type map.

rho_N has density proportional to 1/(x+N-1) on [0,1]; the normalizer is
1/log(N/(N-1)).  Its CDF, log((x+N-1)/(N-1)) / log(N/(N-1)), is the
Gauss-Kuzmin limit of the distribution-function iteration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from mpmath import mp

from .cf import Parameter

__all__ = ["RhoMeasure", "rho_cdf", "rho_interval", "rho_density", "rho_cdf_grid"]


def _normalizer(N: int) -> float:
    # log(N/(N-1)) via log1p(1/(N-1)) to dodge cancellation for large N;
    # evaluated at 40 digits and rounded once.
    with mp.workdps(40):
        return float(1 / mp.log1p(mp.mpf(1) / (N - 1)))


@dataclass(frozen=True)
class RhoMeasure:
    """rho_N with its precomputed normalizer 1/log(N/(N-1))."""

    N: int
    normalizer: float = field(init=False)

    def __post_init__(self):
        n = self.N.N if isinstance(self.N, Parameter) else Parameter(self.N).N
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "normalizer", _normalizer(n))


def _check_x(x) -> None:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise ValueError(f"x must lie in [0, 1], got {x!r}")


def rho_cdf(m: RhoMeasure, x):
    """rho_N([0, x]) = log1p(x/(N-1)) / log1p(1/(N-1)); accepts arrays."""
    _check_x(x)
    return m.normalizer * np.log1p(np.asarray(x, dtype=float) / (m.N - 1))


def rho_interval(m: RhoMeasure, a: float, b: float) -> float:
    """rho_N([a, b]) for 0 <= a <= b <= 1."""
    _check_x(a)
    _check_x(b)
    if a > b:
        raise ValueError(f"need a <= b, got a={a!r} b={b!r}")
    return float(rho_cdf(m, b) - rho_cdf(m, a))


def rho_density(m: RhoMeasure, x):
    """d rho_N / dx = normalizer / (x+N-1); accepts arrays."""
    _check_x(x)
    return m.normalizer / (np.asarray(x, dtype=float) + m.N - 1)


def rho_cdf_grid(N: int, M: int) -> np.ndarray:
    """rho_N CDF sampled on the uniform grid of M+1 points over [0, 1]."""
    m = RhoMeasure(N)
    return np.asarray(rho_cdf(m, np.linspace(0.0, 1.0, M + 1)))
