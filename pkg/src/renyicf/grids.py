"""Grid-sampled distribution functions and densities on [0, 1].

A GridFunction holds values on the uniform grid x_j = j/M.  CDF-kind grids
are interpolated with a monotone piecewise cubic (PCHIP) so that iteration
never manufactures non-monotonicity; density-kind grids use linear
interpolation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

__all__ = ["Kind", "GridFunction", "pchip_coefficients"]

MONOTONE_TOL = 1e-10


class Kind(enum.Enum):
    CDF = "cdf"
    DENSITY = "density"


@dataclass(frozen=True)
class GridFunction:
    """Values of a CDF or density on the uniform grid over [0, 1]."""

    N: int
    kind: Kind
    values: np.ndarray

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.size < 3:
            raise ValueError("values must be a 1-D array with at least 3 nodes")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", vals)
        if int(self.N) < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        if self.kind is Kind.CDF:
            if np.any(np.diff(vals) < -MONOTONE_TOL):
                raise ValueError("CDF grid is not monotone non-decreasing")
            if abs(vals[0]) > MONOTONE_TOL or abs(vals[-1] - 1.0) > MONOTONE_TOL:
                raise ValueError("CDF grid must run from 0 to 1")

    @property
    def M(self) -> int:
        return self.values.size - 1

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.values.size)

    def __call__(self, u):
        """Interpolated evaluation (PCHIP for CDF, linear for density)."""
        u = np.asarray(u, dtype=np.float64)
        if self.kind is Kind.CDF:
            c3, c2, c1, c0 = pchip_coefficients(self.values)
            M = self.M
            idx = np.minimum((u * M).astype(np.int64), M - 1)
            t = u - idx / M
            return ((c3[idx] * t + c2[idx]) * t + c1[idx]) * t + c0[idx]
        return np.interp(u, self.xs, self.values)

    def with_values(self, vals: np.ndarray) -> "GridFunction":
        return GridFunction(self.N, self.kind, vals)


def pchip_coefficients(values: np.ndarray):
    """Per-cell cubic coefficients (c3, c2, c1, c0) of the PCHIP interpolant
    of `values` on the uniform grid, in local coordinates u - x_j."""
    M = values.size - 1
    xs = np.linspace(0.0, 1.0, M + 1)
    c = PchipInterpolator(xs, values).c
    return (np.ascontiguousarray(c[0]), np.ascontiguousarray(c[1]),
            np.ascontiguousarray(c[2]), np.ascontiguousarray(c[3]))
