"""Renyi-type continued fractions: expansion, invariant measure, transfer
operator, Gauss-Kuzmin iteration, and the contraction constant q_N.

Heavy submodules (transfer, which pulls in scipy and numba) load lazily.
"""

from .cf import (
    DIGIT_CAP,
    Convergent,
    DigitSequence,
    InfiniteDigitError,
    Orbit,
    Parameter,
    convergents,
    digit,
    digit_exact,
    evaluate,
    expand,
    expand_exact,
    renyi_map,
    renyi_map_exact,
)
from .measure import RhoMeasure, rho_cdf, rho_cdf_grid, rho_density, rho_interval
from .qn import (
    QnCertificate,
    ZetaValue,
    hurwitz_zeta,
    qn_bounds,
    qn_exact,
    qn_series,
    reproduce_table,
    zeta_inequality_check,
)

_LAZY = ("transfer", "grids", "cli")


def __getattr__(name):
    if name in _LAZY:
        import importlib

        return importlib.import_module(f".{name}", __name__)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__version__ = "0.1.0"
