"""Renyi-type continued fraction machinery for integer parameter N >= 2.

The map is R_N(x) = N/(1-x) - floor(N/(1-x)) with R_N(1) = 0.  It generates
the expansion x = 1 - N/(1+a_1 - N/(1+a_2 - ...)) whose digits satisfy
a_i >= N, together with exact integer convergents p_n/q_n obeying the
determinant identity p_{n-1} q_n - p_n q_{n-1} = N^n.

Two arithmetic paths are exposed: a machine-double path (`renyi_map`,
`expand`) and an exact rational path (`renyi_map_exact`, `expand_exact`)
used as a rounding-free oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "DIGIT_CAP",
    "Parameter",
    "DigitSequence",
    "Convergent",
    "Orbit",
    "InfiniteDigitError",
    "renyi_map",
    "renyi_map_exact",
    "digit",
    "digit_exact",
    "expand",
    "expand_exact",
    "convergents",
    "evaluate",
]

# Largest digit the float path will report; past this, floor(N/(1-x)) has
# no meaning at double resolution.
DIGIT_CAP = 2 ** 53


class InfiniteDigitError(ValueError):
    """Raised when a digit is requested at x = 1, where a_1 is infinite."""


@dataclass(frozen=True)
class Parameter:
    """The integer parameter N >= 2 of the Renyi-type map."""

    N: int

    def __post_init__(self):
        if not isinstance(self.N, int) or isinstance(self.N, bool):
            raise TypeError(f"N must be an integer, got {self.N!r}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")


def _n_value(N) -> int:
    if isinstance(N, Parameter):
        return N.N
    return Parameter(N).N


def _check_unit_interval(x, *, open_right: bool = False) -> None:
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    if x < 0 or x > 1 or (open_right and x == 1):
        hi = "1)" if open_right else "1]"
        raise ValueError(f"x must lie in [0, {hi}, got {x!r}")


@dataclass(frozen=True)
class DigitSequence:
    """A finite prefix a_1..a_n of a Renyi-type expansion; every a_i >= N."""

    N: int
    digits: tuple[int, ...]

    def __post_init__(self):
        n = _n_value(self.N)
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "digits", tuple(int(a) for a in self.digits))
        for a in self.digits:
            if a < n:
                raise ValueError(f"digit {a} below N = {n}")

    def __len__(self) -> int:
        return len(self.digits)

    def prefix(self, k: int) -> "DigitSequence":
        return DigitSequence(self.N, self.digits[:k])


@dataclass(frozen=True)
class Convergent:
    """Exact convergent p_n/q_n, arbitrary-precision integers."""

    index: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class Orbit:
    """Points x_0..x_k of a forward orbit and the digits emitted along it.

    `truncated` is set when an iterate landed exactly on 1 (only possible
    through rounding on the float path); `precision_loss` when a digit
    exceeded DIGIT_CAP.  Either flag stops the expansion early.
    """

    N: int
    points: tuple
    digits: tuple[int, ...]
    truncated: bool = False
    precision_loss: bool = False

    @property
    def sequence(self) -> DigitSequence:
        return DigitSequence(self.N, self.digits)

    @property
    def final(self):
        return self.points[-1]


def renyi_map(N, x: float) -> float:
    """One application of R_N(x) = frac(N/(1-x)); R_N(1) = 0."""
    n = _n_value(N)
    _check_unit_interval(x)
    if x == 1:
        return 0.0
    y = n / (1.0 - x)
    return y - math.floor(y)


def renyi_map_exact(N, x: Fraction) -> Fraction:
    """Exact-rational twin of `renyi_map`."""
    n = _n_value(N)
    x = Fraction(x)
    _check_unit_interval(x)
    if x == 1:
        return Fraction(0)
    y = Fraction(n) / (1 - x)
    return y - (y.numerator // y.denominator)


def digit(N, x: float) -> int:
    """First digit a_1(x) = floor(N/(1-x)); always >= N."""
    n = _n_value(N)
    _check_unit_interval(x, open_right=False)
    if x == 1:
        raise InfiniteDigitError("a_1(1) is infinite")
    return math.floor(n / (1.0 - x))


def digit_exact(N, x: Fraction) -> int:
    n = _n_value(N)
    x = Fraction(x)
    _check_unit_interval(x)
    if x == 1:
        raise InfiniteDigitError("a_1(1) is infinite")
    y = Fraction(n) / (1 - x)
    return y.numerator // y.denominator


def expand(N, x: float, n: int) -> Orbit:
    """First n digits of x's expansion, machine-double path.

    Stops early with `truncated` if an iterate rounds onto 1, or with
    `precision_loss` if a digit exceeds DIGIT_CAP.
    """
    nn = _n_value(N)
    _check_unit_interval(x, open_right=True)
    if n < 0:
        raise ValueError("n must be >= 0")
    points = [float(x)]
    digits: list[int] = []
    truncated = False
    lossy = False
    for _ in range(n):
        cur = points[-1]
        if cur == 1.0:
            truncated = True
            break
        a = math.floor(nn / (1.0 - cur))
        if a > DIGIT_CAP:
            lossy = True
            break
        digits.append(a)
        y = nn / (1.0 - cur)
        points.append(y - math.floor(y))
    return Orbit(nn, tuple(points), tuple(digits),
                 truncated=truncated, precision_loss=lossy)


def expand_exact(N, x, n: int) -> Orbit:
    """Exact-rational twin of `expand`; never truncates for x in [0, 1)."""
    nn = _n_value(N)
    x = Fraction(x)
    _check_unit_interval(x, open_right=True)
    if n < 0:
        raise ValueError("n must be >= 0")
    points = [x]
    digits: list[int] = []
    for _ in range(n):
        cur = points[-1]
        y = Fraction(nn) / (1 - cur)
        a = y.numerator // y.denominator
        digits.append(a)
        points.append(y - a)
    return Orbit(nn, tuple(points), tuple(digits))


def convergents(d: DigitSequence) -> list[Convergent]:
    """Convergents (p_0,q_0)..(p_n,q_n) by the three-term recurrence.

    Seeds p_0 = q_0 = 1, p_1 = 1+a_1-N, q_1 = 1+a_1, then
    p_k = (1+a_k) p_{k-1} - N p_{k-2} and likewise for q.
    """
    n = d.N
    out = [Convergent(0, 1, 1)]
    if not d.digits:
        return out
    p_prev, q_prev = 1, 1
    p, q = 1 + d.digits[0] - n, 1 + d.digits[0]
    out.append(Convergent(1, p, q))
    for k, a in enumerate(d.digits[1:], start=2):
        p, p_prev = (1 + a) * p - n * p_prev, p
        q, q_prev = (1 + a) * q - n * q_prev, q
        out.append(Convergent(k, p, q))
    return out


def evaluate(d: DigitSequence) -> Fraction:
    """Exact value 1 - N/(1+a_1 - N/(1+a_2 - ...)) of a finite expansion."""
    if not d.digits:
        raise ValueError("cannot evaluate an empty digit sequence")
    n = d.N
    t = Fraction(1 + d.digits[-1])
    for a in reversed(d.digits[:-1]):
        t = 1 + a - Fraction(n) / t
    return 1 - Fraction(n) / t
