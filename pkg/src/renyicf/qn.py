"""The contraction constant q_N and its analytic bounds.

q_N = sum_{i>=N} (1/i^3 + N/(i^2 (i+1))) = zeta(3,N) + N zeta(2,N) - 1,
strictly between the closed-form bounds

    1/N^3 + 1/(2N(N+1)) + 1/(2N)  <  q_N  <  1/(2N(N-1)) + 1/N - 1/(2N+1).

Hurwitz zeta values are computed by direct summation plus an
Euler-Maclaurin tail with a rigorous remainder bound; the bounds table for
N in {2, 10, 100, 500, 1000, 5000, 10000} reproduces a known reference
table character for character under shortest round-trip double rendering.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, bernoulli, rf

__all__ = [
    "ZetaValue",
    "QnCertificate",
    "hurwitz_zeta",
    "qn_exact",
    "qn_series",
    "qn_bounds",
    "qn_bounds_exact",
    "zeta_inequality_check",
    "reproduce_table",
    "table_text",
    "table_csv",
    "shortest_fixed",
    "REFERENCE_TABLE",
]

# Reference bound strings (shortest round-trip double renderings of the
# exact closed forms), used by the --check-paper style verification.
REFERENCE_TABLE: dict[int, tuple[str, str]] = {
    2: ("0.4583333333333333", "0.55"),
    10: ("0.055545454545454544", "0.05793650793650794"),
    100: ("0.00505050495049505", "0.0050753806723955975"),
    500: ("0.001002004007984032", "0.001003003009015033"),
    1000: ("0.0005005005004995005", "0.0005007503755629693"),
    5000: ("0.00010002000400079984", "0.00010003000300090015"),
    10000: ("0.00005000500050004999", "0.000050007500375056254"),
}

TABLE_N = tuple(REFERENCE_TABLE)


def _check_N(N: int) -> int:
    N = int(N)
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    return N


@dataclass(frozen=True)
class ZetaValue:
    """A Hurwitz zeta value zeta(s, a) = sum_{i>=a} i^{-s} with error bound."""

    s: int
    a: int
    value: mpf
    error_bound: mpf
    precision: int


@dataclass(frozen=True)
class QnCertificate:
    """q_N with its zeta decomposition and the strict analytic sandwich."""

    N: int
    q: mpf
    lower: float
    upper: float
    zeta2: ZetaValue
    zeta3: ZetaValue
    precision: int

    def to_json(self) -> str:
        doc = {
            "N": self.N,
            "q": mp.nstr(self.q, self.precision),
            "lower": shortest_fixed(self.lower),
            "upper": shortest_fixed(self.upper),
            "zeta2": mp.nstr(self.zeta2.value, self.precision),
            "zeta3": mp.nstr(self.zeta3.value, self.precision),
            "precision": self.precision,
        }
        return json.dumps(doc, indent=2)


def hurwitz_zeta(s: int, a: int, precision: int = 30, K: int | None = None) -> ZetaValue:
    """zeta(s, a) for s in {2, 3}, a >= 1, to `precision` significant digits.

    Direct sum of i^{-s} for a <= i < K, then the Euler-Maclaurin tail

        K^{1-s}/(s-1) + K^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} K^{-s-2j+1}.

    For completely monotone t^{-s} the remainder after the B_{2j} term is
    bounded by the first omitted term, which is returned as `error_bound`.
    K defaults to the smallest power-of-two-ish value making that bound
    beat the requested precision.
    """
    if s not in (2, 3):
        raise ValueError(f"only s in {{2, 3}} supported, got {s}")
    a = int(a)
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    precision = int(precision)
    target = mpf(10) ** (-(precision + 2))
    with mp.workdps(precision + 15):
        K0 = max(a, 64) if K is None else max(a, int(K))
        KK = K0
        while True:
            val = mpf(0)
            for i in range(a, KK):
                val += mpf(i) ** (-s)
            k = mpf(KK)
            val += k ** (1 - s) / (s - 1) + k ** (-s) / 2
            m = 1
            while True:
                term = bernoulli(2 * m) / mp.factorial(2 * m) * rf(s, 2 * m - 1) \
                    * k ** (-s - 2 * m + 1)
                nxt = bernoulli(2 * m + 2) / mp.factorial(2 * m + 2) \
                    * rf(s, 2 * m + 1) * k ** (-s - 2 * m - 1)
                if abs(nxt) >= abs(term) or m >= 16:
                    bound = abs(term)  # diverging asymptotic tail: stop before adding
                    break
                val += term
                if abs(nxt) < target * abs(val):
                    bound = abs(nxt)
                    break
                m += 1
            if K is not None or bound < target * abs(val):
                break
            KK *= 2  # asymptotic series bottomed out; lengthen the direct sum
        return ZetaValue(s, a, +val, +bound, precision)


def qn_bounds_exact(N: int) -> tuple[Fraction, Fraction]:
    """The two closed-form bounds as exact rationals."""
    N = _check_N(N)
    lower = Fraction(1, N ** 3) + Fraction(1, 2 * N * (N + 1)) + Fraction(1, 2 * N)
    upper = Fraction(1, 2 * N * (N - 1)) + Fraction(1, N) - Fraction(1, 2 * N + 1)
    return lower, upper


def qn_bounds(N: int) -> tuple[float, float]:
    """The closed-form bounds, each correctly rounded once to a double."""
    lower, upper = qn_bounds_exact(N)
    return float(lower), float(upper)


def qn_exact(N: int, precision: int = 30) -> QnCertificate:
    """q_N = zeta(3,N) + N zeta(2,N) - 1 with the strict bound sandwich."""
    N = _check_N(N)
    z2 = hurwitz_zeta(2, N, precision)
    z3 = hurwitz_zeta(3, N, precision)
    with mp.workdps(precision + 15):
        q = z3.value + N * z2.value - 1
        err = z3.error_bound + N * z2.error_bound
        lo_f, up_f = qn_bounds(N)
        lo, up = qn_bounds_exact(N)
        lo_mp = mpf(lo.numerator) / lo.denominator
        up_mp = mpf(up.numerator) / up.denominator
        if not (lo_mp + err < q < up_mp - err):
            raise ArithmeticError(
                f"bound sandwich violated for N={N}: {lo_mp} < {q} < {up_mp}"
            )
        if not (0 < q < 1):
            raise ArithmeticError(f"q_N out of (0, 1) for N={N}: {q}")
        return QnCertificate(N, +q, lo_f, up_f, z2, z3, precision)


def qn_series(N: int, terms: int) -> tuple[float, float]:
    """Partial sum of sum_{i>=N} (1/i^3 + N/(i^2(i+1))) with an error bound.

    Returns (value, bound) where |q_N - value| <= bound.  The bound is the
    integral-comparison truncation tail (both addends are < (1+N)/i^3, so
    the tail past K terms is < (1+N)/(2(K-1)^2)) plus a rigorous allowance
    for float64 pairwise summation, 2 ceil(log2 n) eps sum|t_i| plus one
    ulp per elementary term operation.
    """
    import numpy as np

    N = _check_N(N)
    terms = int(terms)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    i = np.arange(N, N + terms, dtype=np.float64)
    t = 1.0 / (i * i * i) + N / (i * i * (i + 1.0))
    value = float(np.sum(t))
    K = N + terms
    tail = (1.0 + N) / (2.0 * (K - 1) ** 2)
    eps = np.finfo(np.float64).eps
    abs_sum = float(np.sum(np.abs(t)))
    rounding = (2 * math.ceil(math.log2(max(terms, 2))) + 8) * eps * abs_sum
    return value, float(tail + rounding)


def zeta_inequality_check(N: int, precision: int = 30) -> dict[str, bool]:
    """The four zeta inequalities behind the q_N bounds, checked numerically.

    zeta(2,N) >= 2/(sqrt(4N^2+1)-1);      zeta(2,N) < 1/N^2 + 2/(2N+1);
    zeta(3,N) < 1/(2N(sqrt(N^2+1)-1));    zeta(3,N) > 1/N^3 + 1/(2(N^2+N+1/2)).
    """
    N = _check_N(N)
    z2 = hurwitz_zeta(2, N, precision).value
    z3 = hurwitz_zeta(3, N, precision).value
    with mp.workdps(precision + 15):
        n = mpf(N)
        return {
            "zeta2_lower": bool(z2 >= 2 / (mp.sqrt(4 * n * n + 1) - 1)),
            "zeta2_upper": bool(z2 < 1 / (n * n) + 2 / (2 * n + 1)),
            "zeta3_upper": bool(z3 < 1 / (2 * n * (mp.sqrt(n * n + 1) - 1))),
            "zeta3_lower": bool(z3 > 1 / (n ** 3) + 1 / (2 * (n * n + n + mpf(1) / 2))),
        }


def shortest_fixed(x: float) -> str:
    """Shortest round-trip decimal of a double, in positional notation."""
    s = repr(float(x))
    if "e" not in s and "E" not in s:
        return s
    mant, _, exp = s.lower().partition("e")
    exp = int(exp)
    neg = mant.startswith("-")
    digits = mant.lstrip("-").replace(".", "")
    point = (1 if "." in mant else len(mant.lstrip("-"))) + exp
    if point <= 0:
        out = "0." + "0" * (-point) + digits
    elif point >= len(digits):
        out = digits + "0" * (point - len(digits))
    else:
        out = digits[:point] + "." + digits[point:]
    return ("-" if neg else "") + out


def reproduce_table() -> list[tuple[int, str, str]]:
    """Bound strings for the reference N values, rendered as above."""
    rows = []
    for N in TABLE_N:
        lo, up = qn_bounds(N)
        rows.append((N, shortest_fixed(lo), shortest_fixed(up)))
    return rows


def table_text() -> str:
    """Aligned text table of the lower/upper bounds of q_N."""
    rows = reproduce_table()
    w0 = max(len("N"), *(len(str(r[0])) for r in rows))
    w1 = max(len("Lower bound of q_N"), *(len(r[1]) for r in rows))
    w2 = max(len("Upper bound of q_N"), *(len(r[2]) for r in rows))
    lines = [f"{'N':<{w0}}  {'Lower bound of q_N':<{w1}}  {'Upper bound of q_N':<{w2}}"]
    for N, lo, up in rows:
        lines.append(f"{N:<{w0}}  {lo:<{w1}}  {up:<{w2}}")
    return "\n".join(lines) + "\n"


def table_csv() -> str:
    """CSV export of the bounds table (LF line endings, '.' decimal point)."""
    import csv

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "lower_bound", "upper_bound"])
    for N, lo, up in reproduce_table():
        w.writerow([N, lo, up])
    return buf.getvalue()
