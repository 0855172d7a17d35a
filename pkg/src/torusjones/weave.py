"""Closed-form evaluation of the square weave invariant at ``q = exp(2 pi i / n)``.

Both evaluators sum over ``m`` and the four strand labels ``a, b, c, d`` of
the weave state sum.  Magnitudes are products of ``|2 sin(pi k / n)|`` and are
handled as logarithms; every phase is an exact ``n``-th root of unity, so the
phase exponent is reduced modulo ``n`` in integer arithmetic.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .qalgebra import log_abs_braced_factorial, volume_constants

__all__ = [
    "WeaveEval",
    "DIRECT_CAP",
    "weave_direct",
    "weave_fast",
    "gl_upper_bound",
    "lower_bound_log",
    "lower_bound_term",
    "convergence_csv",
]

DIRECT_CAP = 60


@dataclass(frozen=True)
class WeaveEval:
    n: int
    log_value: float
    method: str
    # |Im| / |Re| of the assembled sum; only the direct method can see a residue
    imag_ratio: float = 0.0

    @property
    def value(self) -> float:
        """The invariant itself; ``inf`` once it leaves the double range."""
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    @property
    def normalized_log(self) -> float:
        return 2 * math.pi / self.n * self.log_value


def _log_factorials(n: int) -> np.ndarray:
    return np.array([log_abs_braced_factorial(k, n) for k in range(n)])


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"weave evaluation needs n >= 2, got {n}")


def _ratio_logs(lf: np.ndarray, m: int) -> np.ndarray:
    """``ln |{x+m}! / {x}!|`` for ``x = 0 .. n-m-1``."""
    n = len(lf)
    x = np.arange(n - m)
    return lf[x + m] - lf[x]


def weave_direct(n: int, cap: int = DIRECT_CAP) -> WeaveEval:
    """The five-fold sum term by term, O(n^5)."""
    _check_n(n)
    if n > cap:
        raise ValueError(f"direct weave sum limited to n <= {cap} (got {n})")
    lf = _log_factorials(n)
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    scales, sums = [], []
    for m in range(n):
        logs = _ratio_logs(lf, m)
        size = len(logs)
        top = logs.max()
        e = np.exp(2.0 * (logs - top))
        idx = np.arange(size)
        # (d - b) over the (b, d) grid and the matching weight e_b e_d
        diff_bd = (idx[None, :] - idx[:, None]).ravel()
        w_bd = np.outer(e, e).ravel()
        total = 0j
        for a in range(size):
            diff_ac = a - idx
            phase = roots[np.mod(np.outer(diff_ac, diff_bd), n)]
            total += e[a] * np.sum(e[:, None] * phase * w_bd[None, :])
        scales.append(-4.0 * lf[m] + 8.0 * top)
        sums.append(total)
    ref = max(scales)
    value = sum(math.exp(s - ref) * z for s, z in zip(scales, sums))
    if value.real <= 0:
        raise ArithmeticError(f"weave sum is not positive at n={n}: {value}")
    return WeaveEval(n, ref + math.log(value.real), "direct_n5", abs(value.imag) / value.real)


def weave_fast(n: int) -> WeaveEval:
    """Factorized form: for each ``m``, a sum over ``t = d - b`` of ``|sum_a omega^{a t} P_a|^2``.

    With ``P_x = |{x+m}!/{x}!|^2`` the inner sums over ``a`` and the pair
    counts over ``(b, d)`` only depend on ``t mod n``, so both are length-``n``
    discrete Fourier transforms of ``P``.
    """
    _check_n(n)
    lf = _log_factorials(n)
    scales, sums = [], []
    for m in range(n):
        logs = _ratio_logs(lf, m)
        top = logs.max()
        p = np.zeros(n)
        p[: len(logs)] = np.exp(2.0 * (logs - top))
        spectrum = np.fft.fft(p)
        # sum_a P_a omega^{a t}: the inverse transform (positive exponent) times n
        inner = np.fft.ifft(p) * n
        nu = inner.real**2 + inner.imag**2
        # G(t) = sum_b P_b P_{b+t mod n}
        pairs = np.fft.ifft(np.abs(spectrum) ** 2).real
        scales.append(-4.0 * lf[m] + 8.0 * top)
        sums.append(math.fsum(pairs * nu))
    ref = max(scales)
    value = math.fsum(math.exp(s - ref) * z for s, z in zip(scales, sums))
    return WeaveEval(n, ref + math.log(value), "nu_n3")


def gl_upper_bound(crossings: int) -> float:
    """Asymptotic ceiling ``crossings * v_oct`` on the normalized log."""
    if crossings < 0:
        raise ValueError("crossing count must be non-negative")
    return crossings * volume_constants()[0]


def lower_bound_log(n: int) -> float:
    """Natural log of the single dominant summand bounding the weave value from below."""
    if n < 4:
        raise ValueError(f"lower bound needs n >= 4, got {n}")
    lf = lambda k: log_abs_braced_factorial(k, n)  # noqa: E731
    half, quarter = n // 2, n // 4
    hi = (3 * n) // 4
    return min(-4 * lf(half) + 8 * (lf(k) - lf(quarter)) for k in (hi, hi - 1))


def lower_bound_term(n: int) -> float:
    try:
        return math.exp(lower_bound_log(n))
    except OverflowError:
        return math.inf


def convergence_csv(rows: Iterable[WeaveEval | tuple[int, float]], target: float | None = None) -> str:
    """CSV with columns ``n, value_log, normalized_log, target, gap``.

    Rows are weave evaluations or ``(n, ln |value|)`` pairs taken at ``r = n``;
    the target defaults to the square weave ceiling ``4 v_oct``.
    """
    if target is None:
        target = gl_upper_bound(4)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "value_log", "normalized_log", "target", "gap"])
    for row in rows:
        n, log_value = (row.n, row.log_value) if isinstance(row, WeaveEval) else row
        norm = 2 * math.pi / n * log_value
        writer.writerow([n, f"{log_value:.12g}", f"{norm:.10f}", f"{target:.10f}", f"{target - norm:.10f}"])
    return buf.getvalue()
