"""Scalar foundations: roots of unity, quantum integers and factorials,
Laurent polynomials in ``A`` (with ``A**4 = q``), the Lobachevsky function and
log-magnitude arithmetic."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

import numpy as np
from scipy.special import zeta

__all__ = [
    "RootOfUnity",
    "LaurentPoly",
    "LogMagnitude",
    "quantum_braced",
    "quantum_int",
    "quantum_factorial",
    "log_abs_braced_factorial",
    "lobachevsky",
    "volume_constants",
]

PRECISIONS = {"double": np.complex128, "extended": np.clongdouble}


@dataclass(frozen=True)
class RootOfUnity:
    """The root of unity ``q = exp(2 pi i / r)``.

    Fractional powers ``q**alpha`` are always taken on the principal branch,
    ``exp(2 pi i alpha / r)``, so quarter powers are unambiguous.
    """

    r: int
    precision: str = "double"

    def __post_init__(self) -> None:
        if not isinstance(self.r, (int, np.integer)) or self.r < 1:
            raise ValueError(f"root order must be a positive integer, got {self.r!r}")
        if self.precision not in PRECISIONS:
            raise ValueError(f"unknown precision {self.precision!r}")

    @property
    def dtype(self) -> type:
        return PRECISIONS[self.precision]

    @property
    def value(self) -> complex:
        return complex(self.power(1))

    def power(self, alpha: float | Fraction) -> np.complexfloating:
        """Return ``q**alpha`` as ``exp(2 pi i alpha / r)``."""
        if self.precision == "extended":
            angle = np.longdouble(2) * np.pi * np.longdouble(Fraction(alpha).numerator)
            angle /= np.longdouble(Fraction(alpha).denominator) * self.r
            return np.clongdouble(np.cos(angle) + 1j * np.sin(angle))
        angle = 2.0 * math.pi * float(alpha) / self.r
        return np.complex128(complex(math.cos(angle), math.sin(angle)))

    def a_value(self) -> complex:
        """The variable ``A = exp(2 pi i / 4r)``, so that ``A**4 = q``."""
        return cmath.exp(2j * math.pi / (4 * self.r))


def quantum_braced(m: int, q: RootOfUnity) -> np.complexfloating:
    """``{m} = q^(m/2) - q^(-m/2)``, which equals ``2i sin(pi m / r)``."""
    if q.precision == "extended":
        return np.clongdouble(2j) * np.sin(np.longdouble(np.pi) * m / q.r)
    return np.complex128(2j * math.sin(math.pi * m / q.r))


def quantum_int(m: int, q: RootOfUnity) -> float:
    """``[m] = {m} / {1}``, a real number."""
    if q.r == 1:
        raise ZeroDivisionError("[m] is undefined at r = 1 since {1} = 0")
    return math.sin(math.pi * m / q.r) / math.sin(math.pi / q.r)


def quantum_factorial(m: int, q: RootOfUnity) -> np.complexfloating:
    """``{m}! = {1}{2}...{m}`` for ``0 <= m <= r - 1``."""
    if m < 0 or m > q.r - 1:
        raise ValueError(f"quantum factorial needs 0 <= m <= r-1, got m={m}, r={q.r}")
    out = q.dtype(1)
    for k in range(1, m + 1):
        out = out * quantum_braced(k, q)
    return out


def log_abs_braced_factorial(m: int, r: int) -> float:
    """``ln |{m}!|`` at ``q = exp(2 pi i / r)``, summed in log space."""
    if m < 0 or m > r - 1:
        raise ValueError(f"quantum factorial needs 0 <= m <= r-1, got m={m}, r={r}")
    return math.fsum(math.log(2.0 * math.sin(math.pi * k / r)) for k in range(1, m + 1))


class LaurentPoly:
    """Integer Laurent polynomial in ``A``; immutable, zero terms never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()) -> None:
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coeff in items:
            acc[int(exp)] = acc.get(int(exp), 0) + int(coeff)
        self._terms = {e: c for e, c in sorted(acc.items()) if c != 0}
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def loop_value(cls) -> LaurentPoly:
        """``-A^2 - A^-2``, the value of a contractible circle."""
        return cls({2: -1, -2: -1})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly.constant(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._terms.items()})
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials can be inverted")
            # c is +-1, so c**-1 == c
            return LaurentPoly({e * k: c ** (-k)})
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``A**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def evaluate(self, a: complex) -> complex:
        return complex(sum(c * a**e for e, c in self._terms.items()))

    def at_root(self, q: RootOfUnity) -> complex:
        """Evaluate at ``A = exp(2 pi i / 4r)``; exponent ``e`` of ``A`` is ``q**(e/4)``."""
        return complex(sum(c * complex(q.power(Fraction(e, 4))) for e, c in self._terms.items()))

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                parts.append(f"{c}")
            else:
                coeff = "" if c == 1 else "-" if c == -1 else f"{c}*"
                parts.append(f"{coeff}A^{e}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class LogMagnitude:
    """A complex number stored as ``exp(logmag) * phase`` with ``|phase| = 1``.

    Zero is represented by ``logmag = -inf``.
    """

    logmag: float
    phase: complex = 1.0 + 0.0j

    @classmethod
    def from_complex(cls, z: complex) -> LogMagnitude:
        if z == 0:
            return cls(-math.inf, 1.0 + 0.0j)
        return cls(math.log(abs(z)), complex(z) / abs(z))

    def to_complex(self) -> complex:
        if self.logmag == -math.inf:
            return 0j
        return math.exp(self.logmag) * self.phase

    def __mul__(self, other: LogMagnitude) -> LogMagnitude:
        return LogMagnitude(self.logmag + other.logmag, self.phase * other.phase)

    def __truediv__(self, other: LogMagnitude) -> LogMagnitude:
        if other.logmag == -math.inf:
            raise ZeroDivisionError("division by zero magnitude")
        return LogMagnitude(self.logmag - other.logmag, self.phase / other.phase)

    def __pow__(self, k: int) -> LogMagnitude:
        return LogMagnitude(self.logmag * k, self.phase**k)

    @staticmethod
    def sum(values: Iterable[LogMagnitude]) -> LogMagnitude:
        """Sum with a common rescaling to avoid overflow."""
        vals = [v for v in values if v.logmag != -math.inf]
        if not vals:
            return LogMagnitude(-math.inf)
        top = max(v.logmag for v in vals)
        acc = sum(math.exp(v.logmag - top) * v.phase for v in vals)
        if acc == 0:
            return LogMagnitude(-math.inf)
        return LogMagnitude(top + math.log(abs(acc)), acc / abs(acc))


_FOURIER_TOL = 1e-11
_FOURIER_MAX_TERMS = 2_000_000
_CHUNK = 1 << 16


def _lobachevsky_fourier(x: float, terms: int) -> float:
    # chunk sums are exact-rounded together, so accumulation error stays at ulp level
    partial = []
    for start in range(1, terms + 1, _CHUNK):
        k = np.arange(start, min(start + _CHUNK, terms + 1), dtype=np.float64)
        partial.append(float(np.sum(np.sin(2.0 * k * x) / (k * k))))
    return 0.5 * math.fsum(partial)


def _lobachevsky_series(x: float) -> float:
    """Power series around 0, valid for ``|x| < pi``."""
    if x == 0.0:
        return 0.0
    out = x - x * math.log(2.0 * abs(x))
    ratio = (x / math.pi) ** 2
    power = x
    terms = []
    for k in range(1, 200):
        power *= ratio
        term = float(zeta(2 * k)) * power / (k * (2 * k + 1))
        terms.append(term)
        if abs(term) < 1e-18:
            break
    return out + math.fsum(terms)


def lobachevsky(x: float, method: str = "fourier") -> float:
    """Lobachevsky function ``Lambda(x) = -int_0^x log|2 sin t| dt``.

    ``method="fourier"`` sums ``0.5 * sum sin(2kx)/k^2`` with enough terms for
    an absolute error below 1e-10; where ``|sin x|`` is too small for the
    oscillating tail to be bounded cheaply it switches to the power series.
    ``method="series"`` always uses the power series.
    """
    if not math.isfinite(x):
        raise ValueError("lobachevsky needs a finite argument")
    # odd and pi-periodic: reduce to (-pi/2, pi/2]
    y = math.remainder(x, math.pi)
    if method == "series":
        return _lobachevsky_series(y)
    if method != "fourier":
        raise ValueError(f"unknown method {method!r}")
    s = abs(math.sin(y))
    if s == 0.0:
        return 0.0
    # Abel summation bounds the tail past K by 2 / (K^2 |sin x|)
    if _FOURIER_TOL * s * _FOURIER_MAX_TERMS**2 < 2.0:
        return _lobachevsky_series(y)
    return _lobachevsky_fourier(y, math.ceil(math.sqrt(2.0 / (_FOURIER_TOL * s))))


@lru_cache(maxsize=None)
def volume_constants() -> tuple[float, float]:
    """Return ``(v_oct, v_tet) = (8 Lambda(pi/4), 3 Lambda(pi/3))``."""
    return 8.0 * lobachevsky(math.pi / 4), 3.0 * lobachevsky(math.pi / 3)
