"""U_q(sl2) operator data for the critical points of a diagram.

Index conventions: a crossing tensor entry ``(i, j, k, l)`` is ``R^{ij}_{kl}``
with ``i, j`` the labels on the upper-left and upper-right strands and
``k, l`` the labels on the lower-left and lower-right strands.  Both strands
run downward, from ``i`` towards ``l`` and from ``j`` towards ``k``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .qalgebra import RootOfUnity, quantum_factorial, quantum_int

__all__ = [
    "SparseTensor",
    "OperatorSet",
    "r_matrix",
    "r_inverse",
    "mu_diagonal",
    "cap_cup_tensors",
    "operator_set",
    "crossing_tensor",
]


@dataclass(frozen=True)
class SparseTensor:
    """Labeled multi-index array storing only its nonzero entries.

    ``dims`` gives the range of each index.
    """

    dims: tuple[int, ...]
    entries: dict[tuple[int, ...], complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(self.dims))
        for idx, val in self.entries.items():
            if len(idx) != self.arity or not all(0 <= x < d for x, d in zip(idx, self.dims)):
                raise ValueError(f"bad index {idx} for dims {self.dims}")
            if val == 0:
                raise ValueError(f"stored a zero entry at {idx}")

    @property
    def arity(self) -> int:
        return len(self.dims)

    def __getitem__(self, idx: tuple[int, ...]) -> complex:
        return self.entries.get(tuple(idx), 0j)

    def dense(self, dtype: type = np.complex128) -> np.ndarray:
        out = np.zeros(self.dims, dtype=dtype)
        for idx, val in self.entries.items():
            out[idx] = val
        return out

    def matrix(self, dtype: type = np.complex128) -> np.ndarray:
        """Arity-4 tensor as a matrix with rows ``(i, j)`` and columns ``(k, l)``."""
        if self.arity != 4:
            raise ValueError("matrix() needs an arity-4 tensor")
        a, b, c, d = self.dims
        return self.dense(dtype).reshape(a * b, c * d)

    def to_json(self) -> dict:
        return {
            ",".join(map(str, idx)): [float(np.real(v)), float(np.imag(v))]
            for idx, v in sorted(self.entries.items())
        }


def _check_n(n: int, q: RootOfUnity) -> None:
    if not 1 <= n <= q.r:
        raise ValueError(f"color dimension must satisfy 1 <= n <= r, got n={n}, r={q.r}")


def _factorials(n: int, q: RootOfUnity) -> list:
    return [quantum_factorial(m, q) for m in range(n)]


def r_matrix(n: int, q: RootOfUnity, n_right: int | None = None) -> SparseTensor:
    """The R-matrix as a crossing tensor.

    ``n`` colors the strand running from upper left to lower right and
    ``n_right`` (default ``n``) the strand from upper right to lower left.
    The Kronecker deltas fix ``m = l - i = j - k``, so each entry is a single
    term rather than a sum over ``m``.  For unequal colors the phase uses the
    weights ``i - (n-1)/2`` and ``j - (n_right-1)/2`` in place of ``i - j``;
    for equal colors this is the same expression.
    """
    a, b = n, n if n_right is None else n_right
    _check_n(a, q)
    _check_n(b, q)
    fact = _factorials(max(a, b), q)
    ha, hb = Fraction(a - 1, 2), Fraction(b - 1, 2)
    entries: dict[tuple[int, ...], complex] = {}
    for i in range(a):
        for j in range(b):
            for m in range(min(a - 1 - i, j) + 1):
                k, l = j - m, i + m
                alpha = (i - ha) * (j - hb) - Fraction(m, 2) * ((i - ha) - (j - hb)) - Fraction(m * (m + 1), 4)
                val = q.power(alpha) * fact[l] * fact[b - 1 - k] / (fact[i] * fact[m] * fact[b - 1 - j])
                assert i + j == k + l
                if val != 0:
                    entries[(i, j, k, l)] = val
    return SparseTensor((a, b, b, a), entries)


def r_inverse(n: int, q: RootOfUnity, n_right: int | None = None) -> SparseTensor:
    """The inverse R-matrix, same index layout as :func:`r_matrix`.

    The deltas fix ``m = i - l = k - j``; the range of ``m`` is the one
    allowed by ``l >= 0`` and ``k <= n_right - 1``, i.e. ``m <= min(i, n_right-1-j)``.
    """
    a, b = n, n if n_right is None else n_right
    _check_n(a, q)
    _check_n(b, q)
    fact = _factorials(max(a, b), q)
    ha, hb = Fraction(a - 1, 2), Fraction(b - 1, 2)
    entries: dict[tuple[int, ...], complex] = {}
    for i in range(a):
        for j in range(b):
            for m in range(min(i, b - 1 - j) + 1):
                k, l = j + m, i - m
                beta = -(i - ha) * (j - hb) - Fraction(m, 2) * ((i - ha) - (j - hb)) + Fraction(m * (m + 1), 4)
                sign = -1 if m % 2 else 1
                val = sign * q.power(beta) * fact[k] * fact[a - 1 - l] / (fact[j] * fact[m] * fact[a - 1 - i])
                assert i + j == k + l
                if val != 0:
                    entries[(i, j, k, l)] = val
    return SparseTensor((a, b, b, a), entries)


def mu_diagonal(n: int, q: RootOfUnity) -> np.ndarray:
    """Diagonal of the good unit: ``mu_j = q^((2j - (n-1)) / 2)``."""
    _check_n(n, q)
    mu = np.array([q.power(Fraction(2 * j - (n - 1), 2)) for j in range(n)], dtype=q.dtype)
    if q.r > 1:
        trace = complex(np.sum(mu))
        assert abs(trace - quantum_int(n, q)) < 1e-9 * max(1.0, n), "tr(mu) must equal [n]"
    return mu


def cap_cup_tensors(n: int, q: RootOfUnity) -> dict[str, SparseTensor]:
    """The extremum operators with dual indices identified with primal ones.

    ``cap_e`` and ``cup_n`` are plain pairings; ``cap_emu`` carries ``mu`` and
    ``cup_nmu`` carries ``mu^-1``.
    """
    mu = mu_diagonal(n, q)
    diag = lambda w: SparseTensor((n, n), {(i, i): w[i] for i in range(n)})  # noqa: E731
    ones = np.ones(n, dtype=q.dtype)
    return {
        "cap_e": diag(ones),
        "cap_emu": diag(mu),
        "cup_n": diag(ones),
        "cup_nmu": diag(1.0 / mu),
    }


@dataclass(frozen=True)
class OperatorSet:
    """All tensors for one color dimension ``n`` at one root of unity."""

    n: int
    q: RootOfUnity
    R: SparseTensor
    R_inv: SparseTensor
    extrema: dict[str, SparseTensor]
    mu: np.ndarray

    def node_tensor(self, kind: str) -> SparseTensor:
        if kind == "cross_pos":
            return self.R
        if kind == "cross_neg":
            return self.R_inv
        return self.extrema[kind]

    def dump_json(self) -> str:
        payload = {
            "n": self.n,
            "r": self.q.r,
            "tensors": {"R": self.R.to_json(), "R_inv": self.R_inv.to_json()}
            | {k: v.to_json() for k, v in self.extrema.items()},
        }
        return json.dumps(payload, indent=1, sort_keys=True)


@lru_cache(maxsize=64)
def operator_set(n: int, q: RootOfUnity) -> OperatorSet:
    return OperatorSet(
        n=n,
        q=q,
        R=r_matrix(n, q),
        R_inv=r_inverse(n, q),
        extrema=cap_cup_tensors(n, q),
        mu=mu_diagonal(n, q),
    )


@lru_cache(maxsize=256)
def crossing_tensor(kind: str, n_left: int, n_right: int, q: RootOfUnity) -> SparseTensor:
    """Tensor of a crossing whose NW strand has color ``n_left`` and NE strand ``n_right``."""
    if kind == "cross_pos":
        return r_matrix(n_left, q, n_right)
    if kind == "cross_neg":
        return r_inverse(n_left, q, n_right)
    raise ValueError(f"not a crossing kind: {kind!r}")
