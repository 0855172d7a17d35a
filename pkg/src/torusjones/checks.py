"""Cross-oracle consistency checks shared by the ``verify`` command.

Each check family compares two independent routes to the same number and
returns one :class:`CheckResult` per comparison.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import catalog
from .linwang import crossing_weight, jT2_linwang
from .qalgebra import RootOfUnity, quantum_int
from .rmatrix import mu_diagonal, r_inverse, r_matrix
from .skein import jT_su2
from .statesum import jT, jT_cabled
from .weave import weave_direct, weave_fast

__all__ = ["CheckResult", "FAMILIES", "run_checks", "operator_errors"]


@dataclass(frozen=True)
class CheckResult:
    family: str
    name: str
    ok: bool
    error: float

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.family}: {self.name} (error {self.error:.2e})"


def _result(family: str, name: str, error: float, tol: float) -> CheckResult:
    return CheckResult(family, name, bool(error <= tol), float(error))


def operator_errors(n: int, q: RootOfUnity) -> tuple[float, float, float]:
    """Errors of ``R R^-1 = I``, the braid relation and the kink twist ``q^((n^2-1)/4)``."""
    pos = r_matrix(n, q).matrix()
    neg = r_inverse(n, q).matrix()
    eye = np.eye(n)
    inverse = np.abs(pos @ neg - np.eye(n * n)).max()
    left = np.kron(pos, eye) @ np.kron(eye, pos) @ np.kron(pos, eye)
    right = np.kron(eye, pos) @ np.kron(pos, eye) @ np.kron(eye, pos)
    braid = np.abs(left - right).max()
    # closing the right strand of a crossing with the mu weight leaves the twist
    twist = complex(q.power(Fraction(n * n - 1, 4)))
    kink = np.einsum("ijkj,j->ik", pos.reshape((n,) * 4), mu_diagonal(n, q))
    return float(inverse), float(braid), float(np.abs(kink - twist * eye).max())


def _rmatrix(ns: Sequence[int]) -> Iterable[CheckResult]:
    for r in (5, 8, 12):
        q = RootOfUnity(r)
        for kind, tensor in (("cross_pos", r_matrix(2, q)), ("cross_neg", r_inverse(2, q))):
            err = max(
                abs(complex(tensor[idx]) - crossing_weight(kind, idx, q))
                for idx in itertools.product((0, 1), repeat=4)
            )
            yield _result("rmatrix", f"{kind} n=2 r={r}", err, 1e-12)


def _operators(ns: Sequence[int]) -> Iterable[CheckResult]:
    for n in range(1, 7):
        q = RootOfUnity(max(7, n + 1))
        inverse, braid, kink = operator_errors(n, q)
        if n <= 5:
            yield _result("operators", f"inverse n={n}", inverse, 1e-10)
            yield _result("operators", f"braid relation n={n}", braid, 1e-10)
        yield _result("operators", f"kink twist n={n}", kink, 1e-10)


def _curves(ns: Sequence[int]) -> Iterable[CheckResult]:
    essential = [e for e in catalog.entries() if e.group == "essential_curve"]
    unknot = catalog.get("unknot").diagram
    for n in range(1, 11):
        q = RootOfUnity(max(n, 2) + 3)
        err = max(abs(jT(e.diagram, n, q).value - n) for e in essential)
        yield _result("curves", f"essential curves n={n}", err, 1e-10)
        yield _result("curves", f"unknot n={n}", abs(jT(unknot, n, q).value - quantum_int(n, q)), 1e-10)
        if n >= 2:
            yield _result("curves", f"unknot at r=n={n}", abs(jT(unknot, n, RootOfUnity(n)).value), 1e-9)


def _linwang(ns: Sequence[int]) -> Iterable[CheckResult]:
    for e in catalog.entries():
        err = 0.0
        for r in (5, 7, 12):
            q = RootOfUnity(r)
            err = max(err, abs(jT(e.diagram, 2, q).value - jT2_linwang(e.diagram, q)))
        yield _result("linwang", e.name, err, 1e-10)


def _cabling(ns: Sequence[int]) -> Iterable[CheckResult]:
    q = RootOfUnity(9)
    for e in catalog.entries():
        for n in ns:
            a, b = jT(e.diagram, n, q).value, jT_cabled(e.diagram, n, q).value
            yield _result("cabling", f"{e.name} n={n}", abs(a - b) / max(1.0, abs(a)), 1e-8)


def _weave(ns: Sequence[int]) -> Iterable[CheckResult]:
    w = catalog.get("W").diagram
    for n in range(3, 9):
        direct = weave_direct(n).value
        engine = abs(jT(w, n, RootOfUnity(n)).value)
        yield _result("weave", f"state sum n={n}", abs(direct - engine) / direct, 1e-8)
    for n in range(2, 41):
        a, b = weave_direct(n).log_value, weave_fast(n).log_value
        yield _result("weave", f"fast form n={n}", abs(math.expm1(a - b)), 1e-8)


def _skein(ns: Sequence[int]) -> Iterable[CheckResult]:
    # the two flavors agree up to a link-dependent sign
    for e in catalog.entries():
        if len(e.diagram.crossings) > 6:
            continue
        err = 0.0
        for n in (2, 3):
            q = RootOfUnity(7)
            a, b = jT(e.diagram, n, q).value, jT_su2(e.diagram, n, q).value
            err = max(err, min(abs(a - b), abs(a + b)) / max(1.0, abs(a)))
        yield _result("skein", e.name, err, 1e-10)


def _relationship(ns: Sequence[int]) -> Iterable[CheckResult]:
    q = RootOfUnity(13)
    d = catalog.get("fig8_meridian").diagram
    for n in range(1, 6):
        oracle = catalog.jones_oracle_fig8(n, q)
        yield _result("relationship", f"oracle vs cyclotomic sum n={n}", abs(oracle - catalog.habiro_fig8(n, q)), 1e-8)
        yield _result("relationship", f"meridian sum n={n}", abs(jT(d, n, q).value - n * oracle), 1e-8)
    for n in range(2, 6):
        null = catalog.get("fig8_null").diagram
        yield _result("relationship", f"null-homotopic vanishing n={n}", abs(jT(null, n, RootOfUnity(n)).value), 1e-9)


def _invariance(ns: Sequence[int]) -> Iterable[CheckResult]:
    for group, members in catalog.groups().items():
        for r, n in ((7, 2), (7, 3), (11, 4)):
            q = RootOfUnity(r)
            vals = [jT(catalog.get(m).diagram, n, q).value for m in members]
            err = max(abs(v - vals[0]) for v in vals) / max(1.0, abs(vals[0]))
            yield _result("invariance", f"{group} n={n} r={r}", err, 1e-10)


FAMILIES: dict[str, Callable[[Sequence[int]], Iterable[CheckResult]]] = {
    "rmatrix": _rmatrix,
    "operators": _operators,
    "curves": _curves,
    "linwang": _linwang,
    "cabling": _cabling,
    "weave": _weave,
    "skein": _skein,
    "relationship": _relationship,
    "invariance": _invariance,
}


def run_checks(only: Iterable[str] | None = None, ns: Sequence[int] = (2, 3, 4)) -> Iterable[CheckResult]:
    """Run the selected check families (all by default), yielding results as they finish."""
    chosen = list(only) if only else list(FAMILIES)
    unknown = [f for f in chosen if f not in FAMILIES]
    if unknown:
        raise ValueError(f"unknown check families {unknown}; choose from {sorted(FAMILIES)}")
    for family in chosen:
        yield from FAMILIES[family](ns)
