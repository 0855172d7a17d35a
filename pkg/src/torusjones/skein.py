"""Kauffman bracket of torus diagrams with values in the skein module of the torus.

Crossings are smoothed one at a time.  The engine keeps, for each partial
state, the open paths between still-unsmoothed crossing ports (with the wrap
accumulated along each path) and the multiset of essential loop classes
closed so far; equal partial states are merged, so shared sub-resolutions
are computed once.  Arithmetic is exact until the final substitution.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .diagram import CROSSINGS, TorusDiagram, cable, check, normalize_class, writhe
from .qalgebra import LaurentPoly, RootOfUnity
from .statesum import InvariantResult, ResourceLimitError

__all__ = [
    "SkeinElement",
    "TauBracket",
    "Chebyshev",
    "chebyshev",
    "DEFAULT_MAX_CROSSINGS",
    "bracket_T",
    "tau_bracket",
    "p2",
    "multibracket",
    "jT_su2",
]

DEFAULT_MAX_CROSSINGS = 24

Classes = tuple[tuple[tuple[int, int], int], ...]  # sorted ((a, b), multiplicity)


def _classes(counter: Mapping[tuple[int, int], int]) -> Classes:
    return tuple(sorted((c, m) for c, m in counter.items() if m))


@dataclass(frozen=True)
class SkeinElement:
    """Finite combination of products of essential loop classes."""

    terms: Mapping[Classes, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for k, v in self.terms.items():
            for (a, b), m in k:
                if (a, b) != normalize_class(a, b) or math.gcd(a, b) != 1 or m <= 0:
                    raise ValueError(f"bad loop class entry {(a, b)}^{m}")
            if v:
                clean[k] = v
        object.__setattr__(self, "terms", clean)

    @classmethod
    def scalar(cls, p: LaurentPoly | int) -> SkeinElement:
        return cls({(): p if isinstance(p, LaurentPoly) else LaurentPoly.constant(p)})

    def __add__(self, other: SkeinElement) -> SkeinElement:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, LaurentPoly()) + v
        return SkeinElement(out)

    def scale(self, p: LaurentPoly | int) -> SkeinElement:
        return SkeinElement({k: v * p for k, v in self.terms.items()})

    def __mul__(self, other: SkeinElement) -> SkeinElement:
        """Disjoint union of the underlying curves (only used for split pieces)."""
        out: dict[Classes, LaurentPoly] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                c = Counter(dict(k1))
                c.update(dict(k2))
                key = _classes(c)
                out[key] = out.get(key, LaurentPoly()) + v1 * v2
        return SkeinElement(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SkeinElement) and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def to_json(self) -> dict:
        return {
            "terms": [
                {"classes": [[a, b, m] for (a, b), m in k], "poly": v.to_pairs()}
                for k, v in sorted(self.terms.items())
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> SkeinElement:
        terms = {}
        for t in data["terms"]:
            key = _classes({(a, b): m for a, b, m in t["classes"]})
            terms[key] = LaurentPoly((e, c) for e, c in t["poly"])
        return cls(terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            loops = " ".join(f"({a},{b})^{m}" if m > 1 else f"({a},{b})" for (a, b), m in k) or "1"
            parts.append(f"({v})*{loops}")
        return " + ".join(parts)


@dataclass(frozen=True)
class TauBracket:
    """Polynomial in ``A^{+-1}`` and ``z``: ``{(a_power, z_power): coefficient}``."""

    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", {k: v for k, v in self.terms.items() if v})

    def evaluate(self, a: complex, z: complex) -> complex:
        return sum(c * a**i * z**j for (i, j), c in sorted(self.terms.items()))

    def at_z(self, z: int) -> LaurentPoly:
        acc: dict[int, int] = {}
        for (i, j), c in self.terms.items():
            acc[i] = acc.get(i, 0) + c * z**j
        return LaurentPoly(acc)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for (i, j), c in sorted(self.terms.items(), key=lambda t: (-t[0][1], -t[0][0])):
            mono = "*".join(s for s in (f"A^{i}" if i else "", f"z^{j}" if j > 1 else ("z" if j else "")) if s)
            if not mono:
                out.append(f"{c:+d}")
            elif c in (1, -1):
                out.append(("+" if c > 0 else "-") + mono)
            else:
                out.append(f"{c:+d}*{mono}")
        text = " ".join(out)
        return text[1:] if text.startswith("+") else text


# --- resolution engine ------------------------------------------------------

# ports joined by each smoothing, as index pairs into (NW, NE, SW, SE)
_VERTICAL = ((0, 2), (1, 3))
_HORIZONTAL = ((0, 1), (2, 3))


def _smoothings(kind: str) -> tuple[tuple[int, tuple], tuple[int, tuple]]:
    """``(A exponent, port pairs)`` for the A- and B-smoothings of a downward crossing."""
    if kind == "cross_pos":
        return (1, _VERTICAL), (-1, _HORIZONTAL)
    return (1, _HORIZONTAL), (-1, _VERTICAL)


def _wires(d: TorusDiagram):
    """Strand pieces between crossing ports, following the orientation through extrema.

    Returns ``(wires, closed)`` where each wire is ``(start, end, wrap)`` with
    ``start = (crossing index, out port)`` and ``end = (crossing index, in
    port)``, and ``closed`` lists the wrap of every crossing-free loop.
    """
    ends = d.endpoints()
    nxt = d.next_edge()
    wrap = {e.id: e.wrap for e in d.edges}
    crossing_index = {ni: k for k, ni in enumerate(i for i, v in enumerate(d.nodes) if v.kind in CROSSINGS)}
    wires, closed = [], []
    seen: set[str] = set()
    for e in d.edges:
        tn, tp = ends[e.id]["tail"]
        if d.nodes[tn].kind not in CROSSINGS or e.id in seen:
            continue
        cur, w = e.id, (0, 0)
        while True:
            seen.add(cur)
            w = (w[0] + wrap[cur][0], w[1] + wrap[cur][1])
            hn, hp = ends[cur]["head"]
            if d.nodes[hn].kind in CROSSINGS:
                break
            cur = nxt[cur]
        wires.append(((crossing_index[tn], tp), (crossing_index[hn], hp), w))
    for e in d.edges:
        if e.id in seen:
            continue
        cur, w = e.id, (0, 0)
        while cur not in seen:
            seen.add(cur)
            w = (w[0] + wrap[cur][0], w[1] + wrap[cur][1])
            cur = nxt[cur]
        closed.append(w)
    return wires, closed


def _crossing_order(d: TorusDiagram, wires) -> list[int]:
    """Greedy order keeping the set of open ports small; deterministic."""
    count = len(d.crossings)
    adj: dict[int, list[int]] = {k: [] for k in range(count)}
    for (a, _), (b, _), _ in wires:
        adj[a].append(b)
        adj[b].append(a)
    done: set[int] = set()
    order = []
    while len(order) < count:
        best = min(
            (k for k in range(count) if k not in done),
            key=lambda k: (-sum(1 for x in adj[k] if x in done), k),
        )
        done.add(best)
        order.append(best)
    return order


def _neg(w: tuple[int, int]) -> tuple[int, int]:
    return (-w[0], -w[1])


def _close(w: tuple[int, int], classes: Counter) -> bool:
    """Record a closed loop; return True when it is contractible."""
    if w == (0, 0):
        return True
    a, b = normalize_class(*w)
    if math.gcd(a, b) != 1:
        raise ValueError(f"resolved loop has non-primitive class {w}: inconsistent encoding")
    classes[(a, b)] += 1
    return False


def bracket_T(
    d: TorusDiagram,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    fixed: Mapping[str, str] | None = None,
) -> SkeinElement:
    """The bracket as an element of the skein module of the torus.

    ``fixed`` optionally pins crossings (by node id) to their ``"A"`` or
    ``"B"`` smoothing; the pinned weight ``A^{+-1}`` is still included.
    """
    check(d)
    crossings = d.crossings
    if len(crossings) > max_crossings:
        raise ResourceLimitError(f"{len(crossings)} crossings exceed the bracket cap of {max_crossings}")
    fixed = dict(fixed or {})
    loop_d = LaurentPoly.loop_value()
    base = Counter()
    contractible = 0
    for b in d.bare_loops:
        for _ in range(b.mult):
            contractible += _close(b.cls, base)
    wires, closed = _wires(d)
    for w in closed:
        contractible += _close(w, base)

    # a path is stored as (end_x, end_y, wrap from x to y) with end_x < end_y
    def norm(x, y, w):
        return (x, y, w) if x <= y else (y, x, (-w[0], -w[1]))

    start = frozenset(norm(s, e, w) for s, e, w in wires)
    states: dict[tuple[frozenset, Classes], LaurentPoly] = {(start, _classes(base)): loop_d**contractible}
    for k in _crossing_order(d, wires):
        node = crossings[k]
        options = _smoothings(node.kind)
        if node.id in fixed:
            options = tuple(o for o, tag in zip(options, "AB") if tag == fixed[node.id])
        nxt: dict[tuple[frozenset, Classes], LaurentPoly] = {}
        for (paths, cls), coeff in states.items():
            touching = [p for p in paths if p[0][0] == k or p[1][0] == k]
            rest = paths.difference(touching)
            for exponent, pairs in options:
                pool = set(touching)
                live = {}
                for p in touching:
                    for side in (0, 1):
                        if p[side][0] == k:
                            live[p[side][1]] = p
                classes = Counter(dict(cls))
                loops = 0
                for pa, pb in pairs:
                    p1, p2 = live[pa], live[pb]
                    pool.discard(p1)
                    if p1 == p2:
                        loops += _close(p1[2], classes)
                        continue
                    pool.discard(p2)
                    # p1 read so that it ends at port pa, p2 so that it starts at pb
                    u, w1 = (p1[0], p1[2]) if p1[1] == (k, pa) else (p1[1], _neg(p1[2]))
                    v, w2 = (p2[1], p2[2]) if p2[0] == (k, pb) else (p2[0], _neg(p2[2]))
                    merged = norm(u, v, (w1[0] + w2[0], w1[1] + w2[1]))
                    pool.add(merged)
                    for end in (u, v):
                        if end[0] == k:
                            live[end[1]] = merged
                assert all(p[0][0] != k and p[1][0] != k for p in pool)
                key = (rest.union(pool), _classes(classes))
                term = coeff.shift(exponent)
                if loops:
                    term = term * loop_d**loops
                nxt[key] = nxt.get(key, LaurentPoly()) + term
        states = {key: v for key, v in nxt.items() if v}
    out: dict[Classes, LaurentPoly] = {}
    for (paths, cls), coeff in states.items():
        assert not paths, "unresolved paths left after smoothing every crossing"
        out[cls] = out.get(cls, LaurentPoly()) + coeff
    return SkeinElement(out)


def tau_bracket(d: TorusDiagram, **kw) -> TauBracket:
    """Image of :func:`bracket_T` with every essential loop replaced by ``z``."""
    return tau_of(bracket_T(d, **kw))


def tau_of(s: SkeinElement) -> TauBracket:
    acc: dict[tuple[int, int], int] = {}
    for k, v in s.terms.items():
        zpow = sum(m for _, m in k)
        for e, c in v.items():
            acc[(e, zpow)] = acc.get((e, zpow), 0) + c
    return TauBracket(acc)


def p2(s: SkeinElement) -> LaurentPoly:
    """Send every essential loop to 2."""
    out = LaurentPoly()
    for k, v in s.terms.items():
        out = out + v * 2 ** sum(m for _, m in k)
    return out


# --- Chebyshev cabling ------------------------------------------------------


@dataclass(frozen=True)
class Chebyshev:
    """``S_j(z)`` as its coefficient vector in the monomials ``z^i``."""

    j: int
    coeffs: tuple[int, ...]

    def __call__(self, z: int | float | complex):
        return sum(c * z**i for i, c in enumerate(self.coeffs))


@lru_cache(maxsize=None)
def chebyshev(j: int) -> Chebyshev:
    """``S_0 = 1``, ``S_1 = z``, ``S_{j+1} = z S_j - S_{j-1}``."""
    if j < 0:
        raise ValueError("Chebyshev index must be non-negative")
    if j == 0:
        return Chebyshev(0, (1,))
    if j == 1:
        return Chebyshev(1, (0, 1))
    a, b = chebyshev(j - 1).coeffs, chebyshev(j - 2).coeffs
    out = [0] * (j + 1)
    for i, c in enumerate(a):
        out[i + 1] += c
    for i, c in enumerate(b):
        out[i] -= c
    return Chebyshev(j, tuple(out))


def multibracket(d: TorusDiagram, cables: Sequence[Chebyshev] | Mapping[int, Chebyshev], **kw) -> SkeinElement:
    """Multilinear extension of the bracket: ``z^i`` on a component means its ``i``-cable."""
    comps = d.component_ids()
    if not isinstance(cables, Mapping):
        if len(cables) != len(comps):
            raise ValueError(f"need one polynomial per component ({len(comps)}), got {len(cables)}")
        cables = dict(zip(comps, cables))
    expansions: list[tuple[int, dict[int, int]]] = [(1, {})]
    for c in comps:
        nxt = []
        for coeff, strands in expansions:
            for i, a in enumerate(cables[c].coeffs):
                if a:
                    nxt.append((coeff * a, strands | {c: i}))
        expansions = nxt
    total = SkeinElement()
    for coeff, strands in expansions:
        total = total + bracket_T(cable(d, strands), **kw).scale(coeff)
    return total


def jT_su2(d: TorusDiagram, n: int, q: RootOfUnity, **kw) -> InvariantResult:
    """SU(2) flavor: writhe-normalized ``p2`` of the Chebyshev multi-bracket at ``A^4 = q``."""
    if n < 1:
        raise ValueError("color must be at least 1")
    w, per = writhe(d)
    inner = p2(multibracket(d, [chebyshev(n - 1)] * len(d.component_ids()), **kw))
    sign = -1 if ((n - 1) * w) % 2 else 1
    poly = inner.shift(-w * (n * n - 1)) * sign
    value = complex(poly.evaluate(q.a_value()))
    return InvariantResult(value, n, q.r, "su2_jones", w, per, Fraction(-w * (n * n - 1), 4))


def skein_json(s: SkeinElement) -> str:
    return json.dumps(s.to_json(), sort_keys=True)


def _iter_classes(s: SkeinElement) -> Iterable[tuple[int, int]]:
    for k in s.terms:
        for c, _ in k:
            yield c
