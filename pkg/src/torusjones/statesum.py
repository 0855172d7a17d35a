"""State-sum evaluation of torus diagrams by tensor-network contraction.

Every node carries its operator tensor, every edge is a summed index of
dimension equal to its component's color, and each bare loop contributes the
trace of the identity.  The network is contracted pairwise along a greedy
plan that keeps intermediate tensors small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

import numpy as np

from .diagram import CROSSINGS, TorusDiagram, cable, check, writhe
from .qalgebra import RootOfUnity
from .rmatrix import cap_cup_tensors, crossing_tensor

__all__ = [
    "ResourceLimitError",
    "ContractionPlan",
    "InvariantResult",
    "DEFAULT_MAX_ENTRIES",
    "plan_contraction",
    "phi",
    "jhat_framed",
    "jT_multi",
    "jT",
    "jT_cabled",
    "resolve_colors",
]

DEFAULT_MAX_ENTRIES = 2**31


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured size cap."""


@dataclass(frozen=True)
class ContractionPlan:
    """Pairwise merge order over the node tensors.

    ``steps[k] = (a, b)`` merges groups ``a`` and ``b``; groups are numbered
    0..N-1 for the nodes and N, N+1, ... for merge results in step order.
    ``peak_arity`` is the largest number of open indices of a merge result.
    """

    steps: tuple[tuple[int, int], ...]
    peak_arity: int
    peak_entries: int


@dataclass(frozen=True)
class InvariantResult:
    value: complex
    n: int | tuple[int, ...]
    r: int
    flavor: str
    writhe_total: int = 0
    writhe_per_component: Mapping[int, int] = field(default_factory=dict)
    # normalization applied to the framed value, as a power of q
    q_exponent: Fraction = Fraction(0)

    @property
    def normalized_log(self) -> float:
        """``(2 pi / r) ln |value|``; ``-inf`` for a vanishing value."""
        mag = abs(self.value)
        return (2 * math.pi / self.r) * math.log(mag) if mag > 0 else -math.inf


def resolve_colors(d: TorusDiagram, colors: int | Mapping[int, int]) -> dict[int, int]:
    comps = d.component_ids()
    if isinstance(colors, (int, np.integer)):
        return {c: int(colors) for c in comps}
    missing = [c for c in comps if c not in colors]
    if missing:
        raise ValueError(f"no color given for components {missing}")
    return {c: int(colors[c]) for c in comps}


def _edge_dims(d: TorusDiagram, colors: Mapping[int, int]) -> dict[str, int]:
    return {e.id: colors[d.components[e.id]] for e in d.edges}


def _node_axes(d: TorusDiagram) -> list[tuple[str, ...]]:
    return [v.ports for v in d.nodes]


def _greedy(
    axes: list[tuple[str, ...]], dims: Mapping[str, int], keys: list[str]
) -> ContractionPlan:
    """Greedy merge order minimizing the size of each intermediate tensor.

    Ties are broken by the smallest sorted member-id key, so the plan depends
    only on the diagram.
    """
    groups: dict[int, tuple[frozenset[str], str]] = {}
    for k, ax in enumerate(axes):
        groups[k] = (_open(ax), keys[k])
    next_id = len(axes)
    steps = []
    # arity is tracked over merge results; entries also cover the node tensors themselves
    peak_arity = 0
    peak_entries = max((math.prod(dims[e] for e in g[0]) for g in groups.values()), default=1)
    while len(groups) > 1:
        ids = sorted(groups, key=lambda g: groups[g][1])
        best = None
        for x in range(len(ids)):
            ex, kx = groups[ids[x]]
            for y in range(x + 1, len(ids)):
                ey, ky = groups[ids[y]]
                shared = ex & ey
                if not shared and ex and ey:
                    continue
                out = ex ^ ey
                size = math.prod(dims[e] for e in out)
                score = (size, min(kx, ky), max(kx, ky))
                if best is None or score < best[0]:
                    best = (score, ids[x], ids[y], out)
        if best is None:
            # remaining groups are disconnected from each other; multiply pairwise
            a, b = ids[0], ids[1]
            out = groups[a][0] | groups[b][0]
        else:
            _, a, b, out = best
        key = min(groups[a][1], groups[b][1])
        del groups[a], groups[b]
        groups[next_id] = (frozenset(out), key)
        steps.append((a, b))
        peak_arity = max(peak_arity, len(out))
        peak_entries = max(peak_entries, math.prod(dims[e] for e in out))
        next_id += 1
    return ContractionPlan(tuple(steps), peak_arity, peak_entries)


def _open(ax: tuple[str, ...]) -> frozenset[str]:
    """Indices appearing once; an index repeated inside one tensor is traced out."""
    seen: dict[str, int] = {}
    for e in ax:
        seen[e] = seen.get(e, 0) + 1
    return frozenset(e for e, c in seen.items() if c == 1)


def plan_contraction(d: TorusDiagram, n: int | Mapping[int, int] = 2) -> ContractionPlan:
    colors = resolve_colors(d, n)
    return _greedy(_node_axes(d), _edge_dims(d, colors), [v.id for v in d.nodes])


def _node_array(d: TorusDiagram, idx: int, colors: Mapping[int, int], q: RootOfUnity) -> np.ndarray:
    v = d.nodes[idx]
    if v.kind in CROSSINGS:
        a = colors[d.components[v.ports[0]]]
        b = colors[d.components[v.ports[1]]]
        return crossing_tensor(v.kind, a, b, q).dense(q.dtype)
    n = colors[d.components[v.ports[0]]]
    return cap_cup_tensors(n, q)[v.kind].dense(q.dtype)


def _contract_pair(
    ta: np.ndarray, axa: tuple[str, ...], tb: np.ndarray, axb: tuple[str, ...]
) -> tuple[np.ndarray, tuple[str, ...]]:
    # both operands are already self-traced, so each index is open in exactly one
    out = tuple(sorted(set(axa) ^ set(axb)))
    labels = {e: k for k, e in enumerate(sorted(set(axa) | set(axb)))}
    res = np.einsum(
        ta, [labels[e] for e in axa], tb, [labels[e] for e in axb], [labels[e] for e in out], optimize=True
    )
    return res, out


def _self_trace(t: np.ndarray, ax: tuple[str, ...]) -> tuple[np.ndarray, tuple[str, ...]]:
    op = _open(ax)
    if len(op) == len(ax):
        return t, ax
    labels = {e: k for k, e in enumerate(sorted(set(ax)))}
    out = tuple(e for e in ax if e in op)
    return np.einsum(t, [labels[e] for e in ax], [labels[e] for e in out]), out


def phi(
    d: TorusDiagram,
    colors: int | Mapping[int, int],
    q: RootOfUnity,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> complex:
    """The pseudo-operator state sum of a colored diagram."""
    check(d)
    cols = resolve_colors(d, colors)
    for c, n in cols.items():
        if not 1 <= n <= q.r:
            raise ValueError(f"color {n} of component {c} outside 1..{q.r}")
    scalar = q.dtype(1)
    for loop in d.bare_loops:
        scalar = scalar * q.dtype(cols[d.components[loop.id]]) ** loop.mult
    if not d.nodes:
        return complex(scalar)
    dims = _edge_dims(d, cols)
    plan = _greedy(_node_axes(d), dims, [v.id for v in d.nodes])
    if plan.peak_entries > max_entries:
        raise ResourceLimitError(
            f"contraction needs a tensor with {plan.peak_entries} entries (cap {max_entries})"
        )
    work: dict[int, tuple[np.ndarray, tuple[str, ...]]] = {}
    for k in range(len(d.nodes)):
        work[k] = _self_trace(_node_array(d, k, cols, q), d.nodes[k].ports)
    next_id = len(d.nodes)
    for a, b in plan.steps:
        ta, axa = work.pop(a)
        tb, axb = work.pop(b)
        work[next_id] = _contract_pair(ta, axa, tb, axb)
        next_id += 1
    (final, ax), = work.values()
    assert ax == (), "contraction left open indices"
    return complex(scalar * final)


def jhat_framed(d: TorusDiagram, colors: int | Mapping[int, int], q: RootOfUnity, **kw) -> InvariantResult:
    """Framed invariant: the state sum itself, no writhe correction."""
    cols = resolve_colors(d, colors)
    w, per = writhe(d)
    return InvariantResult(phi(d, cols, q, **kw), _color_label(cols), q.r, "sl2_framed", w, per)


def jT_multi(d: TorusDiagram, colors: int | Mapping[int, int], q: RootOfUnity, **kw) -> InvariantResult:
    """Multi-colored invariant, corrected by ``q^(alpha/4)`` with per-component self-writhes."""
    cols = resolve_colors(d, colors)
    w, per = writhe(d)
    alpha = -sum(per[c] * (cols[c] ** 2 - 1) for c in cols)
    exp = Fraction(alpha, 4)
    value = phi(d, cols, q, **kw) * complex(q.power(exp))
    return InvariantResult(value, _color_label(cols), q.r, "sl2_multi", w, per, exp)


def jT(d: TorusDiagram, n: int, q: RootOfUnity, **kw) -> InvariantResult:
    """Uniformly colored invariant normalized by the total writhe."""
    w, per = writhe(d)
    exp = Fraction(-w * (n * n - 1), 4)
    value = phi(d, n, q, **kw) * complex(q.power(exp))
    return InvariantResult(value, n, q.r, "sl2_jones", w, per, exp)


def cabling_terms(colors: Mapping[int, int]) -> list[tuple[int, dict[int, int]]]:
    """Coefficients and strand counts of the level-2 cabling expansion.

    Each term is ``(coefficient, {component: strands})`` with coefficient
    ``prod (-1)^i binom(n-1-i, i)`` and ``n - 1 - 2i`` strands.
    """
    terms: list[tuple[int, dict[int, int]]] = [(1, {})]
    for c, n in sorted(colors.items()):
        nxt = []
        for coeff, strands in terms:
            for i in range((n - 1) // 2 + 1):
                nxt.append((coeff * (-1) ** i * comb(n - 1 - i, i), strands | {c: n - 1 - 2 * i}))
        terms = nxt
    return terms


def jhat_cabled(d: TorusDiagram, colors: int | Mapping[int, int], q: RootOfUnity, **kw) -> complex:
    """Framed multi-colored value computed from level-2 evaluations of cables only."""
    cols = resolve_colors(d, colors)
    total = 0j
    for coeff, strands in cabling_terms(cols):
        cabled = cable(d, strands)
        total += coeff * phi(cabled, 2, q, **kw)
    return total


def jT_cabled(d: TorusDiagram, n: int, q: RootOfUnity, **kw) -> InvariantResult:
    """Same normalization as :func:`jT`, framed part from the cabling expansion."""
    w, per = writhe(d)
    exp = Fraction(-w * (n * n - 1), 4)
    value = jhat_cabled(d, n, q, **kw) * complex(q.power(exp))
    return InvariantResult(value, n, q.r, "sl2_jones", w, per, exp)


def _color_label(cols: Mapping[int, int]) -> int | tuple[int, ...]:
    vals = tuple(cols[c] for c in sorted(cols))
    return vals[0] if vals and all(v == vals[0] for v in vals) else vals
