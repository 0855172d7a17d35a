"""The n = 2 invariant as a sum over 0/1 labelings weighted by rotation numbers.

Labels live on the arcs between crossings (extrema force equal labels on
both sides).  A crossing whose four labels are not all equal and which is
not of the two "pass-through" kinds is resolved into two vertical arcs;
afterwards every curve carries one label, and the phase of a state is
``q^((rot_1 - rot_0) / 2)`` from the rotation numbers of the curves.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction

from .diagram import CROSSINGS, HALF_TURN, TorusDiagram, check, writhe
from .qalgebra import RootOfUnity
from .statesum import ResourceLimitError

__all__ = ["MAX_RAW_STATES", "crossing_weight", "rotation_number", "admissible_states", "jT2_linwang"]

MAX_RAW_STATES = 2**24

# exponents of q^(1/4) for the n = 2 crossing weights; a pair means q^a - q^b
_R = {
    (0, 0, 0, 0): 1, (1, 1, 1, 1): 1,
    (1, 0, 0, 1): -1, (0, 1, 1, 0): -1,
    (0, 1, 0, 1): (1, -3),
}
_R_INV = {
    (0, 0, 0, 0): -1, (1, 1, 1, 1): -1,
    (1, 0, 0, 1): 1, (0, 1, 1, 0): 1,
    (1, 0, 1, 0): (-1, 3),
}
# labels (NW, NE, SW, SE) resolved into two vertical arcs
_VERTICAL = {"cross_pos": (0, 1, 0, 1), "cross_neg": (1, 0, 1, 0)}


def crossing_weight(kind: str, labels: tuple[int, int, int, int], q: RootOfUnity) -> complex:
    """Weight of a downward crossing with labels ``(NW, NE, SW, SE)``; 0 if inadmissible."""
    table = _R if kind == "cross_pos" else _R_INV
    entry = table.get(tuple(labels))
    if entry is None:
        return 0j
    if isinstance(entry, tuple):
        a, b = entry
        return complex(q.power(Fraction(a, 4)) - q.power(Fraction(b, 4)))
    return complex(q.power(Fraction(entry, 4)))


def _wires(d: TorusDiagram):
    """Arcs between crossings: (tail crossing, out port, head crossing, in port, half turns, wrap)."""
    ends = d.endpoints()
    nxt = d.next_edge()
    kinds = {e: d.nodes[ends[e]["head"][0]].kind for e in ends}
    wires, loops = [], []
    seen: set[str] = set()
    for e in d.edges:
        tn, tp = ends[e.id]["tail"]
        if d.nodes[tn].kind not in CROSSINGS:
            continue
        cur, turns, wrap = e.id, 0, (0, 0)
        while True:
            seen.add(cur)
            ew = d.edge_map[cur].wrap
            wrap = (wrap[0] + ew[0], wrap[1] + ew[1])
            hn, hp = ends[cur]["head"]
            if d.nodes[hn].kind in CROSSINGS:
                break
            turns += HALF_TURN[kinds[cur]]
            cur = nxt[cur]
        wires.append((tn, tp, hn, hp, turns, wrap))
    for e in d.edges:
        if e.id in seen:
            continue
        cur, turns, wrap = e.id, 0, (0, 0)
        while cur not in seen:
            seen.add(cur)
            ew = d.edge_map[cur].wrap
            wrap = (wrap[0] + ew[0], wrap[1] + ew[1])
            turns += HALF_TURN[kinds[cur]]
            cur = nxt[cur]
        loops.append((turns, wrap, True))
    return wires, loops


def rotation_number(half_turns: int, wrap: tuple[int, int], simple: bool = True) -> int:
    """Rotation number of a closed curve from its signed extremum half turns.

    A simple curve with nonzero wrap class is essential and must have
    rotation number 0; immersed curves (passing a crossing twice) are exempt.
    """
    if half_turns % 2:
        raise ValueError("inconsistent encoding: odd number of half turns on a closed curve")
    rot = half_turns // 2
    if simple and wrap != (0, 0) and rot != 0:
        raise ValueError(f"inconsistent encoding: essential curve {wrap} with rotation number {rot}")
    return rot


def admissible_states(d: TorusDiagram, q: RootOfUnity):
    """Yield ``(labels, weight, rot0, rot1)`` for every admissible labeling of the arcs."""
    check(d)
    wires, _ = _wires(d)
    if 2 ** len(wires) > MAX_RAW_STATES:
        raise ResourceLimitError(f"{len(wires)} arcs give more than {MAX_RAW_STATES} raw states")
    crossings = [i for i, v in enumerate(d.nodes) if v.kind in CROSSINGS]
    # wire index at each (crossing node, port index)
    at: dict[tuple[int, int], int] = {}
    for w, (tn, tp, hn, hp, _, _) in enumerate(wires):
        at[(tn, tp)] = w
        at[(hn, hp)] = w
    # check crossings as soon as their last wire is labeled
    last = defaultdict(list)
    for c in crossings:
        last[max(at[(c, p)] for p in range(4))].append(c)
    labels = [0] * len(wires)

    def extend(k: int):
        if k == len(wires):
            yield tuple(labels)
            return
        for bit in (0, 1):
            labels[k] = bit
            if all(
                crossing_weight(d.nodes[c].kind, tuple(labels[at[(c, p)]] for p in range(4)), q) != 0
                for c in last[k]
            ):
                yield from extend(k + 1)

    for state in extend(0):
        weight = 1 + 0j
        for c in crossings:
            weight *= crossing_weight(d.nodes[c].kind, tuple(state[at[(c, p)]] for p in range(4)), q)
        rot = [0, 0]
        for label, turns, wrap, simple in _resolved_curves(d, wires, at, crossings, state):
            rot[label] += rotation_number(turns, wrap, simple)
        yield state, weight, rot[0], rot[1]


def _resolved_curves(d, wires, at, crossings, state):
    """Closed curves after resolving mixed crossings vertically."""
    # successor of each wire: through a crossing from its in port to an out port
    succ = {}
    for c in crossings:
        v = d.nodes[c]
        labs = tuple(state[at[(c, p)]] for p in range(4))
        through = {0: 2, 1: 3} if labs == _VERTICAL[v.kind] else {0: 3, 1: 2}
        for pin, pout in through.items():
            succ[at[(c, pin)]] = at[(c, pout)]
    seen: set[int] = set()
    for start in range(len(wires)):
        if start in seen:
            continue
        turns, wrap, visits = 0, (0, 0), defaultdict(int)
        cur = start
        while cur not in seen:
            seen.add(cur)
            _, _, hn, _, t, w = wires[cur]
            turns += t
            wrap = (wrap[0] + w[0], wrap[1] + w[1])
            visits[hn] += 1
            cur = succ[cur]
        yield state[start], turns, wrap, all(k == 1 for k in visits.values())


def jT2_linwang(d: TorusDiagram, q: RootOfUnity, brute_force: bool = False) -> complex:
    """``(q^(3/4))^(-w) * sum over admissible states of q^((rot1 - rot0)/2) * weight``.

    With ``brute_force`` every 0/1 labeling of the diagram's edges is visited
    and the phase comes from the individual extrema instead of whole curves.
    """
    w, _ = writhe(d)
    prefactor = complex(q.power(Fraction(-3 * w, 4)))
    if brute_force:
        return prefactor * _brute(d, q)
    _, free_loops = _wires(d)
    total = 0j
    for _, weight, rot0, rot1 in admissible_states(d, q):
        total += complex(q.power(Fraction(rot1 - rot0, 2))) * weight
    for turns, wrap, simple in free_loops:
        rot = rotation_number(turns, wrap, simple)
        total *= complex(q.power(Fraction(rot, 2)) + q.power(Fraction(-rot, 2)))
    for b in d.bare_loops:
        total *= 2**b.mult
    return prefactor * total


def _brute(d: TorusDiagram, q: RootOfUnity) -> complex:
    check(d)
    if 2 ** len(d.edges) > MAX_RAW_STATES:
        raise ResourceLimitError(f"{len(d.edges)} edges give more than {MAX_RAW_STATES} raw states")
    mu = {0: q.power(Fraction(-1, 2)), 1: q.power(Fraction(1, 2))}
    index = {e.id: k for k, e in enumerate(d.edges)}
    total = 0j
    for labels in itertools.product((0, 1), repeat=len(d.edges)):
        weight = 1 + 0j
        for v in d.nodes:
            labs = tuple(labels[index[e]] for e in v.ports)
            if v.kind in CROSSINGS:
                weight *= crossing_weight(v.kind, labs, q)
            elif labs[0] != labs[1]:
                weight = 0j
            elif v.kind == "cap_emu":
                weight *= mu[labs[0]]
            elif v.kind == "cup_nmu":
                weight /= mu[labs[0]]
            if weight == 0:
                break
        total += weight
    for b in d.bare_loops:
        total *= 2**b.mult
    return complex(total)
