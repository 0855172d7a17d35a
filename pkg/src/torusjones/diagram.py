"""Torus diagrams as critical-point graphs.

A diagram is a set of nodes (crossings and Morse extrema) joined by directed
edges.  Edge direction is the link orientation.  Torus topology is carried
only by the wrap vector of each edge: the signed number of times the edge
crosses the right and top sides of the fundamental domain.

Port roles per node kind, in ``ports`` order:

* crossings ``cross_pos``/``cross_neg``: ``NW, NE`` (strands enter from
  above), ``SW, SE`` (strands leave downward).  The strand entering at
  ``NW`` leaves at ``SE``; the one entering at ``NE`` leaves at ``SW``.
* ``cap_e``: ``W`` in, ``E`` out (a maximum traversed left to right).
* ``cap_emu``: ``E`` in, ``W`` out (a maximum traversed right to left).
* ``cup_n``: ``W`` in, ``E`` out (a minimum traversed left to right).
* ``cup_nmu``: ``E`` in, ``W`` out (a minimum traversed right to left).
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

__all__ = [
    "Node",
    "Edge",
    "BareLoop",
    "TorusDiagram",
    "DiagramError",
    "CROSSINGS",
    "EXTREMA",
    "validate",
    "writhe",
    "cable",
    "disjoint_union",
    "insert_zigzag",
    "normalize_class",
    "load_json",
    "loads_json",
]

CROSSINGS = ("cross_pos", "cross_neg")
EXTREMA = ("cap_e", "cap_emu", "cup_n", "cup_nmu")
KINDS = CROSSINGS + EXTREMA

# port index -> True if the strand enters the node there
_IN_PORTS = {
    "cross_pos": (True, True, False, False),
    "cross_neg": (True, True, False, False),
    "cap_e": (True, False),
    "cap_emu": (False, True),
    "cup_n": (True, False),
    "cup_nmu": (False, True),
}
# in-port index -> out-port index along the strand
_THROUGH = {
    "cross_pos": {0: 3, 1: 2},
    "cross_neg": {0: 3, 1: 2},
    "cap_e": {0: 1},
    "cap_emu": {1: 0},
    "cup_n": {0: 1},
    "cup_nmu": {1: 0},
}
PORT_NAMES = {k: ("NW", "NE", "SW", "SE") for k in CROSSINGS} | {k: ("W", "E") for k in EXTREMA}


class DiagramError(ValueError):
    """Raised for malformed diagrams; ``errors`` lists every problem found."""

    def __init__(self, errors: list[str]) -> None:
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass(frozen=True)
class Node:
    id: str
    kind: str
    ports: tuple[str, ...]


@dataclass(frozen=True)
class Edge:
    id: str
    wrap: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class BareLoop:
    """``mult`` parallel copies of a crossing-free, extremum-free loop."""

    id: str
    cls: tuple[int, int]
    mult: int = 1


def normalize_class(a: int, b: int) -> tuple[int, int]:
    """Representative of ``(a, b) ~ (-a, -b)`` with first nonzero entry positive."""
    if a < 0 or (a == 0 and b < 0):
        return (-a, -b)
    return (a, b)


@dataclass(frozen=True)
class TorusDiagram:
    nodes: tuple[Node, ...] = ()
    edges: tuple[Edge, ...] = ()
    bare_loops: tuple[BareLoop, ...] = ()
    components: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "bare_loops", tuple(self.bare_loops))
        if not self.components:
            object.__setattr__(self, "components", _trace_components(self))
        else:
            object.__setattr__(self, "components", dict(self.components))

    # --- derived structure -------------------------------------------------

    @property
    def edge_map(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @property
    def crossings(self) -> list[Node]:
        return [v for v in self.nodes if v.kind in CROSSINGS]

    def endpoints(self) -> dict[str, dict[str, tuple[int, int]]]:
        """Edge id -> {"tail": (node index, port), "head": (node index, port)}."""
        ends: dict[str, dict[str, tuple[int, int]]] = {}
        for ni, v in enumerate(self.nodes):
            roles = _IN_PORTS[v.kind]
            for pi, eid in enumerate(v.ports):
                side = "head" if roles[pi] else "tail"
                ends.setdefault(eid, {})[side] = (ni, pi)
        return ends

    def next_edge(self) -> dict[str, str]:
        """Edge id -> the edge that continues the same strand after its head node."""
        out = {}
        for v in self.nodes:
            for pin, pout in _THROUGH[v.kind].items():
                out[v.ports[pin]] = v.ports[pout]
        return out

    def strand_loops(self) -> list[list[str]]:
        """Closed strands as ordered edge-id lists, in deterministic order."""
        nxt = self.next_edge()
        seen: set[str] = set()
        loops = []
        for e in self.edges:
            if e.id in seen:
                continue
            loop = []
            cur = e.id
            while cur not in seen:
                seen.add(cur)
                loop.append(cur)
                cur = nxt[cur]
            loops.append(loop)
        return loops

    def component_ids(self) -> list[int]:
        return sorted(set(self.components.values()))

    def with_components(self, components: Mapping[str, int]) -> TorusDiagram:
        return TorusDiagram(self.nodes, self.edges, self.bare_loops, dict(components))

    # --- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": v.id, "kind": v.kind, "ports": list(v.ports)} for v in self.nodes],
            "edges": [{"id": e.id, "wrap": list(e.wrap)} for e in self.edges],
            "bare_loops": [{"id": b.id, "class": list(b.cls), "mult": b.mult} for b in self.bare_loops],
            "components": dict(self.components),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _trace_components(d: TorusDiagram) -> dict[str, int]:
    comps: dict[str, int] = {}
    try:
        loops = d.strand_loops()
    except KeyError:
        loops = [[e.id] for e in d.edges]  # broken diagram; validate() reports it
    for ci, loop in enumerate(loops):
        for eid in loop:
            comps[eid] = ci
    for j, b in enumerate(d.bare_loops):
        comps[b.id] = len(loops) + j
    return comps


def validate(d: TorusDiagram) -> list[str]:
    """Return a list of problems; an empty list means the diagram is valid."""
    errors: list[str] = []
    ids = [v.id for v in d.nodes]
    for dup, cnt in Counter(ids).items():
        if cnt > 1:
            errors.append(f"duplicate node id {dup!r}")
    edge_ids = [e.id for e in d.edges]
    for dup, cnt in Counter(edge_ids).items():
        if cnt > 1:
            errors.append(f"duplicate edge id {dup!r}")
    known = set(edge_ids)
    uses: dict[str, list[tuple[str, bool, str]]] = {e: [] for e in edge_ids}
    for v in d.nodes:
        if v.kind not in KINDS:
            errors.append(f"node {v.id!r}: unknown kind {v.kind!r}")
            continue
        want = len(_IN_PORTS[v.kind])
        if len(v.ports) != want:
            errors.append(f"node {v.id!r}: dangling edge ({len(v.ports)} of {want} ports wired)")
            continue
        for pi, eid in enumerate(v.ports):
            if eid not in known:
                errors.append(f"node {v.id!r}: port {PORT_NAMES[v.kind][pi]} uses unknown edge {eid!r}")
                continue
            uses[eid].append((v.kind, _IN_PORTS[v.kind][pi], PORT_NAMES[v.kind][pi]))
    for eid, use in uses.items():
        if len(use) != 2:
            errors.append(f"edge {eid!r}: dangling edge (used by {len(use)} ports, need 2)")
            continue
        heads = [u for u in use if u[1]]
        tails = [u for u in use if not u[1]]
        if len(heads) != 1 or len(tails) != 1:
            errors.append(f"edge {eid!r}: orientation clash (needs one incoming and one outgoing end)")
            continue
        if _edge_goes_down(tails[0]) != _edge_goes_down(heads[0], head=True):
            errors.append(f"edge {eid!r}: orientation clash (vertical direction disagrees at its ends)")
    loop_ids = [b.id for b in d.bare_loops]
    for dup, cnt in Counter(loop_ids).items():
        if cnt > 1:
            errors.append(f"duplicate bare loop id {dup!r}")
    for b in d.bare_loops:
        a, c = b.cls
        if not (a == 0 and c == 0) and math.gcd(a, c) != 1:
            errors.append(f"bare loop {b.id!r}: non-coprime loop class {b.cls}")
        if b.mult < 1:
            errors.append(f"bare loop {b.id!r}: multiplicity must be positive")
    if errors:
        return errors
    for key in edge_ids + loop_ids:
        if key not in d.components:
            errors.append(f"component map misses {key!r}")
    for key in d.components:
        if key not in known and key not in set(loop_ids):
            errors.append(f"component map names unknown item {key!r}")
    for loop in d.strand_loops():
        comps = {d.components.get(e) for e in loop}
        if len(comps) > 1:
            errors.append(f"strand through {loop[0]!r} spans several components {sorted(map(str, comps))}")
        turns = _half_turns(d, loop)
        if turns % 2:
            errors.append(f"strand through {loop[0]!r}: extrema do not close up")
    return errors


def _edge_goes_down(use: tuple[str, bool, str], head: bool = False) -> bool:
    kind, _is_in, _port = use
    if kind in CROSSINGS:
        return True
    if kind.startswith("cap"):
        # a strand leaves a maximum downward and reaches one going up
        return not head
    return head


def _half_turns(d: TorusDiagram, loop: list[str]) -> int:
    """Signed count of half turns along a strand (counterclockwise positive)."""
    ends = d.endpoints()
    total = 0
    for eid in loop:
        ni, _ = ends[eid]["head"]
        total += HALF_TURN.get(d.nodes[ni].kind, 0)
    return total


# counterclockwise half turns: a right-to-left maximum or a left-to-right minimum
HALF_TURN = {"cap_emu": 1, "cup_n": 1, "cap_e": -1, "cup_nmu": -1}


def check(d: TorusDiagram) -> TorusDiagram:
    errors = validate(d)
    if errors:
        raise DiagramError(errors)
    return d


def writhe(d: TorusDiagram) -> tuple[int, dict[int, int]]:
    """Total writhe and per-component self-writhe."""
    total = 0
    per: dict[int, int] = {c: 0 for c in d.component_ids()}
    for v in d.crossings:
        sign = 1 if v.kind == "cross_pos" else -1
        total += sign
        ca, cb = d.components[v.ports[0]], d.components[v.ports[1]]
        if ca == cb:
            per[ca] += sign
    return total, per


# --- constructions ---------------------------------------------------------


class _Builder:
    """Accumulates nodes/edges; ``wire(x, y)`` splices edge x's head onto y's tail."""

    def __init__(self) -> None:
        self.nodes: list[Node] = []
        self.edges: dict[str, Edge] = {}
        self.comp: dict[str, int] = {}
        self.wires: dict[str, str] = {}
        self.loops: list[BareLoop] = []

    def edge(self, eid: str, wrap: tuple[int, int], comp: int) -> str:
        self.edges[eid] = Edge(eid, tuple(wrap))
        self.comp[eid] = comp
        return eid

    def wire(self, x: str, y: str) -> None:
        self.wires[x] = y

    def build(self, priority: set[str]) -> TorusDiagram:
        preds = {y: x for x, y in self.wires.items()}
        rename: dict[str, str] = {}
        merged: list[Edge] = []
        done: set[str] = set()
        order = list(self.edges)
        for eid in order:
            if eid in done or eid in preds:
                continue
            chain = [eid]
            while chain[-1] in self.wires:
                chain.append(self.wires[chain[-1]])
            done.update(chain)
            name = next((c for c in chain if c in priority), chain[0])
            wrap = tuple(map(sum, zip(*(self.edges[c].wrap for c in chain))))
            merged.append(Edge(name, wrap))
            rename[chain[0]] = name
            rename[chain[-1]] = name
            self.comp[name] = self.comp[chain[0]]
        # pure wire cycles are closed loops without critical points
        for eid in order:
            if eid in done:
                continue
            chain = [eid]
            while self.wires[chain[-1]] != eid:
                chain.append(self.wires[chain[-1]])
            done.update(chain)
            a, b = map(sum, zip(*(self.edges[c].wrap for c in chain)))
            if (a, b) == (0, 0):
                raise DiagramError([f"contractible loop through {eid!r} has no extrema"])
            g = math.gcd(a, b)
            name = next((c for c in chain if c in priority), chain[0])
            self.loops.append(BareLoop(name, normalize_class(a // g, b // g), g))
            self.comp[name] = self.comp[eid]
        nodes = [Node(v.id, v.kind, tuple(rename.get(p, p) for p in v.ports)) for v in self.nodes]
        keep = {e.id for e in merged} | {b.id for b in self.loops}
        comps = {k: c for k, c in self.comp.items() if k in keep}
        return TorusDiagram(tuple(nodes), tuple(merged), tuple(self.loops), comps)


def cable(d: TorusDiagram, strands: Mapping[int, int]) -> TorusDiagram:
    """Blackboard cabling: component ``j`` is replaced by ``strands[j]`` parallel copies.

    Copy ``t`` of a strand is the ``t``-th copy counted from the right-hand
    side of the direction of travel, so at every crossing port the copies run
    west to east in index order.  Component ``(j, t)`` of the result gets
    index given by the lexicographic order of ``(j, t)``.
    """
    check(d)
    comps = d.component_ids()
    ks = {c: int(strands.get(c, 1)) for c in comps}
    if any(k < 0 for k in ks.values()):
        raise ValueError("cable multiplicities must be nonnegative")
    new_index = {}
    for c in comps:
        for t in range(ks[c]):
            new_index[(c, t)] = len(new_index)
    b = _Builder()
    copy = lambda eid, t: f"{eid}#{t}"  # noqa: E731
    for e in d.edges:
        c = d.components[e.id]
        for t in range(ks[c]):
            b.edge(copy(e.id, t), e.wrap, new_index[(c, t)])
    for v in d.nodes:
        if v.kind in EXTREMA:
            c = d.components[v.ports[0]]
            for t in range(ks[c]):
                b.nodes.append(Node(f"{v.id}#{t}", v.kind, tuple(copy(p, t) for p in v.ports)))
            continue
        nw, ne, sw, se = v.ports
        ca, cb = d.components[nw], d.components[ne]
        ka, kb = ks[ca], ks[cb]
        # each position holds (is_a, copy index, current edge id)
        row = [(True, t, copy(nw, t)) for t in range(ka)] + [(False, t, copy(ne, t)) for t in range(kb)]
        count = 0
        moved = True
        while moved:
            moved = False
            for p in range(len(row) - 1):
                left, right = row[p], row[p + 1]
                if left[0] and not right[0]:
                    nid = f"{v.id}#{count}"
                    count += 1
                    new_b = b.edge(f"{nid}.sw", (0, 0), new_index[(cb, right[1])])
                    new_a = b.edge(f"{nid}.se", (0, 0), new_index[(ca, left[1])])
                    b.nodes.append(Node(nid, v.kind, (left[2], right[2], new_b, new_a)))
                    row[p] = (False, right[1], new_b)
                    row[p + 1] = (True, left[1], new_a)
                    moved = True
                    break
        for is_a, t, cur in row:
            b.wire(cur, copy(se if is_a else sw, t))
    for loop in d.bare_loops:
        c = d.components[loop.id]
        for t in range(ks[c]):
            lid = f"{loop.id}#{t}"
            b.loops.append(BareLoop(lid, loop.cls, loop.mult))
            b.comp[lid] = new_index[(c, t)]
    priority = {copy(e.id, t) for e in d.edges for t in range(ks[d.components[e.id]])}
    return check(b.build(priority))


def disjoint_union(*parts: TorusDiagram) -> TorusDiagram:
    """Split union; ids are prefixed ``u0.``, ``u1.``, ... and components offset."""
    nodes, edges, loops, comps = [], [], [], {}
    offset = 0
    for k, d in enumerate(parts):
        pre = f"u{k}."
        remap = {c: offset + i for i, c in enumerate(d.component_ids())}
        nodes += [Node(pre + v.id, v.kind, tuple(pre + p for p in v.ports)) for v in d.nodes]
        edges += [Edge(pre + e.id, e.wrap) for e in d.edges]
        loops += [BareLoop(pre + b.id, b.cls, b.mult) for b in d.bare_loops]
        comps |= {pre + key: remap[c] for key, c in d.components.items()}
        offset += len(remap)
    return TorusDiagram(tuple(nodes), tuple(edges), tuple(loops), comps)


def insert_zigzag(d: TorusDiagram, edge_id: str, leftward: bool = False) -> TorusDiagram:
    """Insert a cancelling cap/cup pair (an S-bend) into one edge."""
    check(d)
    ends = d.endpoints()
    tail_node, _ = ends[edge_id]["tail"]
    going_down = d.nodes[tail_node].kind in CROSSINGS or d.nodes[tail_node].kind.startswith("cap")
    e = d.edge_map[edge_id]
    a, m, z = f"{edge_id}.za", f"{edge_id}.zm", f"{edge_id}.zb"
    if going_down:
        # down, then a minimum, up, then a maximum, down again
        first, second = ("cup_nmu", "cap_emu") if leftward else ("cup_n", "cap_e")
    else:
        first, second = ("cap_emu", "cup_nmu") if leftward else ("cap_e", "cup_n")

    def ports(kind: str, inp: str, out: str) -> tuple[str, str]:
        # W is the in-port for left-to-right kinds, E for right-to-left kinds
        return (inp, out) if _IN_PORTS[kind][0] else (out, inp)

    nodes = []
    for v in d.nodes:
        roles = _IN_PORTS[v.kind]
        new_ports = []
        for pi, p in enumerate(v.ports):
            if p == edge_id:
                new_ports.append(z if roles[pi] else a)
            else:
                new_ports.append(p)
        nodes.append(Node(v.id, v.kind, tuple(new_ports)))
    nodes.append(Node(f"{edge_id}.z1", first, ports(first, a, m)))
    nodes.append(Node(f"{edge_id}.z2", second, ports(second, m, z)))
    edges = [x for x in d.edges if x.id != edge_id] + [Edge(a, e.wrap), Edge(m), Edge(z)]
    c = d.components[edge_id]
    comps = {k: v for k, v in d.components.items() if k != edge_id} | {a: c, m: c, z: c}
    return check(TorusDiagram(tuple(nodes), tuple(edges), d.bare_loops, comps))


# --- JSON ------------------------------------------------------------------

_TOP = {"nodes", "edges", "bare_loops", "components"}


def _strict(obj: Mapping, allowed: set[str], required: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise DiagramError([f"{where}: unknown field(s) {sorted(extra)}"])
    missing = required - set(obj)
    if missing:
        raise DiagramError([f"{where}: missing field(s) {sorted(missing)}"])


def from_json(data: Mapping) -> TorusDiagram:
    if not isinstance(data, Mapping):
        raise DiagramError(["diagram JSON must be an object"])
    _strict(data, _TOP, {"nodes", "edges"}, "diagram")
    nodes = []
    for k, raw in enumerate(data["nodes"]):
        _strict(raw, {"id", "kind", "ports"}, {"id", "kind", "ports"}, f"nodes[{k}]")
        nodes.append(Node(str(raw["id"]), str(raw["kind"]), tuple(str(p) for p in raw["ports"])))
    edges = []
    for k, raw in enumerate(data["edges"]):
        _strict(raw, {"id", "wrap"}, {"id"}, f"edges[{k}]")
        wrap = tuple(int(x) for x in raw.get("wrap", (0, 0)))
        if len(wrap) != 2:
            raise DiagramError([f"edges[{k}]: wrap must have two entries"])
        edges.append(Edge(str(raw["id"]), wrap))
    loops = []
    for k, raw in enumerate(data.get("bare_loops", [])):
        _strict(raw, {"id", "class", "mult"}, {"class"}, f"bare_loops[{k}]")
        cls = tuple(int(x) for x in raw["class"])
        if len(cls) != 2:
            raise DiagramError([f"bare_loops[{k}]: class must have two entries"])
        loops.append(BareLoop(str(raw.get("id", f"loop{k}")), cls, int(raw.get("mult", 1))))
    comps = {str(k): int(v) for k, v in data.get("components", {}).items()}
    return check(TorusDiagram(tuple(nodes), tuple(edges), tuple(loops), comps))


def loads_json(text: str) -> TorusDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError([f"invalid JSON: {exc}"]) from exc
    return from_json(data)


def load_json(path: str | Path) -> TorusDiagram:
    return loads_json(Path(path).read_text())


def iter_items(d: TorusDiagram) -> Iterable[str]:
    yield from (e.id for e in d.edges)
    yield from (b.id for b in d.bare_loops)
