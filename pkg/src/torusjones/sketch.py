"""Geometric sketches of torus diagrams, compiled to oriented critical-point graphs.

A sketch is unoriented: crossings have four legs at the diagonal positions
``TL, TR, BL, BR`` plus an over-strand choice, extrema are maxima or minima
with legs ``W, E``, and edges join legs with a wrap vector measured from the
first end to the second.  Compiling picks an orientation per component and
rotates every crossing whose strands do not both run downward by a quarter
or half turn, adding a maximum or minimum on each leg whose tangent passes
through the horizontal.  Straight-line links on the torus and braid closures
are built on top of this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .diagram import PORT_NAMES, BareLoop, Edge, Node, TorusDiagram, check, normalize_class

__all__ = [
    "Sketch",
    "line_link",
    "braid_closure",
    "torus_braid",
    "alternating_overs",
    "from_diagram",
    "smoothing",
    "reverse_components",
]

LEG_ANGLE = {"TR": 45, "TL": 135, "BL": 225, "BR": 315}
ANGLE_PORT = {45: "NE", 135: "NW", 225: "SW", 315: "SE"}
PARTNER = {"TL": "BR", "BR": "TL", "TR": "BL", "BL": "TR", "W": "E", "E": "W"}
# unit direction of travel when a strand runs from the first leg to the second
DIRECTION = {("TL", "BR"): (1, -1), ("BR", "TL"): (-1, 1), ("TR", "BL"): (-1, -1), ("BL", "TR"): (1, 1)}


@dataclass
class _SNode:
    id: str
    kind: str  # "crossing", "max", "min"
    over: str = ""  # "TLBR" or "TRBL" for crossings


@dataclass
class _SEdge:
    id: str
    a: tuple[str, str]
    b: tuple[str, str]
    wrap: tuple[int, int]


@dataclass
class Sketch:
    nodes: dict[str, _SNode] = field(default_factory=dict)
    edges: list[_SEdge] = field(default_factory=list)
    loops: list[tuple[tuple[int, int], int]] = field(default_factory=list)

    def crossing(self, nid: str, over: str) -> str:
        if over not in ("TLBR", "TRBL"):
            raise ValueError("over must be 'TLBR' or 'TRBL'")
        self.nodes[nid] = _SNode(nid, "crossing", over)
        return nid

    def maximum(self, nid: str) -> str:
        self.nodes[nid] = _SNode(nid, "max")
        return nid

    def minimum(self, nid: str) -> str:
        self.nodes[nid] = _SNode(nid, "min")
        return nid

    def connect(self, a: tuple[str, str], b: tuple[str, str], wrap: tuple[int, int] = (0, 0), eid: str | None = None) -> str:
        eid = eid or f"e{len(self.edges)}"
        self.edges.append(_SEdge(eid, a, b, tuple(wrap)))
        return eid

    def loop(self, cls: tuple[int, int], mult: int = 1) -> None:
        self.loops.append((tuple(cls), mult))

    # --- compilation -------------------------------------------------------

    def _incidence(self) -> dict[tuple[str, str], tuple[int, int]]:
        """(node, leg) -> (edge index, which end 0/1)."""
        inc: dict[tuple[str, str], tuple[int, int]] = {}
        for k, e in enumerate(self.edges):
            for side, end in ((0, e.a), (1, e.b)):
                if end in inc:
                    raise ValueError(f"leg {end} used twice")
                inc[end] = (k, side)
        return inc

    def components(self) -> list[list[tuple[int, int]]]:
        """Strands as lists of (edge index, direction) with direction 0 = a->b."""
        inc = self._incidence()
        seen: set[int] = set()
        comps = []
        for start in range(len(self.edges)):
            if start in seen:
                continue
            walk = []
            k, direction = start, 0
            while k not in seen:
                seen.add(k)
                walk.append((k, direction))
                e = self.edges[k]
                node, leg = e.b if direction == 0 else e.a
                nxt = inc[(node, PARTNER[leg])]
                k, direction = nxt[0], nxt[1]
            comps.append(walk)
        return comps

    def build(self, reverse: Iterable[int] = (), reverse_edges: Iterable[str] = ()) -> TorusDiagram:
        """Compile to an oriented diagram.

        Components listed in ``reverse`` (by tracing order) or containing an
        edge id from ``reverse_edges`` are traversed against their default
        direction.
        """
        reverse = set(reverse)
        comps = self.components()
        flip_edges = set(reverse_edges)
        for ci, walk in enumerate(comps):
            if any(self.edges[k].id in flip_edges for k, _ in walk):
                reverse.add(ci)
        # orientation: edge index -> (tail end, head end, wrap along travel, component)
        oriented: dict[int, tuple[tuple[str, str], tuple[str, str], tuple[int, int], int]] = {}
        for ci, walk in enumerate(comps):
            for k, direction in walk:
                e = self.edges[k]
                flip = direction == 1
                if ci in reverse:
                    flip = not flip
                if flip:
                    oriented[k] = (e.b, e.a, (-e.wrap[0], -e.wrap[1]), ci)
                else:
                    oriented[k] = (e.a, e.b, e.wrap, ci)
        # which leg of each node is entered/left, and by which edge
        legs: dict[tuple[str, str], tuple[int, bool]] = {}
        for k, (tail, head, _, _) in oriented.items():
            legs[tail] = (k, False)
            legs[head] = (k, True)

        out_nodes: list[Node] = []
        extra_edges: list[tuple[str, int]] = []
        ext_id = {k: self.edges[k].id for k in oriented}
        # a re-normalized crossing may already carry helper ids from an earlier build
        self._taken = set(self.nodes) | {e.id for e in self.edges}

        for sn in self.nodes.values():
            if sn.kind in ("max", "min"):
                kw, w_in = legs[(sn.id, "W")]
                ke, e_in = legs[(sn.id, "E")]
                if w_in == e_in:
                    raise ValueError(f"extremum {sn.id}: strand direction inconsistent")
                ltr = w_in  # entering at W means travelling left to right
                kind = {("max", True): "cap_e", ("max", False): "cap_emu",
                        ("min", True): "cup_n", ("min", False): "cup_nmu"}[(sn.kind, ltr)]
                out_nodes.append(Node(sn.id, kind, (ext_id[kw], ext_id[ke])))
                continue
            self._compile_crossing(sn, legs, oriented, ext_id, out_nodes, extra_edges)

        edges = [Edge(ext_id[k], oriented[k][2]) for k in sorted(oriented)]
        edges += [Edge(eid, (0, 0)) for eid, _ in extra_edges]
        comp_map = {ext_id[k]: oriented[k][3] for k in oriented}
        comp_map |= {eid: ci for eid, ci in extra_edges}
        loops = []
        for j, (cls, mult) in enumerate(self.loops):
            lid = f"loop{j}"
            loops.append(BareLoop(lid, normalize_class(*cls), mult))
            comp_map[lid] = len(comps) + j
        return check(TorusDiagram(tuple(out_nodes), tuple(edges), tuple(loops), comp_map))

    def _fresh(self, base: str) -> str:
        name, k = base, 1
        while name in self._taken:
            k += 1
            name = f"{base}{k}"
        self._taken.add(name)
        return name

    def _compile_crossing(self, sn, legs, oriented, ext_id, out_nodes, extra_edges) -> None:
        info = {leg: legs[(sn.id, leg)] for leg in ("TL", "TR", "BL", "BR")}
        # travel direction of each diagonal strand
        s1 = ("TL", "BR") if info["TL"][1] else ("BR", "TL")
        s2 = ("TR", "BL") if info["TR"][1] else ("BL", "TR")
        d1, d2 = DIRECTION[s1], DIRECTION[s2]
        over, under = (d1, d2) if sn.over == "TLBR" else (d2, d1)
        sign = 1 if over[0] * under[1] - over[1] * under[0] > 0 else -1
        down1, down2 = d1[1] < 0, d2[1] < 0
        if down1 and down2:
            rho = 0
        elif not down1 and not down2:
            rho = 180
        elif d1[0] < 0:  # both strands head left
            rho = 90
        else:
            rho = -90
        ports: dict[str, str] = {}
        for leg, (k, entering) in info.items():
            theta = LEG_ANGLE[leg]
            new_angle = (theta + rho) % 360
            port = ANGLE_PORT[new_angle]
            ext = ext_id[k]
            turn = _horizontal_passage(new_angle, theta, rho)
            if turn is None:
                ports[port] = ext
                continue
            heading, is_max = turn
            # outward travel along the leg unless the strand enters the crossing here
            outward = not entering
            ltr = (heading == 0) == outward
            kind = {(True, True): "cap_e", (True, False): "cap_emu",
                    (False, True): "cup_n", (False, False): "cup_nmu"}[(is_max, ltr)]
            inner = self._fresh(f"{sn.id}.{leg}")
            ecomp = oriented[k][3]
            extra_edges.append((inner, ecomp))
            # crossing-side piece is W when heading right outward, E when heading left
            w, e = (inner, ext) if heading == 0 else (ext, inner)
            out_nodes.append(Node(self._fresh(f"{sn.id}.{leg}x"), kind, (w, e)))
            ports[port] = inner
        kind = "cross_pos" if sign > 0 else "cross_neg"
        out_nodes.append(Node(sn.id, kind, (ports["NW"], ports["NE"], ports["SW"], ports["SE"])))


def _horizontal_passage(start: int, end: int, rho: int) -> tuple[int, bool] | None:
    """Tangent sweep from ``start`` back to ``end`` (by ``-rho``); report a horizontal passage.

    Returns ``(heading, is_max)`` where heading is 0 (right) or 180 (left) in
    the outward direction, or None when the sweep stays off the horizontal.
    """
    if rho == 0:
        return None
    step = -1 if rho > 0 else 1
    ang = start
    for _ in range(abs(rho)):
        ang = (ang + step) % 360
        if ang in (0, 180):
            decreasing = step < 0
            if ang == 0:
                return 0, decreasing
            return 180, not decreasing
    return None


# --- straight-line links ---------------------------------------------------


@dataclass(frozen=True)
class _Hit:
    i: int
    j: int
    ti: Fraction
    tj: Fraction


def _line_hits(classes: Sequence[tuple[int, int]], offsets: Sequence[Fraction]) -> list[_Hit]:
    """Intersections on the torus of lines ``(x0 + t a, t b)``, ``t in [0, 1)``."""
    hits = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            (ai, bi), (aj, bj) = classes[i], classes[j]
            det = ai * bj - aj * bi
            if det == 0:
                continue
            dx = Fraction(offsets[j]) - Fraction(offsets[i])
            found = set()
            span = abs(ai) + abs(aj) + abs(bi) + abs(bj) + 2
            for u in range(-span, span + 1):
                for v in range(-span, span + 1):
                    # t*ai - s*aj = dx + u ; t*bi - s*bj = v
                    rx, ry = dx + u, Fraction(v)
                    t = (rx * (-bj) - (-aj) * ry) / (-det)
                    s = (ai * ry - bi * rx) / (-det)
                    if 0 <= t < 1 and 0 <= s < 1:
                        found.add((t, s))
            for t, s in sorted(found):
                hits.append(_Hit(i, j, t, s))
    return hits


def line_link(
    classes: Sequence[tuple[int, int]],
    offsets: Sequence[Fraction | float] | None = None,
    overs: Callable[[list[_Hit]], list[int]] | None = None,
    reverse: Iterable[int] = (),
) -> TorusDiagram:
    """Link made of straight closed geodesics of the given (non-horizontal) classes.

    ``overs`` maps the list of intersections to the index of the over strand at
    each; the default is :func:`alternating_overs`.  Strands are oriented along
    ``(a, b)``; ``reverse`` flips chosen strands.
    """
    if any(b == 0 for _, b in classes):
        raise ValueError("straight strands must not be horizontal")
    if offsets is None:
        # evenly spread, nudged so that no three strands share a point
        offsets = [Fraction(2 * k + 1, 2 * len(classes)) + Fraction(k, 97) for k in range(len(classes))]
    offsets = [Fraction(x).limit_denominator(10**6) for x in offsets]
    hits = _line_hits(classes, offsets)
    spots = [((offsets[h.i] + h.ti * classes[h.i][0]) % 1, (h.ti * classes[h.i][1]) % 1) for h in hits]
    if len(set(spots)) != len(spots):
        raise ValueError("strands meet in a point of higher multiplicity; change the offsets")
    chooser = overs or alternating_overs
    over_idx = chooser(hits)
    sk = Sketch()
    # along each strand: crossings ordered by parameter
    along: dict[int, list[tuple[Fraction, int]]] = {s: [] for s in range(len(classes))}
    for h_idx, h in enumerate(hits):
        along[h.i].append((h.ti, h_idx))
        along[h.j].append((h.tj, h_idx))
    legs: dict[tuple[int, int], tuple[str, str]] = {}
    for h_idx, h in enumerate(hits):
        # upper rays: the strand whose upward direction points further left takes TL
        up_i = _upward_angle(classes[h.i])
        up_j = _upward_angle(classes[h.j])
        left, right = (h.i, h.j) if up_i > up_j else (h.j, h.i)
        legs[(h_idx, left)] = ("TL", "BR")
        legs[(h_idx, right)] = ("TR", "BL")
        over_leg = "TLBR" if over_idx[h_idx] == left else "TRBL"
        sk.crossing(f"c{h_idx}", over_leg)
    for s, (a, b) in enumerate(classes):
        pts = sorted(along[s])
        x0 = offsets[s]
        if not pts:
            sk.loop((a, b))
            continue
        for k, (t, h_idx) in enumerate(pts):
            t_next, h_next = pts[(k + 1) % len(pts)]
            if k == len(pts) - 1:
                t_next = t_next + 1
            wrap = (
                math.floor(x0 + t_next * a) - math.floor(x0 + t * a),
                math.floor(t_next * b) - math.floor(t * b),
            )
            leave = _exit_leg(legs[(h_idx, s)], (a, b))
            enter = _entry_leg(legs[(h_next, s)], (a, b))
            sk.connect((f"c{h_idx}", leave), (f"c{h_next}", enter), wrap, eid=f"s{s}.{k}")
    return sk.build(reverse=reverse)


def _upward_angle(cls: tuple[int, int]) -> float:
    a, b = cls
    if b < 0:
        a, b = -a, -b
    return math.atan2(b, a)


def _exit_leg(pair: tuple[str, str], cls: tuple[int, int]) -> str:
    # the strand leaves along its travel direction: the lower leg if it heads down
    top, bottom = pair
    return bottom if cls[1] < 0 else top


def _entry_leg(pair: tuple[str, str], cls: tuple[int, int]) -> str:
    top, bottom = pair
    return top if cls[1] < 0 else bottom


def alternating_overs(hits: list[_Hit]) -> list[int]:
    """Over strand per intersection so that every strand alternates over/under.

    Raises if no alternating choice exists.  Of the two mirror solutions the
    one with the lower-numbered strand over at the first intersection is used.
    """
    along: dict[int, list[tuple[Fraction, int]]] = {}
    for h_idx, h in enumerate(hits):
        along.setdefault(h.i, []).append((h.ti, h_idx))
        along.setdefault(h.j, []).append((h.tj, h_idx))
    # variable x_h = 1 if strand h.i is over; walking a strand flips its over-ness
    constraints: dict[int, list[tuple[int, int]]] = {k: [] for k in range(len(hits))}
    for s, pts in along.items():
        pts.sort()
        if len(pts) % 2:
            raise ValueError(f"strand {s} meets an odd number of crossings; cannot alternate")
        for k in range(len(pts)):
            h1, h2 = pts[k][1], pts[(k + 1) % len(pts)][1]
            o1 = 1 if hits[h1].i == s else 0
            o2 = 1 if hits[h2].i == s else 0
            # over_s(h1) != over_s(h2): (x1 == o1) xor (x2 == o2)  <=>  x1 ^ x2 = 1 ^ o1 ^ o2
            parity = 1 ^ o1 ^ o2
            constraints[h1].append((h2, parity))
            constraints[h2].append((h1, parity))
    value: dict[int, int] = {}
    for root in range(len(hits)):
        if root in value:
            continue
        value[root] = 1
        stack = [root]
        while stack:
            h = stack.pop()
            for other, parity in constraints[h]:
                want = value[h] ^ parity
                if other in value:
                    if value[other] != want:
                        raise ValueError("no alternating over/under assignment exists")
                else:
                    value[other] = want
                    stack.append(other)
    return [hits[k].i if value[k] else hits[k].j for k in range(len(hits))]


# --- braid closures --------------------------------------------------------


def braid_closure(word: Sequence[int], strands: int, open_strands: Iterable[int] = ()) -> TorusDiagram:
    """Closure of a downward braid.

    Generator ``+p`` / ``-p`` (1-based) crosses positions ``p`` and ``p+1``;
    ``+p`` is a positive crossing.  Strand positions in ``open_strands`` close
    vertically through the top/bottom of the torus (wrap ``(0, -1)``); the
    others close in the plane around the right-hand side of the braid.
    """
    open_strands = set(open_strands)
    sk = Sketch()
    # current dangling end per position: (node, leg) or ("top", position)
    ends: list[tuple[str, str]] = [("top", str(p)) for p in range(strands)]
    count = 0
    first_hit: dict[int, tuple[str, str]] = {}

    def link(pos: int, target: tuple[str, str]) -> None:
        src = ends[pos]
        if src[0] == "top":
            first_hit[pos] = target
        else:
            sk.connect(src, target, eid=f"b{len(sk.edges)}")

    for g in word:
        p = abs(g) - 1
        if not 0 <= p < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        cid = f"x{count}"
        count += 1
        sk.crossing(cid, "TRBL" if g > 0 else "TLBR")
        link(p, (cid, "TL"))
        link(p + 1, (cid, "TR"))
        ends[p] = (cid, "BL")
        ends[p + 1] = (cid, "BR")
    for pos in range(strands):
        bottom = ends[pos]
        top = first_hit.get(pos)
        if pos in open_strands:
            if top is None:
                sk.loop((0, 1))
            else:
                sk.connect(bottom, top, (0, -1), eid=f"v{pos}")
            continue
        lo, hi = f"min{pos}", f"max{pos}"
        sk.minimum(lo)
        sk.maximum(hi)
        sk.connect((lo, "E"), (hi, "E"), eid=f"r{pos}")
        if top is None:
            sk.connect((hi, "W"), (lo, "W"), eid=f"t{pos}")
        else:
            sk.connect(bottom, (lo, "W"), eid=f"d{pos}")
            sk.connect((hi, "W"), top, eid=f"t{pos}")
    return sk.build()


def torus_braid(
    word: Sequence[int | str],
    strands: int,
    closure_wrap: tuple[int, int] | Sequence[tuple[int, int]] = (0, -1),
) -> TorusDiagram:
    """Downward braid on the torus, closed through the top/bottom boundary.

    Tokens: ``+p`` / ``-p`` are crossings as in :func:`braid_closure`; ``"t"``
    moves every strand one place right with the last one crossing the right
    edge of the fundamental domain, ``"T"`` is the inverse move.  These shifts
    realize virtual crossings of a virtual braid on the torus.  ``closure_wrap``
    is one wrap for every closing arc or one per bottom position.
    """
    if isinstance(closure_wrap[0], int):
        closure_wrap = [closure_wrap] * strands
    sk = Sketch()
    ends: list[tuple[str, str] | None] = [None] * strands
    pending = [(0, 0)] * strands
    first: dict[int, tuple[tuple[str, str], tuple[int, int]]] = {}
    owner = list(range(strands))
    count = 0

    def attach(pos: int, target: tuple[str, str]) -> None:
        src, w = ends[pos], pending[pos]
        if src is None:
            first[owner[pos]] = (target, w)
        else:
            sk.connect(src, target, w, eid=f"b{len(sk.edges)}")
        pending[pos] = (0, 0)

    for g in word:
        if g in ("t", "T"):
            if g == "t":
                moved = strands - 1
                pending[moved] = (pending[moved][0] + 1, pending[moved][1])
                perm = [moved] + list(range(strands - 1))
            else:
                pending[0] = (pending[0][0] - 1, pending[0][1])
                perm = list(range(1, strands)) + [0]
            ends = [ends[k] for k in perm]
            pending = [pending[k] for k in perm]
            owner = [owner[k] for k in perm]
            continue
        p = abs(int(g)) - 1
        if not 0 <= p < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        cid = f"x{count}"
        count += 1
        sk.crossing(cid, "TRBL" if int(g) > 0 else "TLBR")
        attach(p, (cid, "TL"))
        attach(p + 1, (cid, "TR"))
        ends[p], ends[p + 1] = (cid, "BL"), (cid, "BR")
    # position k at the bottom continues at position k at the top
    for pos in range(strands):
        target, w0 = first.get(pos, (None, (0, 0)))
        cw = closure_wrap[pos]
        w = (pending[pos][0] + cw[0] + w0[0], pending[pos][1] + cw[1] + w0[1])
        if ends[pos] is None and target is None:
            sk.loop(w)
        elif target is None or ends[pos] is None:
            raise ValueError("strand without crossings joined to one with crossings")
        else:
            sk.connect(ends[pos], target, w, eid=f"v{pos}")
    return sk.build()


# --- round trip from compiled diagrams ---------------------------------------

_LEG_OF_PORT = {"NW": "TL", "NE": "TR", "SW": "BL", "SE": "BR", "W": "W", "E": "E"}


def from_diagram(d: TorusDiagram) -> Sketch:
    """Forget orientation: crossings keep their over-strand, extrema their shape."""
    sk = Sketch()
    ends = d.endpoints()
    for v in d.nodes:
        if v.kind == "cross_pos":
            sk.crossing(v.id, "TRBL")
        elif v.kind == "cross_neg":
            sk.crossing(v.id, "TLBR")
        elif v.kind.startswith("cap"):
            sk.maximum(v.id)
        else:
            sk.minimum(v.id)
    for e in d.edges:
        (tn, tp), (hn, hp) = ends[e.id]["tail"], ends[e.id]["head"]
        tail, head = d.nodes[tn], d.nodes[hn]
        sk.connect(
            (tail.id, _LEG_OF_PORT[_port_name(tail, tp)]),
            (head.id, _LEG_OF_PORT[_port_name(head, hp)]),
            e.wrap,
            eid=e.id,
        )
    for b in d.bare_loops:
        sk.loop(b.cls, b.mult)
    return sk


def _port_name(v: Node, index: int) -> str:
    return PORT_NAMES[v.kind][index]


def _join(sk: Sketch, end1: tuple[str, str], end2: tuple[str, str]) -> None:
    """Glue two leg ends by a plain arc, merging their edges."""
    k1 = next(k for k, e in enumerate(sk.edges) if end1 in (e.a, e.b))
    k2 = next(k for k, e in enumerate(sk.edges) if end2 in (e.a, e.b))
    e1, e2 = sk.edges[k1], sk.edges[k2]
    if k1 == k2:
        sk.loop(e1.wrap)
        del sk.edges[k1]
        return
    # e1 read towards end1, e2 read away from end2
    p, w1 = (e1.a, e1.wrap) if e1.b == end1 else (e1.b, (-e1.wrap[0], -e1.wrap[1]))
    s, w2 = (e2.b, e2.wrap) if e2.a == end2 else (e2.a, (-e2.wrap[0], -e2.wrap[1]))
    merged = _SEdge(e1.id, p, s, (w1[0] + w2[0], w1[1] + w2[1]))
    for k in sorted((k1, k2), reverse=True):
        del sk.edges[k]
    sk.edges.append(merged)


def smoothing(d: TorusDiagram, node_id: str, which: str) -> TorusDiagram:
    """Diagram with one crossing replaced by its ``"A"`` or ``"B"`` smoothing.

    For a positive crossing the A-smoothing is the vertical one (upper-left to
    lower-left, upper-right to lower-right); for a negative crossing it is
    the horizontal one, which is drawn as a minimum above a maximum.
    """
    node = next(v for v in d.nodes if v.id == node_id)
    if node.kind not in ("cross_pos", "cross_neg") or which not in ("A", "B"):
        raise ValueError("smoothing needs a crossing id and which in {'A', 'B'}")
    vertical = (which == "A") == (node.kind == "cross_pos")
    sk = from_diagram(d)
    del sk.nodes[node_id]
    if vertical:
        _join(sk, (node_id, "TL"), (node_id, "BL"))
        _join(sk, (node_id, "TR"), (node_id, "BR"))
    else:
        lo, hi = f"{node_id}.min", f"{node_id}.max"
        sk.minimum(lo)
        sk.maximum(hi)
        rename = {(node_id, "TL"): (lo, "W"), (node_id, "TR"): (lo, "E"),
                  (node_id, "BL"): (hi, "W"), (node_id, "BR"): (hi, "E")}
        for e in sk.edges:
            e.a = rename.get(e.a, e.a)
            e.b = rename.get(e.b, e.b)
    return sk.build()


def reverse_components(d: TorusDiagram, components: Iterable[int]) -> TorusDiagram:
    """Same link with the chosen components traversed backwards.

    Crossings whose strands stop running downward are re-normalized by a
    quarter or half turn, so node and edge sets change.
    """
    comps = set(components)
    flip = [e.id for e in d.edges if d.components[e.id] in comps]
    return from_diagram(d).build(reverse_edges=flip)
