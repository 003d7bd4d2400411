"""Plane 3-tree machinery.

A plane 3-tree (stacked triangulation) is built by repeatedly inserting a
degree-3 vertex into an internal face.  This module provides:

* ``decompose``        -- the recursive central-vertex decomposition with
                          A/B/C/D vertex types, per-node counters and B-chains;
* ``build_curve_bundle`` -- three proper good curves per node, one ending on
                          each pair of outer edges, that together visit many
                          internal vertices (max of the three visits at least
                          ``ceil(m/8)`` of the ``m`` internal vertices);
* ``lemma1_chord``     -- a good curve between two boundary points of a
                          chord-filled cycle, crossing each inner edge at most
                          once (the combinatorial shadow of a straight segment
                          in a convex drawing);
* ``check_lemma3``     -- the six-counter audit of a bundle;
* ``dp_optimal_collinear`` -- exact maximum over proper good curves via a
                          six-signature dynamic program with reconstruction;
* ``augment_to_plane_3tree`` -- ear-clipping triangulation into a stacked one;
* ``random_plane_3tree``   -- deterministic random stacking generator.
"""

import random
import sys
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .plane_graph import PlaneGraph, edge_key
from .curves import GoodCurve, Station, Vst, Xst, Fst, validate_curve


class ThreeTreeError(ValueError):
    pass


def _bump_recursion(n: int) -> None:
    want = 4 * n + 500
    if sys.getrecursionlimit() < want:
        sys.setrecursionlimit(want)


# -- decomposition -----------------------------------------------------------------


@dataclass
class ChainInfo:
    """A maximal run of type-B vertices hanging off a type-B node.

    vertices: the run ``w1, ..., wi`` (all type B).
    paths:    per corner of the head node, the built-up vertex path from that
              corner to the matching corner of the tail.
    tail:     the first non-B descendant reached through only-nonempty children.
    """
    vertices: Tuple[int, ...]
    paths: Dict[int, Tuple[int, ...]]
    tail: "DecompNode"


@dataclass
class DecompNode:
    corners: Tuple[int, int, int]       # counter-clockwise around the node
    w: Optional[int]                    # central vertex, None iff empty
    children: Optional[Tuple["DecompNode", "DecompNode", "DecompNode"]]
    kind: str                           # 'empty', 'A', 'B', 'C', 'D'
    interior: FrozenSet[int]
    m: int
    a: int
    b: int
    c: int
    d: int
    h: int
    index: int = -1
    chain: Optional[ChainInfo] = None   # set on B-chain heads

    def child_on_edge(self, a: int, b: int) -> "DecompNode":
        u, v, z = self.corners
        slots = {edge_key(u, v): 0, edge_key(v, z): 1, edge_key(z, u): 2}
        return self.children[slots[edge_key(a, b)]]

    def corner_next(self, a: int) -> int:
        i = self.corners.index(a)
        return self.corners[(i + 1) % 3]

    def corner_prev(self, a: int) -> int:
        i = self.corners.index(a)
        return self.corners[(i + 2) % 3]


@dataclass
class ThreeTreeDecomp:
    graph: PlaneGraph
    root: DecompNode
    nodes: List[DecompNode]                 # preorder
    center_node: Dict[int, DecompNode]      # internal vertex -> its node

    @property
    def b_chains(self) -> List[Tuple[int, ...]]:
        return [n.chain.vertices for n in self.nodes if n.chain is not None]

    def vertex_type(self, v: int) -> str:
        return self.center_node[v].kind


def decompose(g: PlaneGraph) -> ThreeTreeDecomp:
    """Recursive central-vertex decomposition of a plane 3-tree."""
    _bump_recursion(g.n)
    if len(g.outer_walk()) != 3:
        raise ThreeTreeError("outer face is not a triangle")
    if not g.is_triangulation():
        raise ThreeTreeError("not every face is a triangle")
    nb = {v: frozenset(g.rot[v]) for v in g.vertices}
    corners = tuple(reversed(g.outer_walk()))   # counter-clockwise
    interior = frozenset(g.vertices) - frozenset(corners)
    nodes: List[DecompNode] = []
    center_node: Dict[int, DecompNode] = {}

    def rec(tri: Tuple[int, int, int], inside: FrozenSet[int]) -> DecompNode:
        node = DecompNode(tri, None, None, 'empty', inside, len(inside),
                          0, 0, 0, 0, 0, index=len(nodes))
        nodes.append(node)
        if not inside:
            return node
        ca, cb, cc = tri
        centers = inside & nb[ca] & nb[cb] & nb[cc]
        if len(centers) != 1:
            raise ThreeTreeError(
                f"triangle {tri} has {len(centers)} interior vertices adjacent "
                f"to all three corners (need exactly 1): not a stacked "
                f"triangulation")
        w = next(iter(centers))
        rest = inside - {w}
        comps: List[set] = []
        seen = set()
        for v in sorted(rest):
            if v in seen:
                continue
            comp, stack = {v}, [v]
            while stack:
                x = stack.pop()
                for y in nb[x]:
                    if y in rest and y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        # children sit on edges (ca,cb), (cb,cc), (cc,ca); the component inside
        # a child is the one with no neighbour at the opposite corner.
        child_inside = [set(), set(), set()]
        opposite = (cc, ca, cb)
        for comp in comps:
            slots = [i for i in range(3) if not any(x in nb[opposite[i]] for x in comp)]
            if len(slots) != 1:
                raise ThreeTreeError(
                    f"component {sorted(comp)} inside {tri} does not fit a "
                    f"unique child triangle: not a stacked triangulation")
            child_inside[slots[0]] |= comp
        kids = (rec((ca, cb, w), frozenset(child_inside[0])),
                rec((cb, cc, w), frozenset(child_inside[1])),
                rec((cc, ca, w), frozenset(child_inside[2])))
        node.w = w
        node.children = kids
        center_node[w] = node
        empties = sum(1 for k in kids if k.kind == 'empty')
        node.kind = {3: 'A', 2: 'B', 1: 'C', 0: 'D'}[empties]
        node.a = sum(k.a for k in kids) + (node.kind == 'A')
        node.b = sum(k.b for k in kids) + (node.kind == 'B')
        node.c = sum(k.c for k in kids) + (node.kind == 'C')
        node.d = sum(k.d for k in kids) + (node.kind == 'D')
        node.h = sum(k.h for k in kids)
        if node.kind == 'B':
            only = next(k for k in kids if k.kind != 'empty')
            if only.kind != 'B':
                node.h += 1     # this vertex starts (and ends) a new B-chain
        else:
            pass
        return node

    root = rec(corners, interior)
    # mark chain heads: type-B nodes whose parent is not type B
    parent_kind: Dict[int, str] = {root.index: ''}
    for nd in nodes:
        if nd.children:
            for k in nd.children:
                parent_kind[k.index] = nd.kind
    for nd in nodes:
        if nd.kind == 'B' and parent_kind[nd.index] != 'B':
            nd.chain = _chain_info(nd)
    return ThreeTreeDecomp(g, root, nodes, center_node)


def _chain_info(head: DecompNode) -> ChainInfo:
    """Follow only-nonempty children through consecutive type-B nodes.

    Each step replaces one triangle corner by the dropped central vertex; the
    replaced corner's path grows by one edge.
    """
    paths = {c: [c] for c in head.corners}
    ends = {c: c for c in head.corners}     # path key -> current endpoint
    chain: List[int] = []
    node = head
    while True:
        nxt = next(k for k in node.children if k.kind != 'empty')
        missing = next(c for c in node.corners if c not in nxt.corners)
        key = next(k for k, e in ends.items() if e == missing)
        paths[key].append(node.w)
        ends[key] = node.w
        chain.append(node.w)
        if nxt.kind != 'B':
            return ChainInfo(tuple(chain),
                             {k: tuple(p) for k, p in paths.items()}, nxt)
        node = nxt


def format_decomposition(d: ThreeTreeDecomp) -> str:
    lines: List[str] = []

    def rec(node: DecompNode, depth: int) -> None:
        pad = '  ' * depth
        u, v, z = node.corners
        if node.kind == 'empty':
            lines.append(f"{pad}({u},{v},{z}) empty")
            return
        lines.append(f"{pad}({u},{v},{z}) type={node.kind} w={node.w} "
                     f"m={node.m} a={node.a} b={node.b} c={node.c} "
                     f"d={node.d} h={node.h}")
        for k in node.children:
            rec(k, depth + 1)

    rec(d.root, 0)
    for chain in d.b_chains:
        lines.append("b-chain " + ",".join(str(v) for v in chain))
    return "\n".join(lines) + "\n"


# -- good curves inside a chord-filled cycle ---------------------------------------


class _Region:
    """The faces of ``g`` inside a cycle, their chord-dual tree, and lookups."""

    def __init__(self, g: PlaneGraph, cycle: Tuple[int, ...]):
        self.cycle = cycle
        k = len(cycle)
        self.cycle_edges = {edge_key(cycle[i], cycle[(i + 1) % k]) for i in range(k)}
        start = g.face_of_dart((cycle[0], cycle[1]))
        faces = {start}
        stack = [start]
        while stack:
            f = stack.pop()
            for (a, b) in g.faces[f]:
                if edge_key(a, b) in self.cycle_edges:
                    continue
                f2 = g.face_of_dart((b, a))
                if f2 not in faces:
                    faces.add(f2)
                    stack.append(f2)
        self.faces = faces
        self.adj: Dict[int, List[Tuple[Tuple[int, int], int]]] = {f: [] for f in faces}
        chords = set()
        for f in faces:
            for (a, b) in g.faces[f]:
                e = edge_key(a, b)
                if e in self.cycle_edges or e in chords:
                    continue
                f2 = g.face_of_dart((b, a))
                chords.add(e)
                self.adj[f].append((e, f2))
                self.adj[f2].append((e, f))
        self.chords = chords
        for f in faces:
            self.adj[f].sort()
        if len(faces) != len(chords) + 1:
            raise ThreeTreeError("cycle interior is not chord-filled "
                                 "(contains vertices)")
        self.vertex_faces: Dict[int, List[int]] = {}
        for f in sorted(faces):
            for v in g.face_vertices(f):
                self.vertex_faces.setdefault(v, []).append(f)

    def anchors(self, g: PlaneGraph, p: Station) -> List[int]:
        if p[0] == 'x':
            f1, f2 = g.faces_of_edge(*p[1])
            return sorted(f for f in (f1, f2) if f in self.faces)
        return sorted(self.vertex_faces.get(p[1], []))


def lemma1_chord(g: PlaneGraph, cycle: Sequence[int],
                 p1: Station, p2: Station) -> List[Station]:
    """Good curve between two boundary points of a chord-filled cycle.

    ``cycle`` lists the vertices with the filled side on the left of each
    consecutive dart.  ``p1``/``p2`` are boundary points: either a Vertex
    station for a cycle vertex or a Crossing station for a cycle edge.  The
    returned station list crosses exactly those chords that separate the two
    points around the cycle, once each -- what a straight segment does in a
    convex drawing of the cycle.
    """
    cycle = tuple(cycle)
    region = _Region(g, cycle)
    return _lemma1_with_region(g, region, p1, p2)


def _on_edges(region: _Region, p: Station) -> set:
    if p[0] == 'x':
        return {p[1]}
    v = p[1]
    return {e for e in region.cycle_edges if v in e}


def _lemma1_with_region(g: PlaneGraph, region: _Region,
                        p1: Station, p2: Station) -> List[Station]:
    if p1 == p2:
        raise ThreeTreeError(f"coincident end-points {p1}")
    if _on_edges(region, p1) & _on_edges(region, p2):
        raise ThreeTreeError(f"end-points {p1} and {p2} lie on the same edge")
    a1 = region.anchors(g, p1)
    a2 = region.anchors(g, p2)
    if not a1 or not a2:
        raise ThreeTreeError("end-point not on the cycle")
    dist = {f: 0 for f in a2}
    frontier = list(a2)
    while frontier:
        nxt = []
        for f in frontier:
            for (_, f2) in region.adj[f]:
                if f2 not in dist:
                    dist[f2] = dist[f] + 1
                    nxt.append(f2)
        frontier = nxt
    start = min(a1, key=lambda f: (dist[f], f))
    stations: List[Station] = [p1, Fst(start)]
    f = start
    while dist[f] > 0:
        e, f2 = min(((e, f2) for (e, f2) in region.adj[f] if dist[f2] == dist[f] - 1),
                    key=lambda t: t[1])
        stations.append(Xst(*e))
        stations.append(Fst(f2))
        f = f2
    stations.append(p2)
    return stations


# -- curve bundle ------------------------------------------------------------------


@dataclass
class CurveBundle:
    """Three proper good curves, one per corner of the outer triangle.

    ``lambda_u`` ends on the two outer edges at the first corner, and so on
    around the triangle.  ``s`` is the total vertex-visit count over the three
    curves (with multiplicity); ``x`` counts type-B internal vertices missed by
    all three.
    """
    lambda_u: GoodCurve
    lambda_v: GoodCurve
    lambda_z: GoodCurve

    s: int
    x: int

    @property
    def curves(self) -> Tuple[GoodCurve, GoodCurve, GoodCurve]:
        return (self.lambda_u, self.lambda_v, self.lambda_z)

    @property
    def best(self) -> GoodCurve:
        return max(self.curves, key=lambda c: c.vertex_count)


def _join(pieces: List[List[Station]]) -> List[Station]:
    """Concatenate curve pieces end to end, flipping as needed.

    Consecutive pieces must share an end station; the shared station is kept
    once (a shared Crossing becomes one proper crossing, a shared Vertex one
    visit).
    """
    pieces = [list(p) for p in pieces if p]
    out = pieces[0]
    if len(pieces) > 1 and out[-1] not in (pieces[1][0], pieces[1][-1]):
        out = out[::-1]
    for q in pieces[1:]:
        if out[-1] == q[-1]:
            q = q[::-1]
        if out[-1] != q[0]:
            raise AssertionError(f"pieces do not meet: {out[-1]} vs {q[0]}")
        out.extend(q[1:])
    return out


class _BundleBuilder:
    def __init__(self, d: ThreeTreeDecomp):
        self.d = d
        self.g = d.graph
        self._memo: Dict[Tuple[int, int], Tuple[Station, ...]] = {}
        self._regions: Dict[Tuple[int, ...], _Region] = {}
        self._chains: Dict[int, ChainInfo] = {}

    # the curve for ``corner`` runs from the crossing with the edge to the
    # next corner (counter-clockwise) to the crossing with the edge to the
    # previous corner.
    def curve(self, node: DecompNode, corner: int) -> List[Station]:
        key = (node.index, corner)
        if key not in self._memo:
            sts = self._build(node, corner)
            first = Xst(corner, node.corner_next(corner))
            last = Xst(corner, node.corner_prev(corner))
            if sts[0] != first:
                sts = sts[::-1]
            if sts[0] != first or sts[-1] != last:
                raise AssertionError(f"bad end-points for corner {corner}")
            self._memo[key] = tuple(sts)
        return list(self._memo[key])

    def _face(self, a: int, b: int, c: int) -> int:
        for f in self.g.faces_of_edge(a, b):
            if f != self.g.outer and set(self.g.face_vertices(f)) == {a, b, c}:
                return f
        raise AssertionError(f"no internal face ({a},{b},{c})")

    def _region(self, cycle: Tuple[int, ...]) -> _Region:
        if cycle not in self._regions:
            self._regions[cycle] = _Region(self.g, cycle)
        return self._regions[cycle]

    def _hop(self, cycle: Tuple[int, ...], p1: Station, p2: Station) -> List[Station]:
        return _lemma1_with_region(self.g, self._region(cycle), p1, p2)

    def chain_info(self, node: DecompNode) -> ChainInfo:
        if node.chain is not None:
            return node.chain
        if node.index not in self._chains:
            self._chains[node.index] = _chain_info(node)
        return self._chains[node.index]

    def _build(self, node: DecompNode, corner: int) -> List[Station]:
        u = corner
        v = node.corner_next(u)
        z = node.corner_prev(u)
        if node.kind == 'empty':
            return [Xst(u, v), Fst(self._face(u, v, z)), Xst(u, z)]
        w = node.w
        if node.kind == 'A':
            return [Xst(u, v), Fst(self._face(u, v, w)), Vst(w),
                    Fst(self._face(u, z, w)), Xst(u, z)]
        if node.kind in ('C', 'D'):
            g1 = node.child_on_edge(u, v)
            g2 = node.child_on_edge(z, u)
            g3 = node.child_on_edge(v, z)
            return _join([self.curve(g1, v), self.curve(g3, w), self.curve(g2, z)])
        return self._build_b(node, u, v, z)

    def _build_b(self, node: DecompNode, u: int, v: int, z: int) -> List[Station]:
        info = self.chain_info(node)
        paths = info.paths
        singles = [c for c in (u, v, z) if len(paths[c]) == 1]
        # rotate corner roles so the case analysis below sees the single
        # paths in standard position (role z single, or roles u and v single)
        roles = (u, v, z)
        if len(singles) == 1:
            while len(paths[roles[2]]) != 1:
                roles = (roles[1], roles[2], roles[0])
        elif len(singles) == 2:
            while len(paths[roles[2]]) == 1:
                roles = (roles[1], roles[2], roles[0])
        ru, rv, rz = roles
        pu, pv, pz = paths[ru], paths[rv], paths[rz]
        u_, v_, z_ = pu[-1], pv[-1], pz[-1]
        tail = info.tail
        c_uv = (ru,) + pv + tuple(reversed(pu[1:]))
        c_uz = (rz,) + pu + tuple(reversed(pz[1:]))
        c_vz = (rv,) + pz + tuple(reversed(pv[1:]))

        def interior_run(p: Tuple[int, ...]) -> List[Station]:
            return [Vst(x) for x in p[1:-1]]

        if not singles:
            lam = {}
            if len(pz) > 2:
                lam[ru] = _join([
                    self._hop(c_uz, Xst(ru, rz), Vst(pz[1])),
                    interior_run(pz),
                    self._hop(c_vz, Vst(pz[-2]), Xst(v_, z_)),
                    self.curve(tail, v_),
                    self._hop(c_uv, Xst(u_, v_), Xst(ru, rv))])
            else:
                lam[ru] = _join([
                    self._hop(c_uz, Xst(ru, rz), Xst(rz, z_)),
                    self._hop(c_vz, Xst(rz, z_), Xst(v_, z_)),
                    self.curve(tail, v_),
                    self._hop(c_uv, Xst(u_, v_), Xst(ru, rv))])
            if len(pu) > 2:
                lam[rv] = _join([
                    self._hop(c_uv, Xst(ru, rv), Vst(pu[1])),
                    interior_run(pu),
                    self._hop(c_uz, Vst(pu[-2]), Xst(u_, z_)),
                    self.curve(tail, z_),
                    self._hop(c_vz, Xst(v_, z_), Xst(rv, rz))])
            else:
                lam[rv] = _join([
                    self._hop(c_uv, Xst(ru, rv), Xst(ru, u_)),
                    self._hop(c_uz, Xst(ru, u_), Xst(u_, z_)),
                    self.curve(tail, z_),
                    self._hop(c_vz, Xst(v_, z_), Xst(rv, rz))])
            if len(pv) > 2:
                lam[rz] = _join([
                    self._hop(c_vz, Xst(rv, rz), Vst(pv[1])),
                    interior_run(pv),
                    self._hop(c_uv, Vst(pv[-2]), Xst(u_, v_)),
                    self.curve(tail, u_),
                    self._hop(c_uz, Xst(u_, z_), Xst(ru, rz))])
            else:
                lam[rz] = _join([
                    self._hop(c_vz, Xst(rv, rz), Xst(rv, v_)),
                    self._hop(c_uv, Xst(rv, v_), Xst(u_, v_)),
                    self.curve(tail, u_),
                    self._hop(c_uz, Xst(u_, z_), Xst(ru, rz))])
            return lam[u]
        if len(singles) == 1:
            # role z is the single path (z_ == rz)
            lam = {rz: _join([
                self._hop(c_uz, Xst(ru, rz), Xst(u_, rz)),
                self.curve(tail, rz),
                self._hop(c_vz, Xst(v_, rz), Xst(rv, rz))])}
            if len(pv) > 2:
                lam[ru] = _join([
                    self._hop(c_uv, Xst(ru, rv), Vst(pv[1])),
                    interior_run(pv),
                    self._hop(c_uv, Vst(pv[-2]), Xst(u_, v_)),
                    self.curve(tail, u_),
                    self._hop(c_uz, Xst(u_, rz), Xst(ru, rz))])
            else:
                lam[ru] = _join([
                    self._hop(c_uv, Xst(ru, rv), Xst(u_, v_)),
                    self.curve(tail, u_),
                    self._hop(c_uz, Xst(u_, rz), Xst(ru, rz))])
            if len(pu) > 2:
                lam[rv] = _join([
                    self._hop(c_uv, Xst(ru, rv), Vst(pu[1])),
                    interior_run(pu),
                    self._hop(c_uv, Vst(pu[-2]), Xst(u_, v_)),
                    self.curve(tail, v_),
                    self._hop(c_vz, Xst(v_, rz), Xst(rv, rz))])
            else:
                lam[rv] = _join([
                    self._hop(c_uv, Xst(ru, rv), Xst(u_, v_)),
                    self.curve(tail, v_),
                    self._hop(c_vz, Xst(v_, rz), Xst(rv, rz))])
            return lam[u]
        # roles u and v are single paths (u_ == ru, v_ == rv)
        lam = {rz: _join([
            self._hop(c_uz, Xst(ru, rz), Xst(ru, z_)),
            self.curve(tail, z_),
            self._hop(c_vz, Xst(rv, z_), Xst(rv, rz))])}
        if len(pz) > 2:
            lam[ru] = _join([
                self._hop(c_uz, Xst(ru, rz), Vst(pz[1])),
                interior_run(pz),
                self._hop(c_vz, Vst(pz[-2]), Xst(rv, z_)),
                self.curve(tail, rv)])
            lam[rv] = _join([
                self._hop(c_vz, Xst(rv, rz), Vst(pz[1])),
                interior_run(pz),
                self._hop(c_uz, Vst(pz[-2]), Xst(ru, z_)),
                self.curve(tail, ru)])
        else:
            lam[ru] = _join([
                self._hop(c_uz, Xst(ru, rz), Xst(rz, z_)),
                self._hop(c_vz, Xst(rz, z_), Xst(rv, z_)),
                self.curve(tail, rv)])
            lam[rv] = _join([
                self._hop(c_vz, Xst(rv, rz), Xst(rz, z_)),
                self._hop(c_uz, Xst(rz, z_), Xst(ru, z_)),
                self.curve(tail, ru)])
        return lam[u]

    def node_bundle(self, node: DecompNode) -> CurveBundle:
        curves = [GoodCurve(tuple(self.curve(node, c))) for c in node.corners]
        s = sum(c.vertex_count for c in curves)
        on_any = set().union(*(c.vertices for c in curves))
        x = sum(1 for vv in node.interior
                if self.d.vertex_type(vv) == 'B' and vv not in on_any)
        return CurveBundle(curves[0], curves[1], curves[2], s, x)


def build_curve_bundle(d: ThreeTreeDecomp) -> CurveBundle:
    """Three validated proper good curves for the whole graph."""
    _bump_recursion(d.graph.n)
    cb = _BundleBuilder(d).node_bundle(d.root)
    for lam in cb.curves:
        rep = validate_curve(d.graph, lam)
        if not rep.good or not rep.proper:
            raise AssertionError(f"constructed curve is not proper good: "
                                 f"{rep.violations}")
    return cb


@dataclass
class Lemma3Report:
    items: List[Tuple[str, bool, str]]
    ok: bool
    first_violation: Optional[str]


def check_lemma3(d: ThreeTreeDecomp, cb: CurveBundle,
                 node: Optional[DecompNode] = None) -> Lemma3Report:
    """Audit the six counting (in)equalities tying a bundle to its node."""
    n = node if node is not None else d.root
    checks = [("1: a+b+c+d = m", n.a + n.b + n.c + n.d == n.m,
               f"{n.a}+{n.b}+{n.c}+{n.d} vs {n.m}")]
    if n.m >= 1:
        checks.append(("2: a = c+2d+1", n.a == n.c + 2 * n.d + 1,
                       f"{n.a} vs {n.c}+2*{n.d}+1"))
        checks.append(("3: h <= 2c+3d+1", n.h <= 2 * n.c + 3 * n.d + 1,
                       f"{n.h} vs 2*{n.c}+3*{n.d}+1"))
    checks.append(("4: x <= b", cb.x <= n.b, f"{cb.x} vs {n.b}"))
    checks.append(("5: x <= 3h", cb.x <= 3 * n.h, f"{cb.x} vs 3*{n.h}"))
    checks.append(("6: s >= 3a+b-x", cb.s >= 3 * n.a + n.b - cb.x,
                   f"{cb.s} vs 3*{n.a}+{n.b}-{cb.x}"))
    checks.append(("bound: 8s >= 3m", 8 * cb.s >= 3 * n.m,
                   f"8*{cb.s} vs 3*{n.m}"))
    first = next((name for name, ok, _ in checks if not ok), None)
    return Lemma3Report([(nm, ok, det) for nm, ok, det in checks],
                        first is None, first)


# -- six-signature optimum ---------------------------------------------------------

# A proper good curve meets a triangle boundary in one of six ways: crossing
# two of the three edges, or ending at a corner and crossing the opposite
# edge.  Signature keys: ('ee', e1, e2) with e1 < e2, and ('ve', corner).

Sig = Tuple


def _sigs(tri: Tuple[int, int, int]) -> List[Sig]:
    a, b, c = tri
    e = [edge_key(a, b), edge_key(b, c), edge_key(c, a)]
    out: List[Sig] = []
    for i in range(3):
        for j in range(i + 1, 3):
            out.append(('ee',) + tuple(sorted((e[i], e[j]))))
    for v in tri:
        out.append(('ve', v))
    return out


@dataclass
class DpTable:
    entries: Dict[int, Dict[Sig, int]]
    _routes: Dict[Tuple[int, Sig], Tuple] = field(default_factory=dict, repr=False)

    def at(self, node: DecompNode) -> Dict[Sig, int]:
        return self.entries[node.index]


def _dp_node(node: DecompNode, table: DpTable) -> None:
    u, v, z = node.corners
    ent: Dict[Sig, int] = {}
    routes = table._routes
    if node.kind == 'empty':
        for sig in _sigs(node.corners):
            ent[sig] = 0
            routes[(node.index, sig)] = ('base',)
        table.entries[node.index] = ent
        return
    w = node.w
    a1 = node.child_on_edge(u, v)       # triangle (u, v, w)
    a2 = node.child_on_edge(z, u)       # triangle (z, u, w)
    a3 = node.child_on_edge(v, z)       # triangle (v, z, w)
    euv, evz, ezu = edge_key(u, v), edge_key(v, z), edge_key(z, u)
    su, sv, sz = edge_key(u, w), edge_key(v, w), edge_key(z, w)

    def ee(e, f) -> Sig:
        return ('ee',) + tuple(sorted((e, f)))

    def best(sig: Sig, options) -> None:
        val, route = max(options, key=lambda t: t[0])
        ent[sig] = val
        routes[(node.index, sig)] = route

    # two boundary edges sharing a corner: around the corner-side child pair,
    # the long way through all three children, or through the hub vertex.
    for (ea, eb, ca, cb, cc) in (
            (euv, ezu, a1, a2, a3),     # edges at u
            (euv, evz, a1, a3, a2),     # edges at v
            (evz, ezu, a3, a2, a1)):    # edges at z
        sa = edge_key(_shared_corner(ea, eb), w)
        # the spoke between the two other children is the one avoiding
        # the shared corner entirely
        others = {su, sv, sz} - {sa}
        sb = next(s for s in sorted(others) if _touches(s, ea, (u, v, z), w))
        sc = next(s for s in sorted(others) if s != sb)
        ta, tb, tc = table.entries[ca.index], table.entries[cb.index], table.entries[cc.index]
        best(ee(ea, eb), [
            (ta[ee(ea, sa)] + tb[ee(sa, eb)],
             ('seq', (ca, ee(ea, sa)), (cb, ee(sa, eb)))),
            (ta[ee(ea, sb)] + tc[ee(sb, sc)] + tb[ee(sc, eb)],
             ('seq', (ca, ee(ea, sb)), (cc, ee(sb, sc)), (cb, ee(sc, eb)))),
            (ta[('ve', w)] + 1 + tb[('ve', w)],
             ('seq', (ca, ('ve', w)), (cb, ('ve', w)))),
        ])
    # a corner plus the opposite edge: out through either adjacent child and
    # across the far one, or along the contained spoke to the hub.
    for (corner, eopp, ca, cb, cc, sa, sb) in (
            (u, evz, a1, a2, a3, sv, sz),
            (v, ezu, a1, a3, a2, su, sz),
            (z, euv, a2, a3, a1, su, sv)):
        ta, tb, tc = table.entries[ca.index], table.entries[cb.index], table.entries[cc.index]
        best(('ve', corner), [
            (ta[('ve', corner)] + tc[ee(sa, eopp)],
             ('seq', (ca, ('ve', corner)), (cc, ee(sa, eopp)))),
            (tb[('ve', corner)] + tc[ee(sb, eopp)],
             ('seq', (cb, ('ve', corner)), (cc, ee(sb, eopp)))),
            (1 + tc[('ve', w)],
             ('spoke', corner, (cc, ('ve', w)))),
        ])
    table.entries[node.index] = ent


def _shared_corner(ea: Tuple[int, int], eb: Tuple[int, int]) -> int:
    (s,) = set(ea) & set(eb)
    return s


def _touches(spoke, edge, corners, w) -> bool:
    (c,) = set(spoke) - {w}
    return c in edge


class _DpReconstructor:
    def __init__(self, d: ThreeTreeDecomp, table: DpTable):
        self.d = d
        self.g = d.graph
        self.table = table

    def _face(self, tri: Tuple[int, int, int]) -> int:
        a, b, c = tri
        for f in self.g.faces_of_edge(a, b):
            if f != self.g.outer and set(self.g.face_vertices(f)) == {a, b, c}:
                return f
        raise AssertionError(f"no internal face {tri}")

    def rec(self, node: DecompNode, sig: Sig) -> List[Station]:
        route = self.table._routes[(node.index, sig)]
        if route[0] == 'base':
            f = Fst(self._face(node.corners))
            if sig[0] == 'ee':
                return [Xst(*sig[1]), f, Xst(*sig[2])]
            corner = sig[1]
            opp = edge_key(node.corner_next(corner), node.corner_prev(corner))
            return [Vst(corner), f, Xst(*opp)]
        if route[0] == 'spoke':
            corner = route[1]
            child, csig = route[2]
            return _join([[Vst(corner), Vst(node.w)], self.rec(child, csig)])
        pieces = [self.rec(child, csig) for (child, csig) in route[1:]]
        return _join(pieces)


def dp_optimal_collinear(d: ThreeTreeDecomp) -> Tuple[DpTable, GoodCurve, int]:
    """Exact maximum number of vertices on a proper good curve.

    Computes, bottom-up over the decomposition, the best number of interior
    vertices reachable by a curve arc for each of the six ways the arc can
    meet a triangle boundary, then closes the recursion at the outer triangle
    (where a corner end-point adds the corner itself, and walking along one
    outer edge visits two vertices with no arc at all).
    """
    _bump_recursion(d.graph.n)
    table = DpTable({})
    for node in sorted(d.nodes, key=lambda n: -n.index):
        _dp_node(node, table)
    root = d.root
    u, v, z = root.corners
    ent = table.entries[root.index]
    cands: List[Tuple[int, Tuple]] = []
    for sig in _sigs(root.corners):
        if sig[0] == 'ee':
            cands.append((ent[sig], ('arc', sig)))
        else:
            cands.append((ent[sig] + 1, ('arc', sig)))
    cands.append((2, ('edgewalk', edge_key(u, v))))
    val, plan = cands[0]
    for cval, cplan in cands[1:]:
        if cval > val:
            val, plan = cval, cplan
    if plan[0] == 'edgewalk':
        stations: List[Station] = [Vst(plan[1][0]), Vst(plan[1][1])]
    else:
        stations = _DpReconstructor(d, table).rec(root, plan[1])
    curve = GoodCurve(tuple(stations))
    rep = validate_curve(d.graph, curve)
    if not (rep.good and rep.proper and rep.vertex_count_on_curve == val):
        raise AssertionError(
            f"reconstructed optimum failed validation: count "
            f"{rep.vertex_count_on_curve} vs {val}, good={rep.good}, "
            f"proper={rep.proper}, violations={rep.violations}")
    return table, curve, val


def max_internal_collinear(d: ThreeTreeDecomp) -> int:
    """Maximum number of *internal* vertices on a proper good curve."""
    table, _, _ = dp_optimal_collinear(d)
    return max(table.entries[d.root.index].values())


# -- augmentation ------------------------------------------------------------------


def augment_to_plane_3tree(g: PlaneGraph) -> Tuple[PlaneGraph, FrozenSet[Tuple[int, int]]]:
    """Ear-clip every face into triangles, then demand a stacked structure.

    Returns the augmented graph and the set of inserted edges (so drawings can
    drop them again).  Raises ThreeTreeError with the blocking face or the
    failing triangle when the input fits no plane 3-tree with this embedding.
    """
    if g.n < 3:
        raise ThreeTreeError("need at least 3 vertices")
    rot = {vv: list(nbrs) for vv, nbrs in g.rot.items()}
    adj = {vv: set(nbrs) for vv, nbrs in g.rot.items()}
    added: List[Tuple[int, int]] = []

    def clip(walk: List[int]) -> List[int]:
        while len(walk) > 3:
            for j in range(len(walk)):
                x, y = walk[j - 1], walk[(j + 1) % len(walk)]
                if x == y or y in adj[x]:
                    continue
                mid = walk[j]
                rot[x].insert(rot[x].index(mid), y)
                rot[y].insert(rot[y].index(walk[(j + 2) % len(walk)]), x)
                adj[x].add(y)
                adj[y].add(x)
                added.append(edge_key(x, y))
                del walk[j]
                break
            else:
                raise ThreeTreeError(
                    f"face {walk} cannot be triangulated without parallel "
                    f"edges: no plane 3-tree contains this embedding")
        return walk

    order = [g.outer] + sorted(g.internal_faces(), key=g.face_key)
    outer_walk = list(g.outer_walk())
    for i in order:
        walk = list(g.face_vertices(i))
        if len(set(walk)) != len(walk):
            raise ThreeTreeError(
                f"face walk {walk} revisits a vertex (cut vertex): "
                f"no plane 3-tree contains this embedding")
        final = clip(walk)
        if i == g.outer:
            outer_walk = final
    if not added:
        result = g
    else:
        result = PlaneGraph(rot, outer_walk=tuple(outer_walk))
    try:
        decompose(result)
    except ThreeTreeError as exc:
        raise ThreeTreeError(
            f"triangulated embedding is not a stacked triangulation: {exc}")
    return result, frozenset(added)


# -- generation --------------------------------------------------------------------


def random_plane_3tree(n: int, seed: int = 0) -> PlaneGraph:
    """Uniformly random stacking order; deterministic for a given seed."""
    if n < 3:
        raise ThreeTreeError("need at least 3 vertices")
    rng = random.Random(seed)
    rot: Dict[int, List[int]] = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    faces: List[Tuple[int, int, int]] = [(0, 2, 1)]   # ccw internal walks
    for w in range(3, n):
        f0, f1, f2 = faces.pop(rng.randrange(len(faces)))
        rot[w] = [f2, f1, f0]
        for vv, succ in ((f0, f1), (f1, f2), (f2, f0)):
            rot[vv].insert(rot[vv].index(succ), w)
        faces.extend([(f0, f1, w), (f1, f2, w), (f2, f0, w)])
    return PlaneGraph(rot, outer_walk=(0, 1, 2))
