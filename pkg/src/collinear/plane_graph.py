"""Plane graphs as rotation systems with a designated outer face.

A plane graph is a connected simple graph together with, for every vertex, the
cyclic *clockwise* order of its neighbours, plus one traced face designated as
the outer (unbounded) face.  Faces are traced with the convention

    next dart after (u, v) = (v, w)   where w follows u clockwise at v,

which makes internal face walks counter-clockwise and the outer walk clockwise
in any faithful drawing.  Counter-clockwise rotation input is rejected: if the
declared outer walk only matches a traced face in reverse, parsing fails with
an orientation hint.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

Dart = Tuple[int, int]
Edge = FrozenSet[int]


class PlaneGraphError(ValueError):
    """Raised for malformed rotation systems, non-planar input, bad walks."""


def edge_key(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u <= v else (v, u)


class PlaneGraph:
    """Immutable rotation-system plane graph.

    Parameters
    ----------
    rot:
        Mapping vertex -> clockwise sequence of neighbours.
    outer_walk:
        Vertex sequence of the outer face boundary walk (any starting point,
        forward orientation).  Exactly one of outer_walk / outer_face must be
        given.
    outer_face:
        Index into the traced face list.
    """

    __slots__ = ("rot", "n", "m", "faces", "outer", "_face_of_dart",
                 "_vertex_list", "_edge_set", "_vindex")

    def __init__(self, rot: Mapping[int, Sequence[int]],
                 outer_walk: Optional[Sequence[int]] = None,
                 outer_face: Optional[int] = None):
        self.rot: Dict[int, Tuple[int, ...]] = {}
        for v, nbrs in rot.items():
            t = tuple(nbrs)
            if v in t:
                raise PlaneGraphError(f"self-loop at vertex {v}")
            if len(set(t)) != len(t):
                raise PlaneGraphError(f"duplicate neighbour in rotation of {v}")
            self.rot[int(v)] = t
        self._vertex_list = tuple(sorted(self.rot))
        self._vindex = {v: i for i, v in enumerate(self._vertex_list)}
        for v, nbrs in self.rot.items():
            for w in nbrs:
                if w not in self.rot or v not in self.rot[w]:
                    raise PlaneGraphError(f"rotation not symmetric at edge ({v},{w})")
        self.n = len(self._vertex_list)
        if self.n == 0:
            raise PlaneGraphError("empty graph")
        self.m = sum(len(nbrs) for nbrs in self.rot.values()) // 2
        self._edge_set = frozenset(edge_key(v, w)
                                   for v in self.rot for w in self.rot[v])
        if not self._connected():
            raise PlaneGraphError("graph is not connected")
        self.faces = self._trace_faces()
        self._face_of_dart = {}
        for i, walk in enumerate(self.faces):
            for d in walk:
                self._face_of_dart[d] = i
        if self.n - self.m + len(self.faces) != 2:
            raise PlaneGraphError(
                "rotation system is not planar (Euler check failed: "
                f"V-E+F = {self.n}-{self.m}+{len(self.faces)} != 2)")
        if (outer_walk is None) == (outer_face is None):
            raise PlaneGraphError("exactly one of outer_walk / outer_face required")
        if outer_face is not None:
            if not (0 <= outer_face < len(self.faces)):
                raise PlaneGraphError("outer face index out of range")
            self.outer = outer_face
        else:
            self.outer = self._resolve_outer(tuple(outer_walk))

    # -- construction helpers -------------------------------------------------

    def _connected(self) -> bool:
        seen = {self._vertex_list[0]}
        stack = [self._vertex_list[0]]
        while stack:
            v = stack.pop()
            for w in self.rot[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def _trace_faces(self) -> Tuple[Tuple[Dart, ...], ...]:
        nxt_idx = {v: {w: i for i, w in enumerate(nbrs)}
                   for v, nbrs in self.rot.items()}
        unused = {(v, w) for v in self.rot for w in self.rot[v]}
        faces: List[Tuple[Dart, ...]] = []
        for d0 in sorted(unused):
            if d0 not in unused:
                continue
            walk = []
            d = d0
            while True:
                walk.append(d)
                unused.discard(d)
                u, v = d
                nbrs = self.rot[v]
                i = nxt_idx[v][u]
                d = (v, nbrs[(i + 1) % len(nbrs)])
                if d == d0:
                    break
            faces.append(tuple(walk))
        return tuple(faces)

    def _resolve_outer(self, walk: Tuple[int, ...]) -> int:
        want = tuple(walk)
        for i, fwalk in enumerate(self.faces):
            seq = tuple(d[0] for d in fwalk)
            if len(seq) == len(want) and _cyclic_eq(seq, want):
                return i
        for i, fwalk in enumerate(self.faces):
            seq = tuple(d[0] for d in fwalk)
            if len(seq) == len(want) and _cyclic_eq(seq, tuple(reversed(want))):
                raise PlaneGraphError(
                    "declared outer walk matches a face only in reverse: "
                    "rotations appear to be counter-clockwise; this parser "
                    "requires clockwise neighbour order")
        raise PlaneGraphError(f"declared outer-face walk {list(walk)} is not a traced face")

    # -- basic queries ---------------------------------------------------------

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertex_list

    @property
    def edges(self) -> FrozenSet[Tuple[int, int]]:
        return self._edge_set

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edge_set

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.rot[v]

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def face_of_dart(self, d: Dart) -> int:
        return self._face_of_dart[d]

    def faces_of_edge(self, u: int, v: int) -> Tuple[int, int]:
        return (self._face_of_dart[(u, v)], self._face_of_dart[(v, u)])

    def face_vertices(self, i: int) -> Tuple[int, ...]:
        return tuple(d[0] for d in self.faces[i])

    def face_key(self, i: int) -> Tuple[int, ...]:
        """Canonical face key: lexicographically least rotation of the vertex walk."""
        return _min_rotation(self.face_vertices(i))

    def face_by_key(self, key: Sequence[int]) -> int:
        want = _min_rotation(tuple(key))
        for i in range(len(self.faces)):
            if self.face_key(i) == want:
                return i
        raise PlaneGraphError(f"no face with walk {list(key)}")

    def internal_faces(self) -> Tuple[int, ...]:
        return tuple(i for i in range(len(self.faces)) if i != self.outer)

    def outer_walk(self) -> Tuple[int, ...]:
        """Clockwise vertex walk of the outer face."""
        return self.face_vertices(self.outer)

    def with_outer(self, face: int) -> "PlaneGraph":
        """Same embedding, different designated outer face."""
        return PlaneGraph(self.rot, outer_face=face)

    def dual_edges(self) -> List[Tuple[int, int, Tuple[int, int]]]:
        """(face_i, face_j, primal edge) for every edge of the graph."""
        out = []
        for (u, v) in sorted(self._edge_set):
            out.append((self._face_of_dart[(u, v)], self._face_of_dart[(v, u)], (u, v)))
        return out

    # -- outer boundary walks --------------------------------------------------

    def boundary_path(self, u: int, v: int, clockwise: bool) -> Tuple[int, ...]:
        """Walk along the outer boundary from u to v.

        ``clockwise=True`` follows the traced outer walk direction; ``False``
        follows it against the tracing (counter-clockwise).  Both u and v must
        occur on the outer walk; the first occurrence of u is used.
        """
        seq = self.outer_walk()
        if not clockwise:
            seq = tuple(reversed(seq))
        if u not in seq or v not in seq:
            raise PlaneGraphError(f"{u} or {v} not on outer boundary")
        i = seq.index(u)
        out = [u]
        j = i
        for _ in range(len(seq)):
            j = (j + 1) % len(seq)
            out.append(seq[j])
            if seq[j] == v:
                return tuple(out)
        raise PlaneGraphError(f"no outer walk from {u} to {v}")

    # -- connectivity ----------------------------------------------------------

    def _adj_masks(self) -> List[int]:
        idx = self._vindex
        masks = [0] * self.n
        for v in self._vertex_list:
            mask = 0
            for w in self.rot[v]:
                mask |= 1 << idx[w]
            masks[idx[v]] = mask
        return masks

    def _is_connected_without(self, removed: Iterable[int]) -> bool:
        idx = self._vindex
        blocked = 0
        for v in removed:
            blocked |= 1 << idx[v]
        alive = ((1 << self.n) - 1) & ~blocked
        if alive == 0:
            return True
        masks = self._adj_masks()
        start = alive & -alive
        reached = start
        frontier = start
        while frontier:
            nxt = 0
            mm = frontier
            while mm:
                b = mm & -mm
                nxt |= masks[b.bit_length() - 1]
                mm ^= b
            frontier = nxt & alive & ~reached
            reached |= frontier
        return reached == alive

    def is_biconnected(self) -> bool:
        if self.n < 3:
            return False
        return all(self._is_connected_without([v]) for v in self._vertex_list)

    def is_triconnected(self) -> bool:
        if self.n < 4:
            return False
        return self.is_biconnected() and not self.separation_pairs()

    def separation_pairs(self) -> List[Tuple[int, int]]:
        """All pairs {a,b} whose removal disconnects the graph (exhaustive)."""
        out = []
        vs = self._vertex_list
        masks = self._adj_masks()
        full = (1 << self.n) - 1
        for i in range(self.n):
            for j in range(i + 1, self.n):
                blocked = (1 << i) | (1 << j)
                alive = full & ~blocked
                if alive == 0:
                    continue
                start = alive & -alive
                reached = start
                frontier = start
                while frontier:
                    nxt = 0
                    mm = frontier
                    while mm:
                        b = mm & -mm
                        nxt |= masks[b.bit_length() - 1]
                        mm ^= b
                    frontier = nxt & alive & ~reached
                    reached |= frontier
                if reached != alive:
                    out.append((vs[i], vs[j]))
        return out

    def components_without(self, removed: Iterable[int]) -> List[FrozenSet[int]]:
        removed = set(removed)
        seen = set(removed)
        comps = []
        for s in self._vertex_list:
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            seen.add(s)
            while stack:
                v = stack.pop()
                for w in self.rot[v]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def h_bridges(self, h_vertices: Iterable[int],
                  h_edges: Iterable[Tuple[int, int]]) -> List["HBridge"]:
        """Bridges of the graph relative to subgraph H.

        A trivial bridge is an edge outside H joining two H-vertices; a
        non-trivial bridge is a component C of G - V(H) together with its
        attachment vertices in H.
        """
        hv = set(h_vertices)
        he = {edge_key(*e) for e in h_edges}
        out = []
        for (a, b) in sorted(self._edge_set):
            if a in hv and b in hv and edge_key(a, b) not in he:
                out.append(HBridge(frozenset(), frozenset((a, b)), True))
        for comp in self.components_without(hv):
            att = frozenset(w for v in comp for w in self.rot[v] if w in hv)
            out.append(HBridge(comp, att, False))
        return out

    # -- subgraphs -------------------------------------------------------------

    def subgraph(self, vertices: Optional[Iterable[int]] = None,
                 drop_edges: Iterable[Tuple[int, int]] = ()) -> "PlaneGraph":
        """Connected subgraph with inherited embedding.

        Keeps the induced rotation order on ``vertices`` (default: all), minus
        ``drop_edges``.  The outer face of the result is the face whose region
        contains the parent's outer region (face-merge union-find); it must be
        unique or a PlaneGraphError is raised.
        """
        keep = set(self._vertex_list if vertices is None else vertices)
        dropped = {edge_key(*e) for e in drop_edges}
        rot = {}
        for v in sorted(keep):
            nbrs = tuple(w for w in self.rot[v]
                         if w in keep and edge_key(v, w) not in dropped)
            rot[v] = nbrs
        # union-find over parent faces
        parent = list(range(len(self.faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for (a, b) in self._edge_set:
            gone = (a not in keep or b not in keep or edge_key(a, b) in dropped)
            if gone:
                union(self._face_of_dart[(a, b)], self._face_of_dart[(b, a)])
        outer_class = find(self.outer)
        sub = PlaneGraph(rot, outer_face=0)  # provisional outer, fixed below
        cands = []
        for i, walk in enumerate(sub.faces):
            classes = {find(self._face_of_dart[d]) for d in walk}
            if len(classes) != 1:
                raise PlaneGraphError("inherited embedding is inconsistent")
            if classes.pop() == outer_class:
                cands.append(i)
        if len(cands) != 1:
            raise PlaneGraphError(
                f"outer face of subgraph is ambiguous ({len(cands)} candidates)")
        if cands[0] == 0:
            return sub
        return PlaneGraph(rot, outer_face=cands[0])

    def delete_edge(self, u: int, v: int) -> "PlaneGraph":
        return self.subgraph(drop_edges=[(u, v)])

    # -- misc ------------------------------------------------------------------

    def is_triangulation(self) -> bool:
        return all(len(w) == 3 for i, w in enumerate(self.faces))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.m}, faces={len(self.faces)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, PlaneGraph) and self.rot == other.rot
                and self.face_key(self.outer) == other.face_key(other.outer))

    def __hash__(self):
        return hash((tuple(sorted(self.rot.items())), self.face_key(self.outer)))


class HBridge:
    __slots__ = ("vertices", "attachments", "trivial")

    def __init__(self, vertices: FrozenSet[int], attachments: FrozenSet[int],
                 trivial: bool):
        self.vertices = vertices
        self.attachments = attachments
        self.trivial = trivial

    def __repr__(self):
        kind = "trivial" if self.trivial else "nontrivial"
        return f"HBridge({kind}, verts={sorted(self.vertices)}, att={sorted(self.attachments)})"


def _cyclic_eq(a: Tuple, b: Tuple) -> bool:
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    doubled = a + a
    for i in range(len(a)):
        if doubled[i:i + len(b)] == b:
            return True
    return False


def _min_rotation(seq: Tuple) -> Tuple:
    if not seq:
        return seq
    best = seq
    for i in range(1, len(seq)):
        cand = seq[i:] + seq[:i]
        if cand < best:
            best = cand
    return best


# -- construction from exact coordinates -----------------------------------------

def graph_from_positions(pos: Mapping[int, Tuple], edges: Iterable[Tuple[int, int]],
                         outer_vertices: Optional[Iterable[int]] = None) -> PlaneGraph:
    """Plane graph induced by an exact straight-line drawing.

    Rotations are the clockwise angular orders around each vertex (exact
    rational comparisons, no floats).  The outer face is found by signed area
    (the clockwise walk), or by its vertex set if ``outer_vertices`` is given.
    """
    from functools import cmp_to_key

    adj: Dict[int, List[int]] = {v: [] for v in pos}
    for (a, b) in edges:
        adj[a].append(b)
        adj[b].append(a)

    def make_cmp(v):
        px, py = pos[v]

        def half(w):
            dx, dy = pos[w][0] - px, pos[w][1] - py
            return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

        def cmp(w1, w2):
            h1, h2 = half(w1), half(w2)
            if h1 != h2:
                return h1 - h2
            d1 = (pos[w1][0] - px, pos[w1][1] - py)
            d2 = (pos[w2][0] - px, pos[w2][1] - py)
            cr = d1[0] * d2[1] - d1[1] * d2[0]
            if cr == 0:
                raise PlaneGraphError(f"coincident edge directions at vertex {v}")
            return -1 if cr > 0 else 1
        return cmp

    rot = {}
    for v, ws in adj.items():
        ccw = sorted(ws, key=cmp_to_key(make_cmp(v)))
        rot[v] = tuple(reversed(ccw))
    g = PlaneGraph(rot, outer_face=0)

    def clockwise_faces(pool):
        out = []
        for i in pool:
            area2 = sum(pos[a][0] * pos[b][1] - pos[a][1] * pos[b][0]
                        for (a, b) in g.faces[i])
            if area2 < 0:
                out.append(i)
        return out

    if outer_vertices is not None:
        want = frozenset(outer_vertices)
        cands = [i for i in range(len(g.faces))
                 if frozenset(g.face_vertices(i)) == want]
        if len(cands) > 1:
            cands = clockwise_faces(cands)
    else:
        cands = clockwise_faces(range(len(g.faces)))
    if len(cands) != 1:
        raise PlaneGraphError(f"outer face not unique ({len(cands)} candidates)")
    return g if cands[0] == g.outer else g.with_outer(cands[0])


def canonical_code(g: PlaneGraph) -> Tuple:
    """Canonical form of the embedded graph with its outer face.

    Two plane graphs get equal codes iff some orientation-preserving,
    outer-face-preserving isomorphism maps one to the other.  The code is the
    minimum, over the outer face's darts as BFS roots, of a rotation-aware
    breadth-first relabelling.
    """
    return min(_rooted_code(g, d) for d in g.faces[g.outer])


def _rooted_code(g: PlaneGraph, root_dart: Dart) -> Tuple:
    u0, v0 = root_dart
    label = {u0: 0}
    order = [u0]
    ref = {u0: v0}
    code = []
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        nbrs = g.rot[v]
        k = nbrs.index(ref[v])
        row = []
        for w in nbrs[k:] + nbrs[:k]:
            if w not in label:
                label[w] = len(order)
                order.append(w)
                ref[w] = v
            row.append(label[w])
        code.append(tuple(row))
    return tuple(code)


# -- interchange format --------------------------------------------------------

def parse_plane_graph(text: str) -> PlaneGraph:
    """Parse the plane-graph interchange format.

    Format::

        planegraph <n>
        rot <v>: <w1> <w2> ...   # clockwise neighbour order, one line per vertex
        outer: <v1> ... <vk>     # one outer-face boundary walk

    ``#`` starts a comment; blank lines are ignored.  Vertex ids must be the
    dense range 0..n-1.
    """
    n = None
    rot: Dict[int, List[int]] = {}
    outer = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("planegraph"):
            parts = line.split()
            if len(parts) != 2:
                raise PlaneGraphError(f"bad header line: {raw!r}")
            n = int(parts[1])
        elif line.startswith("rot"):
            head, _, rest = line.partition(":")
            v = int(head.split()[1])
            if v in rot:
                raise PlaneGraphError(f"duplicate rotation line for vertex {v}")
            rot[v] = [int(x) for x in rest.split()]
        elif line.startswith("outer"):
            _, _, rest = line.partition(":")
            outer = [int(x) for x in rest.split()]
        else:
            raise PlaneGraphError(f"unrecognized line: {raw!r}")
    if n is None:
        raise PlaneGraphError("missing 'planegraph <n>' header")
    if outer is None:
        raise PlaneGraphError("missing 'outer:' line")
    if sorted(rot) != list(range(n)):
        raise PlaneGraphError("vertex ids must be exactly 0..n-1")
    return PlaneGraph(rot, outer_walk=outer)


def serialize_plane_graph(g: PlaneGraph) -> str:
    """Serialize; round-trips bit-exactly through parse_plane_graph."""
    if g.vertices != tuple(range(g.n)):
        raise PlaneGraphError("serialization requires dense vertex ids 0..n-1")
    lines = [f"planegraph {g.n}"]
    for v in g.vertices:
        lines.append(f"rot {v}: " + " ".join(str(w) for w in g.rot[v]))
    walk = g.face_vertices(g.outer)
    walk = _min_rotation(walk)
    lines.append("outer: " + " ".join(str(v) for v in walk))
    return "\n".join(lines) + "\n"
