"""Exact straight-line realizations.

Drawings are maps from vertices to exact rational points.  This module
provides:

* ``Drawing`` / ``PolylineDrawing`` with a text interchange format and an
  SVG export;
* ``verify_drawing`` -- exact planarity, embedding fidelity (rotation
  system and outer face), and collinearity of the designated vertices;
* ``tutte_convex`` -- barycentric embedding with a fixed convex boundary,
  solved exactly over the rationals;
* ``LabelingOrder`` / ``labeling_from_curve`` -- the side labels (above /
  below / on the line), the crossing order, and the target positions that
  a proper good curve induces;
* ``place_free`` -- recursive placement of a plane 3-tree that puts every
  on-line vertex and every crossing edge exactly at its target;
* ``straighten_preserving_y`` -- replace y-monotone polyline edges by
  straight segments keeping every y-coordinate;
* ``curve_to_drawing`` -- realize a proper good curve as a straight-line
  drawing with all its vertex stations on the x-axis;
* ``lift_off_line`` -- re-place the collinear vertices at arbitrary
  prescribed heights while keeping the drawing planar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .geom import (F, collinear, line_intersection, line_through, on_segment,
                   orient, point_in_triangle, seg_line_y0_crossing, segments_cross)
from .plane_graph import (PlaneGraph, PlaneGraphError, edge_key,
                          graph_from_positions, _cyclic_eq)
from .curves import GoodCurve, AugmentedCurve, CurveError, augment_with_curve
from .three_tree import ThreeTreeError, decompose

Point = Tuple[Fraction, Fraction]
Elem = Tuple[str, object]          # ('v', vertex) or ('e', (u, v))

UP, DOWN, ON = "up", "down", "on"


class RealizeError(ValueError):
    """Raised for inconsistent labelings, infeasible placements, or
    malformed drawing data."""


def _pt(x, y) -> Point:
    return (F(x), F(y))


# -- drawings ---------------------------------------------------------------------

@dataclass(frozen=True)
class Drawing:
    """Exact straight-line drawing: vertex -> rational point, plus the
    designated (intended collinear) vertex set."""
    coords: Dict[int, Point]
    designated: Tuple[int, ...] = ()

    def point(self, v: int) -> Point:
        return self.coords[v]


@dataclass(frozen=True)
class PolylineDrawing:
    """Straight-line drawing whose edges may carry interior bend points.

    ``bends[edge_key(u, v)]`` lists the bends in order from the smaller
    endpoint to the larger one.
    """
    coords: Dict[int, Point]
    bends: Dict[Tuple[int, int], Tuple[Point, ...]] = field(default_factory=dict)

    def polyline(self, u: int, v: int) -> List[Point]:
        e = edge_key(u, v)
        pts = [self.coords[e[0]], *self.bends.get(e, ()), self.coords[e[1]]]
        return pts if (u, v) == e else pts[::-1]


def serialize_drawing(d: Drawing) -> str:
    lines = [f"drawing {len(d.coords)}"]
    for v in sorted(d.coords):
        (x, y) = d.coords[v]
        lines.append(f"v {v} {x.numerator}/{x.denominator} {y.numerator}/{y.denominator}")
    lines.append("designated: " + " ".join(str(v) for v in d.designated))
    return "\n".join(lines) + "\n"


def parse_drawing(text: str) -> Drawing:
    coords: Dict[int, Point] = {}
    designated: Tuple[int, ...] = ()
    n_declared = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("drawing "):
            n_declared = int(line.split()[1])
        elif line.startswith("v "):
            _, v, xs, ys = line.split()
            coords[int(v)] = (Fraction(xs), Fraction(ys))
        elif line.startswith("designated:"):
            designated = tuple(int(t) for t in line.split(":", 1)[1].split())
        else:
            raise RealizeError(f"unrecognized drawing line: {line!r}")
    if n_declared is not None and n_declared != len(coords):
        raise RealizeError(f"drawing declares {n_declared} vertices, has {len(coords)}")
    missing = [v for v in designated if v not in coords]
    if missing:
        raise RealizeError(f"designated vertices without coordinates: {missing}")
    return Drawing(coords, designated)


def drawing_to_svg(g: PlaneGraph, d: Drawing, size: int = 640) -> str:
    """Deterministic SVG: edges as segments, designated vertices highlighted,
    the line y = 0 drawn across the viewport."""
    pts = {v: (float(p[0]), float(p[1])) for v, p in d.coords.items()}
    xs = [p[0] for p in pts.values()] or [0.0]
    ys = [p[1] for p in pts.values()] or [0.0]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    margin = 0.05 * span
    scale = size / (span + 2 * margin)

    def sx(x):
        return (x - lo_x + margin) * scale

    def sy(y):                          # flip: SVG y grows downward
        return (hi_y - y + margin) * scale

    height = int(round((hi_y - lo_y + 2 * margin) * scale))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{height}" '
           f'viewBox="0 0 {size} {height}">']
    if lo_y - margin <= 0 <= hi_y + margin:
        out.append(f'  <line x1="0" y1="{sy(0):.3f}" x2="{size}" y2="{sy(0):.3f}" '
                   f'stroke="#888" stroke-dasharray="6 4" stroke-width="1"/>')
    for (u, v) in sorted(g.edges):
        (x1, y1), (x2, y2) = pts[u], pts[v]
        out.append(f'  <line x1="{sx(x1):.3f}" y1="{sy(y1):.3f}" '
                   f'x2="{sx(x2):.3f}" y2="{sy(y2):.3f}" stroke="#333" stroke-width="1.5"/>')
    special = set(d.designated)
    for v in sorted(pts):
        x, y = pts[v]
        color = "#d32" if v in special else "#36c"
        r = 5 if v in special else 3.5
        out.append(f'  <circle cx="{sx(x):.3f}" cy="{sy(y):.3f}" r="{r}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- verification -----------------------------------------------------------------

@dataclass
class DrawingReport:
    planar: bool
    embedding_ok: bool
    outer_ok: bool
    collinear_ok: bool
    violations: List[str]

    @property
    def ok(self) -> bool:
        return self.planar and self.embedding_ok and self.outer_ok and self.collinear_ok


def _float_or_none(x: Fraction) -> Optional[float]:
    try:
        f = float(x)
    except OverflowError:
        return None
    return f if f == f and abs(f) != float("inf") else None


def _planarity_violations(g: PlaneGraph, coords: Mapping[int, Point],
                          limit: int = 20) -> List[str]:
    """Exact planarity audit with a vectorized float prefilter.

    Reports coincident vertices, vertices interior to edges, and edge pairs
    that share a point beyond a common endpoint.
    """
    import numpy as np

    out: List[str] = []
    verts = sorted(coords)
    by_pos = sorted(verts, key=lambda v: coords[v])
    for a, b in zip(by_pos, by_pos[1:]):
        if coords[a] == coords[b]:
            out.append(f"vertices {a} and {b} coincide at {coords[a]}")

    edges = sorted(g.edges)
    m = len(edges)
    if m == 0:
        return out

    # float endpoints; rows whose coordinates do not fit a float fall back to
    # exact treatment against everything
    fallback_rows: Set[int] = set()
    A = np.zeros((m, 4))
    for i, (u, v) in enumerate(edges):
        vals = [_float_or_none(c) for c in (*coords[u], *coords[v])]
        if any(x is None for x in vals):
            fallback_rows.add(i)
            continue
        A[i] = vals
    lox = np.minimum(A[:, 0], A[:, 2])
    hix = np.maximum(A[:, 0], A[:, 2])
    loy = np.minimum(A[:, 1], A[:, 3])
    hiy = np.maximum(A[:, 1], A[:, 3])
    pad = 1e-9 * (np.abs(A).max() + 1.0)
    lox -= pad
    loy -= pad
    hix += pad
    hiy += pad

    def edge_pair_violation(i: int, j: int) -> Optional[str]:
        (a, b), (c, d) = edges[i], edges[j]
        shared = {a, b} & {c, d}
        pa, pb, pc, pd = coords[a], coords[b], coords[c], coords[d]
        if len(shared) >= 2:
            return f"edges {edges[i]} and {edges[j]} are parallel copies"
        if len(shared) == 1:
            s = shared.pop()
            p = pb if a == s else pa
            q = pd if c == s else pc
            ps = coords[s]
            if orient(ps, p, q) == 0:
                dot = (p[0] - ps[0]) * (q[0] - ps[0]) + (p[1] - ps[1]) * (q[1] - ps[1])
                if dot > 0:
                    return f"edges {edges[i]} and {edges[j]} overlap at vertex {s}"
            return None
        if segments_cross(pa, pb, pc, pd):
            return f"edges {edges[i]} and {edges[j]} intersect"
        return None

    # float separation certificates: a pair is certainly disjoint when the
    # bounding boxes part, or when one segment's endpoints lie strictly on a
    # common side of the other's supporting line by more than the rounding
    # error bound; everything else is re-examined exactly
    EPS = 1e-12
    ax, ay, bx, by = A[:, 0], A[:, 1], A[:, 2], A[:, 3]
    for i in range(m - 1):
        if len(out) >= limit:
            break
        if i in fallback_rows:
            cand = list(range(i + 1, m))
        else:
            sl = slice(i + 1, m)
            mask = ((lox[sl] <= hix[i]) & (hix[sl] >= lox[i])
                    & (loy[sl] <= hiy[i]) & (hiy[sl] >= loy[i]))
            js = np.nonzero(mask)[0] + i + 1
            if js.size:
                ux, uy = bx[i] - ax[i], by[i] - ay[i]
                t1x, t1y = ax[js] - ax[i], ay[js] - ay[i]
                t2x, t2y = bx[js] - ax[i], by[js] - ay[i]
                o1 = ux * t1y - uy * t1x
                o2 = ux * t2y - uy * t2x
                e1 = EPS * (np.abs(ux * t1y) + np.abs(uy * t1x)) + 1e-300
                e2 = EPS * (np.abs(ux * t2y) + np.abs(uy * t2x)) + 1e-300
                sep = ((o1 > e1) & (o2 > e2)) | ((o1 < -e1) & (o2 < -e2))
                vx, vy = bx[js] - ax[js], by[js] - ay[js]
                s1x, s1y = ax[i] - ax[js], ay[i] - ay[js]
                s2x, s2y = bx[i] - ax[js], by[i] - ay[js]
                o3 = vx * s1y - vy * s1x
                o4 = vx * s2y - vy * s2x
                e3 = EPS * (np.abs(vx * s1y) + np.abs(vy * s1x)) + 1e-300
                e4 = EPS * (np.abs(vx * s2y) + np.abs(vy * s2x)) + 1e-300
                sep |= ((o3 > e3) & (o4 > e4)) | ((o3 < -e3) & (o4 < -e4))
                js = js[~sep]
            cand = js.tolist()
            cand.extend(j for j in fallback_rows if j > i)
        for j in cand:
            msg = edge_pair_violation(i, j)
            if msg:
                out.append(msg)
                if len(out) >= limit:
                    break

    # vertices interior to edges
    V = np.zeros((len(verts), 2))
    v_fallback: Set[int] = set()
    for k, v in enumerate(verts):
        vals = [_float_or_none(c) for c in coords[v]]
        if any(x is None for x in vals):
            v_fallback.add(k)
            continue
        V[k] = vals
    for i, (u, w) in enumerate(edges):
        if len(out) >= limit:
            break
        if i in fallback_rows:
            cand = range(len(verts))
        else:
            mask = ((V[:, 0] >= lox[i]) & (V[:, 0] <= hix[i])
                    & (V[:, 1] >= loy[i]) & (V[:, 1] <= hiy[i]))
            ks = np.nonzero(mask)[0]
            if ks.size:
                ux, uy = bx[i] - ax[i], by[i] - ay[i]
                tx, ty = V[ks, 0] - ax[i], V[ks, 1] - ay[i]
                cr = ux * ty - uy * tx
                err = EPS * (np.abs(ux * ty) + np.abs(uy * tx)) + 1e-300
                ks = ks[np.abs(cr) <= err]
            cand = set(ks.tolist()) | v_fallback
        for k in cand:
            v = verts[k]
            if v in (u, w):
                continue
            if on_segment(coords[v], coords[u], coords[w]):
                out.append(f"vertex {v} lies on edge {(u, w)}")
                if len(out) >= limit:
                    break
    return out


def verify_drawing(g: PlaneGraph, d: Drawing) -> DrawingReport:
    """Exact audit: planarity, rotation-system fidelity, outer-face fidelity,
    and collinearity of the designated vertices."""
    violations: List[str] = []
    missing = [v for v in g.vertices if v not in d.coords]
    if missing:
        return DrawingReport(False, False, False, False,
                             [f"vertices without coordinates: {missing[:10]}"])

    planar_viol = _planarity_violations(g, d.coords)
    violations.extend(planar_viol)
    planar = not planar_viol

    embedding_ok = outer_ok = False
    try:
        gp = graph_from_positions({v: d.coords[v] for v in g.vertices}, g.edges)
        embedding_ok = all(_cyclic_eq(gp.rot[v], g.rot[v]) for v in g.vertices)
        if not embedding_ok:
            bad = next(v for v in g.vertices if not _cyclic_eq(gp.rot[v], g.rot[v]))
            violations.append(
                f"rotation at vertex {bad} is {gp.rot[bad]}, expected {g.rot[bad]}")
        outer_ok = gp.face_key(gp.outer) == g.face_key(g.outer)
        if not outer_ok:
            violations.append(
                f"outer face is {gp.face_key(gp.outer)}, expected {g.face_key(g.outer)}")
    except PlaneGraphError as exc:
        violations.append(f"embedding reconstruction failed: {exc}")

    collinear_ok = True
    des = [v for v in d.designated]
    if len(des) >= 3:
        p0, p1 = d.coords[des[0]], d.coords[des[1]]
        for v in des[2:]:
            if not collinear(p0, p1, d.coords[v]):
                collinear_ok = False
                violations.append(
                    f"designated vertices {des[0]}, {des[1]}, {v} are not collinear")
                break
    return DrawingReport(planar, embedding_ok, outer_ok, collinear_ok, violations)


# -- barycentric (Tutte) embedding ------------------------------------------------

def _solve_barycentric(rows: Dict[int, Dict[int, Fraction]],
                       rhs: Dict[int, List[Fraction]]) -> Dict[int, List[Fraction]]:
    """Exact sparse Gaussian elimination with min-degree pivoting.

    ``rows[v]`` maps unknowns to coefficients; ``rhs[v]`` is a pair of right
    hand sides (x and y are solved simultaneously).
    """
    occurs: Dict[int, Set[int]] = {v: set() for v in rows}
    for r, row in rows.items():
        for v in row:
            occurs[v].add(r)
    order: List[Tuple[int, Dict[int, Fraction], List[Fraction]]] = []
    remaining = set(rows)
    while remaining:
        p = min(remaining, key=lambda v: (len(rows[v]), v))
        prow, prhs = rows[p], rhs[p]
        piv = prow.get(p, Fraction(0))
        if piv == 0:
            raise RealizeError("singular barycentric system")
        order.append((p, prow, prhs))
        remaining.discard(p)
        for r in list(occurs[p]):
            if r == p or r not in remaining:
                continue
            row = rows[r]
            factor = row[p] / piv
            del row[p]
            for v, c in prow.items():
                if v == p:
                    continue
                nv = row.get(v, Fraction(0)) - factor * c
                if nv == 0:
                    row.pop(v, None)
                    occurs[v].discard(r)
                else:
                    if v not in row:
                        occurs[v].add(r)
                    row[v] = nv
            rhs[r][0] -= factor * prhs[0]
            rhs[r][1] -= factor * prhs[1]
        occurs[p] = set()
    sol: Dict[int, List[Fraction]] = {}
    for p, prow, prhs in reversed(order):
        acc = [prhs[0], prhs[1]]
        for v, c in prow.items():
            if v == p:
                continue
            acc[0] -= c * sol[v][0]
            acc[1] -= c * sol[v][1]
        piv = prow[p]
        sol[p] = [acc[0] / piv, acc[1] / piv]
    return sol


def tutte_convex(g: PlaneGraph, polygon: Mapping[int, Point]) -> Drawing:
    """Barycentric drawing: the outer walk fixed at the given convex positions,
    every interior vertex exactly at the average of its neighbors."""
    walk = g.outer_walk()
    boundary = set(walk)
    for v in walk:
        if v not in polygon:
            raise RealizeError(f"no polygon position for outer vertex {v}")
    pos = {v: _pt(*polygon[v]) for v in walk}
    k = len(walk)
    if k < 3:
        raise RealizeError("outer walk is not a cycle")
    if len(set(walk)) != k:
        raise RealizeError("outer walk repeats a vertex; boundary is not a simple cycle")
    signs = set()
    for i in range(k):
        signs.add(orient(pos[walk[i]], pos[walk[(i + 1) % k]], pos[walk[(i + 2) % k]]))
    if signs - {0, -1}:
        raise RealizeError("polygon positions do not traverse a convex boundary clockwise")
    if -1 not in signs:
        raise RealizeError("polygon positions are collinear")

    interior = [v for v in g.vertices if v not in boundary]
    rows: Dict[int, Dict[int, Fraction]] = {}
    rhs: Dict[int, List[Fraction]] = {}
    for v in interior:
        row: Dict[int, Fraction] = {v: Fraction(g.degree(v))}
        b = [Fraction(0), Fraction(0)]
        for u in g.rot[v]:
            if u in boundary:
                b[0] += pos[u][0]
                b[1] += pos[u][1]
            else:
                row[u] = row.get(u, Fraction(0)) - 1
        rows[v] = row
        rhs[v] = b
    sol = _solve_barycentric(rows, rhs) if rows else {}
    coords = dict(pos)
    for v, (x, y) in sol.items():
        coords[v] = (x, y)
    return Drawing(coords)


# -- labelings induced by a curve -------------------------------------------------

@dataclass(frozen=True)
class LabelingOrder:
    """Side labels, crossing order, and target positions on the line y = 0.

    ``labels[v]`` is one of ``'up'``, ``'down'``, ``'on'``.  ``order`` is the
    left-to-right sequence over the on-line vertices and the crossing edges;
    ``targets`` assigns each of them a strictly increasing x-coordinate.
    """
    labels: Dict[int, str]
    order: Tuple[Elem, ...]
    targets: Dict[Elem, Fraction]

    @property
    def on_line(self) -> Tuple[int, ...]:
        return tuple(e[1] for e in self.order if e[0] == 'v')

    @property
    def crossing_edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(e[1] for e in self.order if e[0] == 'e')

    def validate(self, g: PlaneGraph) -> None:
        for v in g.vertices:
            if self.labels.get(v) not in (UP, DOWN, ON):
                raise RealizeError(f"vertex {v} has no valid label")
        want: Set[Elem] = {('v', v) for v in g.vertices if self.labels[v] == ON}
        for (u, v) in g.edges:
            if {self.labels[u], self.labels[v]} == {UP, DOWN}:
                want.add(('e', edge_key(u, v)))
        have = set(self.order)
        if len(have) != len(self.order):
            raise RealizeError("ordering repeats an element")
        if have != want:
            raise RealizeError(
                f"ordering covers {sorted(have - want)} unexpectedly and misses "
                f"{sorted(want - have)}")
        xs = [self.targets[e] for e in self.order]
        for a, b in zip(xs, xs[1:]):
            if not a < b:
                raise RealizeError("target positions are not strictly increasing")


def _outer_corner(g: PlaneGraph, v: int) -> Tuple[int, int]:
    """(w_in, w_out) with the darts (w_in, v), (v, w_out) consecutive on the
    outer walk: the angular gap of v that faces the unbounded region."""
    walk = g.faces[g.outer]
    for i, (x, y) in enumerate(walk):
        if y == v:
            return x, walk[(i + 1) % len(walk)][1]
    raise RealizeError(f"vertex {v} is not on the outer face")


def _arc_cw(rot: Sequence[int], start: int, stop: int) -> List[int]:
    """Neighbors strictly between start and stop going clockwise."""
    i = rot.index(start)
    out = []
    j = (i + 1) % len(rot)
    while rot[j] != stop:
        out.append(rot[j])
        j = (j + 1) % len(rot)
    return out


def _side_seeds(aug: AugmentedCurve) -> Tuple[Set[int], Set[int]]:
    """Split the neighbors of the curve path into the two sides of the curve.

    Which of the two returned sets is 'up' is fixed later by the orientation
    test in ``_orient_sides``; here side A is the side swept clockwise from
    the path-successor to the path-predecessor at each path vertex.
    """
    g = aug.graph
    path = aug.path_vertices
    on_path = set(path)
    side_a: Set[int] = set()    # clockwise from successor to predecessor
    side_b: Set[int] = set()

    def classify(v: int, nxt: Optional[int], prv: Optional[int]) -> None:
        rot = g.rot[v]
        if nxt is None and prv is None:    # single-vertex path: no seeds
            return
        if nxt is not None and prv is not None:
            for w in _arc_cw(rot, nxt, prv):
                side_a.add(w)
            for w in _arc_cw(rot, prv, nxt):
                side_b.add(w)
            return
        # path endpoint that is a real vertex: the line continues into the
        # unbounded region through the outer-face corner of v
        if len(rot) == 1:
            return
        w_in, w_out = _outer_corner(g, v)
        if nxt is not None:        # first path vertex
            arc = _arc_cw(rot, nxt, w_out)
            side_a.update(arc)
            side_b.update(x for x in rot
                          if x not in arc and x != nxt and x not in on_path)
        else:                      # last path vertex
            arc = _arc_cw(rot, prv, w_out)
            side_b.update(arc)
            side_a.update(x for x in rot
                          if x not in arc and x != prv and x not in on_path)

    for i, p in enumerate(path):
        nxt = path[i + 1] if i + 1 < len(path) else None
        prv = path[i - 1] if i > 0 else None
        classify(p, nxt, prv)
    side_a -= on_path
    side_b -= on_path
    if side_a & side_b:
        raise RealizeError(
            f"curve does not separate its neighborhood: {sorted(side_a & side_b)}")

    # flood fill the rest of the graph
    label: Dict[int, int] = {}
    for v in side_a:
        label[v] = 0
    for v in side_b:
        label[v] = 1
    stack = list(label)
    while stack:
        v = stack.pop()
        for u in g.rot[v]:
            if u in on_path:
                continue
            if u in label:
                if label[u] != label[v]:
                    raise RealizeError(
                        f"vertices {v} and {u} connect the two sides of the curve")
                continue
            label[u] = label[v]
            stack.append(u)
    a = {v for v, s in label.items() if s == 0}
    b = {v for v, s in label.items() if s == 1}
    rest = set(g.vertices) - on_path - a - b
    if rest:
        # no seed reached these vertices (single-vertex curves); they form
        # one side on their own
        a |= rest
    return a, b


def _path_dart_orientation(sub: PlaneGraph, path: Sequence[int]) -> Optional[bool]:
    """True if sub's outer walk traverses the path backwards (last to first),
    False if forwards, None if undecidable (both sides empty)."""
    darts = set(sub.faces[sub.outer])
    fwd = sum((a, b) in darts and (b, a) not in darts
              for a, b in zip(path, path[1:]))
    bwd = sum((b, a) in darts and (a, b) not in darts
              for a, b in zip(path, path[1:]))
    if fwd and bwd:
        return None
    if bwd:
        return True
    if fwd:
        return False
    return None


def curve_sides(aug: AugmentedCurve) -> Tuple[Set[int], Set[int]]:
    """(above, below): the two sides of a proper curve drawn along the x-axis
    with its first endpoint on the left.

    The side whose subgraph's outer walk traverses the curve path from its
    last vertex back to its first is the one drawn above the line.
    """
    if not aug.proper:
        raise RealizeError("curve sides are defined for proper open curves")
    side_a, side_b = _side_seeds(aug)
    path = aug.path_vertices
    if len(path) < 2 or (not side_a and not side_b):
        return side_a | side_b, set()
    on_path = set(path)
    ori = _path_dart_orientation(aug.graph.subgraph(on_path | side_a), path)
    if ori is None:
        ori_b = _path_dart_orientation(aug.graph.subgraph(on_path | side_b), path)
        if ori_b is None:
            return side_a, side_b
        ori = not ori_b
    return (side_a, side_b) if ori else (side_b, side_a)


def labeling_from_curve(g: PlaneGraph, c: GoodCurve) -> LabelingOrder:
    """Labels, order and integer targets induced by a proper good curve: its
    vertex stations become on-line vertices, its crossings become crossing
    edges, in station order at x = 1, 2, ..."""
    aug = augment_with_curve(g, c)
    if not aug.proper:
        raise RealizeError("curve is not proper (an endpoint misses the outer region)")
    order: List[Elem] = []
    for s in c.stations:
        if s[0] == 'v':
            order.append(('v', s[1]))
        elif s[0] == 'x':
            order.append(('e', s[1]))
    if len(set(order)) != len(order):
        raise RealizeError("curve visits an element twice")
    targets = {e: Fraction(i + 1) for i, e in enumerate(order)}
    above, below = curve_sides(aug)
    labels: Dict[int, str] = {}
    for v in g.vertices:
        if v in above:
            labels[v] = UP
        elif v in below:
            labels[v] = DOWN
        else:
            labels[v] = ON
    lab = LabelingOrder(labels, tuple(order), targets)
    lab.validate(g)
    return lab


# -- free placement of plane 3-trees ----------------------------------------------

def _centroid(a: Point, b: Point, c: Point) -> Point:
    return ((a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3)


def _midpoint(a: Point, b: Point) -> Point:
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


class _Placer:
    def __init__(self, g: PlaneGraph, lab: LabelingOrder):
        self.g = g
        self.lab = lab
        self.pts: Dict[int, Point] = {}

    def fail(self, tri: Tuple[int, int, int], msg: str) -> None:
        raise RealizeError(f"inconsistent labeling at triangle {tri}: {msg}")

    def target_v(self, tri, v: int) -> Fraction:
        q = self.lab.targets.get(('v', v))
        if q is None:
            self.fail(tri, f"on-line vertex {v} has no target")
        return q

    def target_e(self, tri, a: int, b: int) -> Fraction:
        q = self.lab.targets.get(('e', edge_key(a, b)))
        if q is None:
            self.fail(tri, f"crossing edge {edge_key(a, b)} has no target")
        return q

    def beyond(self, tri, pa: Point, qx: Fraction) -> Point:
        """Midpoint between (qx, 0) and the exit of the ray from pa through it."""
        q = _pt(qx, 0)
        pu, pv, pz = (self.pts[c] for c in tri)
        if not point_in_triangle(q, pu, pv, pz, strict=True):
            self.fail(tri, f"target x = {qx} is not interior to the triangle")
        others = [self.pts[c] for c in tri if self.pts[c] != pa]
        exit_pt = line_intersection(line_through(pa, q), line_through(*others))
        if exit_pt is None or not on_segment(exit_pt, *others):
            self.fail(tri, f"ray through x = {qx} does not exit the opposite side")
        return _midpoint(q, exit_pt)

    def cross2(self, tri, pa: Point, qa: Fraction, pb: Point, qb: Fraction) -> Point:
        p = line_intersection(line_through(pa, _pt(qa, 0)),
                              line_through(pb, _pt(qb, 0)))
        if p is None:
            self.fail(tri, f"crossing rays through x = {qa} and x = {qb} are parallel")
        return p

    def place(self, tri: Tuple[int, int, int], w: int) -> Point:
        u, v, z = tri
        L = self.lab.labels
        lw = L[w]
        labs = (L[u], L[v], L[z])

        if all(l in (UP, ON) for l in labs) or all(l in (DOWN, ON) for l in labs):
            side = UP if all(l in (UP, ON) for l in labs) else DOWN
            if lw != side:
                self.fail(tri, f"vertex {w} labeled {lw} inside a one-sided triangle")
            p = _centroid(*(self.pts[c] for c in tri))
        else:
            rots = [(u, v, z), (v, z, u), (z, u, v)]
            frame = next(((a, b, c) for (a, b, c) in rots
                          if L[a] == UP and L[b] == DOWN), None)
            if frame is not None:
                ru, rv, rz = frame
                lz = L[rz]
                if lw == ON:
                    p = _pt(self.target_v(tri, w), 0)
                elif lz == ON:
                    p = (self.beyond(tri, self.pts[rv], self.target_e(tri, rv, w))
                         if lw == UP else
                         self.beyond(tri, self.pts[ru], self.target_e(tri, ru, w)))
                elif lz == UP:
                    p = (self.beyond(tri, self.pts[rv], self.target_e(tri, rv, w))
                         if lw == UP else
                         self.cross2(tri, self.pts[ru], self.target_e(tri, ru, w),
                                     self.pts[rz], self.target_e(tri, rz, w)))
                else:  # lz == DOWN; mirror of the previous case across the line
                    p = (self.beyond(tri, self.pts[ru], self.target_e(tri, ru, w))
                         if lw == DOWN else
                         self.cross2(tri, self.pts[rv], self.target_e(tri, rv, w),
                                     self.pts[rz], self.target_e(tri, rz, w)))
            else:
                # cyclic pattern (up, on, down): left-right mirror of the
                # (up, down, on) case
                frame = next(((a, b, c) for (a, b, c) in rots
                              if L[a] == UP and L[b] == ON and L[c] == DOWN), None)
                if frame is None:
                    self.fail(tri, f"unplaceable corner labels {labs}")
                r0, r1, r2 = frame
                if lw == ON:
                    p = _pt(self.target_v(tri, w), 0)
                elif lw == UP:
                    p = self.beyond(tri, self.pts[r2], self.target_e(tri, r2, w))
                else:
                    p = self.beyond(tri, self.pts[r0], self.target_e(tri, r0, w))

        pu, pv, pz = (self.pts[c] for c in tri)
        if not point_in_triangle(p, pu, pv, pz, strict=True):
            self.fail(tri, f"vertex {w} falls outside its triangle")
        want = {UP: 1, DOWN: -1, ON: 0}[lw]
        if (p[1] > 0) - (p[1] < 0) != want:
            self.fail(tri, f"vertex {w} labeled {lw} lands at y = {p[1]}")
        return p


def _root_triangle(corners: Tuple[int, int, int], lab: LabelingOrder) -> Dict[int, Point]:
    """Outer-triangle positions honoring the corner labels and the extreme
    targets; the corners are given counter-clockwise."""
    L = lab.labels
    labs = tuple(L[c] for c in corners)
    order = lab.order

    def fail(msg):
        raise RealizeError(f"outer triangle {corners}: {msg}")

    def check_extremes(first: Elem, last: Elem):
        if not order or order[0] != first or order[-1] != last:
            fail(f"ordering must start with {first} and end with {last}, "
                 f"got {order[:1]} ... {order[-1:]}")

    one = F(1)
    if all(l in (UP, ON) for l in labs) or all(l in (DOWN, ON) for l in labs):
        side = UP if all(l in (UP, ON) for l in labs) else DOWN
        ons = [c for c in corners if L[c] == ON]
        expect = tuple(('v', c) for c in sorted(ons, key=lambda c: lab.targets.get(('v', c), 0)))
        if tuple(order) != expect:
            fail(f"one-sided outer triangle allows only its on-line corners in "
                 f"the ordering, got {order}")
        y = one if side == UP else -one
        if len(ons) == 3:
            fail("all three outer corners cannot lie on the line")
        if len(ons) == 2:
            a, b = ons
            qa, qb = lab.targets[('v', a)], lab.targets[('v', b)]
            t = next(c for c in corners if L[c] != ON)
            pts = {a: _pt(qa, 0), b: _pt(qb, 0), t: ((qa + qb) / 2, y)}
        elif len(ons) == 1:
            c0 = ons[0]
            q = lab.targets[('v', c0)]
            rest = [c for c in corners if c != c0]
            pts = {c0: _pt(q, 0),
                   rest[0]: (q + (1 if side == UP else -1), y),
                   rest[1]: (q - (1 if side == UP else -1), y)}
        else:
            pts = dict(zip(corners, [_pt(0, y), _pt(2 if side == UP else 1, 2 * y),
                                     _pt(1 if side == UP else 2, 2 * y)]))
        ps = [pts[c] for c in corners]
        if orient(*ps) != 1:
            fail("corner labels are incompatible with the counter-clockwise frame")
        return pts

    if not order:
        fail("mixed corner labels but empty ordering")
    rots = [tuple(corners[(i + k) % 3] for k in range(3)) for i in range(3)]
    frame = next((r for r in rots if L[r[0]] == UP and L[r[1]] == DOWN), None)
    if frame is not None:
        ru, rv, rz = frame
        if L[rz] == ON:
            first, last = ('e', edge_key(ru, rv)), ('v', rz)
            check_extremes(first, last)
            x1, xk = lab.targets[first], lab.targets[last]
            return {ru: _pt(x1, 1), rv: _pt(x1, -1), rz: _pt(xk, 0)}
        if L[rz] == UP:
            first, last = ('e', edge_key(ru, rv)), ('e', edge_key(rv, rz))
            check_extremes(first, last)
            x1, xk = lab.targets[first], lab.targets[last]
            return {ru: _pt(x1, 1), rv: _pt(x1, -1), rz: (2 * xk - x1, one)}
        first, last = ('e', edge_key(ru, rv)), ('e', edge_key(ru, rz))
        check_extremes(first, last)
        x1, xk = lab.targets[first], lab.targets[last]
        return {ru: _pt(x1, 1), rv: _pt(x1, -1), rz: (2 * xk - x1, -one)}
    frame = next((r for r in rots if L[r[0]] == UP and L[r[1]] == ON and L[r[2]] == DOWN),
                 None)
    if frame is None:
        fail(f"unplaceable corner labels {labs}")
    r0, r1, r2 = frame
    first, last = ('v', r1), ('e', edge_key(r0, r2))
    check_extremes(first, last)
    x1, xk = lab.targets[first], lab.targets[last]
    return {r0: _pt(xk, 1), r1: _pt(x1, 0), r2: _pt(xk, -1)}


def place_free(g: PlaneGraph, lab: LabelingOrder) -> Drawing:
    """Straight-line drawing of a plane 3-tree in which every on-line vertex
    sits exactly at its target and every crossing edge meets y = 0 exactly at
    its target."""
    lab.validate(g)
    decomp = decompose(g)
    placer = _Placer(g, lab)
    placer.pts.update(_root_triangle(decomp.root.corners, lab))
    stack = [decomp.root]
    while stack:
        node = stack.pop()
        if node.kind == 'empty':
            continue
        placer.pts[node.w] = placer.place(node.corners, node.w)
        stack.extend(node.children)

    coords = dict(placer.pts)
    for elem in lab.order:
        if elem[0] == 'v':
            q = lab.targets[elem]
            assert coords[elem[1]] == (q, 0)
        else:
            a, b = elem[1]
            hit = seg_line_y0_crossing(coords[a], coords[b])
            if hit is None or hit[0] != lab.targets[elem]:
                raise RealizeError(
                    f"edge {elem[1]} does not cross the line at its target")
    designated = tuple(e[1] for e in lab.order if e[0] == 'v')
    return Drawing(coords, designated)


def lift_off_line(g: PlaneGraph, d: Drawing, heights: Mapping[int, Fraction]) -> Drawing:
    """Move the designated (on-line) vertices to prescribed heights.

    The designated vertices of ``d`` must lie on y = 0 with distinct x's.
    Every vertex (x, y) is re-placed at (x, M*y + h(x)) where h is the
    piecewise-linear interpolant of the prescribed heights and M doubles
    until the drawing verifies.
    """
    des = sorted(d.designated, key=lambda v: d.coords[v][0])
    if not des:
        raise RealizeError("drawing has no designated vertices to lift")
    for v in des:
        if d.coords[v][1] != 0:
            raise RealizeError(f"designated vertex {v} is not on the line")
        if v not in heights:
            raise RealizeError(f"no height prescribed for designated vertex {v}")
    knots = [(d.coords[v][0], F(heights[v])) for v in des]

    def h(x: Fraction) -> Fraction:
        if x <= knots[0][0]:
            return knots[0][1]
        if x >= knots[-1][0]:
            return knots[-1][1]
        for (x0, y0), (x1, y1) in zip(knots, knots[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        raise AssertionError

    M = Fraction(1)
    for _ in range(70):
        coords = {v: (x, M * y + h(x)) for v, (x, y) in d.coords.items()}
        lifted = Drawing(coords, d.designated)
        rep = verify_drawing(g, lifted)
        if rep.planar and rep.embedding_ok and rep.outer_ok:
            return lifted
        M *= 2
    raise RealizeError("lift failed to verify at any tested magnification")


# -- straightening y-monotone polylines -------------------------------------------

def _polyline_x_at(poly: Sequence[Point], y0: Fraction) -> Fraction:
    for (a, b) in zip(poly, poly[1:]):
        lo, hi = (a, b) if a[1] <= b[1] else (b, a)
        if lo[1] <= y0 <= hi[1]:
            if lo[1] == hi[1]:
                continue
            t = (y0 - lo[1]) / (hi[1] - lo[1])
            return lo[0] + t * (hi[0] - lo[0])
    raise RealizeError("polyline does not span the level")


def _rank_levels(g: PlaneGraph, pl: PolylineDrawing) -> PolylineDrawing:
    """Order-preserving remap of the vertex levels onto 0, 1, 2, ...

    Every edge keeps its exact crossing x-coordinate at every vertex level
    (re-sampled bends record them), so all level orders are unchanged; the
    small integer levels keep the straightening LP numerically benign even
    when the incoming coordinates carry huge rationals.
    """
    ys = sorted({y for (_, y) in pl.coords.values()})
    shift = ys.index(Fraction(0)) if Fraction(0) in ys else 0
    rank = {y: Fraction(i - shift) for i, y in enumerate(ys)}
    coords = {v: (x, rank[y]) for v, (x, y) in pl.coords.items()}
    bends: Dict[Tuple[int, int], Tuple[Point, ...]] = {}
    for (u, v) in g.edges:
        yu, yv = pl.coords[u][1], pl.coords[v][1]
        lo, hi = min(yu, yv), max(yu, yv)
        inner = [y for y in ys if lo < y < hi]
        if not inner:
            continue
        poly = pl.polyline(u, v)
        pts = tuple((_polyline_x_at(poly, y), rank[y]) for y in inner)
        bends[(u, v)] = pts if yu < yv else pts[::-1]
    return PolylineDrawing(coords, bends)


def straighten_preserving_y(g: PlaneGraph, pl: PolylineDrawing,
                            designated: Tuple[int, ...] = ()) -> Drawing:
    """Replace y-monotone polyline edges by straight segments.

    Keeps every vertex's y-coordinate and, at every horizontal level through
    a vertex, the left-to-right order of vertices and crossing edges; new
    x-coordinates come from a feasibility LP whose solution is re-checked
    exactly.
    """
    from scipy.optimize import linprog
    import numpy as np

    coords = {v: _pt(*pl.coords[v]) for v in pl.coords}
    for v in g.vertices:
        if v not in coords:
            raise RealizeError(f"no position for vertex {v}")
    edges = sorted(g.edges)
    for (u, v) in edges:
        poly = pl.polyline(u, v)
        ys = [p[1] for p in poly]
        if len(poly) > 2 or ys[0] != ys[-1]:
            for a, b in zip(ys, ys[1:]):
                if not ((ys[0] < ys[-1] and a < b) or (ys[0] > ys[-1] and a > b)):
                    raise RealizeError(f"edge {(u, v)} is not y-monotone")

    verts = sorted(coords)
    var = {v: i for i, v in enumerate(verts)}
    levels = sorted({coords[v][1] for v in verts})
    constraints: List[Tuple[Dict[int, Fraction], Fraction]] = []   # lhs . x >= 1

    for y0 in levels:
        items: List[Tuple[Fraction, Elem]] = []
        for v in verts:
            if coords[v][1] == y0:
                items.append((coords[v][0], ('v', v)))
        for (u, v) in edges:
            ya, yb = coords[u][1], coords[v][1]
            if min(ya, yb) < y0 < max(ya, yb):
                x_now = _polyline_x_at(pl.polyline(u, v), y0)
                items.append((x_now, ('e', (u, v))))
        items.sort(key=lambda t: t[0])
        for (xa, a), (xb, b) in zip(items, items[1:]):
            if xa == xb:
                raise RealizeError(
                    f"items {a} and {b} coincide at level y = {y0}")

        def expr(item: Elem) -> Dict[int, Fraction]:
            if item[0] == 'v':
                return {var[item[1]]: Fraction(1)}
            u, v = item[1]
            t = (y0 - coords[u][1]) / (coords[v][1] - coords[u][1])
            return {var[u]: 1 - t, var[v]: t}

        for (_, a), (_, b) in zip(items, items[1:]):
            lhs: Dict[int, Fraction] = {}
            for k, c in expr(b).items():
                lhs[k] = lhs.get(k, Fraction(0)) + c
            for k, c in expr(a).items():
                lhs[k] = lhs.get(k, Fraction(0)) - c
            constraints.append((lhs, Fraction(1)))

    if constraints:
        A = np.zeros((len(constraints), len(verts)))
        for i, (lhs, _) in enumerate(constraints):
            for k, c in lhs.items():
                A[i, k] = -float(c)
        b = -np.ones(len(constraints))
        res = linprog(np.zeros(len(verts)), A_ub=A, b_ub=b,
                      bounds=[(None, None)] * len(verts), method="highs")
        if not res.success:
            raise RealizeError(f"straightening LP infeasible: {res.message}")
        xs = [Fraction(*float(x).as_integer_ratio()) for x in res.x]
        for lhs, _ in constraints:
            if not sum(c * xs[k] for k, c in lhs.items()) > 0:
                raise RealizeError("straightening solution violates a level order")
    else:
        xs = [coords[v][0] for v in verts]

    new_coords = {v: (xs[var[v]], coords[v][1]) for v in verts if v in set(g.vertices)}
    return Drawing(new_coords, designated)


# -- realizing a curve (collinearity pipeline) -------------------------------------

def _insert_before(rot: List[int], anchor: int, new: int) -> None:
    rot.insert(rot.index(anchor), new)


def _add_apex(sub: PlaneGraph, path: Sequence[int]) -> Tuple[PlaneGraph, int]:
    """New degree-2 vertex in sub's outer face adjacent to the path ends; the
    cycle (apex, path) becomes the outer face."""
    a, b = path[0], path[-1]
    apex = max(sub.vertices) + 1
    rot: Dict[int, List[int]] = {v: list(sub.rot[v]) for v in sub.vertices}
    walk = sub.faces[sub.outer]
    for end in {a, b}:
        i = next(i for i, (x, y) in enumerate(walk) if y == end)
        succ = walk[(i + 1) % len(walk)][1]
        _insert_before(rot[end], succ, apex)
    rot[apex] = [a, b] if a != b else [a]
    # the apex splits the old outer region in two; the new outer face is the
    # side bounded by the whole path (the other side may carry stretches of
    # the old outer walk that do not belong to the path)
    g2 = PlaneGraph(rot, outer_face=0)
    need = set(path)
    for nb in rot[apex]:
        f = g2.face_of_dart((apex, nb))
        if need <= {x for (x, _) in g2.faces[f]}:
            return g2.with_outer(f), apex
    raise RealizeError("no face beside the apex is bounded by the whole path")


def _star_triangulate(gr: PlaneGraph) -> Tuple[PlaneGraph, Set[int]]:
    """Add a hub vertex inside every non-triangular internal face, joined to
    each face vertex; never creates an edge between existing vertices."""
    rot: Dict[int, List[int]] = {v: list(gr.rot[v]) for v in gr.vertices}
    next_id = max(gr.vertices) + 1
    stars: Set[int] = set()
    for i in gr.internal_faces():
        walk = gr.faces[i]
        if len(walk) <= 3:
            continue
        vs = [x for (x, y) in walk]
        if len(set(vs)) != len(vs):
            raise RealizeError(
                f"internal face {tuple(vs)} repeats a vertex; cannot star-triangulate")
        hub = next_id
        next_id += 1
        stars.add(hub)
        rot[hub] = list(reversed(vs))
        for (x, y) in walk:
            _insert_before(rot[x], y, hub)
    g2 = PlaneGraph(rot, outer_walk=gr.outer_walk())
    return g2, stars


def _tutte_half(sub: PlaneGraph, path: Sequence[int], above: bool) -> Dict[int, Point]:
    """Positions for one side of the curve: path fixed at (1, 0)..(L, 0), the
    apex at |y| = L + 1, interior vertices barycentric."""
    g_apex, apex = _add_apex(sub, path)
    g_tri, stars = _star_triangulate(g_apex)
    L = len(path)
    y = F(L + 1) if above else F(-(L + 1))
    polygon: Dict[int, Point] = {path[i]: _pt(i + 1, 0) for i in range(L)}
    polygon[apex] = (F(1 + L) / 2, y)
    d = tutte_convex(g_tri, polygon)
    return {v: p for v, p in d.coords.items() if v != apex and v not in stars}


def _regular_convex_drawing(g: PlaneGraph, anchor: Optional[int] = None) -> Drawing:
    """Any verified convex-boundary drawing; the anchor vertex (if given and
    on the outer face) is pinned to the origin."""
    walk = list(g.outer_walk())
    if anchor is not None and anchor in walk:
        i = walk.index(anchor)
        walk = walk[i:] + walk[:i]
    k = len(walk)
    # clockwise convex positions on a parabola-like arc, first vertex at origin
    pos: Dict[int, Point] = {}
    for j, v in enumerate(walk):
        pos[v] = (F(-j * (k - j)), F(j))
    # ensure clockwise traversal; mirror in x if not
    area2 = sum(pos[walk[i]][0] * pos[walk[(i + 1) % k]][1]
                - pos[walk[i]][1] * pos[walk[(i + 1) % k]][0] for i in range(k))
    if area2 > 0:
        pos = {v: (-x, y) for v, (x, y) in pos.items()}
    return tutte_convex(g, pos)


def _theorem1_pipeline(g: PlaneGraph, c: GoodCurve) -> Drawing:
    """Generic realization of a proper good curve: split along the curve,
    draw each side barycentrically against the path laid on the x-axis, then
    straighten the crossed edges keeping all y-coordinates."""
    aug = augment_with_curve(g, c)
    if not aug.proper:
        raise RealizeError("curve is not proper (an endpoint misses the outer region)")
    designated = tuple(s[1] for s in c.stations if s[0] == 'v')
    path = aug.path_vertices
    if len(path) < 2:
        d = _regular_convex_drawing(g, anchor=path[0] if path else None)
        return Drawing(d.coords, designated)

    above, below = curve_sides(aug)
    on_path = set(path)
    coords: Dict[int, Point] = {}
    coords.update(_tutte_half(aug.graph.subgraph(on_path | above), path, above=True))
    coords.update(_tutte_half(aug.graph.subgraph(on_path | below), path, above=False))

    keep = set(g.vertices)
    pl = PolylineDrawing(
        coords={v: coords[v] for v in keep},
        bends={e: (coords[w],) for e, w in aug.subdivision.items()})
    return straighten_preserving_y(g, _rank_levels(g, pl), designated)


def curve_to_drawing(g: PlaneGraph, c: GoodCurve) -> Drawing:
    """Straight-line drawing of g in which the curve's stations land on the
    x-axis: vertex stations exactly on it, crossed edges meeting it once."""
    if c.closed:
        raise RealizeError("only open (proper) curves can be realized on a line")
    designated = tuple(s[1] for s in c.stations if s[0] == 'v')
    try:
        decompose(g)
        is_3tree = True
    except ThreeTreeError:
        is_3tree = False
    if is_3tree:
        lab = labeling_from_curve(g, c)
        d = place_free(g, lab)
        return Drawing(d.coords, designated)
    return _theorem1_pipeline(g, c)
