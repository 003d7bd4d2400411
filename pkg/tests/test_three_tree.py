"""Decomposition, curve bundles, chord-lemma segments, DP optimum."""

import math

import pytest

from collinear.plane_graph import PlaneGraph, edge_key, graph_from_positions
from collinear.curves import GoodCurve, Vst, Xst, Fst, validate_curve
from collinear.oracle import enumerate_curves, catalog_plane_3trees
from collinear.three_tree import (
    ThreeTreeError, decompose, format_decomposition, lemma1_chord,
    build_curve_bundle, check_lemma3, dp_optimal_collinear,
    max_internal_collinear, augment_to_plane_3tree, random_plane_3tree,
    _BundleBuilder,
)


K4 = PlaneGraph({0: (1, 3, 2), 1: (2, 3, 0), 2: (0, 3, 1), 3: (0, 1, 2)},
                outer_walk=(0, 1, 2))


def stack(g_rot, faces_to_fill):
    """Tiny helper: build a plane 3-tree by stacking into named ccw faces."""
    rot = {v: list(r) for v, r in g_rot.items()}
    w = max(rot) + 1
    for (f0, f1, f2) in faces_to_fill:
        rot[w] = [f2, f1, f0]
        for v, succ in ((f0, f1), (f1, f2), (f2, f0)):
            rot[v].insert(rot[v].index(succ), w)
        w += 1
    return PlaneGraph(rot, outer_walk=(0, 1, 2))


# -- decomposition ------------------------------------------------------------------


def test_decompose_k4():
    d = decompose(K4)
    assert d.root.kind == 'A'
    assert d.root.w == 3
    assert d.root.m == 1
    assert (d.root.a, d.root.b, d.root.c, d.root.d, d.root.h) == (1, 0, 0, 0, 0)
    assert d.b_chains == []
    assert d.vertex_type(3) == 'A'


def test_decompose_five_vertices():
    # one extra stack: root becomes type B with a single-vertex chain
    g = stack(K4.rot, [(1, 0, 3)])
    d = decompose(g)
    assert d.root.kind == 'B'
    assert (d.root.a, d.root.b, d.root.h) == (1, 1, 1)
    assert d.b_chains == [(3,)]
    only = [k for k in d.root.children if k.kind != 'empty']
    assert len(only) == 1 and only[0].kind == 'A'


def test_decompose_type_d():
    # fill all three faces around the K4 hub: root becomes type D
    g = stack(K4.rot, [(0, 2, 3), (2, 1, 3), (1, 0, 3)])
    d = decompose(g)
    assert d.root.kind == 'D'
    assert (d.root.a, d.root.d) == (3, 1)
    assert d.root.a == d.root.c + 2 * d.root.d + 1


def test_decompose_rejects_non_3tree():
    oct_rot = {0: (1, 2, 3, 4), 1: (0, 4, 5, 2), 2: (0, 1, 5, 3),
               3: (0, 2, 5, 4), 4: (0, 3, 5, 1), 5: (1, 4, 3, 2)}
    octa = PlaneGraph({v: tuple(reversed(r)) for v, r in oct_rot.items()},
                      outer_walk=(0, 1, 2))
    with pytest.raises(ThreeTreeError):
        decompose(octa)


def test_decompose_rejects_square():
    sq = PlaneGraph({0: (1, 3), 1: (2, 0), 2: (3, 1), 3: (0, 2)},
                    outer_walk=(0, 3, 2, 1))
    with pytest.raises(ThreeTreeError):
        decompose(sq)


@pytest.mark.parametrize("n,seed", [(20, 0), (60, 1), (200, 7)])
def test_decompose_counters_random(n, seed):
    d = decompose(random_plane_3tree(n, seed))
    r = d.root
    assert r.m == n - 3
    assert r.a + r.b + r.c + r.d == r.m
    assert r.a == r.c + 2 * r.d + 1
    assert r.h <= 2 * r.c + 3 * r.d + 1
    # chains are disjoint runs of type-B vertices
    seen = set()
    for chain in d.b_chains:
        for v in chain:
            assert d.vertex_type(v) == 'B'
            assert v not in seen
            seen.add(v)
    assert len(seen) == r.b


def test_chain_paths_are_induced_and_disjoint():
    g = random_plane_3tree(80, 3)
    d = decompose(g)
    for node in d.nodes:
        if node.chain is None:
            continue
        paths = list(node.chain.paths.values())
        all_v = [v for p in paths for v in p]
        assert len(all_v) == len(set(all_v))
        for p in paths:
            for a, b in zip(p, p[1:]):
                assert g.has_edge(a, b)
        # no edges joining non-consecutive vertices of one path
        for p in paths:
            pos = {v: i for i, v in enumerate(p)}
            for v in p:
                for w in g.rot[v]:
                    if w in pos:
                        assert abs(pos[v] - pos[w]) == 1


def test_format_decomposition():
    out = format_decomposition(decompose(K4))
    assert "type=A w=3 m=1" in out
    assert out.count("empty") == 3
    g = stack(K4.rot, [(1, 0, 3)])
    assert "b-chain 3" in format_decomposition(decompose(g))


# -- chord lemma ---------------------------------------------------------------------


def _fan():
    # square 0-1-2-3 with chord (0,2); interior of cycle [0,1,2,3] on the left
    pos = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
    return graph_from_positions(pos, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def test_lemma1_crosses_separating_chord():
    g = _fan()
    sts = lemma1_chord(g, (0, 1, 2, 3), Xst(0, 1), Xst(2, 3))
    xs = [s for s in sts if s[0] == 'x']
    assert xs == [Xst(0, 1), Xst(0, 2), Xst(2, 3)]
    rep = validate_curve(g, GoodCurve(tuple(sts)))
    assert rep.good


def test_lemma1_vertex_endpoints():
    g = _fan()
    sts = lemma1_chord(g, (0, 1, 2, 3), Vst(1), Vst(3))
    assert sts[0] == Vst(1) and sts[-1] == Vst(3)
    assert [s for s in sts if s[0] == 'x'] == [Xst(0, 2)]


def test_lemma1_same_face_no_crossings():
    g = _fan()
    sts = lemma1_chord(g, (0, 1, 2, 3), Xst(0, 1), Xst(1, 2))
    assert [s[0] for s in sts] == ['x', 'f', 'x']


def test_lemma1_rejects_same_edge():
    g = _fan()
    with pytest.raises(ThreeTreeError):
        lemma1_chord(g, (0, 1, 2, 3), Vst(0), Xst(0, 1))
    with pytest.raises(ThreeTreeError):
        lemma1_chord(g, (0, 1, 2, 3), Vst(0), Vst(1))


def test_lemma1_skips_chords_at_own_endpoint():
    # endpoint vertex with incident chords: the segment leaves through a face
    # at the vertex without cutting any chord it touches
    pos = {0: (0, 0), 1: (2, 0), 2: (3, 2), 3: (1, 3), 4: (-1, 2)}
    g = graph_from_positions(pos, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                                   (0, 2), (0, 3)])
    sts = lemma1_chord(g, (0, 1, 2, 3, 4), Vst(0), Xst(2, 3))
    xs = [s for s in sts if s[0] == 'x']
    assert xs == [Xst(2, 3)]


# -- curve bundles -------------------------------------------------------------------


def _assert_bundle_ok(g, d, cb):
    u, v, z = d.root.corners
    ends = {cb.lambda_u: (Xst(u, v), Xst(u, z)),
            cb.lambda_v: (Xst(v, z), Xst(u, v)),
            cb.lambda_z: (Xst(u, z), Xst(v, z))}
    type_a = {x for x in d.root.interior if d.vertex_type(x) == 'A'}
    type_cd = {x for x in d.root.interior if d.vertex_type(x) in 'CD'}
    for lam, (e1, e2) in ends.items():
        rep = validate_curve(g, lam)
        assert rep.good and rep.proper, rep.violations
        assert {lam.stations[0], lam.stations[-1]} == {e1, e2}
        on = set(lam.vertices)
        assert type_a <= on
        assert not (type_cd & on)
    rep3 = check_lemma3(d, cb)
    assert rep3.ok, rep3.first_violation
    assert cb.best.vertex_count >= math.ceil(d.root.m / 8)


def test_bundle_empty_tree():
    tri = PlaneGraph({0: (1, 2), 1: (2, 0), 2: (0, 1)}, outer_walk=(0, 1, 2))
    d = decompose(tri)
    cb = build_curve_bundle(d)
    for lam in cb.curves:
        assert [s[0] for s in lam.stations] == ['x', 'f', 'x']
        assert lam.vertex_count == 0
    assert (cb.s, cb.x) == (0, 0)
    _assert_bundle_ok(tri, d, cb)


def test_bundle_k4():
    d = decompose(K4)
    cb = build_curve_bundle(d)
    assert cb.s == 3
    for lam in cb.curves:
        assert lam.vertices == (3,)
    _assert_bundle_ok(K4, d, cb)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_bundle_catalog(m):
    for g in catalog_plane_3trees(m):
        d = decompose(g)
        cb = build_curve_bundle(d)
        _assert_bundle_ok(g, d, cb)


@pytest.mark.parametrize("n,seed", [(20, 0), (50, 2), (100, 5), (400, 11)])
def test_bundle_random(n, seed):
    g = random_plane_3tree(n, seed)
    d = decompose(g)
    cb = build_curve_bundle(d)
    _assert_bundle_ok(g, d, cb)


def test_lemma3_at_every_node():
    builder_graphs = [random_plane_3tree(40, 9)] + catalog_plane_3trees(4)[:6]
    for g in builder_graphs:
        d = decompose(g)
        bb = _BundleBuilder(d)
        for node in d.nodes:
            if node.kind == 'empty':
                continue
            ncb = bb.node_bundle(node)
            rep = check_lemma3(d, ncb, node=node)
            assert rep.ok, (node.corners, rep.first_violation)
            # node curves only visit vertices internal to the node
            for lam in ncb.curves:
                assert set(lam.vertices) <= set(node.interior)


# -- DP optimum ----------------------------------------------------------------------


def test_dp_triangle():
    tri = PlaneGraph({0: (1, 2), 1: (2, 0), 2: (0, 1)}, outer_walk=(0, 1, 2))
    table, curve, val = dp_optimal_collinear(decompose(tri))
    assert val == 2
    assert enumerate_curves(tri).max_vertices == 2


def test_dp_k4():
    table, curve, val = dp_optimal_collinear(decompose(K4))
    assert val == enumerate_curves(K4).max_vertices == 2
    rep = validate_curve(K4, curve)
    assert rep.good and rep.proper and rep.vertex_count_on_curve == 2


@pytest.mark.parametrize("m", [2, 3, 4])
def test_dp_matches_oracle(m):
    for g in catalog_plane_3trees(m):
        d = decompose(g)
        table, curve, val = dp_optimal_collinear(d)
        assert val == enumerate_curves(g).max_vertices
        rep = validate_curve(g, curve)
        assert rep.good and rep.proper
        assert rep.vertex_count_on_curve == val


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_dp_internal_minimum(m):
    best = min(max_internal_collinear(decompose(g))
               for g in catalog_plane_3trees(m))
    assert best == math.ceil((m + 2) / 3)


@pytest.mark.parametrize("n,seed", [(30, 0), (120, 4), (500, 8)])
def test_dp_dominates_bundle(n, seed):
    g = random_plane_3tree(n, seed)
    d = decompose(g)
    cb = build_curve_bundle(d)
    table, curve, val = dp_optimal_collinear(d)
    assert val >= cb.best.vertex_count


# -- augmentation --------------------------------------------------------------------


def test_augment_identity_on_3tree():
    g2, added = augment_to_plane_3tree(K4)
    assert g2 is K4 and added == frozenset()


def test_augment_square_to_k4():
    sq = PlaneGraph({0: (1, 3), 1: (2, 0), 2: (3, 1), 3: (0, 2)},
                    outer_walk=(0, 3, 2, 1))
    g2, added = augment_to_plane_3tree(sq)
    assert g2.n == 4 and len(g2.edges) == 6
    assert added == {edge_key(0, 2), edge_key(1, 3)}
    assert decompose(g2).root.m == 1


def test_augment_pentagon():
    pent = PlaneGraph({0: (1, 4), 1: (2, 0), 2: (3, 1), 3: (4, 2), 4: (0, 3)},
                      outer_walk=(0, 4, 3, 2, 1))
    g2, added = augment_to_plane_3tree(pent)
    assert g2.is_triangulation()
    d = decompose(g2)
    assert d.root.m == 2
    for e in added:
        assert not pent.has_edge(*e)


def test_augment_rejects_octahedron():
    oct_rot = {0: (1, 2, 3, 4), 1: (0, 4, 5, 2), 2: (0, 1, 5, 3),
               3: (0, 2, 5, 4), 4: (0, 3, 5, 1), 5: (1, 4, 3, 2)}
    octa = PlaneGraph({v: tuple(reversed(r)) for v, r in oct_rot.items()},
                      outer_walk=(0, 1, 2))
    with pytest.raises(ThreeTreeError):
        augment_to_plane_3tree(octa)


# -- generator -----------------------------------------------------------------------


def test_random_generator_deterministic():
    g1 = random_plane_3tree(30, 5)
    g2 = random_plane_3tree(30, 5)
    assert g1 == g2
    assert g1 != random_plane_3tree(30, 6)


@pytest.mark.parametrize("n", [3, 4, 10, 77])
def test_random_generator_is_3tree(n):
    g = random_plane_3tree(n, n)
    assert g.n == n
    assert g.is_triangulation()
    decompose(g)
