"""Rotation-system plane graphs: tracing, validation, subgraphs, format."""

import pytest

from collinear.plane_graph import (
    PlaneGraph, PlaneGraphError, parse_plane_graph, serialize_plane_graph,
)


def triangle():
    # clockwise rotations for the drawing 0=(0,0), 1=(1,0), 2=(0,1)
    return PlaneGraph({0: (1, 2), 1: (2, 0), 2: (0, 1)}, outer_walk=[0, 1, 2])


def k4():
    # 3 = apex inside outer triangle (0,1,2); outer traced clockwise as 0,1,2
    rot = {
        0: (1, 3, 2),
        1: (2, 3, 0),
        2: (0, 3, 1),
        3: (0, 1, 2),
    }
    return PlaneGraph(rot, outer_walk=[0, 1, 2])


def square():
    return PlaneGraph({0: (1, 3), 1: (2, 0), 2: (3, 1), 3: (0, 2)},
                      outer_walk=[0, 1, 2, 3])


def octahedron():
    # outer triangle (0,1,2), inner triangle (3,4,5); each inner vertex sees
    # two outer ones; clockwise rotations of a straight-line drawing.
    rot = {
        0: (1, 4, 3, 2),
        1: (2, 5, 4, 0),
        2: (0, 3, 5, 1),
        3: (0, 4, 5, 2),
        4: (1, 5, 3, 0),
        5: (2, 3, 4, 1),
    }
    return PlaneGraph(rot, outer_walk=[0, 1, 2])


def test_triangle_faces():
    g = triangle()
    assert g.n == 3 and g.m == 3
    assert len(g.faces) == 2
    assert set(g.outer_walk()) == {0, 1, 2}
    # the other face is the internal one, traversed the other way around
    inner = [i for i in range(2) if i != g.outer][0]
    assert set(g.face_vertices(inner)) == {0, 1, 2}
    assert g.face_vertices(inner) != g.face_vertices(g.outer)


def test_k4_faces():
    g = k4()
    assert g.n == 4 and g.m == 6 and len(g.faces) == 4
    inner = [frozenset(g.face_vertices(i)) for i in g.internal_faces()]
    assert sorted(inner, key=sorted) == [frozenset({0, 1, 3}),
                                         frozenset({0, 2, 3}),
                                         frozenset({1, 2, 3})]
    assert g.is_triconnected()
    assert g.is_triangulation()


def test_ccw_input_rejected():
    # mirror image of the K4 fixture: counter-clockwise rotations.  The
    # declared outer walk then matches a traced face only in reverse.
    rot = {
        0: (2, 3, 1),
        1: (0, 3, 2),
        2: (1, 3, 0),
        3: (2, 1, 0),
    }
    with pytest.raises(PlaneGraphError, match="counter-clockwise"):
        PlaneGraph(rot, outer_walk=[0, 1, 2])


def test_nonplanar_rejected():
    # K5 has no planar rotation system; any rotation fails the Euler check
    rot = {v: tuple(w for w in range(5) if w != v) for v in range(5)}
    with pytest.raises(PlaneGraphError, match="Euler"):
        PlaneGraph(rot, outer_face=0)


def test_disconnected_rejected():
    with pytest.raises(PlaneGraphError, match="connected"):
        PlaneGraph({0: (1,), 1: (0,), 2: (3,), 3: (2,)}, outer_face=0)


def test_asymmetric_rejected():
    with pytest.raises(PlaneGraphError, match="symmetric"):
        PlaneGraph({0: (1,), 1: ()}, outer_face=0)


def test_bad_outer_walk_rejected():
    with pytest.raises(PlaneGraphError, match="not a traced face"):
        PlaneGraph({0: (1, 2), 1: (2, 0), 2: (0, 1)}, outer_walk=[0, 2])


def test_boundary_paths():
    g = square()
    assert g.boundary_path(0, 2, clockwise=True) == (0, 1, 2)
    assert g.boundary_path(0, 2, clockwise=False) == (0, 3, 2)


def test_separation_pairs_and_connectivity():
    g = square()
    assert g.is_biconnected()
    assert set(g.separation_pairs()) == {(0, 2), (1, 3)}
    assert not g.is_triconnected()
    assert octahedron().is_triconnected()


def test_h_bridges():
    g = k4()
    # H = outer triangle with its three edges
    bridges = g.h_bridges([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    assert len(bridges) == 1
    b = bridges[0]
    assert not b.trivial
    assert b.vertices == frozenset({3}) and b.attachments == frozenset({0, 1, 2})
    # H = path 0-1 plus vertex 2: edge (0,2) etc become trivial bridges
    bridges = g.h_bridges([0, 1, 2], [(0, 1)])
    trivial = sorted(tuple(sorted(b.attachments)) for b in bridges if b.trivial)
    assert trivial == [(0, 2), (1, 2)]


def test_subgraph_outer_inheritance():
    g = k4()
    sub = g.subgraph(vertices=[0, 1, 2])
    assert sub.edges == frozenset({frozenset((0, 1)), frozenset((1, 2)),
                                   frozenset((0, 2))}) or sub.m == 3
    assert set(sub.outer_walk()) == {0, 1, 2}
    # deleting an outer edge of the square merges the outer face with nothing odd
    h = square().delete_edge(0, 1)
    assert h.m == 3
    assert len(h.faces) == 1  # a path: single face, necessarily outer


def test_subgraph_inner_outer():
    # removing an outer vertex of K4: outer face must become the merged region
    g = k4()
    sub = g.subgraph(vertices=[0, 1, 3])
    assert set(sub.outer_walk()) == {0, 1, 3}


def test_format_roundtrip():
    for g in (triangle(), k4(), square(), octahedron()):
        text = serialize_plane_graph(g)
        h = parse_plane_graph(text)
        assert h == g
        assert serialize_plane_graph(h) == text


def test_format_errors():
    with pytest.raises(PlaneGraphError, match="header"):
        parse_plane_graph("rot 0: 1\nrot 1: 0\nouter: 0 1\n")
    with pytest.raises(PlaneGraphError, match="0..n-1"):
        parse_plane_graph("planegraph 2\nrot 0: 5\nrot 5: 0\nouter: 0 5\n")
    with pytest.raises(PlaneGraphError, match="outer"):
        parse_plane_graph("planegraph 2\nrot 0: 1\nrot 1: 0\n")


def test_comments_and_blank_lines():
    text = """
# a triangle
planegraph 3
rot 0: 1 2  # clockwise
rot 1: 2 0
rot 2: 0 1

outer: 0 1 2
"""
    assert parse_plane_graph(text) == triangle()
