import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarflow import (DanglingDart, NonEmbedding, build_graph, faces,
                        grid_graph, induced_subgraph, insert_vertex_in_face,
                        stacked_triangulation)

TRIANGLE = dict(vertex_count=3, edges=[(0, 1), (1, 2), (2, 0)],
                rotations=[[0, 5], [2, 1], [4, 3]])


def test_triangle_has_two_triangular_faces():
    g = build_graph(**TRIANGLE)
    assert len(g.faces) == 2
    assert sorted(len(f) for f in g.faces) == [3, 3]
    assert g.vertex_count - g.edge_count + len(g.faces) == 2


def test_single_edge_has_one_face_of_two_darts():
    g = build_graph(2, [(0, 1)], [[0], [1]])
    assert len(g.faces) == 1
    assert len(g.faces[0]) == 2


def test_grid_3x3_face_count_by_traversal():
    # traversal oracle: 4 inner quads + 1 outer face; Euler: 2 - 9 + 12 = 5
    g = grid_graph(3, 3)
    assert len(g.faces) == 5
    assert sorted(len(f) for f in g.faces) == [4, 4, 4, 4, 8]


def test_random_triangulation_face_count_matches_euler():
    g = stacked_triangulation(50, random.Random(7))
    assert len(g.faces) == 2 - g.vertex_count + g.edge_count
    assert all(len(f) == 3 for f in g.faces)


def test_face_traversal_partitions_darts():
    g = stacked_triangulation(40, random.Random(3))
    seen = [0] * g.dart_count
    for f in g.faces:
        for d in f:
            seen[d] += 1
    assert all(c == 1 for c in seen)
    # walking next_face_dart from any dart returns to it in |face| steps
    for f in g.faces:
        d = f[0]
        for _ in range(len(f)):
            d = g.next_face_dart(d)
        assert d == f[0]


def test_dangling_dart_rejected():
    bad = dict(TRIANGLE, rotations=[[0, 99], [2, 1], [4, 3]])
    with pytest.raises(DanglingDart):
        build_graph(**bad)


def test_duplicate_dart_rejected():
    bad = dict(TRIANGLE, rotations=[[0, 5, 0], [2, 1], [4, 3]])
    with pytest.raises(NonEmbedding):
        build_graph(**bad)


def test_missing_dart_rejected():
    bad = dict(TRIANGLE, rotations=[[0], [2, 1], [4, 3]])
    with pytest.raises(NonEmbedding):
        build_graph(**bad)


def test_self_loop_rejected():
    with pytest.raises(NonEmbedding):
        build_graph(2, [(0, 0), (0, 1)], [[0, 1, 2], [3]])


def test_toroidal_rotation_fails_euler():
    # K4 with one vertex rotation reversed embeds on the torus, not the plane
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    planar = [[4, 0, 2], [6, 1, 8], [10, 3, 7], [9, 5, 11]]
    g = build_graph(4, edges, planar)
    assert len(g.faces) == 4
    twisted = [list(r) for r in planar]
    twisted[0].reverse()
    with pytest.raises(NonEmbedding):
        build_graph(4, edges, twisted)


def test_faces_accessor_copies():
    g = build_graph(**TRIANGLE)
    fs = faces(g)
    fs[0].append(99)
    assert all(99 not in f for f in g.faces)


def test_insert_vertex_in_face_full_star():
    g = grid_graph(3, 3)
    quad = next(f for f in g.faces if len(f) == 4)
    ins = insert_vertex_in_face(g, list(quad))
    h = ins.graph
    assert h.vertex_count == g.vertex_count + 1
    assert h.edge_count == g.edge_count + 4
    assert len(h.faces) == len(g.faces) + 3
    # old dart ids keep their endpoints
    for d in range(g.dart_count):
        assert h.tail(d) == g.tail(d) and h.head(d) == g.head(d)


def test_insert_vertex_single_anchor_keeps_face_count():
    g = grid_graph(3, 3)
    quad = next(f for f in g.faces if len(f) == 4)
    ins = insert_vertex_in_face(g, [quad[0]])
    assert len(ins.graph.faces) == len(g.faces)
    assert len(ins.graph.rotations[ins.new_vertex]) == 1


def test_induced_subgraph_inherits_embedding():
    g = grid_graph(4, 4)
    sub = induced_subgraph(g, range(8))  # top two rows: a 2x4 grid
    assert sub.graph.vertex_count == 8
    assert sub.graph.edge_count == 10
    assert sub.graph.connected
    for d in range(sub.graph.dart_count):
        pd = sub.to_parent_dart(d)
        assert g.tail(pd) == sub.to_parent_vertex[sub.graph.tail(d)]


def test_induced_subgraph_may_disconnect():
    g = grid_graph(1, 5)  # path 0-1-2-3-4
    sub = induced_subgraph(g, [0, 1, 3, 4])
    assert sub.graph.component_count == 2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_triangulation_embedding_valid_for_any_seed(seed):
    rng = random.Random(seed)
    g = stacked_triangulation(rng.randint(3, 40), rng)
    assert g.vertex_count - g.edge_count + len(g.faces) == 2
    assert g.connected
