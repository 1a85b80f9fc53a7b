import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarflow import InvalidParams, generate_instance, write_instance


def test_grid_9_is_3x3_and_reproducible():
    a = generate_instance("grid", 9, 1, 10, 2)
    b = generate_instance("grid", 9, 1, 10, 2)
    assert a.graph.vertex_count == 9
    assert a.graph.edge_count == 12
    assert write_instance(a) == write_instance(b)


def test_triangulation_is_euler_valid():
    inst = generate_instance("triangulation", 100, 7, 100, 5)
    g = inst.graph
    assert g.vertex_count == 100
    assert g.vertex_count - g.edge_count + len(g.faces) == 2
    assert all(len(f) == 3 for f in g.faces)
    assert len(inst.sources) == 5 and len(inst.sinks) == 1


def test_degenerate_size_rejected():
    with pytest.raises(InvalidParams):
        generate_instance("grid", 1, 1, 10, 1)


@pytest.mark.parametrize("kind,n,cap,k", [
    ("grid", 0, 5, 1), ("grid", 9, 0, 1), ("grid", 9, 5, 0),
    ("nonesuch", 9, 5, 1), ("triangulation", 2, 5, 1),
])
def test_invalid_params(kind, n, cap, k):
    with pytest.raises(InvalidParams):
        generate_instance(kind, n, 1, cap, k)


def test_different_seeds_differ():
    a = generate_instance("triangulation", 40, 1, 10, 2)
    b = generate_instance("triangulation", 40, 2, 10, 2)
    assert write_instance(a) != write_instance(b)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.booleans())
def test_generated_instances_are_valid(seed, use_grid):
    kind = "grid" if use_grid else "triangulation"
    inst = generate_instance(kind, 5 + seed % 60, seed, 12, 1 + seed % 4)
    caps = inst.capacities
    assert all(1 <= c <= 12 for c in caps)
    assert inst.graph.connected
    assert set(inst.sources).isdisjoint(inst.sinks)
    assert write_instance(inst) == write_instance(
        generate_instance(kind, 5 + seed % 60, seed, 12, 1 + seed % 4))
