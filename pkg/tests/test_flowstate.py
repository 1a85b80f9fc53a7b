import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarflow import (Cut, CyclicSupport, FlowState, cancel_flow_cycles,
                        check_cut_saturated, cut_from_side, drain_excess,
                        flow_value, generate_instance, grid_graph,
                        is_max_preflow, max_st_flow, parse_instance)

SINGLE_EDGE = "plem 2 1\nrot 0 0\nrot 1 1\nedge 0 0 1 5 0\nsrc 0\nsnk 1\n"


def _naive_excess(state):
    g = state.graph
    ex = [0] * g.vertex_count
    for d, f in enumerate(state.flow):
        ex[g.head(d)] += f
        ex[g.tail(d)] -= f
    return ex


def _random_pushes(state, rng, rounds, starts, avoid=()):
    """Drive a preflow by pushing along random residual paths from `starts`.

    Starting at sources keeps excess nonnegative away from the terminals,
    which is what makes the result a preflow rather than an arbitrary
    pseudoflow.
    """
    g = state.graph
    for _ in range(rounds):
        v = rng.choice(starts)
        path = []
        seen = {v}
        for _ in range(rng.randint(1, 6)):
            darts = [d for d in g.rotations[v]
                     if state.residual(d) > 0 and g.head(d) not in seen
                     and g.head(d) not in avoid]
            if not darts:
                break
            d = rng.choice(darts)
            path.append(d)
            v = g.head(d)
            seen.add(v)
        if path:
            amount = rng.randint(1, min(state.residual(d) for d in path))
            for d in path:
                state.push(d, amount)


def test_residual_basics():
    st_ = FlowState.from_instance(parse_instance(SINGLE_EDGE))
    assert st_.residual(0) == 5 and st_.residual(1) == 0
    st_.push(0, 5)
    assert st_.residual(0) == 0
    assert st_.residual(1) == 5  # reverse gains what the forward lost


def test_push_respects_normal_form():
    st_ = FlowState.from_instance(parse_instance(SINGLE_EDGE))
    st_.push(0, 5)
    st_.push(1, 3)
    assert st_.flow == [2, 0]
    with pytest.raises(ValueError):
        st_.push(0, 99)


def test_residual_matches_naive_recomputation():
    rng = random.Random(0)
    inst = generate_instance("triangulation", 30, 0, 9, 1)
    state = FlowState.from_instance(inst)
    _random_pushes(state, rng, 60, starts=list(range(inst.graph.vertex_count)))
    for d in range(inst.graph.dart_count):
        naive = inst.capacities[d] - state.flow[d] + state.flow[d ^ 1]
        assert state.residual(d) == naive
    assert state.excess == _naive_excess(state)


def test_is_max_preflow_witness():
    inst = parse_instance(SINGLE_EDGE)
    state = FlowState.from_instance(inst)
    ok, witness = is_max_preflow(state, [0], [1])
    assert not ok and witness == [0, 1]
    state.push(0, 5)
    ok, witness = is_max_preflow(state, [0], [1])
    assert ok and witness is None


def test_excess_vertex_counts_as_seed():
    g = grid_graph(1, 3)  # 0-1-2
    state = FlowState(g, [3, 3, 3, 3])
    state.push(0, 2)  # excess parked at vertex 1
    ok, witness = is_max_preflow(state, [], [2])
    assert not ok and witness == [1, 2]


def test_check_cut_saturated():
    inst = parse_instance(SINGLE_EDGE)
    state = FlowState.from_instance(inst)
    empty_a = Cut(frozenset(), frozenset({0, 1}))
    assert check_cut_saturated(state, empty_a)
    st_cut = cut_from_side(inst.graph, [0])
    assert not check_cut_saturated(state, st_cut)
    state.push(0, 5)
    assert check_cut_saturated(state, st_cut)


def test_min_cut_of_solved_instance_is_saturated(small_corpus):
    for inst in small_corpus[:10]:
        state = FlowState.from_instance(inst)
        _, cut = max_st_flow(state, inst.sources[0], inst.sinks[0])
        assert inst.sinks[0] in cut.b
        assert check_cut_saturated(state, cut)


def test_cancel_noop_on_acyclic():
    inst = parse_instance(SINGLE_EDGE)
    state = FlowState.from_instance(inst)
    state.push(0, 3)
    before = list(state.flow)
    cancel_flow_cycles(state)
    assert state.flow == before and state.cancelled_cycles == 0


def test_cancel_hand_built_cycle():
    # triangle cycle of 2 units plus an s->t spur: 0->1->2->0 and 0->3
    g = grid_graph(2, 2)  # edges: (0,1) (0,2) (1,3) (2,3)
    caps = [9] * g.dart_count
    state = FlowState(g, caps)
    # cycle 0 ->1 ->3 ->2 ->0 of 2 units
    for d in (0, 4, 7, 3):
        state.push(d, 2)
    # path 0 -> 1 -> 3 of 1 unit
    state.push(0, 1)
    state.push(4, 1)
    value_before = flow_value(state, [3])
    excess_before = list(state.excess)
    cancel_flow_cycles(state)
    assert state.cancelled_cycles == 1
    assert state.excess == excess_before
    assert flow_value(state, [3]) == value_before
    assert state.flow[0] == 1 and state.flow[4] == 1 and state.flow[7] == 0


def test_cancel_random_injected_cycles():
    rng = random.Random(5)
    for seed in range(8):
        inst = generate_instance("grid", 36, seed, 9, 1)
        state = FlowState.from_instance(inst)
        _random_pushes(state, rng, 40, starts=inst.sources)
        # inject cycles along random faces
        g = inst.graph
        for f in rng.sample(range(len(g.faces)), 4):
            cyc = g.faces[f]
            amt = min(state.residual(d) for d in cyc)
            if amt:
                for d in cyc:
                    state.push(d, rng.randint(1, amt) if amt else 0)
        excess_before = list(state.excess)
        cancel_flow_cycles(state)
        assert state.excess == excess_before
        assert _naive_excess(state) == excess_before
        # support graph is now acyclic: drain must not raise
        drain_excess(state, inst.sources, inst.sinks)


def test_drain_noop_on_flow():
    inst = parse_instance(SINGLE_EDGE)
    state = FlowState.from_instance(inst)
    state.push(0, 4)
    before = list(state.flow)
    drain_excess(state, [0], [1])
    assert state.flow == before


def test_drain_hand_case():
    # s=0 -> v=1 carries 5, v -> t=2 carries 2: inflow at v reduced to 2
    g = grid_graph(1, 3)
    state = FlowState(g, [9, 9, 9, 9])
    state.push(0, 5)
    state.push(2, 2)
    drain_excess(state, [0], [2])
    assert state.flow[0] == 2 and state.flow[2] == 2
    assert state.excess[1] == 0


def test_drain_requires_acyclic_support():
    g = grid_graph(2, 2)
    state = FlowState(g, [9] * g.dart_count)
    for d in (0, 4, 7, 3):
        state.push(d, 2)
    with pytest.raises(CyclicSupport):
        drain_excess(state, [0], [3])


def test_flow_value_identities(small_corpus):
    for inst in small_corpus[:8]:
        state = FlowState.from_instance(inst)
        assert flow_value(state, inst.sinks) == 0
        max_st_flow(state, inst.sources[0], inst.sinks[0])
        value = flow_value(state, inst.sinks)
        # conservation: net inflow at T equals net outflow of S
        ex = _naive_excess(state)
        assert value == -sum(ex[s] for s in inst.sources)


def test_saturated_single_edge_value():
    inst = parse_instance(SINGLE_EDGE.replace("5", "7"))
    state = FlowState.from_instance(inst)
    state.push(0, 7)
    assert flow_value(state, [1]) == 7


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 5000))
def test_conversion_preserves_value_and_excess_budget(seed):
    """Cycle cancellation plus draining yields a valid flow with the same
    net inflow at the sink, for preflows built away from the sink."""
    rng = random.Random(seed)
    inst = generate_instance("triangulation", 5 + seed % 30, seed, 7, 1)
    state = FlowState.from_instance(inst)
    t = inst.sinks[0]
    max_st_flow(state, inst.sources[0], t)  # a real flow into the sink first
    _random_pushes(state, rng, 30, starts=inst.sources, avoid={t})
    value = flow_value(state, inst.sinks)
    cancel_flow_cycles(state)
    drain_excess(state, inst.sources, inst.sinks)
    assert flow_value(state, inst.sinks) == value
    ex = _naive_excess(state)
    terminals = set(inst.sources) | set(inst.sinks)
    assert all(ex[v] == 0 for v in range(inst.graph.vertex_count)
               if v not in terminals)
