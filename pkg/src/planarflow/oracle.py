"""Ground-truth machinery: reduction-based oracle, validator, counterexample.

The oracle deliberately shares nothing with the solver stack: it flattens
an instance into plain arc lists, applies the classical super-source /
super-sink reduction and runs shortest-augmenting-path max flow on its own
residual representation, ignoring the embedding entirely.
"""

from __future__ import annotations

import importlib.resources as resources
import random
from collections import deque

from .errors import SearchFailed
from .formats import Instance, parse_instance
from .generators import stacked_triangulation


class _ArcNet:
    """Tiny residual network: paired arcs, capacities only."""

    def __init__(self, n: int):
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, cap: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        n = len(self.adj)
        while True:
            prev = [-1] * n
            prev[s] = -2
            queue = deque([s])
            while queue and prev[t] == -1:
                u = queue.popleft()
                for a in self.adj[u]:
                    v = self.to[a]
                    if self.cap[a] > 0 and prev[v] == -1:
                        prev[v] = a
                        queue.append(v)
            if prev[t] == -1:
                return total
            bottleneck = None
            v = t
            while v != s:
                a = prev[v]
                bottleneck = self.cap[a] if bottleneck is None else min(
                    bottleneck, self.cap[a])
                v = self.to[a ^ 1]
            v = t
            while v != s:
                a = prev[v]
                self.cap[a] -= bottleneck
                self.cap[a ^ 1] += bottleneck
                v = self.to[a ^ 1]
            total += bottleneck


def oracle_value(instance: Instance) -> int:
    """Exact max-flow value from sources to sinks via the classical reduction."""
    g = instance.graph
    n = g.vertex_count
    net = _ArcNet(n + 2)
    never_bottleneck = sum(instance.capacities) + 1
    for d, cap in enumerate(instance.capacities):
        if cap > 0:
            net.add(g.tail(d), g.head(d), cap)
    for s in instance.sources:
        net.add(n, s, never_bottleneck)
    for t in instance.sinks:
        net.add(t, n + 1, never_bottleneck)
    return net.max_flow(n, n + 1)


def validate_flow(instance: Instance, state) -> list[str]:
    """Violation report for a claimed flow; empty list iff the flow is valid.

    Recomputes everything from the raw per-dart flow values: capacity
    bounds, nonnegativity, and conservation at non-terminal vertices.
    """
    g = instance.graph
    report = []
    flow = state.flow if hasattr(state, "flow") else list(state)
    if len(flow) != g.dart_count:
        return [f"flow vector has length {len(flow)}, expected {g.dart_count}"]
    balance = [0] * g.vertex_count
    for d, f in enumerate(flow):
        if f < 0:
            report.append(f"negative flow {f} on dart {d}")
            continue
        if f > instance.capacities[d]:
            report.append(
                f"flow {f} exceeds capacity {instance.capacities[d]} on dart {d}")
        if f:
            balance[g.head(d)] += f
            balance[g.tail(d)] -= f
    terminals = set(instance.sources) | set(instance.sinks)
    for v in range(g.vertex_count):
        if v not in terminals and balance[v] != 0:
            report.append(f"conservation violated at vertex {v}: excess {balance[v]}")
    return report


# -- Figure-style pair-order counterexample ---------------------------------


def _pair_order(sources: list[int], sinks: list[int]) -> list[tuple[int, int]]:
    s, s2 = sources
    t, t2 = sinks
    return [(s, t), (s2, t2), (s, t2), (s2, t)]


def _candidate(seed: int) -> tuple[Instance, list[tuple[int, int]]]:
    rng = random.Random(f"fig1:{seed}")
    n = rng.randint(4, 8)
    graph = stacked_triangulation(n, rng)
    caps = [0] * graph.dart_count
    for e in range(graph.edge_count):
        # capacity 0 encodes a missing arc; dropping many edges entirely
        # keeps sparse, nearly tree-like effective topologies in the family
        if rng.random() < 0.35:
            continue
        mode = rng.randrange(3)  # forward only, backward only, both ways
        if mode != 1:
            caps[2 * e] = rng.randint(1, 3)
        if mode != 0:
            caps[2 * e + 1] = rng.randint(1, 3)
    s, s2, t, t2 = rng.sample(range(n), 4)
    inst = Instance(graph, caps, [s, s2], [t, t2])
    return inst, _pair_order(inst.sources, inst.sinks)


def build_fig1_counterexample(max_seeds: int = 200_000):
    """Search small random embedded instances for the pair-order trap.

    Wanted: max flow from the two sources to the two sinks is 3, while
    saturating pairs in the order (s,t),(s',t'),(s,t'),(s',t) yields only
    2. The search sweeps a deterministic seeded family of triangulations
    with one-way/two-way capacities in {1,2,3}; raises SearchFailed when
    the bound is exhausted. The first hit is frozen in the repository as
    ``fixtures/fig1.plem``.
    """
    from .solver import pairwise_arbitrary_saturation
    from .flowstate import flow_value

    for seed in range(max_seeds):
        inst, order = _candidate(seed)
        if oracle_value(inst) != 3:
            continue
        state = pairwise_arbitrary_saturation(inst, order)
        if flow_value(state, inst.sinks) == 2:
            return inst, order
    raise SearchFailed(
        f"no counterexample within {max_seeds} seeds; enlarge the bound")


def load_fig1_fixture() -> tuple[Instance, list[tuple[int, int]]]:
    """The frozen counterexample instance and its trap pair order."""
    text = resources.files("planarflow").joinpath("fixtures/fig1.plem").read_text()
    inst = parse_instance(text)
    return inst, _pair_order(inst.sources, inst.sinks)
