"""Shared corpus builders and small independent oracles for the tests."""

from __future__ import annotations

import random

import pytest

from planarflow import Instance, generate_instance


def corpus(count: int, seed0: int = 0, max_n: int = 120, cap_max: int = 100,
           max_sources: int = 8, extra_sinks: int = 0) -> list[Instance]:
    """Deterministic mixed bag of grid and triangulation instances."""
    out = []
    for i in range(count):
        seed = seed0 + i
        rng = random.Random(f"corpus:{seed}")
        kind = "grid" if i % 2 else "triangulation"
        n = rng.randint(6, max_n)
        k = rng.randint(1, max(1, min(max_sources, n // 2)))
        inst = generate_instance(kind, n, seed, cap_max, k)
        if extra_sinks:
            free = [v for v in range(inst.graph.vertex_count)
                    if v not in inst.sources and v not in inst.sinks]
            extras = rng.sample(free, min(extra_sinks, len(free)))
            inst = Instance(inst.graph, inst.capacities, inst.sources,
                            inst.sinks + extras)
        out.append(inst)
    return out


def relabel(inst: Instance, rng: random.Random) -> Instance:
    """Apply a random vertex permutation; dart ids stay fixed."""
    from planarflow import build_graph

    n = inst.graph.vertex_count
    perm = list(range(n))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in inst.graph.edges]
    rotations: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        rotations[perm[v]] = list(inst.graph.rotations[v])
    g = build_graph(n, edges, rotations)
    return Instance(g, list(inst.capacities), [perm[s] for s in inst.sources],
                    [perm[t] for t in inst.sinks])


@pytest.fixture
def small_corpus():
    return corpus(30, seed0=1000, max_n=60)
