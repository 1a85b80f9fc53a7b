"""Single-source, single-sink max-flow engines over FlowState residuals.

Engines augment the state they are given, so the returned value is the
incremental flow found on top of whatever the state already carries. The
default engine is blocking-flow augmentation (level graph + DFS); a plain
shortest-augmenting-path engine is kept as an interchangeable alternative.
Any conforming engine must produce identical values (flows may differ).
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from .embedding import corner_dart, insert_vertex_in_face
from .flowstate import Cut, FlowState, cut_from_side

Engine = Callable[[FlowState, int, int], int]


def blocking_flow(state: FlowState, s: int, t: int) -> int:
    """Dinic-style engine: repeat BFS level graphs + DFS blocking flows."""
    g = state.graph
    rot = g.rotations
    tails = g.dart_tails
    cap = state.capacity
    flow = state.flow
    n = g.vertex_count
    total = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            nxt = level[v] + 1
            for d in rot[v]:
                if cap[d] - flow[d] + flow[d ^ 1] > 0:
                    w = tails[d ^ 1]
                    if level[w] < 0:
                        level[w] = nxt
                        queue.append(w)
        if level[t] < 0:
            return total
        ptr = [0] * n
        path: list[int] = []
        v = s
        while True:
            if v == t:
                bottleneck = min(cap[d] - flow[d] + flow[d ^ 1] for d in path)
                for d in path:
                    state.push(d, bottleneck)
                total += bottleneck
                for idx, d in enumerate(path):
                    if cap[d] - flow[d] + flow[d ^ 1] == 0:
                        del path[idx:]
                        v = tails[d]
                        break
                continue
            rv = rot[v]
            advanced = False
            while ptr[v] < len(rv):
                d = rv[ptr[v]]
                if cap[d] - flow[d] + flow[d ^ 1] > 0:
                    w = tails[d ^ 1]
                    if level[w] == level[v] + 1:
                        path.append(d)
                        v = w
                        advanced = True
                        break
                ptr[v] += 1
            if not advanced:
                if v == s:
                    break
                d = path.pop()
                v = tails[d]
                ptr[v] += 1


def shortest_augmenting(state: FlowState, s: int, t: int) -> int:
    """BFS augmenting-path engine (one shortest path per round)."""
    g = state.graph
    rot = g.rotations
    tails = g.dart_tails
    total = 0
    while True:
        parent_dart: dict[int, int] = {s: -1}
        queue = deque([s])
        found = False
        while queue and not found:
            v = queue.popleft()
            for d in rot[v]:
                if state.residual(d) > 0:
                    w = tails[d ^ 1]
                    if w not in parent_dart:
                        parent_dart[w] = d
                        if w == t:
                            found = True
                            break
                        queue.append(w)
        if not found:
            return total
        darts = []
        v = t
        while parent_dart[v] != -1:
            d = parent_dart[v]
            darts.append(d)
            v = tails[d]
        bottleneck = min(state.residual(d) for d in darts)
        for d in darts:
            state.push(d, bottleneck)
        total += bottleneck


ENGINES: dict[str, Engine] = {
    "dinic": blocking_flow,
    "bfs": shortest_augmenting,
}
DEFAULT_ENGINE = "dinic"


def _resolve(engine: str | Engine | None) -> Engine:
    if engine is None:
        return ENGINES[DEFAULT_ENGINE]
    if callable(engine):
        return engine
    try:
        return ENGINES[engine]
    except KeyError:
        raise ValueError(f"unknown engine {engine!r}; choose from {sorted(ENGINES)}") from None


def residual_reachable(state: FlowState, source: int) -> set[int]:
    """All vertices reachable from `source` along residual darts."""
    g = state.graph
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for d in g.rotations[v]:
            if state.residual(d) > 0:
                w = g.head(d)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return seen


def max_st_flow(state: FlowState, s: int, t: int,
                engine: str | Engine | None = None) -> tuple[int, Cut]:
    """Augment `state` to a maximum s-t flow; returns (added value, min cut).

    The cut is the residual-reachability partition from s after the engine
    finishes, which is saturated and separates s from t.
    """
    if s == t:
        raise ValueError("source and sink must differ")
    value = _resolve(engine)(state, s, t)
    return value, cut_from_side(state.graph, residual_reachable(state, s))


def bounded_push(state: FlowState, p: int, t: int, budget: int,
                 engine: str | Engine | None = None) -> int:
    """Push at most `budget` units from p to t through the residual graph.

    Implemented as the super-source reduction: a temporary vertex is
    embedded in a face incident to p, linked to p by an arc of capacity
    `budget`, and a max flow is run from it to t; the temporary material
    is dropped afterwards. Returns the amount actually pushed, which is
    ``min(budget, residual max-flow value p -> t)``.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    if budget == 0 or p == t or not state.graph.rotations[p]:
        return 0
    g = state.graph
    fid = min(g.dart_face[d] for d in g.rotations[p])
    ins = insert_vertex_in_face(g, [corner_dart(g, fid, p)])
    e = ins.new_edges[0]  # edge (p, apex): dart 2e is p->apex, 2e+1 apex->p
    caps = state.capacity + [0, budget]
    aug = FlowState(ins.graph, caps, state.flow + [0, 0])
    pushed, _ = max_st_flow(aug, ins.new_vertex, t, engine)
    state.flow[:] = aug.flow[: g.dart_count]
    state.excess[:] = aug.excess[: g.vertex_count]
    state.excess[p] -= pushed
    return pushed
