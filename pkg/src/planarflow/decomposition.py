"""Cycle separators, hole-bounded divisions, and super-sink attachment.

A piece is a subgraph of a level graph together with its boundary (the
vertices shared with other pieces or marked terminal) and its holes (the
faces not inherited from the level graph, plus degenerate single-vertex
holes for boundary vertices not lying on any such face). Divisions split
a piece with balanced cycle separators until every subpiece satisfies the
size, boundary and hole bounds.

Separators are fundamental cycles of a BFS tree in a chord-triangulated
scratch copy: candidates are ranked by dual-tree subtree weights and then
verified exactly (simple cycle, 2/3 balance of both sides) before use.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .embedding import (EmbeddedGraph, build_graph, corner_dart,
                        induced_subgraph, insert_vertex_in_face)
from .errors import CannotSatisfyBounds, InvalidParams, NotConnected, SeparatorFailed
from .formats import Instance

# Optional audit sink: when set to a list, every separator call appends
# (graph, weights, cycle) for external verification in test builds.
separator_audit: list | None = None


# -- scratch triangulation --------------------------------------------------


def triangulate(g: EmbeddedGraph) -> EmbeddedGraph:
    """Chord-triangulated scratch copy; vertex ids are preserved.

    Faces longer than three darts are fan-triangulated. Chords that would
    duplicate an edge or form a loop are skipped, so each fan probes a few
    anchor corners and keeps the least blocked one; remaining oversized
    faces are retried in further rounds until no chord can be added.
    Separator quality is verified downstream, never assumed.
    """
    for _ in range(16):
        g2, added = _fan_round(g)
        g = g2
        if not added:
            return g
    return g


def _fan_round(g: EmbeddedGraph) -> tuple[EmbeddedGraph, int]:
    edges = list(g.edges)
    present = set()
    for u, v in edges:
        present.add((u, v) if u < v else (v, u))
    insert_after: dict[int, list[int]] = {}
    added = 0

    for walk in g.faces:
        k = len(walk)
        if k <= 3:
            continue
        heads = [g.head(d) for d in walk]
        counts: dict[int, int] = {}
        for h in heads:
            counts[h] = counts.get(h, 0) + 1
        # probe a few anchors; fanning from a corner whose chords already
        # exist (e.g. the twin side of an already-fanned cycle) adds nothing
        order = sorted(range(k), key=lambda j: (counts[heads[j]] > 1, j))
        best, best_blocked = order[0], None
        for j in order[: min(8, k)]:
            u = heads[j]
            blocked = 0
            for step in range(2, k - 1):
                v = heads[(j + step) % k]
                if v == u or (min(u, v), max(u, v)) in present:
                    blocked += 1
            if best_blocked is None or blocked < best_blocked:
                best, best_blocked = j, blocked
            if blocked == 0:
                break
        w = walk[best + 1:] + walk[: best + 1]  # anchor corner now last
        u = g.head(w[-1])
        at_anchor: list[int] = []
        for i in range(2, k - 1):
            v = g.head(w[i - 1])
            key = (u, v) if u < v else (v, u)
            if v == u or key in present:
                continue
            present.add(key)
            e = len(edges)
            edges.append((u, v))
            added += 1
            at_anchor.append(2 * e)
            insert_after.setdefault(w[i - 1] ^ 1, []).append(2 * e + 1)
        if at_anchor:
            insert_after.setdefault(w[-1] ^ 1, []).extend(reversed(at_anchor))

    if not added:
        return g, 0
    rotations = []
    for v in range(g.vertex_count):
        rot = []
        for d in g.rotations[v]:
            rot.append(d)
            if d in insert_after:
                rot.extend(insert_after[d])
        rotations.append(rot)
    return build_graph(g.vertex_count, edges, rotations), added


# -- separator ----------------------------------------------------------------


def _center_root(g: EmbeddedGraph) -> int:
    def bfs_far(src):
        dist = [-1] * g.vertex_count
        par = [-1] * g.vertex_count
        dist[src] = 0
        queue = deque([src])
        last = src
        while queue:
            v = queue.popleft()
            last = v
            for d in g.rotations[v]:
                w = g.head(d)
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    par[w] = v
                    queue.append(w)
        return last, dist, par

    a, _, _ = bfs_far(0)
    b, dist, par = bfs_far(a)
    # middle of the a-b path
    steps = dist[b] // 2
    v = b
    for _ in range(steps):
        v = par[v]
    return v


def _bfs_tree(g: EmbeddedGraph, root: int):
    parent_dart = [-1] * g.vertex_count
    depth = [-1] * g.vertex_count
    depth[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in g.rotations[v]:
            w = g.head(d)
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent_dart[w] = d
                queue.append(w)
    return parent_dart, depth


def _fundamental_cycle(tg: EmbeddedGraph, e: int, parent_dart, depth):
    """Dart cycle (tree path + non-tree edge) through edge e, or None."""
    u, v = tg.edges[e]
    if u == v:
        return None
    up_u: list[int] = []
    up_v: list[int] = []
    x, y = u, v
    while depth[x] > depth[y]:
        d = parent_dart[x]
        up_u.append(d)
        x = tg.tail(d)
    while depth[y] > depth[x]:
        d = parent_dart[y]
        up_v.append(d)
        y = tg.tail(d)
    while x != y:
        d = parent_dart[x]
        up_u.append(d)
        x = tg.tail(d)
        d = parent_dart[y]
        up_v.append(d)
        y = tg.tail(d)
    # walk: lca -> u (tree), u -> v (edge e), v -> lca (tree, reversed)
    cyc = [d for d in reversed(up_u)]
    cyc.append(2 * e)  # dart u->v
    cyc.extend(d ^ 1 for d in up_v)
    if len(cyc) < 3:
        return None
    return cyc


def _classify_sides(tg: EmbeddedGraph, cycle_darts: list[int]):
    """Split tg's non-cycle vertices into the two sides of a dart cycle.

    Side membership of a neighbor is read off the rotation interval at each
    cycle vertex between the departing and arriving cycle darts; whole
    components of tg minus the cycle inherit the side of their seeds.
    Returns (cycle_vertices, side_a, side_b) or None on inconsistency.
    """
    n = tg.vertex_count
    on_cycle = [False] * n
    cyc_vertices = [tg.tail(d) for d in cycle_darts]
    for c in cyc_vertices:
        if on_cycle[c]:
            return None  # not a simple cycle
        on_cycle[c] = True

    comp = [-1] * n
    comps: list[list[int]] = []
    for s in range(n):
        if comp[s] >= 0 or on_cycle[s]:
            continue
        cid = len(comps)
        comp[s] = cid
        bucket = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for d in tg.rotations[x]:
                w = tg.head(d)
                if not on_cycle[w] and comp[w] < 0:
                    comp[w] = cid
                    bucket.append(w)
                    queue.append(w)
        comps.append(bucket)

    comp_side = [0] * len(comps)  # 0 unknown, 1 side A, 2 side B
    k = len(cycle_darts)
    for i in range(k):
        d_out = cycle_darts[i]
        d_in = cycle_darts[i - 1]
        c = tg.tail(d_out)
        rot = tg.rotations[c]
        try:
            pos = rot.index(d_out)
        except ValueError:
            return None
        stop = d_in ^ 1
        side = 1
        j = (pos + 1) % len(rot)
        while j != pos:
            d = rot[j]
            if d == stop:
                side = 2
            else:
                w = tg.head(d)
                if not on_cycle[w]:
                    cid = comp[w]
                    if comp_side[cid] == 0:
                        comp_side[cid] = side
                    elif comp_side[cid] != side:
                        return None  # embedding says both sides: reject
            j = (j + 1) % len(rot)

    side_a: list[int] = []
    side_b: list[int] = []
    for cid, bucket in enumerate(comps):
        (side_a if comp_side[cid] != 2 else side_b).extend(bucket)
    return cyc_vertices, side_a, side_b


def _separate(g: EmbeddedGraph, weights: list[int]):
    """Balanced simple-cycle separator: (cycle vertices, side A, side B)."""
    n = g.vertex_count
    if not g.connected:
        raise NotConnected("cycle separator needs a connected graph")
    if n < 3:
        raise SeparatorFailed("graph too small to contain a cycle")
    total = sum(weights)

    tg = triangulate(g)
    root = _center_root(tg)
    parent_dart, depth = _bfs_tree(tg, root)
    tree_edge = [False] * tg.edge_count
    for v in range(n):
        if parent_dart[v] >= 0:
            tree_edge[parent_dart[v] >> 1] = True
    nontree = [e for e in range(tg.edge_count) if not tree_edge[e]]
    if not nontree:
        raise SeparatorFailed("graph is a tree; no cycle exists")

    # dual tree over faces linked by non-tree edges
    fcount = len(tg.faces)
    dual_adj: list[list[tuple[int, int]]] = [[] for _ in range(fcount)]
    for e in nontree:
        f1 = tg.dart_face[2 * e]
        f2 = tg.dart_face[2 * e + 1]
        dual_adj[f1].append((f2, e))
        dual_adj[f2].append((f1, e))
    face_w = [0] * fcount
    for v in range(n):
        if weights[v] and tg.rotations[v]:
            face_w[tg.dart_face[tg.rotations[v][0]]] += weights[v]
    parent_edge = [-1] * fcount
    order = [0]
    seen = [False] * fcount
    seen[0] = True
    for f in order:
        for (f2, e) in dual_adj[f]:
            if not seen[f2]:
                seen[f2] = True
                parent_edge[f2] = e
                order.append(f2)
    subtree = list(face_w)
    edge_inside = {}
    for f in reversed(order[1:]):
        e = parent_edge[f]
        edge_inside[e] = subtree[f]
        f1 = tg.dart_face[2 * e]
        f2 = tg.dart_face[2 * e + 1]
        subtree[f2 if f == f1 else f1] += subtree[f]

    half = total / 2.0
    ranked = sorted(edge_inside, key=lambda e: (abs(edge_inside[e] - half), e))

    # Prefer balanced candidates that leave vertices on both sides: a split
    # that recreates the whole piece makes no division progress. Cycle-only
    # graphs still get served by the empty-side fallback.
    fallback = None
    for e in ranked:
        cyc = _fundamental_cycle(tg, e, parent_dart, depth)
        if cyc is None:
            continue
        sides = _classify_sides(tg, cyc)
        if sides is None:
            continue
        cyc_vertices, side_a, side_b = sides
        wa = sum(weights[v] for v in side_a)
        wb = sum(weights[v] for v in side_b)
        if not (total == 0 or (3 * wa <= 2 * total and 3 * wb <= 2 * total)):
            continue
        if side_a and side_b:
            if separator_audit is not None:
                separator_audit.append((g, list(weights), list(cyc_vertices)))
            return cyc_vertices, side_a, side_b
        if fallback is None:
            fallback = (cyc_vertices, side_a, side_b)
    if fallback is not None:
        if separator_audit is not None:
            separator_audit.append((g, list(weights), list(fallback[0])))
        return fallback
    raise SeparatorFailed(
        f"no balanced fundamental cycle among {len(ranked)} candidates")


def cycle_separator(g: EmbeddedGraph, weights: list[int] | None = None) -> list[int]:
    """Simple cycle whose removal leaves no side heavier than 2/3 of total."""
    if weights is None:
        weights = [1] * g.vertex_count
    cycle, _, _ = _separate(g, weights)
    return cycle


# -- pieces and divisions ---------------------------------------------------


@dataclass(frozen=True)
class Hole:
    """A face of a piece that feeds a super sink, with its anchor vertices."""

    face: int
    anchors: tuple[int, ...]
    degenerate: bool = False


@dataclass
class Piece:
    """Subgraph of a level graph with boundary, sources and hole bookkeeping.

    Vertex and dart ids in `boundary`, `sources` and holes are local to
    `graph`; the `to_parent_*` maps translate to the level graph.
    """

    graph: EmbeddedGraph
    parent: EmbeddedGraph
    to_parent_vertex: list[int]
    to_parent_edge: list[int]
    boundary: frozenset[int]
    sources: frozenset[int]
    holes: list[Hole] = field(default_factory=list)
    external: Hole | None = None

    @property
    def size(self) -> int:
        return self.graph.vertex_count

    def to_parent_dart(self, dart: int) -> int:
        return 2 * self.to_parent_edge[dart >> 1] | (dart & 1)

    def parent_boundary(self) -> set[int]:
        return {self.to_parent_vertex[v] for v in self.boundary}


@dataclass
class DivisionParams:
    """Knobs for one division level and the recursion driven by it."""

    p: int = 2               # target subpiece count (analysis constant)
    c_p: float = 0.5         # max piece size as a fraction of the parent
    boundary_coeff: float = 10.0
    sink_bound: int = 6      # t: max sinks per recursive instance
    r: int = 64              # base-case size: recursion stops at or below

    def __post_init__(self):
        if self.p < 2:
            raise InvalidParams("p must be at least 2")
        if not 0 < self.c_p < 1:
            raise InvalidParams("c_p must lie strictly between 0 and 1")
        if self.sink_bound < 2:
            raise InvalidParams("sink bound must be at least 2")
        if self.r < 2:
            raise InvalidParams("r must be at least 2")
        if self.boundary_coeff <= 0:
            raise InvalidParams("boundary_coeff must be positive")

    @property
    def hole_bound(self) -> int:
        return self.sink_bound - 1


@dataclass
class Division:
    """A one-level split of a piece into bound-satisfying subpieces."""

    parent_piece: Piece
    pieces: list[Piece]
    separators: list[list[int]]  # level-graph vertex ids per separator


def division_tree(division: Division, indent: int = 0) -> str:
    """Human-readable nested dump of a division for debugging."""
    pad = "  " * indent
    root = division.parent_piece
    lines = [f"{pad}divide n={root.size} boundary={len(root.boundary)} "
             f"holes={len(root.holes)} -> {len(division.pieces)} pieces, "
             f"{len(division.separators)} separators"]
    for i, piece in enumerate(division.pieces):
        lines.append(
            f"{pad}  [{i}] n={piece.size} boundary={len(piece.boundary)} "
            f"holes={len(piece.holes)}"
            f"{' +external' if piece.external else ''} "
            f"sources={len(piece.sources)}")
    return "\n".join(lines)


def _compute_holes(graph: EmbeddedGraph, to_parent_dart, parent: EmbeddedGraph,
                   boundary: frozenset[int]):
    """Holes of a piece: non-inherited faces carrying boundary vertices,
    plus degenerate holes for boundary vertices not covered by them."""
    entries: list[Hole] = []
    for fid, walk in enumerate(graph.faces):
        inherited = True
        for d in walk:
            if parent.next_face_dart(to_parent_dart(d)) != to_parent_dart(
                    graph.next_face_dart(d)):
                inherited = False
                break
        if inherited:
            continue
        anchors = []
        seen = set()
        for d in walk:
            h = graph.head(d)
            if h in boundary and h not in seen:
                seen.add(h)
                anchors.append(h)
        if anchors:
            entries.append(Hole(fid, tuple(anchors)))

    external = None
    if entries:
        external = max(entries, key=lambda h: (len(graph.faces[h.face]), -h.face))
        entries = [h for h in entries if h is not external]

    covered = set()
    for h in entries:
        covered.update(h.anchors)
    if external:
        covered.update(external.anchors)
    holes = list(entries)
    for v in sorted(boundary - covered):
        if graph.rotations[v]:
            fid = min(graph.dart_face[d] for d in graph.rotations[v])
            holes.append(Hole(fid, (v,), degenerate=True))
    return holes, external


def root_piece(instance: Instance) -> Piece:
    """The whole level graph viewed as a piece: sinks become boundary
    vertices, each defining a degenerate hole."""
    g = instance.graph
    boundary = frozenset(instance.sinks)
    holes, external = _compute_holes(g, lambda d: d, g, boundary)
    return Piece(
        graph=g,
        parent=g,
        to_parent_vertex=list(range(g.vertex_count)),
        to_parent_edge=list(range(g.edge_count)),
        boundary=boundary,
        sources=frozenset(instance.sources),
        holes=holes,
        external=external,
    )


def _make_subpiece(piece: Piece, kept_local, extra_boundary=()) -> Piece:
    sub = induced_subgraph(piece.graph, kept_local)
    to_parent_vertex = [piece.to_parent_vertex[v] for v in sub.to_parent_vertex]
    to_parent_edge = [piece.to_parent_edge[e] for e in sub.to_parent_edge]
    idx = sub.parent_vertex_index  # piece-local -> sub-local
    boundary = frozenset(
        idx[v] for v in set(extra_boundary) | (set(piece.boundary) & idx.keys()))
    sources = frozenset(idx[v] for v in piece.sources if v in idx)

    def to_root_dart(d: int) -> int:
        return 2 * to_parent_edge[d >> 1] | (d & 1)

    holes, external = _compute_holes(sub.graph, to_root_dart, piece.parent, boundary)
    return Piece(sub.graph, piece.parent, to_parent_vertex, to_parent_edge,
                 boundary, sources, holes, external)


def _local_components(g: EmbeddedGraph) -> list[list[int]]:
    comp = [-1] * g.vertex_count
    out: list[list[int]] = []
    for s in range(g.vertex_count):
        if comp[s] >= 0:
            continue
        cid = len(out)
        comp[s] = cid
        bucket = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for d in g.rotations[v]:
                w = g.head(d)
                if comp[w] < 0:
                    comp[w] = cid
                    bucket.append(w)
                    queue.append(w)
        out.append(bucket)
    return out


def divide(piece: Piece, params: DivisionParams) -> Division:
    """Split a piece until every subpiece meets the three division bounds.

    Splits target the first violated criterion in the cyclic order (size,
    boundary, holes), weighting the separator accordingly: unit weights,
    weight on boundary vertices, or weight on one representative per hole.
    """
    n0 = piece.size
    if n0 <= params.r:
        raise InvalidParams(f"piece of size {n0} needs no division (r={params.r})")
    max_size = params.c_p * n0
    max_boundary = params.boundary_coeff * math.sqrt(params.c_p * n0)
    hole_bound = params.hole_bound

    queue = [piece]
    finished: list[Piece] = []
    separators: list[list[int]] = []
    budget = 64 + 16 * n0.bit_length()
    while queue:
        q = queue.pop()
        if q.graph.component_count > 1:
            for bucket in _local_components(q.graph):
                queue.append(_make_subpiece(q, bucket))
            continue
        if q.size > max_size:
            weights = [1] * q.size
        elif len(q.boundary) > max_boundary:
            weights = [0] * q.size
            for v in q.boundary:
                weights[v] = 1
        elif len(q.holes) > hole_bound:
            weights = [0] * q.size
            for h in q.holes:
                weights[h.anchors[0]] += 1
        else:
            finished.append(q)
            continue

        if budget == 0:
            raise CannotSatisfyBounds(
                f"split budget exhausted dividing a piece of size {n0}")
        budget -= 1
        cycle, side_a, side_b = _separate(q.graph, weights)
        separators.append([q.to_parent_vertex[v] for v in cycle])
        for side in (side_a, side_b):
            sub = _make_subpiece(q, set(side) | set(cycle), extra_boundary=cycle)
            if sub.size >= q.size:
                raise CannotSatisfyBounds(
                    "separator made no progress on a piece "
                    f"of size {q.size} (cycle {len(cycle)}, sides "
                    f"{len(side_a)}/{len(side_b)})")
            queue.append(sub)

    finished.sort(key=lambda pc: min(pc.to_parent_vertex))
    return Division(piece, finished, separators)


# -- super sinks -------------------------------------------------------------


@dataclass
class AttachedSinks:
    """Piece graph with one super sink embedded per hole (and external face)."""

    graph: EmbeddedGraph
    capacities: list[int]
    super_sinks: list[int]


def attach_super_sinks(piece: Piece,
                       capacities: list[int] | None = None) -> AttachedSinks:
    """Embed a super sink inside every hole (and the external face when it
    carries boundary vertices), linked to each anchor by a never-bottleneck
    arc. Dart ids of the piece are preserved, so `capacities` (per piece
    dart) carries over; new arcs get capacity sum+1 toward the sink, 0 back.
    """
    g = piece.graph
    caps = list(capacities) if capacities is not None else [0] * g.dart_count
    if len(caps) != g.dart_count:
        raise ValueError("one capacity per piece dart required")
    never_bottleneck = sum(caps) + 1

    entries = list(piece.holes)
    if piece.external is not None:
        entries.append(piece.external)
    tokens_per_entry = [
        [corner_dart(g, h.face, v) for v in h.anchors] for h in entries
    ]

    cur = g
    sinks: list[int] = []
    for tokens in tokens_per_entry:
        ins = insert_vertex_in_face(cur, tokens)
        cur = ins.graph
        caps.extend([never_bottleneck, 0] * len(ins.new_edges))
        sinks.append(ins.new_vertex)
    return AttachedSinks(cur, caps, sinks)
