"""Combinatorially embedded directed planar multigraphs.

A graph is described by a rotation system: every undirected embedded edge
contributes two oppositely directed darts, and each vertex lists its
outgoing darts in cyclic order. Faces are derived by traversal, and a
rotation system is accepted as planar exactly when Euler's formula holds
for every connected component.

Dart numbering convention: edge ``e = (u, v)`` owns darts ``2e`` (u -> v)
and ``2e + 1`` (v -> u); ``rev(d) == d ^ 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DanglingDart, NonEmbedding


class EmbeddedGraph:
    """Immutable planar multigraph with an explicit combinatorial embedding.

    Attributes:
        vertex_count: number of vertices (ids 0..n-1).
        edges: list of (tail, head) pairs; index is the edge id.
        rotations: per-vertex cyclic order of outgoing darts.
        faces: list of dart cycles obtained by face traversal.
        dart_face: face id of every dart.
    """

    __slots__ = (
        "vertex_count",
        "edges",
        "rotations",
        "faces",
        "dart_face",
        "component_count",
        "dart_tails",
        "_rot_next",
    )

    def __init__(self, vertex_count: int, edges: list[tuple[int, int]],
                 rotations: list[list[int]]):
        self.vertex_count = vertex_count
        self.edges = [(int(u), int(v)) for u, v in edges]
        self.rotations = [list(r) for r in rotations]
        self._check_structure()
        self._compute_traversal()
        self._check_euler()

    # -- basic dart accessors ------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def dart_count(self) -> int:
        return 2 * len(self.edges)

    def tail(self, dart: int) -> int:
        return self.dart_tails[dart]

    def head(self, dart: int) -> int:
        return self.dart_tails[dart ^ 1]

    def face_of(self, dart: int) -> int:
        return self.dart_face[dart]

    def next_face_dart(self, dart: int) -> int:
        """Successor of a dart along its face cycle."""
        return self._rot_next[dart ^ 1]

    @property
    def connected(self) -> bool:
        return self.component_count <= 1

    # -- construction checks ---------------------------------------------

    def _check_structure(self) -> None:
        n, m = self.vertex_count, len(self.edges)
        if len(self.rotations) != n:
            raise NonEmbedding(
                f"expected {n} rotation lists, got {len(self.rotations)}")
        tails = [0] * (2 * m)
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise NonEmbedding(f"edge {e} endpoint out of range: ({u}, {v})")
            if u == v:
                raise NonEmbedding(f"edge {e} is a self-loop at vertex {u}")
            tails[2 * e] = u
            tails[2 * e + 1] = v
        self.dart_tails = tails

        seen = [False] * (2 * m)
        for v, rot in enumerate(self.rotations):
            for d in rot:
                if not (0 <= d < 2 * m):
                    raise DanglingDart(f"rotation of vertex {v} references dart {d}")
                if seen[d]:
                    raise NonEmbedding(f"dart {d} appears in more than one rotation slot")
                if tails[d] != v:
                    raise NonEmbedding(
                        f"dart {d} has tail {tails[d]} but sits in rotation of {v}")
                seen[d] = True
        if not all(seen):
            missing = seen.index(False)
            raise NonEmbedding(f"dart {missing} missing from all rotations")

    def _compute_traversal(self) -> None:
        rot_next = [0] * self.dart_count
        for rot in self.rotations:
            k = len(rot)
            for i, d in enumerate(rot):
                rot_next[d] = rot[(i + 1) % k]
        self._rot_next = rot_next

        dart_face = [-1] * self.dart_count
        faces: list[list[int]] = []
        for start in range(self.dart_count):
            if dart_face[start] >= 0:
                continue
            fid = len(faces)
            cycle = []
            d = start
            while dart_face[d] < 0:
                dart_face[d] = fid
                cycle.append(d)
                d = rot_next[d ^ 1]
            if d != start:
                # cannot happen while rotations form a permutation
                raise NonEmbedding("face traversal did not close into a cycle")
            faces.append(cycle)
        self.faces = faces
        self.dart_face = dart_face

    def _check_euler(self) -> None:
        n, m = self.vertex_count, len(self.edges)
        comp = [-1] * n
        count = 0
        for s in range(n):
            if comp[s] >= 0:
                continue
            count += 1
            comp[s] = count
            stack = [s]
            while stack:
                v = stack.pop()
                for d in self.rotations[v]:
                    w = self.dart_tails[d ^ 1]
                    if comp[w] < 0:
                        comp[w] = count
                        stack.append(w)
        self.component_count = count
        # an isolated vertex has one face the dart traversal cannot see
        isolated = sum(1 for rot in self.rotations if not rot)
        if n - m + len(self.faces) + isolated != 2 * count:
            raise NonEmbedding(
                f"Euler check failed: V={n} E={m} F={len(self.faces)} "
                f"isolated={isolated} components={count}")


def build_graph(vertex_count: int, edges: list[tuple[int, int]],
                rotations: list[list[int]]) -> EmbeddedGraph:
    """Validate and build an embedded graph from a rotation system.

    Raises NonEmbedding if the rotation system is not a (per-component)
    planar embedding, DanglingDart if a rotation references an unknown dart.
    """
    return EmbeddedGraph(vertex_count, edges, rotations)


def faces(g: EmbeddedGraph) -> list[list[int]]:
    """All face cycles of the embedding (each dart in exactly one cycle)."""
    return [list(c) for c in g.faces]


# -- subgraphs -----------------------------------------------------------


@dataclass
class Subgraph:
    """An induced subgraph with maps back to the graph it came from."""

    graph: EmbeddedGraph
    to_parent_vertex: list[int]
    to_parent_edge: list[int]
    parent_vertex_index: dict[int, int]

    def to_parent_dart(self, dart: int) -> int:
        return 2 * self.to_parent_edge[dart >> 1] | (dart & 1)


def induced_subgraph(g: EmbeddedGraph, vertices) -> Subgraph:
    """Extract the subgraph induced by a vertex set, inheriting the embedding.

    Keeps every edge with both endpoints in the set; rotations are the
    parent rotations restricted to kept darts, which is again a valid
    (possibly disconnected) planar embedding.
    """
    vset = sorted(set(vertices))
    index = {v: i for i, v in enumerate(vset)}
    edges: list[tuple[int, int]] = []
    to_parent_edge: list[int] = []
    dart_map: dict[int, int] = {}
    for e, (u, v) in enumerate(g.edges):
        if u in index and v in index:
            new_e = len(edges)
            edges.append((index[u], index[v]))
            to_parent_edge.append(e)
            dart_map[2 * e] = 2 * new_e
            dart_map[2 * e + 1] = 2 * new_e + 1
    rotations = []
    for v in vset:
        rotations.append([dart_map[d] for d in g.rotations[v] if d in dart_map])
    sub = EmbeddedGraph(len(vset), edges, rotations)
    return Subgraph(sub, vset, to_parent_edge, index)


# -- in-face vertex insertion ---------------------------------------------


@dataclass
class ApexInsertion:
    """Result of inserting a new vertex inside a face."""

    graph: EmbeddedGraph
    new_vertex: int
    new_edges: list[int]  # edge ids (anchor -> apex), in walk order


def corner_dart(g: EmbeddedGraph, face_id: int, vertex: int) -> int:
    """First dart of the face walk arriving at `vertex` (its corner token)."""
    for d in g.faces[face_id]:
        if g.head(d) == vertex:
            return d
    raise ValueError(f"vertex {vertex} not on face {face_id}")


def insert_vertex_in_face(g: EmbeddedGraph, corner_darts: list[int]) -> ApexInsertion:
    """Insert one new vertex inside a face and connect it to chosen corners.

    `corner_darts` are arrival darts of a single face, in walk order; the
    new vertex gets one edge to the head of each. Dart and vertex ids of
    the old graph are preserved (new material is appended), so capacities
    or flows indexed by dart carry over unchanged.
    """
    if not corner_darts:
        raise ValueError("need at least one corner dart")
    fid = g.dart_face[corner_darts[0]]
    walk = g.faces[fid]
    pos = {d: i for i, d in enumerate(walk)}
    for d in corner_darts:
        if g.dart_face[d] != fid:
            raise ValueError("corner darts must belong to a single face")
    order = sorted(corner_darts, key=lambda d: pos[d])
    if len(set(g.head(d) for d in order)) != len(order):
        raise ValueError("one edge per anchor vertex: duplicate corner vertex")

    apex = g.vertex_count
    m = len(g.edges)
    edges = list(g.edges)
    new_edge_ids = []
    insert_after: dict[int, int] = {}  # rev(arrival dart) -> new dart at anchor
    for k, d in enumerate(order):
        e = m + k
        edges.append((g.head(d), apex))
        new_edge_ids.append(e)
        insert_after[d ^ 1] = 2 * e

    rotations = []
    for v in range(g.vertex_count):
        rot = []
        for d in g.rotations[v]:
            rot.append(d)
            if d in insert_after:
                rot.append(insert_after[d])
        rotations.append(rot)
    # Apex sees its anchors in reverse walk order (face traversal closes
    # each sub-face by stepping backwards around the new vertex).
    rotations.append([2 * (m + k) + 1 for k in reversed(range(len(order)))])

    return ApexInsertion(EmbeddedGraph(g.vertex_count + 1, edges, rotations),
                         apex, new_edge_ids)
