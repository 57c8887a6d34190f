"""Directed-graph model, rotation systems, faces, and switch/large-angle rules.

A ``Dag`` is a simple directed acyclic graph over opaque string vertex ids
with a canonical edge order, so every derived object serializes
deterministically.  A ``PlanarEmbedding`` equips a connected Dag with a
rotation system (counterclockwise cyclic edge order per vertex) plus a
distinguished outer face.  An ``UpwardEmbedding`` adds the large-angle
assignment that sources and sinks carry in an upward drawing.

Conventions used throughout the package:

* rotations list incident edge indices in *counterclockwise* geometric
  order (x grows right, y grows up);
* a *corner* ``(v, i)`` is the angular sector swept counterclockwise from
  ``rotation[v][i]`` to ``rotation[v][(i+1) % deg]``;
* face walks follow ``next(u -> v) = (v, predecessor of u in the ccw
  rotation at v)``, which traverses every internal face counterclockwise
  and the outer face clockwise, with the face region to the left of each
  traversed half-edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    CycleDetected,
    InconsistentRotation,
    ParallelEdge,
    SelfLoop,
    UpspanError,
)

# A half-edge is (edge index, True if traversed tail -> head).
HalfEdge = tuple[int, bool]
# A corner is (vertex id, index into the vertex's rotation tuple).
Corner = tuple[str, int]


class Dag:
    """Simple DAG with canonical vertex and edge order."""

    def __init__(self, vertices: tuple[str, ...], edges: tuple[tuple[str, str], ...]):
        self.vertices = vertices
        self.edges = edges
        self._vset = set(vertices)
        self._edge_index = {e: i for i, e in enumerate(edges)}
        out: dict[str, list[int]] = {v: [] for v in vertices}
        inc: dict[str, list[int]] = {v: [] for v in vertices}
        for i, (t, h) in enumerate(edges):
            out[t].append(i)
            inc[h].append(i)
        self._out = {v: tuple(ix) for v, ix in out.items()}
        self._in = {v: tuple(ix) for v, ix in inc.items()}

    # ---- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def out_edges(self, v: str) -> tuple[int, ...]:
        return self._out[v]

    def in_edges(self, v: str) -> tuple[int, ...]:
        return self._in[v]

    def incident_edges(self, v: str) -> tuple[int, ...]:
        return tuple(sorted(self._out[v] + self._in[v]))

    def degree(self, v: str) -> int:
        return len(self._out[v]) + len(self._in[v])

    def edge_index(self, tail: str, head: str) -> int:
        return self._edge_index[(tail, head)]

    def has_arc(self, tail: str, head: str) -> bool:
        return (tail, head) in self._edge_index

    def other_end(self, edge: int, v: str) -> str:
        t, h = self.edges[edge]
        return h if v == t else t

    def sources(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self._in[v])

    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self._out[v])

    def topological_order(self) -> tuple[str, ...]:
        indeg = {v: len(self._in[v]) for v in self.vertices}
        ready = sorted(v for v in self.vertices if indeg[v] == 0)
        order: list[str] = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for e in self._out[v]:
                h = self.edges[e][1]
                indeg[h] -= 1
                if indeg[h] == 0:
                    # insertion keeps `ready` sorted for determinism
                    lo = 0
                    while lo < len(ready) and ready[lo] < h:
                        lo += 1
                    ready.insert(lo, h)
        if len(order) != self.n:
            raise CycleDetected("graph contains a directed cycle")
        return tuple(order)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for e in self.incident_edges(v):
                w = self.other_end(e, v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    # ---- equality / hashing ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Dag)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Dag(n={self.n}, m={self.m})"


def build_dag(vertex_ids, edge_pairs) -> Dag:
    """Validate and canonicalize a vertex/edge description into a Dag."""
    vertices = tuple(sorted(str(v) for v in vertex_ids))
    if len(set(vertices)) != len(vertices):
        raise UpspanError("duplicate vertex ids")
    vset = set(vertices)
    edges: list[tuple[str, str]] = []
    seen_pairs: set[frozenset[str]] = set()
    for t, h in edge_pairs:
        t, h = str(t), str(h)
        if t not in vset or h not in vset:
            raise UpspanError(f"edge ({t}, {h}) references unknown vertex")
        if t == h:
            raise SelfLoop(f"self-loop at {t}")
        key = frozenset((t, h))
        if key in seen_pairs:
            raise ParallelEdge(f"parallel edge between {t} and {h}")
        seen_pairs.add(key)
        edges.append((t, h))
    dag = Dag(vertices, tuple(sorted(edges)))
    dag.topological_order()  # raises CycleDetected on failure
    return dag


# ---------------------------------------------------------------------------
# Planar and upward embeddings
# ---------------------------------------------------------------------------


def _canonical_cycle(seq: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate a cyclic tuple so its minimum element comes first."""
    if not seq:
        return seq
    k = seq.index(min(seq))
    return seq[k:] + seq[:k]


class PlanarEmbedding:
    """Rotation system plus a distinguished outer face.

    ``rotation[v]`` is the ccw cyclic tuple of incident edge indices,
    canonicalized to start at the smallest index.  ``outer_half_edge`` is
    one half-edge on the outer face walk (the canonical minimum of that
    walk), which pins down the outer face.
    """

    def __init__(self, dag: Dag, rotation: dict[str, tuple[int, ...]], outer_half_edge: HalfEdge):
        self.dag = dag
        self.rotation = {v: _canonical_cycle(tuple(rot)) for v, rot in rotation.items()}
        self._pos = {
            v: {e: i for i, e in enumerate(rot)} for v, rot in self.rotation.items()
        }
        self.outer_half_edge = outer_half_edge
        self._validate()
        walks = trace_face_walks(dag, self.rotation)
        self._walks = walks
        outer_idx = None
        for idx, walk in enumerate(walks):
            if outer_half_edge in walk:
                outer_idx = idx
        if outer_idx is None:
            raise InconsistentRotation("outer half-edge not found in any face walk")
        self._outer_idx = outer_idx
        # normalize the stored key to the canonical minimum of its walk
        self.outer_half_edge = min(walks[outer_idx])
        if self.dag.n > 1 and len(walks) != self.dag.m - self.dag.n + 2:
            raise InconsistentRotation(
                f"face count {len(walks)} violates Euler formula "
                f"(expected {self.dag.m - self.dag.n + 2}); rotation is not planar"
            )

    def _validate(self) -> None:
        dag = self.dag
        if not dag.is_connected():
            raise InconsistentRotation("embedding requires a connected graph")
        if set(self.rotation) != set(dag.vertices):
            raise InconsistentRotation("rotation must cover exactly the vertex set")
        for v in dag.vertices:
            if tuple(sorted(self.rotation[v])) != dag.incident_edges(v):
                raise InconsistentRotation(
                    f"rotation at {v} does not list its incident edges exactly once"
                )

    # ---- rotation navigation ----------------------------------------------

    def position(self, v: str, edge: int) -> int:
        return self._pos[v][edge]

    def prev_ccw(self, v: str, edge: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][edge] - 1) % len(rot)]

    def next_ccw(self, v: str, edge: int) -> int:
        rot = self.rotation[v]
        return rot[(self._pos[v][edge] + 1) % len(rot)]

    def corner_count(self, v: str) -> int:
        return max(1, len(self.rotation[v])) if self.rotation[v] else 0

    def walks(self) -> tuple[tuple[HalfEdge, ...], ...]:
        return self._walks

    def outer_walk(self) -> tuple[HalfEdge, ...]:
        return self._walks[self._outer_idx]

    # ---- transforms ---------------------------------------------------------

    def reflect(self) -> "PlanarEmbedding":
        """Mirror image: reversed rotations, outer face preserved as a region."""
        rot = {v: tuple(reversed(r)) for v, r in self.rotation.items()}
        e, fwd = self.outer_half_edge
        if self.dag.m == 1 or _edge_sides_equal(self._walks, self.outer_half_edge):
            flipped: HalfEdge = (e, fwd)
        else:
            flipped = (e, not fwd)
        return PlanarEmbedding(self.dag, rot, flipped)

    def canonical_form(self) -> tuple:
        return (
            tuple((v, self.rotation[v]) for v in self.dag.vertices),
            self.outer_half_edge,
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PlanarEmbedding)
            and self.dag == other.dag
            and self.canonical_form() == other.canonical_form()
        )

    def __hash__(self) -> int:
        return hash(self.canonical_form())


def _edge_sides_equal(walks, half_edge: HalfEdge) -> bool:
    """True when both half-edges of the given edge lie on the same walk."""
    e, fwd = half_edge
    for walk in walks:
        if (e, fwd) in walk:
            return (e, not fwd) in walk
    return False


def trace_face_walks(dag: Dag, rotation: dict[str, tuple[int, ...]]) -> tuple[tuple[HalfEdge, ...], ...]:
    """Partition all half-edges into face walks of the rotation system."""
    pos = {v: {e: i for i, e in enumerate(rot)} for v, rot in rotation.items()}

    def walk_next(h: HalfEdge) -> HalfEdge:
        e, fwd = h
        t, hd = dag.edges[e]
        v = hd if fwd else t  # vertex the half-edge points at
        rot = rotation[v]
        nxt = rot[(pos[v][e] - 1) % len(rot)]
        nt, nh = dag.edges[nxt]
        return (nxt, nt == v)

    remaining: set[HalfEdge] = set()
    for e in range(dag.m):
        remaining.add((e, True))
        remaining.add((e, False))
    walks: list[tuple[HalfEdge, ...]] = []
    while remaining:
        start = min(remaining)
        walk = [start]
        remaining.discard(start)
        cur = walk_next(start)
        guard = 2 * dag.m + 1
        while cur != start:
            if cur not in remaining:
                raise InconsistentRotation("face traversal revisited a half-edge")
            walk.append(cur)
            remaining.discard(cur)
            cur = walk_next(cur)
            guard -= 1
            if guard < 0:
                raise InconsistentRotation("face traversal did not close")
        walks.append(tuple(walk))
    return tuple(sorted(walks))


@dataclass(frozen=True)
class FaceCorner:
    """One corner occurrence on a face walk."""

    vertex: str
    rotation_index: int
    entering_edge: int
    leaving_edge: int

    @property
    def key(self) -> Corner:
        return (self.vertex, self.rotation_index)


@dataclass(frozen=True)
class Face:
    walk: tuple[HalfEdge, ...]
    corners: tuple[FaceCorner, ...]
    is_outer: bool

    def source_switch_corners(self, dag: Dag) -> tuple[FaceCorner, ...]:
        out = []
        for c in self.corners:
            te, he = dag.edges[c.entering_edge]
            tl, hl = dag.edges[c.leaving_edge]
            if te == c.vertex and tl == c.vertex:
                out.append(c)
        return tuple(out)

    def sink_switch_corners(self, dag: Dag) -> tuple[FaceCorner, ...]:
        out = []
        for c in self.corners:
            te, he = dag.edges[c.entering_edge]
            tl, hl = dag.edges[c.leaving_edge]
            if he == c.vertex and hl == c.vertex:
                out.append(c)
        return tuple(out)


def faces(dag: Dag, embedding: PlanarEmbedding) -> tuple[Face, ...]:
    """All faces of the embedding, corners resolved, exactly one outer."""
    if embedding.dag != dag:
        raise InconsistentRotation("embedding belongs to a different graph")
    out: list[Face] = []
    for walk in embedding.walks():
        corners: list[FaceCorner] = []
        for k, h in enumerate(walk):
            e, fwd = h
            t, hd = dag.edges[e]
            v = hd if fwd else t
            nxt_e = walk[(k + 1) % len(walk)][0]
            # corner (v, i) is entered from rotation[i+1] and left via rotation[i]
            i = embedding.position(v, nxt_e)
            corners.append(
                FaceCorner(vertex=v, rotation_index=i, entering_edge=e, leaving_edge=nxt_e)
            )
        out.append(
            Face(
                walk=walk,
                corners=tuple(corners),
                is_outer=(embedding.outer_half_edge in walk),
            )
        )
    return tuple(out)


class UpwardEmbedding:
    """Planar embedding plus the large-angle assignment of sources/sinks."""

    def __init__(self, base: PlanarEmbedding, large_angles: frozenset[Corner]):
        self.base = base
        self.dag = base.dag
        self.large_angles = frozenset(large_angles)

    def reflect(self) -> "UpwardEmbedding":
        base = self.base.reflect()
        mapped = set()
        for v, i in self.large_angles:
            deg = len(self.base.rotation[v])
            mapped.add((v, (deg - 2 - i) % deg if deg else 0))
        return UpwardEmbedding(base, frozenset(mapped))

    def canonical_form(self) -> tuple:
        return (self.base.canonical_form(), tuple(sorted(self.large_angles)))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UpwardEmbedding)
            and self.dag == other.dag
            and self.canonical_form() == other.canonical_form()
        )

    def __hash__(self) -> int:
        return hash(self.canonical_form())


@dataclass(frozen=True)
class UpwardValidity:
    ok: bool
    violation: str | None = None
    face_walk: tuple[HalfEdge, ...] | None = None


def check_upward_embedding(dag: Dag, upward: UpwardEmbedding) -> UpwardValidity:
    """Accept iff bimodality, per-vertex large-angle ownership and the
    per-face switch-count rule all hold.

    Switches are counted per corner occurrence on the face walk, not per
    vertex: a vertex may bound the same face at several corners and each
    occurrence counts separately (a tree face visits cut vertices twice).
    """
    emb = upward.base
    # bimodality: outgoing edges consecutive in the cyclic rotation
    for v in dag.vertices:
        rot = emb.rotation[v]
        if len(rot) <= 2:
            continue
        flags = [dag.edges[e][0] == v for e in rot]
        blocks = sum(1 for i in range(len(flags)) if flags[i] and not flags[i - 1])
        if blocks > 1:
            return UpwardValidity(False, f"rotation at {v} is not bimodal")
    # large-angle ownership
    owners: dict[str, int] = {v: 0 for v in dag.vertices}
    for v, i in upward.large_angles:
        if v not in owners:
            return UpwardValidity(False, f"large angle at unknown vertex {v}")
        deg = len(emb.rotation[v])
        if deg == 0 or not (0 <= i < deg):
            return UpwardValidity(False, f"large angle ({v}, {i}) has no such corner")
        owners[v] += 1
    srcs, snks = set(dag.sources()), set(dag.sinks())
    for v in dag.vertices:
        want = 1 if (v in srcs or v in snks) else 0
        if owners[v] != want:
            return UpwardValidity(
                False, f"{v} owns {owners[v]} large angles, expected {want}"
            )
    # per-face counting rule
    for face in faces(dag, emb):
        n_large = sum(1 for c in face.corners if c.key in upward.large_angles)
        n_src = len(face.source_switch_corners(dag))
        want = n_src + 1 if face.is_outer else n_src - 1
        if n_large != want:
            return UpwardValidity(
                False,
                f"face has {n_large} large angles, expected {want} "
                f"({n_src} source-switch corners, outer={face.is_outer})",
                face.walk,
            )
    return UpwardValidity(True)


def enumerate_large_angle_assignments(dag: Dag, emb: PlanarEmbedding) -> tuple[UpwardEmbedding, ...]:
    """All large-angle assignments making ``emb`` a valid upward embedding.

    Backtracks over sources and sinks, one corner each, pruning with the
    per-face counting rule.  Empty result means the plane graph is not
    upward-planar with this embedding.
    """
    for v in dag.vertices:
        rot = emb.rotation[v]
        if len(rot) <= 2:
            continue
        flags = [dag.edges[e][0] == v for e in rot]
        blocks = sum(1 for i in range(len(flags)) if flags[i] and not flags[i - 1])
        if blocks > 1:
            return ()
    face_list = faces(dag, emb)
    corner_face: dict[Corner, int] = {}
    targets: list[int] = []
    for fi, f in enumerate(face_list):
        for c in f.corners:
            corner_face[c.key] = fi
        n_src = len(f.source_switch_corners(dag))
        targets.append(n_src + 1 if f.is_outer else n_src - 1)
    if any(t < 0 for t in targets):
        return ()
    owners = tuple(sorted(set(dag.sources()) | set(dag.sinks())))
    # corners still assignable to faces after choices for owners[i:]
    remaining_per_face = [[0] * len(face_list) for _ in range(len(owners) + 1)]
    for i in range(len(owners) - 1, -1, -1):
        v = owners[i]
        counts = remaining_per_face[i + 1][:]
        for j in range(len(emb.rotation[v])):
            counts[corner_face[(v, j)]] += 0  # corner exists; capacity is 1 per owner
        for fi in set(corner_face[(v, j)] for j in range(len(emb.rotation[v]))):
            counts[fi] += 1
        remaining_per_face[i] = counts
    out: list[UpwardEmbedding] = []
    chosen: list[Corner] = []
    counts = [0] * len(face_list)

    def backtrack(i: int) -> None:
        if i == len(owners):
            if counts == targets:
                out.append(UpwardEmbedding(emb, frozenset(chosen)))
            return
        for fi in range(len(face_list)):
            if counts[fi] > targets[fi]:
                return
            if counts[fi] + remaining_per_face[i][fi] < targets[fi]:
                return
        v = owners[i]
        for j in range(len(emb.rotation[v])):
            fi = corner_face[(v, j)]
            if counts[fi] + 1 > targets[fi]:
                continue
            counts[fi] += 1
            chosen.append((v, j))
            backtrack(i + 1)
            chosen.pop()
            counts[fi] -= 1

    backtrack(0)
    return tuple(out)


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    sources: tuple[str, ...]
    sinks: tuple[str, ...]
    degree: int
    longest_directed_path_length: int
    blocks: tuple[frozenset[str], ...]
    articulation_points: tuple[str, ...]
    is_outerplanar: bool
    outerplanar_embedding: PlanarEmbedding | None = field(compare=False, default=None)
    is_caterpillar: bool = False
    is_tree: bool = False


def longest_directed_path_length(dag: Dag) -> int:
    dist = {v: 0 for v in dag.vertices}
    for v in dag.topological_order():
        for e in dag.out_edges(v):
            h = dag.edges[e][1]
            if dist[v] + 1 > dist[h]:
                dist[h] = dist[v] + 1
    return max(dist.values(), default=0)


def _nx_undirected(dag: Dag):
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(dag.vertices)
    g.add_edges_from(dag.edges)
    return g


def is_tree(dag: Dag) -> bool:
    return dag.is_connected() and dag.m == dag.n - 1


def is_caterpillar(dag: Dag) -> bool:
    """Tree whose non-leaf vertices induce a path (single vertices/edges count)."""
    if not is_tree(dag):
        return False
    if dag.n <= 2:
        return True
    spine = [v for v in dag.vertices if dag.degree(v) >= 2]
    if not spine:
        return True
    deg_in_spine: dict[str, int] = {v: 0 for v in spine}
    sset = set(spine)
    for t, h in dag.edges:
        if t in sset and h in sset:
            deg_in_spine[t] += 1
            deg_in_spine[h] += 1
    ends = [v for v in spine if deg_in_spine[v] <= 1]
    if any(d > 2 for d in deg_in_spine.values()):
        return False
    # connected + max degree 2 + at most 2 endpoints => path
    edge_count = sum(deg_in_spine.values()) // 2
    if edge_count != len(spine) - 1:
        return False
    return len(ends) <= 2


def outerplanar_embedding(dag: Dag) -> PlanarEmbedding | None:
    """Outerplanar embedding (every vertex on the outer face) or None.

    Uses the apex trick: G is outerplanar iff G plus a vertex adjacent to
    everything is planar, and deleting the apex from that embedding leaves
    a face incident to all vertices, which becomes the outer face.
    """
    import networkx as nx

    if dag.n == 0:
        return None
    if dag.n == 1:
        return None
    g = _nx_undirected(dag)
    apex = object()
    g.add_node(apex)
    for v in dag.vertices:
        g.add_edge(apex, v)
    ok, nx_emb = nx.check_planarity(g)
    if not ok:
        return None
    data = nx_emb.get_data()
    rotation: dict[str, tuple[int, ...]] = {}
    for v in dag.vertices:
        cycle = [u for u in data[v] if u is not apex]
        rotation[v] = tuple(
            dag.edge_index(v, u) if dag.has_arc(v, u) else dag.edge_index(u, v)
            for u in cycle
        )
    walks = trace_face_walks(dag, rotation)
    # outer face: a walk visiting every vertex
    for walk in walks:
        visited = set()
        for e, fwd in walk:
            t, h = dag.edges[e]
            visited.add(t)
            visited.add(h)
        if len(visited) == dag.n:
            return PlanarEmbedding(dag, rotation, min(walk))
    return None


def planar_embedding(dag: Dag) -> PlanarEmbedding | None:
    """Some planar embedding of the underlying graph, or None if nonplanar.

    The outer face is chosen canonically (smallest face key); callers that
    need a specific outer face re-anchor via ``with_outer_face``.
    """
    import networkx as nx

    if dag.n <= 1 or dag.m == 0:
        return None
    ok, nx_emb = nx.check_planarity(_nx_undirected(dag))
    if not ok:
        return None
    data = nx_emb.get_data()
    rotation = {
        v: tuple(
            dag.edge_index(v, u) if dag.has_arc(v, u) else dag.edge_index(u, v)
            for u in data[v]
        )
        for v in dag.vertices
    }
    walks = trace_face_walks(dag, rotation)
    return PlanarEmbedding(dag, rotation, min(walks[0]))


def with_outer_face(emb: PlanarEmbedding, walk: tuple[HalfEdge, ...]) -> PlanarEmbedding:
    return PlanarEmbedding(emb.dag, emb.rotation, min(walk))


def blocks_and_cuts(dag: Dag) -> tuple[tuple[frozenset[str], ...], tuple[str, ...]]:
    import networkx as nx

    g = _nx_undirected(dag)
    blocks = tuple(sorted((frozenset(b) for b in nx.biconnected_components(g)),
                          key=lambda b: tuple(sorted(b))))
    cuts = tuple(sorted(nx.articulation_points(g)))
    return blocks, cuts


def structure_queries(dag: Dag) -> StructureReport:
    blocks, cuts = blocks_and_cuts(dag) if dag.n else ((), ())
    outer = outerplanar_embedding(dag)
    return StructureReport(
        sources=dag.sources(),
        sinks=dag.sinks(),
        degree=max((dag.degree(v) for v in dag.vertices), default=0),
        longest_directed_path_length=longest_directed_path_length(dag),
        blocks=blocks,
        articulation_points=cuts,
        is_outerplanar=outer is not None or dag.n <= 1,
        outerplanar_embedding=outer,
        is_caterpillar=is_caterpillar(dag),
        is_tree=is_tree(dag),
    )


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def graph_to_json_dict(
    dag: Dag,
    embedding: PlanarEmbedding | None = None,
    upward: UpwardEmbedding | None = None,
) -> dict:
    doc: dict = {
        "vertices": list(dag.vertices),
        "edges": [[t, h] for t, h in dag.edges],
    }
    emb = upward.base if upward is not None else embedding
    if emb is not None:
        doc["rotation"] = {v: list(emb.rotation[v]) for v in dag.vertices}
        doc["outer_face"] = [e for e, _ in emb.outer_walk()]
    if upward is not None:
        doc["large_angles"] = [[v, i] for v, i in sorted(upward.large_angles)]
    return doc


def graph_from_json_dict(doc: dict) -> tuple[Dag, PlanarEmbedding | None, UpwardEmbedding | None]:
    dag = build_dag(doc["vertices"], [tuple(e) for e in doc["edges"]])
    emb = None
    upward = None
    if "rotation" in doc:
        rotation = {v: tuple(doc["rotation"][v]) for v in dag.vertices}
        walks = trace_face_walks(dag, rotation)
        outer_edges = doc.get("outer_face")
        outer_key: HalfEdge | None = None
        if outer_edges is not None:
            target = _canonical_cycle(tuple(outer_edges))
            matches = [
                w for w in walks
                if _canonical_cycle(tuple(e for e, _ in w)) == target
            ]
            if len(matches) != 1:
                raise InconsistentRotation(
                    "outer_face does not identify a unique face walk"
                )
            outer_key = min(matches[0])
        else:
            outer_key = min(walks[0])
        emb = PlanarEmbedding(dag, rotation, outer_key)
    if "large_angles" in doc:
        if emb is None:
            raise InconsistentRotation("large_angles require a rotation")
        upward = UpwardEmbedding(
            emb, frozenset((v, int(i)) for v, i in doc["large_angles"])
        )
    return dag, emb, upward
