"""Dual-circulation solver for plane st-graphs.

The span decision problem for a plane st-graph reduces to feasibility of
a circulation on the weak dual: every edge e contributes an arc from its
left face to its right face carrying flow X(e*) in [1, sigma(e)], the
outer face splits into a source node (left boundary side) and a sink node
(right boundary side) joined by a return arc, and conservation at an
internal face says exactly that the left and right boundary paths of the
face climb the same number of levels.  A feasible circulation yields the
levels (sum spans along any path from the source), and a drawing follows
by peeling right face-paths onto a growing right outer boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .drawing import LayeredDrawing
from .errors import NotStGraph, StNotOnOuterFace
from .graphs import Dag, Face, PlanarEmbedding, faces

S_NODE = "s*"
T_NODE = "t*"
RETURN_ARC = -1


@dataclass(frozen=True)
class Arc:
    tail: str
    head: str
    lower: int
    upper: int
    edge: int  # original edge index, RETURN_ARC for the closing arc


@dataclass(frozen=True)
class DualFlowNetwork:
    nodes: tuple[str, ...]
    arcs: tuple[Arc, ...]


@dataclass(frozen=True)
class Circulation:
    flow: tuple[int, ...]  # aligned with DualFlowNetwork.arcs

    def by_edge(self, network: DualFlowNetwork) -> dict[int, int]:
        return {a.edge: x for a, x in zip(network.arcs, self.flow) if a.edge != RETURN_ARC}


def _face_paths(dag: Dag, face: Face) -> tuple[str, str, list[int], list[int]]:
    """(face source, face sink, left path edges, right path edges).

    Well-defined exactly when the face has one source-switch and one
    sink-switch corner, which characterizes faces of plane st-graphs.
    """
    src = face.source_switch_corners(dag)
    snk = face.sink_switch_corners(dag)
    if len(src) != 1 or len(snk) != 1:
        raise NotStGraph(
            "face boundary does not split into one left and one right path"
        )
    s_f, t_f = src[0].vertex, snk[0].vertex
    # rotate the walk to start right after the source corner
    walk = list(face.walk)
    k = face.corners.index(src[0])
    walk = walk[k + 1 :] + walk[: k + 1]
    right = [e for e, fwd in walk if fwd]
    left_rev = [e for e, fwd in walk if not fwd]
    return s_f, t_f, list(reversed(left_rev)), right


def st_endpoints(dag: Dag) -> tuple[str, str]:
    srcs, snks = dag.sources(), dag.sinks()
    if len(srcs) != 1 or len(snks) != 1:
        raise NotStGraph(f"{len(srcs)} sources, {len(snks)} sinks")
    return srcs[0], snks[0]


def build_dual_network(
    dag: Dag, emb: PlanarEmbedding, sigma: dict[int, int]
) -> DualFlowNetwork:
    s, t = st_endpoints(dag)
    face_list = faces(dag, emb)
    outer = next(f for f in face_list if f.is_outer)
    outer_vertices = set()
    for e, _ in outer.walk:
        outer_vertices.update(dag.edges[e])
    if s not in outer_vertices or t not in outer_vertices:
        raise StNotOnOuterFace(f"{s} and {t} must lie on the outer face")
    for f in face_list:
        _face_paths(dag, f)  # raises NotStGraph on malformed faces

    left_of: dict[int, str] = {}
    right_of: dict[int, str] = {}
    names: dict[tuple, str] = {}
    internal = [f for f in face_list if not f.is_outer]
    for i, f in enumerate(internal):
        names[f.walk] = f"f{i}"
    for f in face_list:
        for e, fwd in f.walk:
            if f.is_outer:
                # forward half-edge on the outer walk: unbounded region to
                # the left of the edge -> left boundary -> source side
                if fwd:
                    left_of[e] = S_NODE
                else:
                    right_of[e] = T_NODE
            else:
                if fwd:
                    left_of[e] = names[f.walk]
                else:
                    right_of[e] = names[f.walk]
    arcs = [
        Arc(left_of[e], right_of[e], 1, sigma[e], e) for e in range(dag.m)
    ]
    total = max(1, dag.m * max(sigma.values(), default=1))
    arcs.append(Arc(T_NODE, S_NODE, 1, total, RETURN_ARC))
    nodes = tuple([f"f{i}" for i in range(len(internal))] + [S_NODE, T_NODE])
    return DualFlowNetwork(nodes, tuple(arcs))


# ---------------------------------------------------------------------------
# Feasible circulation via lower-bound elimination plus max-flow
# ---------------------------------------------------------------------------


def _max_flow(n_nodes: int, arcs: list[tuple[int, int, int]], s: int, t: int) -> tuple[int, list[int]]:
    """Edmonds-Karp on an arc list; returns (value, per-arc flow)."""
    cap = []
    to = []
    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for u, v, c in arcs:
        adj[u].append(len(cap))
        to.append(v)
        cap.append(c)
        adj[v].append(len(cap))
        to.append(u)
        cap.append(0)
    total = 0
    while True:
        parent_arc = [-1] * n_nodes
        parent_arc[s] = -2
        queue = [s]
        while queue and parent_arc[t] == -1:
            u = queue.pop(0)
            for ai in adj[u]:
                v = to[ai]
                if parent_arc[v] == -1 and cap[ai] > 0:
                    parent_arc[v] = ai
                    queue.append(v)
        if parent_arc[t] == -1:
            break
        # bottleneck along the path
        bottleneck = None
        v = t
        while v != s:
            ai = parent_arc[v]
            bottleneck = cap[ai] if bottleneck is None else min(bottleneck, cap[ai])
            v = to[ai ^ 1]
        v = t
        while v != s:
            ai = parent_arc[v]
            cap[ai] -= bottleneck
            cap[ai ^ 1] += bottleneck
            v = to[ai ^ 1]
        total += bottleneck
    flows = [cap[2 * i + 1] for i in range(len(arcs))]
    return total, flows


def feasible_circulation(network: DualFlowNetwork) -> Circulation | None:
    for a in network.arcs:
        if a.lower > a.upper:
            return None
    index = {name: i for i, name in enumerate(network.nodes)}
    n = len(network.nodes)
    excess = [0] * n  # inflow minus outflow forced by lower bounds
    arcs: list[tuple[int, int, int]] = []
    for a in network.arcs:
        arcs.append((index[a.tail], index[a.head], a.upper - a.lower))
        excess[index[a.head]] += a.lower
        excess[index[a.tail]] -= a.lower
    s_aux, t_aux = n, n + 1
    need = 0
    base = len(arcs)
    for i, b in enumerate(excess):
        if b > 0:
            arcs.append((s_aux, i, b))
            need += b
        elif b < 0:
            arcs.append((i, t_aux, -b))
    value, flows = _max_flow(n + 2, arcs, s_aux, t_aux)
    if value != need:
        return None
    return Circulation(
        tuple(a.lower + flows[i] for i, a in enumerate(network.arcs))
    )


def levels_from_flow(
    dag: Dag, network: DualFlowNetwork, circulation: Circulation
) -> dict[str, int]:
    """y(v) = sum of dual flows along any source-to-v path; y(source) = 0."""
    s, _ = st_endpoints(dag)
    x = circulation.by_edge(network)
    level: dict[str, int] = {s: 0}
    stack = [s]
    while stack:
        v = stack.pop()
        for e in dag.out_edges(v):
            h = dag.edges[e][1]
            y = level[v] + x[e]
            if h in level:
                assert level[h] == y, "conservation violated: path-dependent levels"
            else:
                level[h] = y
                stack.append(h)
        for e in dag.in_edges(v):
            t = dag.edges[e][0]
            y = level[v] - x[e]
            if t in level:
                assert level[t] == y, "conservation violated: path-dependent levels"
            else:
                level[t] = y
                stack.append(t)
    return level


# ---------------------------------------------------------------------------
# Drawing construction: peel right face-paths onto the right outer boundary
# ---------------------------------------------------------------------------


def drawing_from_levels(
    dag: Dag, emb: PlanarEmbedding, leveling: dict[str, int]
) -> LayeredDrawing:
    s, t = st_endpoints(dag)
    face_list = faces(dag, emb)
    outer = next(f for f in face_list if f.is_outer)
    height = leveling[t] - leveling[s]

    # boundary[lv] = item currently rightmost at this level, as ('v', name)
    # or ('e', edge); starts as the left outer boundary: the outer walk's
    # forward half-edges, i.e. the edges with the unbounded region on their
    # left, recovered as a path by sorting on tail level
    left_path = sorted(
        (e for e, fwd in outer.walk if fwd), key=lambda e: leveling[dag.edges[e][0]]
    )
    vertex_x: dict[str, Fraction] = {}
    wire_x: dict[int, dict[int, Fraction]] = {e: {} for e in range(dag.m)}
    boundary: list[tuple[str, object]] = [("?", None)] * (height + 1)

    def place_path(edge_seq: list[int], x: Fraction, update_boundary: bool) -> None:
        for e in edge_seq:
            a, b = dag.edges[e]
            for v in (a, b):
                if v not in vertex_x:
                    vertex_x[v] = x
                    if update_boundary:
                        boundary[leveling[v] - leveling[s]] = ("v", v)
            for lv in range(leveling[a] + 1, leveling[b]):
                wire_x[e][lv] = x
                if update_boundary:
                    boundary[lv - leveling[s]] = ("e", e)

    place_path(left_path, Fraction(0), True)
    if dag.m == 0:
        vertex_x[s] = Fraction(0)

    pending: list[Face] = sorted(
        (f for f in face_list if not f.is_outer), key=lambda f: f.walk
    )
    next_x = Fraction(1)
    while pending:
        chosen = None
        for f in pending:
            s_f, t_f, left, right = _face_paths(dag, f)
            y0, y1 = leveling[s_f] - leveling[s], leveling[t_f] - leveling[s]
            ok = boundary[y0] == ("v", s_f) and boundary[y1] == ("v", t_f)
            if ok:
                for e in left:
                    a, b = dag.edges[e]
                    for lv in range(leveling[a] + 1, leveling[b]):
                        if boundary[lv - leveling[s]] != ("e", e):
                            ok = False
                    if ok and b != t_f:
                        if boundary[leveling[b] - leveling[s]] != ("v", b):
                            ok = False
                    if not ok:
                        break
            if ok:
                chosen = f
                break
        assert chosen is not None, "no face with its left path on the boundary"
        pending.remove(chosen)
        s_f, t_f, left, right = _face_paths(dag, chosen)
        # the new right path supersedes the left path on the boundary
        y0, y1 = leveling[s_f] - leveling[s], leveling[t_f] - leveling[s]
        place_path(right, next_x, False)
        for e in right:
            a, b = dag.edges[e]
            for lv in range(leveling[a] + 1, leveling[b]):
                boundary[lv - leveling[s]] = ("e", e)
            if b != t_f:
                boundary[leveling[b] - leveling[s]] = ("v", b)
        next_x += 1

    # normalization: unit gaps per level in left-to-right order
    per_level: dict[int, list[tuple[Fraction, str, object]]] = {}
    for v, x in vertex_x.items():
        per_level.setdefault(leveling[v], []).append((x, "v", v))
    for e, xs in wire_x.items():
        for lv, x in xs.items():
            per_level.setdefault(lv, []).append((x, "e", e))
    new_vx: dict[str, Fraction] = {}
    new_wx: dict[int, dict[int, Fraction]] = {e: {} for e in range(dag.m)}
    for lv, entries in per_level.items():
        entries.sort(key=lambda r: (r[0], r[1], str(r[2])))
        for i, (x, kind, ref) in enumerate(entries):
            if kind == "v":
                new_vx[ref] = Fraction(i)
            else:
                new_wx[ref][lv] = Fraction(i)

    level = {v: leveling[v] for v in dag.vertices}
    wires: dict[int, tuple[Fraction, ...]] = {}
    for e, (a, b) in enumerate(dag.edges):
        pts = [new_vx[a]]
        for lv in range(leveling[a] + 1, leveling[b]):
            pts.append(new_wx[e][lv])
        pts.append(new_vx[b])
        wires[e] = tuple(pts)
    return LayeredDrawing(dag, level, new_vx, wires)


def solve_st_plane(
    dag: Dag, emb: PlanarEmbedding, sigma: dict[int, int] | int
) -> LayeredDrawing | None:
    """Embedding-preserving drawing with span(e) <= sigma(e), or None."""
    if isinstance(sigma, int):
        sigma = {e: sigma for e in range(dag.m)}
    network = build_dual_network(dag, emb, sigma)
    circ = feasible_circulation(network)
    if circ is None:
        return None
    leveling = levels_from_flow(dag, network, circ)
    return drawing_from_levels(dag, emb, leveling)
