"""Span solvers for graph classes with few sources.

All of them funnel into the dual-circulation solver: st-planar graphs get
an st-planar embedding and solve directly; single-source upward-plane
graphs are augmented to a plane st-graph by fanning every large-angle
sink-switch of a face into the face's top switch and adding a super-sink;
single-source plane graphs first recover their (unique up to reflection)
upward embedding; single-source outerplanar graphs decompose into blocks
which are solved independently and glued back at cut vertices; plane
graphs with several sources branch over ways to hang each source below
some visible vertex of one of its faces, super-source included.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .drawing import LayeredDrawing, strip_to_subgraph, validate
from .errors import (
    InvalidUpwardEmbedding,
    MultipleSources,
    NotOuterplanar,
    NotPlanar,
    NotStGraph,
    NotUpwardPlanar,
)
from .flow import solve_st_plane, st_endpoints
from .graphs import (
    Corner,
    Dag,
    Face,
    PlanarEmbedding,
    UpwardEmbedding,
    build_dag,
    enumerate_large_angle_assignments,
    faces,
    outerplanar_embedding,
    planar_embedding,
    structure_queries,
    trace_face_walks,
)

Pair = tuple[str, str]
HalfPair = tuple[Pair, bool]


# ---------------------------------------------------------------------------
# Embedding surgery on (tail, head) pairs, index-free
# ---------------------------------------------------------------------------


def _rotation_pairs(emb: PlanarEmbedding) -> dict[str, list[Pair]]:
    return {
        v: [emb.dag.edges[e] for e in emb.rotation[v]] for v in emb.dag.vertices
    }


def _outer_marker(emb: PlanarEmbedding) -> HalfPair:
    e, fwd = emb.outer_half_edge
    return (emb.dag.edges[e], fwd)


def _emb_from_pairs(
    dag: Dag, rot_pairs: dict[str, list[Pair]], outer_marker: HalfPair
) -> PlanarEmbedding:
    rotation = {
        v: tuple(dag.edge_index(*p) for p in rot_pairs[v]) for v in dag.vertices
    }
    pair, fwd = outer_marker
    target = (dag.edge_index(*pair), fwd)
    walks = trace_face_walks(dag, rotation)
    for walk in walks:
        if target in walk:
            return PlanarEmbedding(dag, rotation, min(walk))
    raise NotPlanar("outer marker lost during embedding surgery")


def _insert_after(rot: list[Pair], anchor: Pair, new: list[Pair]) -> None:
    i = rot.index(anchor)
    rot[i + 1 : i + 1] = new


# ---------------------------------------------------------------------------
# st-planar graphs (variable embedding)
# ---------------------------------------------------------------------------


def st_planar_embedding(dag: Dag) -> PlanarEmbedding:
    """Any planar embedding with source and sink on the outer face.

    Adds a helper (s, t) edge when absent: an st-planar embedding exists
    iff the graph stays planar with it.
    """
    s, t = st_endpoints(dag)
    if dag.has_arc(s, t):
        emb = planar_embedding(dag)
        if emb is None:
            raise NotPlanar("graph is not planar")
        e = dag.edge_index(s, t)
        for walk in emb.walks():
            if (e, True) in walk:
                return PlanarEmbedding(dag, emb.rotation, min(walk))
        raise NotPlanar("unreachable: edge face not found")
    helper = build_dag(dag.vertices, list(dag.edges) + [(s, t)])
    emb2 = planar_embedding(helper)
    if emb2 is None:
        raise NotPlanar("no st-planar embedding exists")
    he = helper.edge_index(s, t)
    rot_pairs = {
        v: [helper.edges[e] for e in emb2.rotation[v] if e != he]
        for v in helper.vertices
    }
    # outer face of the reduced embedding: the two faces flanking the helper
    # edge merge into one; any surviving half-edge of either identifies it
    marker: HalfPair | None = None
    for walk in emb2.walks():
        if (he, True) in walk or (he, False) in walk:
            for e, fwd in walk:
                if e != he:
                    marker = (helper.edges[e], fwd)
                    break
        if marker:
            break
    if marker is None:
        raise NotStGraph("degenerate single-edge graph has no reduced embedding")
    return _emb_from_pairs(dag, rot_pairs, marker)


def solve_st_planar(dag: Dag, k: int) -> LayeredDrawing | None:
    """Span-at-most-k drawing of a planar st-graph, any embedding.

    Prescribing the st-planar embedding does not change the span (flips of
    split components preserve levels), so one embedding suffices.
    """
    s, t = st_endpoints(dag)
    if dag.n == 2 and dag.m == 1:
        from .exact import level_planar

        return level_planar(dag, {s: 0, t: 1})
    emb = st_planar_embedding(dag)
    return solve_st_plane(dag, emb, k)


# ---------------------------------------------------------------------------
# Single-source augmentation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AugmentationRecord:
    added_vertices: tuple[str, ...]
    added_edges: tuple[tuple[Pair, int, str], ...]  # (edge, sigma, origin)

    def added_pairs(self) -> tuple[Pair, ...]:
        return tuple(p for p, _, _ in self.added_edges)


def _fresh_name(dag: Dag, base: str) -> str:
    name = base
    k = 0
    while name in set(dag.vertices):
        k += 1
        name = f"{base}{k}"
    return name


def augment_single_source(
    dag: Dag, upward: UpwardEmbedding, k: int
) -> tuple[Dag, PlanarEmbedding, dict[int, int], AugmentationRecord]:
    """Augment a single-source upward-plane graph to a plane st-graph.

    Every sink-switch corner holding a large angle in an internal face is
    wired to the face's unique non-large sink-switch; every outer sink is
    wired to a fresh super-sink.  Original edges keep span bound k, added
    edges get the trivial bound |V'| - 1.
    """
    if len(dag.sources()) != 1:
        raise MultipleSources(f"{len(dag.sources())} sources")
    from .graphs import check_upward_embedding

    verdict = check_upward_embedding(dag, upward)
    if not verdict.ok:
        raise InvalidUpwardEmbedding(verdict.violation or "invalid upward embedding")
    emb = upward.base
    s = dag.sources()[0]
    t_new = _fresh_name(dag, "t+")
    rot_pairs = _rotation_pairs(emb)
    rot_pairs[t_new] = []
    added: list[tuple[Pair, int, str]] = []

    s_large = next((c for c in upward.large_angles if c[0] == s), None)
    if s_large is None:
        raise InvalidUpwardEmbedding("source owns no large angle")

    for fi, face in enumerate(faces(dag, emb)):
        sink_corners = face.sink_switch_corners(dag)
        large = [c for c in sink_corners if c.key in upward.large_angles]
        if face.is_outer:
            # all outer large sink-switches feed the super-sink; its ccw
            # rotation lists the arrivals in outer-walk order
            for c in large:
                pair = (c.vertex, t_new)
                _insert_after(rot_pairs[c.vertex], emb.dag.edges[c.leaving_edge], [pair])
                added.append((pair, -1, "super-sink"))
            ordered = [c for c in face.corners if c in large]
            rot_pairs[t_new] = [(c.vertex, t_new) for c in ordered]
        else:
            plain = [c for c in sink_corners if c.key not in upward.large_angles]
            if len(plain) != 1:
                raise InvalidUpwardEmbedding(
                    f"internal face has {len(plain)} non-large sink-switches"
                )
            t_f = plain[0]
            if not large:
                continue
            # walk order starting after the top corner; arrivals at the top
            # corner go ccw right after its leaving edge
            start = face.corners.index(t_f)
            ordered = []
            ncor = len(face.corners)
            for off in range(1, ncor + 1):
                c = face.corners[(start + off) % ncor]
                if c in large:
                    ordered.append(c)
            for c in ordered:
                pair = (c.vertex, t_f.vertex)
                _insert_after(rot_pairs[c.vertex], emb.dag.edges[c.leaving_edge], [pair])
                added.append((pair, -1, f"face-top {t_f.vertex}"))
            arrivals = [(c.vertex, t_f.vertex) for c in ordered]
            _insert_after(
                rot_pairs[t_f.vertex], emb.dag.edges[t_f.leaving_edge], arrivals
            )

    new_edges = list(dag.edges) + [p for p, _, _ in added]
    try:
        dag2 = build_dag(list(dag.vertices) + [t_new], new_edges)
    except Exception as exc:  # cycles or parallels expose a broken embedding
        raise InvalidUpwardEmbedding(str(exc)) from exc
    # outer face of the augmented graph: the face at the source's large corner
    v, i = s_large
    rot_s = emb.rotation[v]
    enter_pair = emb.dag.edges[rot_s[(i + 1) % len(rot_s)]]
    tail, head = enter_pair
    marker = (enter_pair, head == v)  # half-edge pointing at s entering its corner
    emb2 = _emb_from_pairs(dag2, rot_pairs, marker)
    bound = dag2.n - 1
    sigma = {}
    added_pairs = {p for p, _, _ in added}
    for e, pair in enumerate(dag2.edges):
        sigma[e] = bound if pair in added_pairs else k
    record = AugmentationRecord(
        added_vertices=(t_new,),
        added_edges=tuple((p, bound, origin) for p, _, origin in added),
    )
    return dag2, emb2, sigma, record


def upward_embeddings_single_source(
    dag: Dag, emb: PlanarEmbedding
) -> tuple[UpwardEmbedding, ...]:
    """All upward embeddings over a fixed plane embedding.

    For biconnected single-source graphs this is unique (or a mirror pair
    on symmetric rotations).  When the source is a cut vertex it may own
    several outer corners and more assignments exist; they differ only in
    the source's corner, and all are enumerated.
    """
    if len(dag.sources()) != 1:
        raise MultipleSources(f"{len(dag.sources())} sources")
    ups = enumerate_large_angle_assignments(dag, emb)
    s = dag.sources()[0]
    sink_parts = {
        frozenset(c for c in up.large_angles if c[0] != s) for up in ups
    }
    assert len(sink_parts) <= 2, "sink large angles not unique up to reflection"
    return ups


def solve_single_source(
    dag: Dag,
    k: int,
    mode: str,
    embedding: PlanarEmbedding | UpwardEmbedding | None = None,
) -> LayeredDrawing | None:
    """Span-at-most-k drawing of a single-source graph.

    mode "upward_plane": embedding is an UpwardEmbedding to preserve;
    mode "plane": embedding is a PlanarEmbedding, the upward embedding is
    recovered (unique up to reflection); mode "free_outerplanar": no
    embedding, block-cut decomposition with per-block solves and gluing.
    """
    if len(dag.sources()) != 1:
        raise MultipleSources(f"{len(dag.sources())} sources")
    if mode == "upward_plane":
        assert isinstance(embedding, UpwardEmbedding)
        dag2, emb2, sigma, record = augment_single_source(dag, embedding, k)
        drawn = solve_st_plane(dag2, emb2, sigma)
        if drawn is None:
            return None
        return strip_to_subgraph(drawn, dag)
    if mode == "plane":
        assert isinstance(embedding, PlanarEmbedding)
        ups = upward_embeddings_single_source(dag, embedding)
        if not ups:
            raise NotUpwardPlanar("no large-angle assignment fits this embedding")
        for up in ups:
            result = solve_single_source(dag, k, "upward_plane", up)
            if result is not None:
                return result
        return None
    if mode == "free_outerplanar":
        return _solve_single_source_outerplanar(dag, k)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Single-source outerplanar graphs
# ---------------------------------------------------------------------------


def _block_subgraph(dag: Dag, block: frozenset[str]) -> Dag:
    edges = [(t, h) for t, h in dag.edges if t in block and h in block]
    return build_dag(sorted(block), edges)


def _escape_channel(
    drawing: LayeredDrawing, x_vertex: str, top: int
) -> dict[int, tuple[Fraction, Fraction]] | None:
    """y-monotone free corridor from a vertex to above level ``top``.

    Returns per-level open intervals (lo, hi), for levels y(x)+1 .. top,
    such that a curve through them never crosses the drawing.  Segments
    incident to x itself do not block the first step.
    """
    from .drawing import _segments_between

    y0 = drawing.level[x_vertex]
    x0 = drawing.vertex_x[x_vertex]

    def gaps(lv: int) -> list[tuple[Fraction, Fraction]]:
        xs = sorted(x for x, _ in drawing.items_at(lv))
        out = []
        if not xs:
            return [(Fraction(-(10 ** 9)), Fraction(10 ** 9))]
        out.append((xs[0] - 2, xs[0]))
        for a, b in zip(xs, xs[1:]):
            if a < b:
                out.append((a, b))
        out.append((xs[-1], xs[-1] + 2))
        return out

    def mid(g: tuple[Fraction, Fraction]) -> Fraction:
        return (g[0] + g[1]) / 2

    reach: list[tuple[Fraction, Fraction]] | None = None
    chosen: dict[int, tuple[Fraction, Fraction]] = {}
    parents: list[dict[int, int]] = []
    level_gaps: dict[int, list[tuple[Fraction, Fraction]]] = {}
    prev_pts: list[tuple[Fraction, int]] = [(x0, -1)]
    trail: dict[tuple[int, int], tuple[Fraction, int]] = {}
    for lv in range(y0 + 1, top + 1):
        cur_gaps = gaps(lv)
        level_gaps[lv] = cur_gaps
        segs = [
            (a, b)
            for a, b, e in _segments_between(drawing, lv - 1)
            if not (
                lv - 1 == y0
                and drawing.dag.edges[e][0] == x_vertex
            )
        ]
        nxt: list[tuple[Fraction, int]] = []
        for gi, g in enumerate(cur_gaps):
            tgt = mid(g)
            for px, pgi in prev_pts:
                blocked = any(
                    (a - px) * (b - tgt) < 0 or (a == px and px != x0)
                    for a, b in segs
                )
                if not blocked:
                    nxt.append((tgt, gi))
                    trail[(lv, gi)] = (px, pgi)
                    break
        if not nxt:
            return None
        prev_pts = nxt
    # backtrack one accepted chain
    lv = top
    x_cur, gi = prev_pts[0]
    while lv > y0:
        chosen[lv] = level_gaps[lv][gi]
        x_prev, gi = trail[(lv, gi)]
        lv -= 1
    return chosen


def _merge_block_drawing(
    combined: LayeredDrawing,
    block_drawing: LayeredDrawing,
    x_vertex: str,
    target: Dag,
) -> LayeredDrawing:
    """Insert a block drawing (rooted at its bottom source x) into the
    combined drawing through an escape channel above x."""
    shift = combined.level[x_vertex] - block_drawing.level[x_vertex]
    lvl = {v: y + shift for v, y in block_drawing.level.items()}
    top = max(lvl.values())
    cur_top = max(combined.level.values())
    probe_top = max(top, combined.level[x_vertex])
    channel = _escape_channel(combined, x_vertex, min(probe_top, cur_top))
    assert channel is not None, "no escape corridor above the cut vertex"
    # above the current drawing everything is free
    far_right = max(
        [x for x, _ in sum((combined.items_at(l) for l in range(min(combined.level.values()), cur_top + 1)), [])],
        default=Fraction(0),
    )
    for lv in range(cur_top + 1, top + 1):
        channel[lv] = (far_right + 1, far_right + 3)

    # per-level monotone squeeze of the block drawing into the corridor
    def remap(lv_new: int, xs: list[Fraction]) -> dict[Fraction, Fraction]:
        lo, hi = channel[lv_new]
        lo = lo + (hi - lo) / 4
        hi = hi - (hi - lo) / 4
        uniq = sorted(set(xs))
        n = len(uniq)
        return {
            x: lo + (hi - lo) * Fraction(i + 1, n + 1) for i, x in enumerate(uniq)
        }

    per_level: dict[int, list[Fraction]] = {}
    for v, y in block_drawing.level.items():
        if v != x_vertex:
            per_level.setdefault(y + shift, []).append(block_drawing.vertex_x[v])
    for e, wire in block_drawing.wires.items():
        t, h = block_drawing.dag.edges[e]
        for i, x in enumerate(wire):
            lv = block_drawing.level[t] + i + shift
            if not (lv == combined.level[x_vertex] ):
                per_level.setdefault(lv, []).append(x)
    maps = {lv: remap(lv, xs) for lv, xs in per_level.items()}

    level = dict(combined.level)
    vx = dict(combined.vertex_x)
    wires = {e: combined.wires[e] for e in combined.wires}
    for v, y in lvl.items():
        if v == x_vertex:
            continue
        level[v] = y
        vx[v] = maps[y][block_drawing.vertex_x[v]]
    for e, wire in block_drawing.wires.items():
        t, h = block_drawing.dag.edges[e]
        te = target.edge_index(t, h)
        pts = []
        for i, x in enumerate(wire):
            lv = block_drawing.level[t] + i + shift
            if t == x_vertex and i == 0:
                pts.append(combined.vertex_x[x_vertex])
            else:
                pts.append(maps[lv][x])
        wires[te] = tuple(pts)
    merged = LayeredDrawing(target, level, vx, wires)
    return merged


def _solve_single_source_outerplanar(dag: Dag, k: int) -> LayeredDrawing | None:
    info = structure_queries(dag)
    if not info.is_outerplanar:
        raise NotOuterplanar("graph is not outerplanar")
    s = dag.sources()[0]
    # block-cut tree rooted at the block containing the global source
    blocks = list(info.blocks)
    by_vertex: dict[str, list[int]] = {}
    for i, b in enumerate(blocks):
        for v in b:
            by_vertex.setdefault(v, []).append(i)
    root = next(i for i, b in enumerate(blocks) if s in b)
    order: list[tuple[int, str]] = [(root, s)]
    seen = {root}
    queue = [root]
    while queue:
        bi = queue.pop(0)
        for v in sorted(blocks[bi]):
            for bj in by_vertex[v]:
                if bj not in seen:
                    seen.add(bj)
                    order.append((bj, v))
                    queue.append(bj)

    partial_vertices: set[str] = set()
    partial: LayeredDrawing | None = None
    for bi, cut in order:
        sub = _block_subgraph(dag, blocks[bi])
        if len(sub.sources()) != 1 or sub.sources()[0] != cut:
            raise MultipleSources(
                f"block {sorted(blocks[bi])} is not rooted at its cut vertex"
            )
        if sub.m == 0:
            continue
        if sub.n == 2:
            from .exact import level_planar

            block_drawing = level_planar(
                sub, {sub.edges[0][0]: 0, sub.edges[0][1]: 1}
            )
        else:
            emb_b = outerplanar_embedding(sub)
            if emb_b is None:
                raise NotOuterplanar("block lost outerplanarity")
            block_drawing = solve_single_source(sub, k, "plane", emb_b)
        if block_drawing is None:
            return None
        if partial is None:
            partial = LayeredDrawing(
                _union_dag(dag, blocks[bi]),
                block_drawing.level,
                block_drawing.vertex_x,
                _reindex_wires(block_drawing, _union_dag(dag, blocks[bi])),
            )
            partial_vertices = set(blocks[bi])
        else:
            partial_vertices |= set(blocks[bi])
            target = _union_dag(dag, partial_vertices)
            lifted = LayeredDrawing(
                target,
                partial.level,
                partial.vertex_x,
                _reindex_wires(partial, target),
            )
            partial = _merge_block_drawing(lifted, block_drawing, cut, target)
    if partial is None:  # single vertex
        return LayeredDrawing(dag, {s: 0}, {s: Fraction(0)}, {})
    report = validate(dag, partial)
    assert report.ok, f"outerplanar gluing produced an invalid drawing: {report.violations}"
    return partial


def _union_dag(dag: Dag, vertices: set[str] | frozenset[str]) -> Dag:
    edges = [(t, h) for t, h in dag.edges if t in vertices and h in vertices]
    return build_dag(sorted(vertices), edges)


def _reindex_wires(drawing: LayeredDrawing, target: Dag) -> dict[int, tuple[Fraction, ...]]:
    wires = {}
    for e, (t, h) in enumerate(drawing.dag.edges):
        wires[target.edge_index(t, h)] = drawing.wires[e]
    return wires


# ---------------------------------------------------------------------------
# XP branching for plane graphs with several sources
# ---------------------------------------------------------------------------


def _sub_corner_positions(
    old_emb: PlanarEmbedding, new_emb: PlanarEmbedding, v: str, corner: int
) -> set[int]:
    """Indices of new corners at v refining one old corner after insertions."""
    old_rot = old_emb.rotation[v]
    e_a = old_emb.dag.edges[old_rot[corner]]
    e_b = old_emb.dag.edges[old_rot[(corner + 1) % len(old_rot)]]
    new_rot = [new_emb.dag.edges[e] for e in new_emb.rotation[v]]
    ia = new_rot.index(e_a)
    out = set()
    j = ia
    while True:
        out.add(j)
        j = (j + 1) % len(new_rot)
        if new_rot[j] == e_b:
            break
        if j == ia:
            break
    return out


def solve_plane_multisource_xp(
    dag: Dag,
    emb: PlanarEmbedding,
    k: int,
    upward: UpwardEmbedding | None = None,
) -> LayeredDrawing | None:
    """Embedding-preserving span-k drawing of a plane DAG via branching.

    A super-source r starts isolated in the outer face; while any other
    source remains, branch over its corners (only the large-angle corner
    when an upward embedding is prescribed), over the corners of the
    associated face, and over the outer-region choice when that face is
    the outer one.  Leaves are single-source plane instances where
    original edges keep bound k and added edges get bound |V|.
    """
    if emb.dag != dag:
        raise NotPlanar("embedding does not belong to the graph")
    if upward is not None and upward.base != emb:
        raise NotPlanar("upward embedding disagrees with the planar embedding")
    r_name = _fresh_name(dag, "r+")
    n_orig = dag.n
    sigma_added = n_orig

    def leaf(
        cur: Dag,
        cur_emb: PlanarEmbedding,
        added_pairs: set[Pair],
    ) -> LayeredDrawing | None:
        ups = enumerate_large_angle_assignments(cur, cur_emb)
        for up in ups:
            if upward is not None and not _leaf_respects_upward(cur, cur_emb, up):
                continue
            dag2, emb2, sigma, record = augment_single_source(cur, up, k)
            for e, pair in enumerate(dag2.edges):
                if pair in added_pairs:
                    sigma[e] = sigma_added
            drawn = solve_st_plane(dag2, emb2, sigma)
            if drawn is None:
                continue
            stripped = strip_to_subgraph(drawn, dag)
            expected = upward if upward is not None else emb
            report = validate(dag, stripped, expected_embedding=expected)
            if report.ok:
                return stripped
        return None

    def _leaf_respects_upward(cur, cur_emb, up) -> bool:
        # sinks that survived keep their prescribed large corner (possibly
        # split by inserted edges); everything else is unconstrained
        for v, i in upward.large_angles:
            if v not in set(cur.sinks()):
                continue
            allowed = _sub_corner_positions(emb, cur_emb, v, i)
            got = next(j for (w, j) in up.large_angles if w == v)
            if got not in allowed:
                return False
        return True

    best: list[LayeredDrawing] = []

    def branch(
        cur: Dag,
        rot_pairs: dict[str, list[Pair]],
        outer_marker: HalfPair,
        added_pairs: set[Pair],
    ) -> bool:
        # r joins `cur` only once its first edge exists; until then it is a
        # virtual candidate inside the outer face
        cur_emb = _emb_from_pairs(cur, rot_pairs, outer_marker)
        r_connected = r_name in set(cur.vertices)
        srcs = [v for v in cur.sources() if v != r_name]
        if not srcs:
            assert r_connected, "a DAG always has a source"
            result = leaf(cur, cur_emb, added_pairs)
            if result is not None:
                best.append(result)
                return True
            return False
        s_v = srcs[0]
        face_list = faces(cur_emb.dag, cur_emb)
        # corners of s: all of them, or only the prescribed large corner
        s_corners: list[int]
        if upward is not None:
            s_corners = sorted(
                _sub_corner_positions(emb, cur_emb, s_v, _large_corner(upward, s_v))
            )
        else:
            s_corners = list(range(len(cur_emb.rotation[s_v])))
        for ci in s_corners:
            host = next(
                f
                for f in face_list
                if any(c.vertex == s_v and c.rotation_index == ci for c in f.corners)
            )
            assert len(host.corners) <= 2 * (cur_emb.dag.n), "face corner bound exceeded"
            s_corner_obj = next(
                c
                for c in host.corners
                if c.vertex == s_v and c.rotation_index == ci
            )
            orig_sinks = set(dag.sinks())
            candidates: list[tuple[str, Pair | None]] = []
            for c in host.corners:
                if c.vertex == s_v:
                    continue
                if upward is not None and c.vertex in orig_sinks:
                    # an out-edge fixes the sink's large angle after
                    # stripping; only the prescribed corner may host it
                    allowed = _sub_corner_positions(
                        emb, cur_emb, c.vertex, _large_corner(upward, c.vertex)
                    )
                    if c.rotation_index not in allowed:
                        continue
                candidates.append((c.vertex, cur_emb.dag.edges[c.leaving_edge]))
            if host.is_outer and not r_connected:
                candidates.append((r_name, None))
            for v_s, anchor in candidates:
                if v_s == s_v:
                    continue
                if cur.has_arc(v_s, s_v) or cur.has_arc(s_v, v_s):
                    continue
                if v_s != r_name and _reaches(cur, s_v, v_s):
                    continue  # edge (v_s, s_v) would close a directed cycle
                new_pair = (v_s, s_v)
                nxt_vertices = list(cur.vertices)
                if v_s == r_name and r_name not in nxt_vertices:
                    nxt_vertices.append(r_name)
                try:
                    nxt = build_dag(nxt_vertices, list(cur.edges) + [new_pair])
                except Exception:
                    continue
                nxt_rot = {v: list(p) for v, p in rot_pairs.items()}
                leave_pair = cur_emb.dag.edges[s_corner_obj.leaving_edge]
                _insert_after(nxt_rot[s_v], leave_pair, [new_pair])
                if anchor is None:  # r enters the graph with its first edge
                    nxt_rot[r_name] = [new_pair]
                else:
                    _insert_after(nxt_rot[v_s], anchor, [new_pair])
                # outer-face candidates: a chord splits the outer region in
                # two, and the new edge borders both parts; only r's very
                # first edge is a pendant that leaves the region whole
                markers: list[HalfPair]
                if host.is_outer and anchor is not None:
                    markers = [(new_pair, True), (new_pair, False)]
                else:
                    markers = [outer_marker]
                for mk in markers:
                    try:
                        if branch(
                            nxt,
                            {v: list(p) for v, p in nxt_rot.items()},
                            mk,
                            added_pairs | {new_pair},
                        ):
                            return True
                    except NotPlanar:
                        continue
        return False

    def _large_corner(up: UpwardEmbedding, v: str) -> int:
        return next(i for (w, i) in up.large_angles if w == v)

    # initial state: r exists only virtually (no edges yet)
    branch(dag, _rotation_pairs(emb), _outer_marker(emb), set())
    return best[0] if best else None


def _reaches(dag: Dag, a: str, b: str) -> bool:
    stack = [a]
    seen = {a}
    while stack:
        v = stack.pop()
        if v == b:
            return True
        for e in dag.out_edges(v):
            h = dag.edges[e][1]
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return False
