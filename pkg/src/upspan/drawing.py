"""Layered drawings: data model, span, validation, compression, export.

A drawing assigns each vertex an integer level (y) and a rational x, and
each edge a *wire*: one rational x per integer level from tail to head
inclusive.  Wires make the crossing test exact: two wires cross iff their
x-order inverts between two consecutive levels.  Rationals avoid any
epsilon policy; straight-line drawings are a special case.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedWire, NotUpward
from .graphs import (
    Corner,
    Dag,
    PlanarEmbedding,
    UpwardEmbedding,
    check_upward_embedding,
)

# drawing items: ('v', vertex_id) or ('e', edge_index) for a wire pass-through
Item = tuple[str, object]


class LayeredDrawing:
    def __init__(
        self,
        dag: Dag,
        level: dict[str, int],
        vertex_x: dict[str, Fraction],
        wires: dict[int, tuple[Fraction, ...]],
    ):
        self.dag = dag
        self.level = dict(level)
        self.vertex_x = {v: Fraction(x) for v, x in vertex_x.items()}
        self.wires = {e: tuple(Fraction(x) for x in w) for e, w in wires.items()}

    def copy(self) -> "LayeredDrawing":
        return LayeredDrawing(self.dag, self.level, self.vertex_x, self.wires)

    def height(self) -> int:
        """Number of distinct levels spanned (occupied or not)."""
        if not self.level:
            return 0
        return max(self.level.values()) - min(self.level.values()) + 1

    def layer_count(self) -> int:
        """Number of occupied levels."""
        return len(set(self.level.values()))

    def wire_x_at(self, edge: int, lv: int) -> Fraction:
        t, h = self.dag.edges[edge]
        return self.wires[edge][lv - self.level[t]]

    def items_at(self, lv: int) -> list[tuple[Fraction, Item]]:
        """All (x, item) pairs on a level, sorted by x."""
        out: list[tuple[Fraction, Item]] = []
        for v, y in self.level.items():
            if y == lv:
                out.append((self.vertex_x[v], ("v", v)))
        for e, wire in self.wires.items():
            t, h = self.dag.edges[e]
            if self.level[t] <= lv <= self.level[h]:
                x = wire[lv - self.level[t]]
                # endpoints coincide with the vertex items; skip duplicates
                if lv != self.level[t] and lv != self.level[h]:
                    out.append((x, ("e", e)))
        out.sort(key=lambda p: (p[0], p[1]))
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LayeredDrawing)
            and self.dag == other.dag
            and self.level == other.level
            and self.vertex_x == other.vertex_x
            and self.wires == other.wires
        )


@dataclass
class ValidityReport:
    upward_ok: bool
    planar_ok: bool
    embedding_ok: bool | None
    span: int | None
    violations: list[str]

    @property
    def ok(self) -> bool:
        return (
            self.upward_ok
            and self.planar_ok
            and (self.embedding_ok is not False)
        )


def span_of(drawing: LayeredDrawing) -> int:
    """Maximum edge span; raises NotUpward if some edge does not go up."""
    spans = []
    for t, h in drawing.dag.edges:
        s = drawing.level[h] - drawing.level[t]
        if s < 1:
            raise NotUpward(f"edge ({t}, {h}) has non-positive span {s}")
        spans.append(s)
    return max(spans, default=0)


def _check_wires(drawing: LayeredDrawing) -> None:
    dag = drawing.dag
    for e, (t, h) in enumerate(dag.edges):
        if e not in drawing.wires:
            raise MalformedWire(f"edge {e} has no wire")
        wire = drawing.wires[e]
        want = drawing.level[h] - drawing.level[t] + 1
        if want < 2:
            continue  # reported as an upwardness violation, not a wire defect
        if len(wire) != want:
            raise MalformedWire(
                f"edge {e} wire has {len(wire)} points, expected {want}"
            )
        if wire[0] != drawing.vertex_x[t] or wire[-1] != drawing.vertex_x[h]:
            raise MalformedWire(f"edge {e} wire endpoints do not match vertices")


def _segments_between(drawing: LayeredDrawing, lv: int) -> list[tuple[Fraction, Fraction, int]]:
    """Wire segments crossing the strip between lv and lv+1."""
    segs = []
    for e, wire in drawing.wires.items():
        t, h = drawing.dag.edges[e]
        if drawing.level[t] <= lv and lv + 1 <= drawing.level[h]:
            i = lv - drawing.level[t]
            segs.append((wire[i], wire[i + 1], e))
    return segs


def induced_embedding(drawing: LayeredDrawing) -> UpwardEmbedding:
    """The upward embedding realized by a (valid) drawing.

    The ccw rotation at a vertex is its outgoing wires by first-step dx
    descending, then incoming wires by last-step dx ascending.  The large
    angle of a source or sink is the corner containing the vertical ray
    away from its edges; the outer face is the one holding that corner at
    the bottom-leftmost vertex.
    """
    dag = drawing.dag
    rotation: dict[str, tuple[int, ...]] = {}
    large_pair: dict[str, tuple[int, int]] = {}
    for v in dag.vertices:
        x = drawing.vertex_x[v]
        outs = sorted(
            dag.out_edges(v), key=lambda e: drawing.wires[e][1] - x, reverse=True
        )
        ins = sorted(dag.in_edges(v), key=lambda e: drawing.wires[e][-2] - x)
        ccw = tuple(outs + ins)
        rotation[v] = ccw
        if ccw and (not outs or not ins):
            large_pair[v] = (ccw[-1], ccw[0])
    bottom_left = min(dag.vertices, key=lambda v: (drawing.level[v], drawing.vertex_x[v], v))
    e_last, e_first = large_pair[bottom_left]
    from .graphs import trace_face_walks

    walks = trace_face_walks(dag, rotation)
    pos_tmp = {v: {e: i for i, e in enumerate(r)} for v, r in rotation.items()}

    def corner_from_pair(v: str, pair: tuple[int, int]) -> Corner:
        # corner index i: rotation[i] = pair[0], rotation[(i+1)%deg] = pair[1]
        i = pos_tmp[v][pair[0]]
        return (v, i)

    # outer face: the walk traversing bottom_left's downward corner, i.e.
    # entering along e_first and leaving along e_last
    outer = None
    for walk in walks:
        for k, (e, fwd) in enumerate(walk):
            t, h = dag.edges[e]
            at = h if fwd else t
            nxt = walk[(k + 1) % len(walk)][0]
            if at == bottom_left and e == e_first and nxt == e_last:
                outer = walk
    assert outer is not None, "no face traverses the bottom-left outer corner"
    base = PlanarEmbedding(dag, rotation, min(outer))
    large = set()
    for v, pair in large_pair.items():
        raw_v, raw_i = corner_from_pair(v, pair)
        # rotation was canonicalized inside PlanarEmbedding; recompute index
        i = base.position(v, pair[0])
        large.add((v, i))
    return UpwardEmbedding(base, frozenset(large))


def validate(
    dag: Dag,
    drawing: LayeredDrawing,
    expected_embedding: PlanarEmbedding | UpwardEmbedding | None = None,
    allow_reflection: bool = False,
) -> ValidityReport:
    violations: list[str] = []
    if set(drawing.level) != set(dag.vertices):
        raise MalformedWire("drawing does not level exactly the vertex set")
    upward_ok = True
    for t, h in dag.edges:
        if drawing.level[h] - drawing.level[t] < 1:
            upward_ok = False
            violations.append(f"edge ({t}, {h}) does not go strictly upward")
    if not upward_ok:
        return ValidityReport(False, False, None, None, violations)
    _check_wires(drawing)

    planar_ok = True
    levels = sorted(set(drawing.level.values()))
    # distinct x per level (vertices and pass-through wire points)
    for lv in levels:
        seen: dict[Fraction, Item] = {}
        for x, item in drawing.items_at(lv):
            if x in seen:
                planar_ok = False
                violations.append(
                    f"level {lv}: {seen[x]} and {item} share x = {x}"
                )
            seen[x] = item
    # crossing test per strip: order inversion between consecutive levels
    lo, hi = min(drawing.level.values()), max(drawing.level.values())
    for lv in range(lo, hi):
        segs = _segments_between(drawing, lv)
        segs.sort()
        best: tuple[Fraction, int] | None = None  # (max top x, its edge) over strictly smaller bottoms
        k = 0
        while k < len(segs):
            j = k
            while j < len(segs) and segs[j][0] == segs[k][0]:
                j += 1
            if best is not None:
                for b, t_, e in segs[k:j]:
                    if t_ < best[0]:
                        planar_ok = False
                        violations.append(
                            f"strip {lv}..{lv + 1}: wires of edges {best[1]} and {e} cross"
                        )
            group_best = max((t_, e) for b, t_, e in segs[k:j])
            if best is None or group_best > best:
                best = group_best
            k = j
    embedding_ok: bool | None = None
    if expected_embedding is not None and planar_ok:
        induced = induced_embedding(drawing)
        if isinstance(expected_embedding, UpwardEmbedding):
            embedding_ok = induced == expected_embedding
            if not embedding_ok and allow_reflection:
                embedding_ok = induced == expected_embedding.reflect()
        else:
            embedding_ok = induced.base == expected_embedding
            if not embedding_ok and allow_reflection:
                embedding_ok = induced.base == expected_embedding.reflect()
        if not embedding_ok:
            violations.append("drawing does not realize the expected embedding")
    elif expected_embedding is not None:
        embedding_ok = False
        violations.append("embedding not checked: drawing is not planar")
    span = span_of(drawing) if upward_ok else None
    return ValidityReport(upward_ok, planar_ok, embedding_ok, span, violations)


def compress_levels(drawing: LayeredDrawing) -> LayeredDrawing:
    """Drop vertex-free levels and rebase the minimum level to zero.

    Spans never increase; relative per-level orders (hence planarity and
    the induced embedding) are preserved.
    """
    if not drawing.level:
        return drawing.copy()
    occupied = sorted(set(drawing.level.values()))
    remap = {old: new for new, old in enumerate(occupied)}
    level = {v: remap[y] for v, y in drawing.level.items()}
    wires: dict[int, tuple[Fraction, ...]] = {}
    for e, wire in drawing.wires.items():
        t, h = drawing.dag.edges[e]
        y0 = drawing.level[t]
        kept = tuple(
            x for i, x in enumerate(wire) if (y0 + i) in remap
        )
        wires[e] = kept
    return LayeredDrawing(drawing.dag, level, drawing.vertex_x, wires)


def strip_to_subgraph(drawing: LayeredDrawing, sub: Dag) -> LayeredDrawing:
    """Restrict a drawing to a subgraph (drop removed vertices and wires)."""
    level = {v: drawing.level[v] for v in sub.vertices}
    vx = {v: drawing.vertex_x[v] for v in sub.vertices}
    wires = {}
    for e, (t, h) in enumerate(sub.edges):
        old = drawing.dag.edge_index(t, h)
        wires[e] = drawing.wires[old]
    return LayeredDrawing(sub, level, vx, wires)


def drawing_from_orderings(
    dag: Dag, level: dict[str, int], order: dict[int, list[Item]]
) -> LayeredDrawing:
    """Build a drawing from per-level left-to-right item orders (x = index)."""
    xs: dict[int, dict[Item, Fraction]] = {}
    for lv, items in order.items():
        xs[lv] = {item: Fraction(i) for i, item in enumerate(items)}
    vertex_x = {v: xs[level[v]][("v", v)] for v in dag.vertices}
    wires: dict[int, tuple[Fraction, ...]] = {}
    for e, (t, h) in enumerate(dag.edges):
        pts = [vertex_x[t]]
        for lv in range(level[t] + 1, level[h]):
            pts.append(xs[lv][("e", e)])
        pts.append(vertex_x[h])
        wires[e] = tuple(pts)
    return LayeredDrawing(dag, level, vertex_x, wires)


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------


def drawing_to_json_dict(drawing: LayeredDrawing) -> dict:
    return {
        "levels": {v: drawing.level[v] for v in sorted(drawing.level)},
        "x": {v: str(drawing.vertex_x[v]) for v in sorted(drawing.vertex_x)},
        "wires": {
            str(e): [str(x) for x in drawing.wires[e]] for e in sorted(drawing.wires)
        },
    }


def drawing_from_json_dict(dag: Dag, doc: dict) -> LayeredDrawing:
    return LayeredDrawing(
        dag,
        {v: int(y) for v, y in doc["levels"].items()},
        {v: Fraction(x) for v, x in doc["x"].items()},
        {int(e): tuple(Fraction(x) for x in w) for e, w in doc["wires"].items()},
    )


def export(drawing: LayeredDrawing, fmt: str) -> bytes:
    """Deterministic JSON or SVG bytes for a drawing."""
    if fmt == "json":
        return (
            json.dumps(drawing_to_json_dict(drawing), sort_keys=True, indent=1) + "\n"
        ).encode()
    if fmt == "svg":
        return _to_svg(drawing).encode()
    raise ValueError(f"unknown export format: {fmt}")


def _to_svg(drawing: LayeredDrawing) -> str:
    ux, uy, r = 48.0, 42.0, 7.0
    pad = 30.0
    if drawing.level:
        xs = [float(x) for x in drawing.vertex_x.values()]
        for w in drawing.wires.values():
            xs.extend(float(x) for x in w)
        ys = list(drawing.level.values())
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
    else:
        x0 = x1 = y0 = y1 = 0

    def sx(x: float) -> float:
        return pad + (x - x0) * ux

    def sy(y: int | float) -> float:
        return pad + (y1 - y) * uy

    w = pad * 2 + (x1 - x0) * ux
    h = pad * 2 + (y1 - y0) * uy
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {w:.1f} {h:.1f}">',
    ]
    for lv in range(y0, y1 + 1) if drawing.level else []:
        parts.append(
            f'<line x1="0" y1="{sy(lv):.1f}" x2="{w:.1f}" y2="{sy(lv):.1f}" '
            'stroke="#dddddd" stroke-width="1"/>'
        )
    for e in sorted(drawing.wires):
        t, hd = drawing.dag.edges[e]
        pts = " ".join(
            f"{sx(float(x)):.2f},{sy(drawing.level[t] + i):.2f}"
            for i, x in enumerate(drawing.wires[e])
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#333333" stroke-width="1.5"/>'
        )
    for v in sorted(drawing.level):
        cx, cy = sx(float(drawing.vertex_x[v])), sy(drawing.level[v])
        parts.append(
            f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r}" fill="#ffffff" '
            'stroke="#000000" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{cx:.2f}" y="{cy + 3.5:.2f}" font-size="8" '
            f'text-anchor="middle" font-family="sans-serif">{v}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
