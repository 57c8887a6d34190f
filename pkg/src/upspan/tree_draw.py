"""Certified-span drawings of directed trees.

Constructions: caterpillars on adjacent levels (span 1); source/sink
trees with each source's children split around it vertically (span at
most floor(d/2)+1, tracked by an upper-height invariant); a left-anchored
recursion for general trees whose lower heights telescope along incoming
paths (spans bounded by the geometric sum of the max child-indegree); and
the greedy-path layout that splits a tree along a heaviest root-to-leaf
path into an up band, a middle zigzag band of ell+1 layers, and a down
band, giving about n^0.695 layers per path length unit.

All coordinates are rational.  Recursive boxes occupy disjoint
x-intervals; connector wires hug per-level extremes so a new wire is
strictly beyond everything already drawn on every level it crosses, which
rules out inversions; fans leaving one vertex stay crossing-free because
they share an endpoint and keep consistent outward order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .drawing import LayeredDrawing
from .errors import LongDirectedPath, NotCaterpillar, TooSmall
from .graphs import Dag, is_caterpillar, is_tree, longest_directed_path_length

GAMMA = math.log2((1 + math.sqrt(5)) / 2)


@dataclass
class _Frag:
    """Partial drawing: vertex levels/x plus per-edge wires keyed by pair.

    Wire dicts map every crossed level (endpoints included) to an x.
    """

    level: dict[str, int] = field(default_factory=dict)
    x: dict[str, Fraction] = field(default_factory=dict)
    wires: dict[tuple[str, str], dict[int, Fraction]] = field(default_factory=dict)

    def translate(self, dx: Fraction, dy: int) -> "_Frag":
        return _Frag(
            {v: y + dy for v, y in self.level.items()},
            {v: x + dx for v, x in self.x.items()},
            {
                p: {lv + dy: x + dx for lv, x in w.items()}
                for p, w in self.wires.items()
            },
        )

    def flip_vertical(self) -> "_Frag":
        return _Frag(
            {v: -y for v, y in self.level.items()},
            dict(self.x),
            {
                (h, t): {-lv: x for lv, x in w.items()}
                for (t, h), w in self.wires.items()
            },
        )

    def points(self):
        for v, y in self.level.items():
            yield y, self.x[v]
        for w in self.wires.values():
            for lv, x in w.items():
                yield lv, x

    def min_x(self) -> Fraction:
        return min(x for _, x in self.points())

    def max_x(self) -> Fraction:
        return max(x for _, x in self.points())

    def min_level(self) -> int:
        return min(self.level.values())

    def max_level(self) -> int:
        return max(self.level.values())

    def extreme(self, levels, sign: int) -> Fraction:
        """max of sign*x over all content on the given levels (base 0)."""
        best = Fraction(0)
        lvset = set(levels)
        for lv, x in self.points():
            if lv in lvset and sign * x > best:
                best = sign * x
        return best

    def merge(self, other: "_Frag") -> None:
        self.level.update(other.level)
        self.x.update(other.x)
        self.wires.update(other.wires)

    def add_edge_wire(
        self, tail: str, head: str, mid: dict[int, Fraction] | None = None
    ) -> None:
        w = {self.level[tail]: self.x[tail], self.level[head]: self.x[head]}
        if mid:
            w.update(mid)
        self.wires[(tail, head)] = w

    def to_drawing(self, dag: Dag) -> LayeredDrawing:
        wires: dict[int, tuple[Fraction, ...]] = {}
        for e, (t, h) in enumerate(dag.edges):
            w = self.wires[(t, h)]
            pts = tuple(w[lv] for lv in range(self.level[t], self.level[h] + 1))
            assert len(pts) == self.level[h] - self.level[t] + 1, (t, h, sorted(w))
            wires[e] = pts
        return LayeredDrawing(dag, self.level, self.x, wires)


def _children(dag: Dag, v: str, parent: str | None) -> list[str]:
    out = []
    for e in dag.incident_edges(v):
        w = dag.other_end(e, v)
        if w != parent:
            out.append(w)
    return out


def _subtree_size(dag: Dag, v: str, parent: str | None) -> int:
    return 1 + sum(_subtree_size(dag, c, v) for c in _children(dag, v, parent))


# ---------------------------------------------------------------------------
# Caterpillars
# ---------------------------------------------------------------------------


def draw_caterpillar(tree: Dag) -> LayeredDrawing:
    """Span-1 drawing: spine as an x-monotone mountain range, leaves in the
    open column between their spine vertex and the next."""
    if not is_caterpillar(tree):
        raise NotCaterpillar("underlying graph is not a caterpillar")
    if tree.n == 1:
        v = tree.vertices[0]
        return LayeredDrawing(tree, {v: 0}, {v: Fraction(0)}, {})
    spine = [v for v in tree.vertices if tree.degree(v) >= 2]
    if not spine:  # single edge
        spine = [tree.edges[0][0]]
    sset = set(spine)
    adj: dict[str, list[str]] = {v: [] for v in spine}
    for t, h in tree.edges:
        if t in sset and h in sset:
            adj[t].append(h)
            adj[h].append(t)
    ends = [v for v in spine if len(adj[v]) <= 1]
    order = [min(ends)]
    seen = {order[0]}
    while len(order) < len(spine):
        nxt = next(w for w in adj[order[-1]] if w not in seen)
        order.append(nxt)
        seen.add(nxt)
    frag = _Frag()
    lv = 0
    for i, v in enumerate(order):
        frag.level[v] = lv
        frag.x[v] = Fraction(i)
        if i + 1 < len(order):
            lv = lv + 1 if tree.has_arc(v, order[i + 1]) else lv - 1
    for i, v in enumerate(order):
        if i:
            a = order[i - 1]
            if tree.has_arc(a, v):
                frag.add_edge_wire(a, v)
            else:
                frag.add_edge_wire(v, a)
        ups, downs = [], []
        for e in tree.incident_edges(v):
            w = tree.other_end(e, v)
            if w in sset:
                continue
            (ups if tree.edges[e][0] == v else downs).append(w)
        slots = len(ups) + len(downs)
        for j, w in enumerate(sorted(ups) + sorted(downs)):
            frag.level[w] = frag.level[v] + (1 if j < len(ups) else -1)
            frag.x[w] = Fraction(i) + Fraction(j + 1, slots + 1)
            if j < len(ups):
                frag.add_edge_wire(v, w)
            else:
                frag.add_edge_wire(w, v)
    shift = -frag.min_level()
    return frag.translate(Fraction(0), shift).to_drawing(tree)


# ---------------------------------------------------------------------------
# Source/sink trees: span at most floor(d/2) + 1
# ---------------------------------------------------------------------------


def draw_source_sink_tree(tree: Dag) -> LayeredDrawing:
    if not is_tree(tree):
        raise NotCaterpillar("input is not a tree")
    if longest_directed_path_length(tree) > 1:
        raise LongDirectedPath("some directed path has length above one")
    if tree.n == 1:
        v = tree.vertices[0]
        return LayeredDrawing(tree, {v: 0}, {v: Fraction(0)}, {})
    d = max(tree.degree(v) for v in tree.vertices)
    bound = d // 2 + 1
    root = min(v for v in tree.vertices if tree.degree(v) == 1)
    flip = not tree.out_edges(root)  # the recursion wants a source root
    work = tree
    if flip:
        work = Dag(tree.vertices, tuple(sorted((h, t) for t, h in tree.edges)))

    def rec(s: str, parent: str | None) -> _Frag:
        """Fragment with source s at (0, 0) and nothing else on x = 0, so a
        vertical escape from s is always free; upper height <= bound.

        Each child s_i forms a self-contained group (its grandchild boxes
        side by side, s_i above them) on its own x-interval; groups stack
        outward as levels ascend, so the fan edge to s_i can rise in the
        gap next to s and jump outward in the strip just below s_i, where
        all lower groups have ended.
        """
        frag = _Frag({s: 0}, {s: Fraction(0)}, {})
        kids = _children(work, s, parent)
        kids.sort(key=lambda c: (_subtree_size(work, c, s), c))
        k = len(kids)

        def build_side(children: list[str], sign: int) -> None:
            L = len(children)
            for y_i, s_i in enumerate(children, start=1):
                grandkids = sorted(
                    _children(work, s_i, s),
                    key=lambda g: (_subtree_size(work, g, s_i), g),
                )
                all_levels = range(frag.min_level(), frag.max_level() + 1)
                group_start = frag.extreme(all_levels, sign) + 1
                cursor = group_start
                for g in grandkids:
                    box = rec(g, s_i)
                    shifted = box.translate(Fraction(0), (y_i - 1) - box.max_level())
                    if sign > 0:
                        delta = cursor - shifted.min_x()
                    else:
                        delta = -cursor - shifted.max_x()
                    placed = shifted.translate(delta, 0)
                    frag.merge(placed)
                    cursor = (placed.max_x() if sign > 0 else -placed.min_x()) + 1
                frag.level[s_i] = y_i
                frag.x[s_i] = sign * group_start
                for g in grandkids:
                    mid = {lv: frag.x[g] for lv in range(frag.level[g] + 1, y_i)}
                    frag.add_edge_wire(g, s_i, mid)
                # fan: rise between s and the first group, nested inward as
                # levels grow, then jump outward above all lower groups
                g0 = sign * Fraction(L + 2 - y_i, L + 3)
                mid = {lv: g0 for lv in range(1, y_i)}
                frag.add_edge_wire(s, s_i, mid)

        left, right = kids[: k // 2], kids[k // 2 :]
        build_side(left, -1)
        build_side(right, +1)
        upper = frag.max_level() + 1
        assert upper <= max(bound, 2), f"upper height {upper} exceeds {bound}"
        return frag

    frag = rec(root, None)
    if flip:
        frag = frag.flip_vertical()
    frag = frag.translate(Fraction(0), -frag.min_level())
    drawing = frag.to_drawing(tree)
    spans = [drawing.level[h] - drawing.level[t] for t, h in tree.edges]
    assert max(spans) <= bound, f"span {max(spans)} exceeds {bound}"
    return drawing


# ---------------------------------------------------------------------------
# Bounded child-indegree: left-anchored recursion
# ---------------------------------------------------------------------------


def child_indegree(tree: Dag, root: str) -> int:
    """Max number of edges entering a vertex from its children."""
    best = 0
    stack = [(root, None)]
    while stack:
        v, parent = stack.pop()
        cnt = 0
        for c in _children(tree, v, parent):
            if tree.has_arc(c, v):
                cnt += 1
            stack.append((c, v))
        best = max(best, cnt)
    return best


def draw_bounded_indegree(tree: Dag) -> LayeredDrawing:
    """Left-anchored drawing with lower height at most sum of d_+^j over
    j = 0..ell_up for every subtree; spans inherit that bound."""
    if not is_tree(tree):
        raise NotCaterpillar("input is not a tree")
    if tree.n == 1:
        v = tree.vertices[0]
        return LayeredDrawing(tree, {v: 0}, {v: Fraction(0)}, {})
    leaves = [v for v in tree.vertices if tree.degree(v) == 1]
    root = min(leaves)

    def rec(s: str, parent: str | None) -> tuple[_Frag, int]:
        """Left-anchored fragment with s at (0, y_s); returns lower height.

        Invariant: the root is the unique content at the minimum x.
        """
        kids = _children(tree, s, parent)
        outs = sorted(
            (c for c in kids if tree.has_arc(s, c)),
            key=lambda c: (_subtree_size(tree, c, s), c),
        )
        ins = sorted(
            (c for c in kids if tree.has_arc(c, s)),
            key=lambda c: (_subtree_size(tree, c, s), c),
        )
        frag = _Frag({s: 0}, {s: Fraction(0)}, {})
        cursor = Fraction(1)
        # outgoing subtrees: boxes side by side, bottoms one level above s
        for c in outs:
            box, h_c = rec(c, s)
            shifted = box.translate(Fraction(0), 1 + (box.level[c] - box.min_level()) - box.level[c])
            # ^ bottom of the box sits at level 1
            delta = cursor + Fraction(1, 2) - shifted.min_x()
            placed = shifted.translate(delta, 0)
            frag.merge(placed)
            # fan wire s -> c through the channel just left of the box
            chan = placed.x[c] - Fraction(1, 4)
            mid = {lv: chan for lv in range(1, placed.level[c])}
            frag.add_edge_wire(s, c, mid)
            cursor = max(cursor, placed.max_x()) + 1
        # incoming subtrees: descending staircase to the right
        floor_level = 0
        first_chan = None
        for idx, c in enumerate(ins):
            box, h_c = rec(c, s)
            y_c = floor_level - 1
            shifted = box.translate(Fraction(0), y_c - box.level[c])
            delta = cursor + Fraction(1, 2) - shifted.min_x()
            placed = shifted.translate(delta, 0)
            frag.merge(placed)
            # escape wire c -> s: one sweep left to a private channel in the
            # strip just above c (everything between has bottoms above), then
            # vertically to one level below s, then into s; lower children
            # take inner channels so diagonals never cross older verticals
            chan = Fraction(1, 2) + Fraction(len(ins) - idx, 2 * (len(ins) + 2))
            mid = {}
            for lv in range(y_c + 1, 0):
                mid[lv] = chan
            frag.add_edge_wire(c, s, mid)
            floor_level = placed.min_level()
            cursor = max(cursor, placed.max_x()) + 1
        lower = 1 - floor_level
        return frag, lower

    frag, lower = rec(root, None)
    frag = frag.translate(Fraction(0), -frag.min_level())
    drawing = frag.to_drawing(tree)
    d_plus = child_indegree(tree, root)
    ell = longest_directed_path_length(tree)
    limit = sum(d_plus ** j for j in range(ell + 1))
    spans = [drawing.level[h] - drawing.level[t] for t, h in tree.edges]
    assert max(spans) <= limit, f"span {max(spans)} exceeds {limit}"
    return drawing


# ---------------------------------------------------------------------------
# Greedy path decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GreedyDecomposition:
    path: tuple[str, ...]
    up_subtrees: tuple[tuple[str, str], ...]  # (attach vertex, subtree root)
    down_subtrees: tuple[tuple[str, str], ...]
    alpha: int
    beta: int


def greedy_decompose(tree: Dag, root: str) -> GreedyDecomposition:
    """Root-to-leaf path always descending into a largest child subtree."""
    if not is_tree(tree):
        raise NotCaterpillar("input is not a tree")
    path = [root]
    parent: str | None = None
    while True:
        kids = _children(tree, path[-1], parent)
        if not kids:
            break
        cur = path[-1]
        sizes = {c: _subtree_size(tree, c, cur) for c in kids}
        top = max(sizes.values())
        nxt = min(c for c in kids if sizes[c] == top)
        parent = cur
        path.append(nxt)
    on_path = set(path)
    ups: list[tuple[str, str]] = []
    downs: list[tuple[str, str]] = []
    for i, u in enumerate(path):
        par = path[i - 1] if i else None
        nxt = path[i + 1] if i + 1 < len(path) else None
        for c in _children(tree, u, par):
            if c == nxt:
                continue
            if tree.has_arc(u, c):
                ups.append((u, c))
            else:
                downs.append((u, c))
    n = tree.n
    alpha = max((_subtree_size(tree, c, u) for u, c in ups), default=0)
    beta = max((_subtree_size(tree, c, u) for u, c in downs), default=0)
    ok = (alpha <= n / 2 and beta <= (n - alpha) / 2) or (
        beta <= n / 2 and alpha <= (n - beta) / 2
    )
    assert ok, f"partition bounds fail: n={n} alpha={alpha} beta={beta}"
    if alpha and beta:
        assert alpha ** GAMMA + beta ** GAMMA <= n ** GAMMA + 1e-9
    return GreedyDecomposition(tuple(path), tuple(ups), tuple(downs), alpha, beta)


def greedy_layer_bound(n: int, ell: int) -> int:
    return math.ceil(2 * n ** GAMMA - 1) * (ell + 1)


def draw_greedy(tree: Dag) -> LayeredDrawing:
    """Greedy-path layout: up-subtree boxes in a top band, the path as an
    x-monotone zigzag in a middle band of ell+1 layers, down-subtree boxes
    in a bottom band."""
    if not is_tree(tree):
        raise NotCaterpillar("input is not a tree")
    root = min(tree.vertices)
    frag = _rec_greedy(tree, root, None)
    frag = frag.translate(Fraction(0), -frag.min_level())
    drawing = frag.to_drawing(tree)
    ell = longest_directed_path_length(tree)
    layers = drawing.layer_count()
    assert layers <= greedy_layer_bound(tree.n, ell), (
        f"{layers} layers exceed bound {greedy_layer_bound(tree.n, ell)}"
    )
    return drawing


def _rec_greedy(tree: Dag, root: str, parent: str | None) -> _Frag:
    sub_vertices = _sub_vertices(tree, root, parent)
    if len(sub_vertices) == 1:
        return _Frag({root: 0}, {root: Fraction(0)}, {})
    sub = _induced(tree, sub_vertices)
    deco = greedy_decompose(sub, root)
    path = deco.path
    ell = longest_directed_path_length(sub)
    mid_h = ell + 1

    # middle band: x-monotone zigzag, each maximal run stretched across it
    frag = _Frag()
    runs: list[tuple[bool, int]] = []  # (ascending, length) per maximal run
    i = 0
    while i + 1 < len(path):
        asc = sub.has_arc(path[i], path[i + 1])
        j = i + 1
        while j + 1 < len(path) and sub.has_arc(path[j], path[j + 1]) == asc:
            j += 1
        runs.append((asc, j - i))
        i = j
    frag.level[path[0]] = 0 if runs[0][0] else mid_h - 1
    frag.x[path[0]] = Fraction(0)
    pos = 0
    K = Fraction(1, 4 * (tree.n + 2) * (mid_h + 2))
    for asc, length in runs:
        start_lv = frag.level[path[pos]]
        top = mid_h - 1 if asc else 0
        # first edge absorbs the slack so the run spans the whole band
        slack = (top - start_lv) if asc else (start_lv - top)
        spans = [slack - (length - 1)] + [1] * (length - 1)
        assert spans[0] >= 1
        for step, s_len in enumerate(spans):
            a, b = path[pos + step], path[pos + step + 1]
            frag.level[b] = frag.level[a] + (s_len if asc else -s_len)
            frag.x[b] = Fraction(pos + step + 1)
            lo, hi = (a, b) if asc else (b, a)
            mid = {}
            y0, y1 = frag.level[lo], frag.level[hi]
            for off in range(1, y1 - y0):
                mid[y0 + off] = frag.x[lo] + Fraction(off, y1 - y0) * (
                    frag.x[hi] - frag.x[lo]
                )
            frag.add_edge_wire(lo, hi, mid)
        pos += length

    # recursive boxes
    def band(boxes: list[tuple[str, str]], up: bool) -> None:
        if not boxes:
            return
        entries = []
        for u, c in boxes:
            box = _rec_greedy(tree, c, u)
            entries.append((path.index(u), c, u, box))
        entries.sort(key=lambda r: (r[0], r[1]))
        band_h = max(b.max_level() - b.min_level() + 1 for *_, b in entries)
        base = mid_h if up else -1 - (band_h - 1)
        cursor = Fraction(1)
        fan_count: dict[str, int] = {}
        for kpos, c, u, box in entries:
            if up:
                shifted = box.translate(Fraction(0), base - box.min_level())
            else:
                shifted = box.translate(Fraction(0), (-1) - box.max_level())
            delta = cursor - shifted.min_x()
            placed = shifted.translate(delta, 0)
            frag.merge(placed)
            cursor = placed.max_x() + 1
            # connector wire between u and the box root c
            j = fan_count.get(u, 0) + 1
            fan_count[u] = j
            off = frag.x[u] + j * K
            chan = placed.x[c] - Fraction(1, 4)
            mid = {}
            if up:
                for lv2 in range(frag.level[u] + 1, mid_h):
                    mid[lv2] = off
                for lv2 in range(mid_h, placed.level[c]):
                    mid[lv2] = chan
                frag.add_edge_wire(u, c, mid)
            else:
                for lv2 in range(placed.level[c] + 1, 0):
                    mid[lv2] = chan
                for lv2 in range(0, frag.level[u]):
                    mid[lv2] = off
                frag.add_edge_wire(c, u, mid)

    band(list(deco.up_subtrees), up=True)
    band(list(deco.down_subtrees), up=False)
    return frag


def _sub_vertices(tree: Dag, root: str, parent: str | None) -> list[str]:
    out = [root]
    stack = [(root, parent)]
    while stack:
        v, par = stack.pop()
        for c in _children(tree, v, par):
            out.append(c)
            stack.append((c, v))
    return out


def _induced(tree: Dag, vertices: list[str]) -> Dag:
    vs = set(vertices)
    return Dag(
        tuple(sorted(vs)),
        tuple(sorted((t, h) for t, h in tree.edges if t in vs and h in vs)),
    )
