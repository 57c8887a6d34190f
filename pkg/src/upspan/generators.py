"""Instance families with extreme span, and hardness reduction gadgets.

Lower-bound families: the alternating path with a one-sided (spiral)
upward embedding, its 3-connected reinforcement, a binary tree with long
directed paths, the recursive source/sink trees T_d, the even-degree
central-sink tree, the composed tree that trades degree for path length,
and the two-cover family K_{2,2s}.  Hardness gadgets: reductions from
3-partition to span-2 feasibility for biconnected single-source graphs
and for directed trees, with role tags addressing every gadget part.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInstance, TooSmall, UpspanError
from .graphs import (
    Dag,
    PlanarEmbedding,
    UpwardEmbedding,
    build_dag,
    trace_face_walks,
)


# ---------------------------------------------------------------------------
# Spiral path and 3-connected reinforcement
# ---------------------------------------------------------------------------


def alternating_path(n: int, prefix: str = "v") -> Dag:
    """Path v1..vn oriented so odd-index vertices are sources."""
    if n < 2:
        raise TooSmall("need at least two vertices")
    names = [f"{prefix}{i:03d}" for i in range(1, n + 1)]
    edges = []
    for i in range(1, n):
        a, b = names[i - 1], names[i]
        edges.append((a, b) if i % 2 == 1 else (b, a))
    return build_dag(names, edges)


def gen_spiral_path(n: int) -> tuple[Dag, UpwardEmbedding]:
    """Alternating path with every large angle on the same side.

    The path has a unique rotation system and one face; the spiral lives
    entirely in the large-angle assignment: each interior vertex takes the
    corner traversed while walking the path in increasing index order.
    """
    dag = alternating_path(n)
    names = sorted(dag.vertices)
    rotation = {v: dag.incident_edges(v) for v in dag.vertices}
    walks = trace_face_walks(dag, rotation)
    assert len(walks) == 1
    emb = PlanarEmbedding(dag, rotation, min(walks[0]))
    large: set[tuple[str, int]] = set()
    for idx, v in enumerate(names):
        rot = emb.rotation[v]
        if len(rot) == 1:
            large.add((v, 0))
            continue
        prev_edge = (
            dag.edge_index(names[idx - 1], v)
            if dag.has_arc(names[idx - 1], v)
            else dag.edge_index(v, names[idx - 1])
        )
        # corner entered from the lower-index side: entering edge is
        # rotation[i + 1], so the corner index is the other position
        i_prev = emb.position(v, prev_edge)
        large.add((v, (i_prev - 1) % 2))
    return dag, UpwardEmbedding(emb, frozenset(large))


def gen_spiral_3connected(n: int) -> Dag:
    """Three alternating paths tied into a 3-connected graph.

    Cross edges run down through the middle path on odd ranks and up on
    even ranks; two closing edges join the outer paths at both ends.
    """
    if n < 2:
        raise TooSmall("need n >= 2")
    u = [f"u{i:03d}" for i in range(1, n + 1)]
    v = [f"v{i:03d}" for i in range(1, n + 1)]
    w = [f"w{i:03d}" for i in range(1, n + 1)]

    def path_edges(names):
        out = []
        for i in range(1, n):
            a, b = names[i - 1], names[i]
            out.append((a, b) if i % 2 == 1 else (b, a))
        return out

    edges = path_edges(u) + path_edges(v) + path_edges(w)
    for i in range(1, n + 1):
        if i % 2 == 1:
            edges.append((u[i - 1], v[i - 1]))
            edges.append((v[i - 1], w[i - 1]))
        else:
            edges.append((w[i - 1], v[i - 1]))
            edges.append((v[i - 1], u[i - 1]))
    edges.append((u[0], w[0]))
    edges.append((u[n - 1], w[n - 1]) if n % 2 == 1 else (w[n - 1], u[n - 1]))
    return build_dag(u + v + w, edges)


def is_three_connected(dag: Dag) -> bool:
    """Exhaustive 2-cut check, fine for small members."""
    import networkx as nx

    from .graphs import _nx_undirected

    g = _nx_undirected(dag)
    if dag.n < 4:
        return False
    for i, a in enumerate(dag.vertices):
        for b in dag.vertices[i + 1 :]:
            h = g.copy()
            h.remove_nodes_from([a, b])
            if h.number_of_nodes() and not nx.is_connected(h):
                return False
    return True


# ---------------------------------------------------------------------------
# Binary tree with long directed paths
# ---------------------------------------------------------------------------


def gen_binary_lower(ell: int, n: int) -> Dag:
    """Three directed paths of length ell feeding a root at mid-height,
    padded with an alternating tail up to n vertices."""
    base = 3 * (ell + 1) + 1
    if n < base:
        raise TooSmall(f"need n >= {base}")
    m = -(-ell // 2)  # ceil(ell / 2)
    names: list[str] = ["r"]
    edges: list[tuple[str, str]] = []
    for tag in ("u", "v", "w"):
        chain = [f"{tag}{i:03d}" for i in range(ell + 1)]
        names += chain
        edges += [(chain[i], chain[i + 1]) for i in range(ell)]
        edges.append((chain[m], "r"))
    # padding: an alternating chain hung below the end of the u-path keeps
    # the degree bound and adds no directed path longer than one edge
    anchor = f"u{ell:03d}"
    pad = n - base
    prev = anchor
    for j in range(pad):
        name = f"p{j:03d}"
        names.append(name)
        if j % 2 == 0:
            edges.append((name, prev))
        else:
            edges.append((prev, name))
        prev = name
    return build_dag(names, edges)


# ---------------------------------------------------------------------------
# Source/sink trees T_d and relatives
# ---------------------------------------------------------------------------


def _td_shape(d: int, prefix: str) -> tuple[list[str], list[tuple[str, str]], str]:
    """Undirected shape of T'_d rooted at a degree-d vertex."""
    root = f"{prefix}r"
    if d == 1:
        return [root, f"{prefix}0"], [(root, f"{prefix}0")], root
    if d == 2:
        a, b = f"{prefix}0", f"{prefix}1"
        return [root, a, b], [(root, a), (root, b)], root
    child_d = d - 2 if d % 2 == 1 else d - 3
    names = [root]
    edges = []
    for i in range(d):
        sub_names, sub_edges, sub_root = _td_shape(child_d, f"{prefix}{i}_")
        names += sub_names
        edges += sub_edges
        edges.append((root, sub_root))
    return names, edges, root


def td_vertex_count(d: int) -> int:
    if d == 1:
        return 2
    if d == 2:
        return 3
    return d * td_vertex_count(d - 2 if d % 2 == 1 else d - 3) + 1


def gen_Td(d: int, root_polarity: str = "sink") -> Dag:
    """Source/sink orientation of the recursive degree-d tree."""
    if d < 1:
        raise TooSmall("need d >= 1")
    if root_polarity not in ("source", "sink"):
        raise UpspanError("root_polarity must be 'source' or 'sink'")
    names, shape, root = _td_shape(d, "t")
    depth = {root: 0}
    order = [root]
    adj: dict[str, list[str]] = {}
    for a, b in shape:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    stack = [root]
    while stack:
        x = stack.pop()
        for y in adj.get(x, []):
            if y not in depth:
                depth[y] = depth[x] + 1
                stack.append(y)
    edges = []
    for a, b in shape:
        lower, upper = (a, b) if depth[a] < depth[b] else (b, a)
        # even depth matches the root's polarity
        upper_is_head = (depth[lower] % 2 == 0) == (root_polarity == "sink")
        edges.append((upper, lower) if upper_is_head else (lower, upper))
    return build_dag(names, edges)


def gen_even_lower_tree(d: int) -> tuple[Dag, dict[str, tuple[str, ...]]]:
    """Central sink of even degree d whose neighbors all root copies of T_d.

    Three designated neighbors carry two extra T_d-root neighbors each.
    Returns the tree and a tag table mapping each tagged vertex to the
    vertex set of an embedded copy of T_d rooted there.
    """
    if d <= 2 or d % 2 != 0:
        raise TooSmall("need even d > 2")
    names = ["r"]
    edges: list[tuple[str, str]] = []
    branch_shape = d - 2

    def attach_branches(owner: str, count: int, prefix: str) -> None:
        for i in range(count):
            sub_names, sub_edges, sub_root = _td_shape(branch_shape, f"{prefix}{i}_")
            names.extend(sub_names)
            edges.extend(sub_edges)
            edges.append((owner, sub_root))

    specials: list[str] = []
    for i in range(d):
        vi = f"v{i}"
        names.append(vi)
        edges.append(("r", vi))
        if i < 3:
            specials.append(vi)
            attach_branches(vi, d - 3, f"v{i}b")
            for extra in ("x", "y"):
                ui = f"{extra}{i}"
                names.append(ui)
                edges.append((vi, ui))
                attach_branches(ui, d - 1, f"{extra}{i}b")
        else:
            attach_branches(vi, d - 1, f"v{i}b")
    depth = {"r": 0}
    adj: dict[str, list[str]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    stack = ["r"]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in depth:
                depth[y] = depth[x] + 1
                stack.append(y)
    oriented = []
    for a, b in edges:
        lower, upper = (a, b) if depth[a] < depth[b] else (b, a)
        # r is a sink: even-depth vertices are sinks
        if depth[lower] % 2 == 0:
            oriented.append((upper, lower))
        else:
            oriented.append((lower, upper))
    dag = build_dag(names, oriented)
    tags: dict[str, tuple[str, ...]] = {}
    for v in [f"v{i}" for i in range(d)] + [f"{x}{i}" for i in range(3) for x in ("x", "y")]:
        tags[v] = tuple(sorted(find_td_embedding(dag, v, d)))
    return dag, tags


def find_td_embedding(dag: Dag, root: str, d: int, avoid: str | None = None) -> set[str]:
    """Vertex set of a T'_d copy rooted at ``root`` inside a tree.

    Greedy: pick the d largest-capacity branches and embed the child shape
    in each; the nested family T'_1 subset T'_2 subset ... makes greedy
    choices safe for the trees built here.  Raises if no copy fits.
    """
    if d == 0:
        return {root}

    def branch_capacity(v: str, parent: str) -> int:
        best = 0
        kids = [dag.other_end(e, v) for e in dag.incident_edges(v)]
        count = 0
        for w in kids:
            if w == parent:
                continue
            count += 1
        return count

    neighbors = [
        dag.other_end(e, root) for e in dag.incident_edges(root) if dag.other_end(e, root) != avoid
    ]
    if d == 1:
        if not neighbors:
            raise UpspanError(f"no room for T'_1 at {root}")
        w = max(neighbors, key=lambda x: (branch_capacity(x, root), x))
        return {root, w}
    if d == 2:
        for w in sorted(neighbors, key=lambda x: (-branch_capacity(x, root), x)):
            subs = [
                y
                for e in dag.incident_edges(w)
                if (y := dag.other_end(e, w)) != root
            ]
            if subs:
                return {root, w, subs[0]}
        raise UpspanError(f"no room for T'_2 at {root}")
    child_d = d - 2 if d % 2 == 1 else d - 3
    ranked = sorted(neighbors, key=lambda x: (-branch_capacity(x, root), x))
    if len(ranked) < d:
        raise UpspanError(f"degree too small for T'_{d} at {root}")
    out = {root}
    for w in ranked[:d]:
        out |= find_td_embedding(dag, w, child_d, avoid=root)
    return out


def gen_composed_tree(d: int, ell: int) -> Dag:
    """Replace every vertex of T_{(d-1)^ell} by a perfect (d-1)-ary tree of
    height ell, merging original children onto distinct leaves."""
    if d <= 2 or ell < 1:
        raise TooSmall("need d > 2 and ell >= 1")
    big = (d - 1) ** ell
    base = gen_Td(big, "sink")
    # root of the generated shape is "tr"; recover parent/children by depth
    depth = {"tr": 0}
    adj: dict[str, list[str]] = {}
    for a, b in base.edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    order = ["tr"]
    stack = ["tr"]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in depth:
                depth[y] = depth[x] + 1
                order.append(y)
                stack.append(y)
    children: dict[str, list[str]] = {v: [] for v in base.vertices}
    for a, b in base.edges:
        lo, hi = (a, b) if depth[a] < depth[b] else (b, a)
        children[lo].append(hi)
    is_source = {v: bool(base.out_edges(v)) for v in base.vertices}

    names: list[str] = []
    edges: list[tuple[str, str]] = []
    leaf_map: dict[str, list[str]] = {}

    def expand(v: str) -> None:
        # perfect (d-1)-ary tree of height ell rooted at v
        frontier = [v]
        if v not in names:
            names.append(v)
        for level in range(ell):
            nxt = []
            for fi, x in enumerate(frontier):
                for c in range(d - 1):
                    leaf = f"{x}.{level}{c}"
                    names.append(leaf)
                    if is_source[v]:
                        edges.append((x, leaf))
                    else:
                        edges.append((leaf, x))
                    nxt.append(leaf)
            frontier = nxt
        leaf_map[v] = frontier

    for v in order:
        expand(v)
    # merge each child onto a distinct leaf of its parent's expansion
    rename: dict[str, str] = {}
    for v in order:
        for i, c in enumerate(children[v]):
            rename[c] = leaf_map[v][i]
    final_edges = []
    for a, b in edges:
        final_edges.append((rename.get(a, a), rename.get(b, b)))
    final_names = [x for x in names if x not in rename]
    return build_dag(final_names, final_edges)


def gen_k22s(s: int) -> tuple[Dag, tuple[str, str]]:
    """K_{2,2s} directed into the degree-2 vertices; cover is {u, v}."""
    if s < 1:
        raise TooSmall("need s >= 1")
    names = ["u", "v"] + [f"w{i:02d}" for i in range(2 * s)]
    edges = [(a, w) for a in ("u", "v") for w in names[2:]]
    return build_dag(names, edges), ("u", "v")


# ---------------------------------------------------------------------------
# 3-partition instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreePartitionInstance:
    values: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.values) // 3

    @property
    def B(self) -> int:
        return sum(self.values) // self.m

    @property
    def strict_bounds(self) -> bool:
        return all(self.B / 4 < a < self.B / 2 for a in self.values)

    def __post_init__(self):
        if len(self.values) % 3 != 0 or not self.values:
            raise InvalidInstance("need 3m positive integers")
        if any(a <= 0 for a in self.values):
            raise InvalidInstance("values must be positive")
        if sum(self.values) % (len(self.values) // 3) != 0:
            raise InvalidInstance("sum must be divisible by m")

    def with_odd_B(self) -> "ThreePartitionInstance":
        """Shift every value by one until B is odd (tree reduction setup)."""
        inst = self
        while inst.B % 2 == 0:
            inst = ThreePartitionInstance(tuple(a + 1 for a in inst.values))
        return inst

    def check_partition(self, groups: tuple[tuple[int, ...], ...]) -> None:
        flat = sorted(x for g in groups for x in g)
        if flat != sorted(self.values):
            raise InvalidInstance("partition does not use exactly the multiset")
        if len(groups) != self.m or any(len(g) != 3 for g in groups):
            raise InvalidInstance("need m groups of three")
        for g in groups:
            if sum(g) != self.B:
                raise InvalidInstance(f"group {g} sums to {sum(g)}, not {self.B}")


@dataclass
class GadgetMap:
    """Role tags for gadget graphs: tag -> vertices (and edge roles)."""

    vertex_roles: dict[str, str] = field(default_factory=dict)
    anchors: dict[str, str] = field(default_factory=dict)

    def tag(self, vertex: str, role: str) -> None:
        self.vertex_roles[vertex] = role

    def anchor(self, name: str, vertex: str) -> None:
        self.anchors[name] = vertex

    def of_role(self, prefix: str) -> list[str]:
        return sorted(v for v, r in self.vertex_roles.items() if r.startswith(prefix))


# ---------------------------------------------------------------------------
# Biconnected single-source reduction
# ---------------------------------------------------------------------------


def gen_np_single_source(
    instance: ThreePartitionInstance,
) -> tuple[Dag, GadgetMap]:
    """Frame of nested fixed-length paths plus one number gadget per value.

    A fixed-length path of length L pairs a long path (L unit-span edges)
    with a short path (L/2 double-span edges); in any span-2 drawing it
    bridges exactly L levels.  All frame lengths (m+i)(B+1) are made even
    by doubling the unit when B+1 is odd.  Degenerate gadgets: a value of
    1 collapses its bubble to a single junction vertex; a value of 2 would
    make the bubble a pair of parallel edges, so they merge into one.
    """
    m, B = instance.m, instance.B
    unit = B + 1 if (B + 1) % 2 == 0 else 2 * (B + 1)
    tags = GadgetMap()
    names: set[str] = set()
    edges: list[tuple[str, str]] = []

    def chain(seq: list[str]) -> None:
        for a, b in zip(seq, seq[1:]):
            edges.append((a, b))
        names.update(seq)

    def fixed_length_path(tag: str, start: str, end: str, length: int) -> None:
        assert length % 2 == 0 and length >= 2
        long_mid = [f"{tag}.L{j:04d}" for j in range(1, length)]
        short_mid = [f"{tag}.S{j:04d}" for j in range(1, length // 2)]
        chain([start] + long_mid + [end])
        chain([start] + short_mid + [end])
        for v in long_mid:
            tags.tag(v, f"frame.{tag}.long")
        for v in short_mid:
            tags.tag(v, f"frame.{tag}.short")

    for core, role in (("s", "source"), ("s'", "fork"), ("s''", "fork")):
        names.add(core)
        tags.tag(core, f"frame.{role}")
        tags.anchor(core, core)
    edges.append(("s", "s'"))
    edges.append(("s", "s''"))
    for i in range(0, m + 1):
        ti = f"t{i}"
        names.add(ti)
        tags.tag(ti, "frame.join")
        tags.anchor(f"t{i}", ti)
        fixed_length_path(f"F'{i}", "s'", ti, (m + i) * unit)
        fixed_length_path(f"F''{i}", "s''", ti, (m + i) * unit)
    # escape paths from the third vertex of the outermost long paths
    tp = "t'"
    names.add(tp)
    tags.tag(tp, "frame.escape-top")
    tags.anchor("t'", tp)
    for side in ("'", "''"):
        third = f"F{side}{m}.L0002"
        mids = [f"P+{side}.{j:05d}" for j in range(1, 3 * m * unit)]
        chain([third] + mids + [tp])
        for v in mids:
            tags.tag(v, f"escape.P+{side}")
    # number gadgets
    for idx, a in enumerate(instance.values):
        g = f"U{idx}"
        r_a = f"{g}.r"
        u_a = f"{g}.u" if a > 1 else r_a
        names.add(r_a)
        tags.tag(r_a, f"gadget.{g}.r")
        tags.anchor(f"r[{idx}]", r_a)
        tags.anchor(f"u[{idx}]", u_a)
        stem1 = [f"{g}.P1_{j:04d}" for j in range(1, m * unit)]
        stem2 = [f"{g}.P2_{j:04d}" for j in range(1, m * unit)]
        chain(["s'"] + stem1 + [r_a])
        chain(["s''"] + stem2 + [r_a])
        for v in stem1:
            tags.tag(v, f"gadget.{g}.P1")
        for v in stem2:
            tags.tag(v, f"gadget.{g}.P2")
        if a > 1:
            names.add(u_a)
            tags.tag(u_a, f"gadget.{g}.u")
            bubble3 = [f"{g}.P3_{j:03d}" for j in range(1, a - 1)]
            bubble4 = [f"{g}.P4_{j:03d}" for j in range(1, a - 1)]
            chain([r_a] + bubble3 + [u_a])
            if a > 2:
                chain([r_a] + bubble4 + [u_a])
            for v in bubble3:
                tags.tag(v, f"gadget.{g}.P3")
            for v in bubble4:
                tags.tag(v, f"gadget.{g}.P4")
            # shortcut edges: stem predecessor of r to bubble successor of r
            succ3 = bubble3[0] if bubble3 else u_a
            succ4 = bubble4[0] if bubble4 else u_a
            edges.append((stem1[-1], succ3))
            edges.append((stem2[-1], succ4))
    dag = build_dag(sorted(names), edges)
    return dag, tags


# ---------------------------------------------------------------------------
# Directed tree reduction
# ---------------------------------------------------------------------------


def gen_np_tree(instance: ThreePartitionInstance) -> tuple[Dag, GadgetMap]:
    """Central vertex with 3m integer trees, bottom/top trees, and m-1
    separating paths, all shaped as up-down-up zigzags."""
    inst = instance.with_odd_B()
    m, B = inst.m, inst.B
    tags = GadgetMap()
    names: set[str] = {"r"}
    edges: list[tuple[str, str]] = []
    tags.tag("r", "central")
    tags.anchor("r", "r")

    def _chain(seq: list[str]) -> None:
        for a, b in zip(seq, seq[1:]):
            edges.append((a, b))
        names.update(seq)

    def zigzag(tag: str, up1: int, down: int, up2: int) -> list[str]:
        """Directed path: up1 ascending, down descending, up2 ascending
        edges starting at r; returns the vertex sequence after r."""
        seq = [f"{tag}.{j:05d}" for j in range(1, up1 + down + up2 + 1)]
        full = ["r"] + seq
        for j in range(up1):
            edges.append((full[j], full[j + 1]))
        for j in range(up1, up1 + down):
            edges.append((full[j + 1], full[j]))
        for j in range(up1 + down, up1 + down + up2):
            edges.append((full[j], full[j + 1]))
        names.update(seq)
        for v in seq:
            tags.tag(v, f"path.{tag}")
        return seq

    def central(tag: str) -> list[str]:
        return zigzag(tag, m * (B + 1), m * B * (B - 1), 2 * m * B * B)

    seq_b = central("Tb")
    seq_t = central("Tt")
    tags.anchor("sink.Tb", seq_b[m * (B + 1) - 1])
    tags.anchor("source.Tb", seq_b[m * (B * B + 1) - 1])
    tags.anchor("sink.Tt", seq_t[m * (B + 1) - 1])
    tags.anchor("source.Tt", seq_t[m * (B * B + 1) - 1])
    for idx, a in enumerate(inst.values):
        seq = central(f"Ta{idx}")
        sink = seq[m * (B + 1) - 1]
        source = seq[m * (B * B + 1) - 1]
        tags.anchor(f"sink.Ta{idx}", sink)
        tags.anchor(f"source.Ta{idx}", source)
        # Z hangs above the sink (a vertices total, unit spans)
        z = [f"Za{idx}.{j:03d}" for j in range(1, a)]
        _chain([sink] + z)
        for v in z:
            tags.tag(v, f"Z.{idx}")
        # Z' hangs below the source (aB vertices total, unit spans)
        zp = [f"Zpa{idx}.{j:04d}" for j in range(1, a * B)]
        prev = source
        for v in zp:
            edges.append((v, prev))
            names.add(v)
            tags.tag(v, f"Zp.{idx}")
            prev = v
    for i in range(1, m):
        seq = zigzag(
            f"P{i}", (m + i) * (B + 1) // 2, B * (B - 1) * (2 * m - i) // 2, 2 * m * B * B
        )
        tags.anchor(f"u[{i}]", seq[(m + i) * (B + 1) // 2 - 1])
        tags.anchor(
            f"w[{i}]",
            seq[(m + i) * (B + 1) // 2 + B * (B - 1) * (2 * m - i) // 2 - 1],
        )
        # separating-path edges are drawn with span 2 throughout
    # outer stubs: two ascending edges into the second vertex of the
    # bottom/top central paths
    for tag, seq in (("Yb", seq_b), ("Yt", seq_t)):
        a1, a2 = f"{tag}.a", f"{tag}.b"
        names.update((a1, a2))
        edges.append((a1, a2))
        edges.append((a2, seq[0]))
        tags.tag(a1, f"stub.{tag}")
        tags.tag(a2, f"stub.{tag}")
    # escape path on the top tree: one edge up from the vertex after the
    # sink, then a long descending tail
    after_sink = seq_t[m * (B + 1)]
    peak = "Pp.peak"
    names.add(peak)
    edges.append((after_sink, peak))
    tags.tag(peak, "escape.peak")
    tags.anchor("P+.peak", peak)
    tail = [f"Pp.{j:05d}" for j in range(1, 3 * m * B * B + 1)]
    prev = peak
    for v in tail:
        edges.append((v, prev))
        names.add(v)
        tags.tag(v, "escape.tail")
        prev = v
    dag = build_dag(sorted(names), edges)
    return dag, tags
