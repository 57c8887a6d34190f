"""Brute-force exact span oracle.

Ground truth for every other solver at desk scale.  Minimum span is found
by iterative deepening on the span bound k: enumerate all compact
levelings whose edge spans stay within k (height at most n, since empty
levels can always be compressed away without raising any span), and test
each leveling for realizability with a backtracking level-planarity
search over per-level left-to-right orders.

The per-level search does not permute items blindly.  Between consecutive
levels, non-crossing forces the order of the items that receive wires
from below up to (a) permutations inside fans emerging from one item and
(b) placement of fresh sources, so only those choices are branched.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations

from .drawing import Item, LayeredDrawing, drawing_from_orderings, induced_embedding
from .errors import BudgetExceeded, Infeasible, NotUpward
from .graphs import (
    Dag,
    PlanarEmbedding,
    UpwardEmbedding,
    enumerate_large_angle_assignments,
    trace_face_walks,
)


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 12
    max_height: int | None = None  # defaults to n
    time_limit: float | None = None  # seconds

    def deadline(self) -> float | None:
        return None if self.time_limit is None else time.monotonic() + self.time_limit


DEFAULT_BUDGET = SearchBudget()


def _check_deadline(deadline: float | None) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("time limit exhausted")


# ---------------------------------------------------------------------------
# Level-planarity search for one fixed leveling
# ---------------------------------------------------------------------------


class _LevelSearch:
    def __init__(
        self,
        dag: Dag,
        leveling: dict[str, int],
        fixed: PlanarEmbedding | UpwardEmbedding | None,
        deadline: float | None = None,
    ):
        self.dag = dag
        self.level = leveling
        self.deadline = deadline
        self.fixed_upward = fixed if isinstance(fixed, UpwardEmbedding) else None
        if isinstance(fixed, UpwardEmbedding):
            self.fixed_base: PlanarEmbedding | None = fixed.base
        else:
            self.fixed_base = fixed
        lo = min(leveling.values())
        hi = max(leveling.values())
        self.lo, self.hi = lo, hi
        # symmetry breaking: interchangeable twin vertices on equal levels are
        # pinned to canonical order at the first level where both appear
        self.twin_checks: dict[int, list[tuple[str, str]]] = {}
        if fixed is None:
            for w2, w1 in _twin_groups(dag).items():
                if leveling[w1] != leveling[w2]:
                    continue
                tails = [dag.edges[e][0] for e in dag.in_edges(w1)]
                if tails:
                    li = min(leveling[t] for t in tails) + 1 - lo
                else:
                    li = leveling[w1] - lo
                self.twin_checks.setdefault(li, []).append((w1, w2))
        self.items: list[list[Item]] = [[] for _ in range(hi - lo + 1)]
        for v in dag.vertices:
            self.items[leveling[v] - lo].append(("v", v))
        for e, (t, h) in enumerate(dag.edges):
            for lv in range(leveling[t] + 1, leveling[h]):
                self.items[lv - lo].append(("e", e))
        # segments entering an item from below: (lower item, this item)
        self.below: dict[tuple[int, Item], list[Item]] = {}
        for e, (t, h) in enumerate(dag.edges):
            yt, yh = leveling[t], leveling[h]
            prev: Item = ("v", t)
            for lv in range(yt + 1, yh + 1):
                cur: Item = ("v", h) if lv == yh else ("e", e)
                self.below.setdefault((lv - lo, cur), []).append(prev)
                prev = cur
        # map: at a given level index, which wire item does edge e occupy
        self.result: LayeredDrawing | None = None

    # -- rotation pruning ---------------------------------------------------

    def _rotation_ok(self, v: str, order_prev: dict[Item, int] | None, order_next: dict[Item, int]) -> bool:
        """Check v's induced rotation against the fixed embedding.

        Called once the ordering one level above v is known; ``order_prev``
        is the ordering one level below v (None when v is on the lowest
        level of its neighborhood).
        """
        base = self.fixed_base
        assert base is not None
        dag = self.dag
        lv = self.level[v]

        def item_above(e: int) -> Item:
            t, h = dag.edges[e]
            return ("v", h) if self.level[h] == lv + 1 else ("e", e)

        def item_below(e: int) -> Item:
            t, h = dag.edges[e]
            return ("v", t) if self.level[t] == lv - 1 else ("e", e)

        outs = sorted(
            dag.out_edges(v), key=lambda e: order_next[item_above(e)], reverse=True
        )
        if dag.in_edges(v):
            assert order_prev is not None
            ins = sorted(dag.in_edges(v), key=lambda e: order_prev[item_below(e)])
        else:
            ins = []
        ccw = outs + ins
        rot = base.rotation[v]
        if len(ccw) != len(rot):
            return False
        if len(ccw) == 1:
            ok_rot = tuple(ccw) == rot
        else:
            k = ccw.index(rot[0])
            ok_rot = tuple(ccw[k:] + ccw[:k]) == rot
        if not ok_rot:
            return False
        if self.fixed_upward is not None and ccw and (not outs or not ins):
            # induced large corner sits after the ccw-last edge
            want = [(w, i) for (w, i) in self.fixed_upward.large_angles if w == v]
            i = base.position(v, ccw[-1])
            if want != [(v, i)]:
                return False
        return True

    # -- search ---------------------------------------------------------------

    def run(self) -> LayeredDrawing | None:
        n_levels = len(self.items)
        orders: list[list[Item]] = [[] for _ in range(n_levels)]

        def head_of(it: Item) -> str | None:
            kind, ref = it
            if kind == "v":
                return ref  # type: ignore[return-value]
            return self.dag.edges[ref][1]

        def extend(li: int) -> bool:
            _check_deadline(self.deadline)
            if li == n_levels:
                return self._finish(orders)
            prev = orders[li - 1] if li > 0 else []
            pos_prev = {it: i for i, it in enumerate(prev)}
            keyed: dict[Item, tuple[int, int]] = {}
            free: list[Item] = []
            for it in self.items[li]:
                srcs = self.below.get((li, it))
                if not srcs:
                    free.append(it)
                    continue
                ps = [pos_prev[s] for s in srcs]
                keyed[it] = (min(ps), max(ps))
            free.sort()
            group_keys = sorted(set(keyed.values()))
            running = -1
            for mn, mx in group_keys:
                if mn < running:
                    return False
                running = max(running, mx)
            groups = [
                sorted(it for it, k in keyed.items() if k == key) for key in group_keys
            ]
            for key, g in zip(group_keys, groups):
                if len(g) > 1 and key[0] != key[1]:
                    return False  # two items may not share two distinct anchors
            # next-level tops anchored to items of this level: their anchor
            # intervals grow monotonically as we place items, so pairwise
            # incompatibility prunes partial placements early
            top_of: dict[Item, Item] = {}
            tops: list[Item] = []
            if li + 1 < n_levels:
                for it2 in self.items[li + 1]:
                    for src in self.below.get((li + 1, it2), ()):
                        top_of[src] = it2
                tops = sorted(set(top_of.values()))
            span_lo: dict[Item, int] = {}
            span_hi: dict[Item, int] = {}
            # twin ordering state: vertex -> first-reference position or None
            twin_pairs = self.twin_checks.get(li, ())
            first_ref: dict[str, bool] = {}
            watched: set[str] = set()
            for w1, w2 in twin_pairs:
                watched.add(w1)
                watched.add(w2)

            seq: list[Item] = []
            placed_in_group = [0] * len(groups)

            def legal_twin(it: Item) -> bool:
                w = head_of(it)
                if w is None or w not in watched:
                    return True
                lv = self.lo + li
                kind, ref = it
                if kind == "e" and self.level[w] <= lv:
                    return True  # not a reference to w at this level
                for w1, w2 in twin_pairs:
                    if w == w2 and w1 not in first_ref:
                        return False
                return True

            def place(it: Item, gi: int | None) -> bool:
                if not legal_twin(it):
                    return False
                pos = len(seq)
                touched = top_of.get(it)
                ok = True
                if touched is not None:
                    lo0, hi0 = span_lo.get(touched), span_hi.get(touched)
                    span_lo[touched] = pos if lo0 is None else min(lo0, pos)
                    span_hi[touched] = pos if hi0 is None else max(hi0, pos)
                    a_lo, a_hi = span_lo[touched], span_hi[touched]
                    for other in tops:
                        if other is touched or other not in span_lo:
                            continue
                        b_lo, b_hi = span_lo[other], span_hi[other]
                        if a_hi > b_lo and b_hi > a_lo:
                            ok = False
                            break
                    if not ok:
                        if (lo0, hi0) == (None, None):
                            del span_lo[touched]
                            del span_hi[touched]
                        else:
                            span_lo[touched], span_hi[touched] = lo0, hi0
                        return False
                w = head_of(it)
                marked = False
                if w is not None and w in watched and w not in first_ref:
                    kind, ref = it
                    lv = self.lo + li
                    if kind == "v" or self.level[w] > lv:
                        first_ref[w] = True
                        marked = True
                seq.append(it)
                if gi is not None:
                    placed_in_group[gi] += 1
                result = dfs()
                if gi is not None:
                    placed_in_group[gi] -= 1
                seq.pop()
                if marked:
                    del first_ref[w]
                if touched is not None:
                    if (lo0, hi0) == (None, None):
                        del span_lo[touched]
                        del span_hi[touched]
                    else:
                        span_lo[touched], span_hi[touched] = lo0, hi0
                return result

            free_remaining: list[Item] = list(free)

            def dfs() -> bool:
                if len(seq) == len(self.items[li]):
                    orders[li] = list(seq)
                    if not self._prune_level(li, orders):
                        return False
                    return extend(li + 1)
                # front anchored group: first not fully placed
                gi = None
                for g_idx in range(len(groups)):
                    if placed_in_group[g_idx] < len(groups[g_idx]):
                        gi = g_idx
                        break
                if gi is not None:
                    placed_set = set(seq)
                    for it in groups[gi]:
                        if it not in placed_set and place(it, gi):
                            return True
                for k, it in enumerate(free_remaining):
                    free_remaining.pop(k)
                    ok = place(it, None)
                    free_remaining.insert(k, it)
                    if ok:
                        return True
                return False

            return dfs()

        if extend(0):
            return self.result
        return None

    def _prune_level(self, li: int, orders: list[list[Item]]) -> bool:
        if self.fixed_base is None or li == 0:
            return True
        # ordering at level li fixes the rotations of vertices one level down
        order_next = {it: i for i, it in enumerate(orders[li])}
        order_prev = (
            {it: i for i, it in enumerate(orders[li - 2])} if li >= 2 else None
        )
        for it in orders[li - 1]:
            if it[0] == "v":
                if not self._rotation_ok(it[1], order_prev, order_next):
                    return False
        return True

    def _finish(self, orders: list[list[Item]]) -> bool:
        # top-level vertices' rotations (outs empty) still need a check
        if self.fixed_base is not None and orders:
            order_prev = (
                {it: i for i, it in enumerate(orders[-2])} if len(orders) >= 2 else None
            )
            for it in orders[-1]:
                if it[0] == "v" and not self._rotation_ok(it[1], order_prev, {}):
                    return False
        drawing = drawing_from_orderings(
            self.dag,
            self.level,
            {self.lo + i: seq for i, seq in enumerate(orders)},
        )
        if self.fixed_base is not None and self.dag.m > 0:
            induced = induced_embedding(drawing)
            if self.fixed_upward is not None:
                if induced != self.fixed_upward:
                    return False
            elif induced.base != self.fixed_base:
                return False
        self.result = drawing
        return True


def level_planar(
    dag: Dag,
    leveling: dict[str, int],
    fixed_embedding: PlanarEmbedding | UpwardEmbedding | None = None,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> LayeredDrawing | None:
    """Witness drawing with exactly this leveling, or None."""
    if dag.n > budget.max_vertices:
        raise BudgetExceeded(f"{dag.n} vertices exceed budget {budget.max_vertices}")
    for t, h in dag.edges:
        if leveling[h] <= leveling[t]:
            raise NotUpward(f"leveling violates edge ({t}, {h})")
    if dag.n == 0:
        return LayeredDrawing(dag, {}, {}, {})
    return _LevelSearch(dag, leveling, fixed_embedding, budget.deadline()).run()


# ---------------------------------------------------------------------------
# Leveling enumeration
# ---------------------------------------------------------------------------


def _twin_groups(dag: Dag) -> dict[str, str]:
    """Map each vertex to the previous member of its true-twin group.

    Twins have identical in- and out-neighborhoods; forcing non-decreasing
    levels along id order removes symmetric levelings without losing any
    drawing up to renaming.
    """
    sig: dict[tuple, list[str]] = {}
    for v in dag.vertices:
        key = (
            tuple(sorted(dag.edges[e][0] for e in dag.in_edges(v))),
            tuple(sorted(dag.edges[e][1] for e in dag.out_edges(v))),
        )
        sig.setdefault(key, []).append(v)
    prev: dict[str, str] = {}
    for group in sig.values():
        group.sort()
        for a, b in zip(group, group[1:]):
            prev[b] = a
    return prev


def enumerate_levelings(
    dag: Dag,
    sigma: dict[int, int],
    height_cap: int,
    compact: bool = True,
    require_span: int | None = None,
    sum_lower_bounds: tuple[tuple[tuple[int, ...], int], ...] = (),
    use_twins: bool = True,
    deadline: float | None = None,
):
    """Yield levelings with 1 <= span(e) <= sigma[e], minimum level 0.

    ``compact`` additionally demands every level in range be occupied by a
    vertex.  ``require_span`` keeps only levelings whose maximum span over
    edges with sigma == require_span reaches it (iterative deepening skips
    levelings already covered at smaller bounds).  ``sum_lower_bounds``
    holds (edge-group, bound) pairs: sum of group spans must reach bound.
    """
    order = dag.topological_order()
    twins = _twin_groups(dag) if use_twins else {}
    level: dict[str, int] = {}
    n = dag.n

    def rec(i: int):
        if deadline is not None:
            _check_deadline(deadline)
        if i == n:
            values = level.values()
            mn = min(values)
            if mn != 0:
                return
            if compact and len(set(values)) != max(values) + 1:
                return
            if require_span is not None:
                mx = 0
                for e, (t, h) in enumerate(dag.edges):
                    if sigma[e] >= require_span:
                        mx = max(mx, level[h] - level[t])
                if mx < require_span:
                    return
            for group, bound in sum_lower_bounds:
                total = sum(
                    level[dag.edges[e][1]] - level[dag.edges[e][0]] for e in group
                )
                if total < bound:
                    return
            yield dict(level)
            return
        v = order[i]
        lo, hi = 0, height_cap - 1
        for e in dag.in_edges(v):
            t = dag.edges[e][0]
            lo = max(lo, level[t] + 1)
            hi = min(hi, level[t] + sigma[e])
        tw = twins.get(v)
        if tw is not None and tw in level:
            lo = max(lo, level[tw])
        for y in range(lo, hi + 1):
            level[v] = y
            yield from rec(i + 1)
        level.pop(v, None)

    yield from rec(0)


# ---------------------------------------------------------------------------
# Minimum span
# ---------------------------------------------------------------------------


@dataclass
class ExactResult:
    span: int
    drawing: LayeredDrawing
    embedding: UpwardEmbedding | None = field(default=None)


def _trivial_result(dag: Dag) -> ExactResult:
    from fractions import Fraction

    d = LayeredDrawing(dag, {v: 0 for v in dag.vertices},
                       {v: Fraction(i) for i, v in enumerate(dag.vertices)}, {})
    return ExactResult(0, d)


def min_span_exact(
    dag: Dag,
    mode: str = "free",
    embedding: PlanarEmbedding | UpwardEmbedding | None = None,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> ExactResult:
    """Exact minimum span by iterative deepening.

    mode: "free" (any embedding), "fixed_planar" (drawing must induce the
    given planar embedding) or "fixed_upward" (planar embedding plus large
    angles).  Raises Infeasible when no upward-planar layered drawing
    exists in the requested mode.
    """
    if dag.n > budget.max_vertices:
        raise BudgetExceeded(f"{dag.n} vertices exceed budget {budget.max_vertices}")
    if mode not in ("free", "fixed_planar", "fixed_upward"):
        raise ValueError(f"unknown mode {mode!r}")
    fixed: PlanarEmbedding | UpwardEmbedding | None = None
    if mode == "fixed_planar":
        assert isinstance(embedding, PlanarEmbedding)
        fixed = embedding
    elif mode == "fixed_upward":
        assert isinstance(embedding, UpwardEmbedding)
        fixed = embedding
    if dag.m == 0:
        return _trivial_result(dag)
    deadline = budget.deadline()
    height = budget.max_height or dag.n
    use_twins = fixed is None  # twins are not interchangeable under a fixed embedding
    for k in range(1, height):
        sigma = {e: k for e in range(dag.m)}
        for leveling in enumerate_levelings(
            dag,
            sigma,
            height,
            compact=True,
            require_span=k if k > 1 else None,
            use_twins=use_twins,
            deadline=deadline,
        ):
            witness = _LevelSearch(dag, leveling, fixed, deadline).run()
            if witness is not None:
                return ExactResult(k, witness)
    raise Infeasible(f"no upward-planar layered drawing in mode {mode}")


def _cyclic_orders(seq: tuple[int, ...]):
    """All distinct cyclic orders of seq, first element pinned."""
    if len(seq) <= 2:
        yield seq
        return
    first, rest = seq[0], seq[1:]
    for perm in permutations(rest):
        yield (first,) + perm


def enumerate_planar_embeddings(dag: Dag, cap: int = 250_000):
    """All planar embeddings (rotation system + outer face) of a connected dag.

    Deduplicates identical canonical forms.  Raises BudgetExceeded when the
    raw rotation-system count exceeds ``cap``.
    """
    total = 1
    for v in dag.vertices:
        c = 1
        for f in range(2, dag.degree(v)):
            c *= f
        total *= max(1, c)
        if total > cap:
            raise BudgetExceeded("too many rotation systems to enumerate")
    want_faces = dag.m - dag.n + 2
    seen: set = set()

    def rec(i: int, rotation: dict[str, tuple[int, ...]]):
        if i == dag.n:
            try:
                walks = trace_face_walks(dag, rotation)
            except Exception:
                return
            if len(walks) != want_faces:
                return
            for walk in walks:
                emb = PlanarEmbedding(dag, dict(rotation), min(walk))
                key = emb.canonical_form()
                if key in seen:
                    continue
                seen.add(key)
                yield emb
            return
        v = dag.vertices[i]
        for rot in _cyclic_orders(dag.incident_edges(v)):
            rotation[v] = rot
            yield from rec(i + 1, rotation)
        rotation.pop(v, None)

    yield from rec(0, {})


def min_span_exact_all_embeddings(
    dag: Dag, budget: SearchBudget = DEFAULT_BUDGET
) -> ExactResult:
    """Free-mode minimum realized by explicit embedding enumeration.

    Returns the optimal upward embedding alongside the witness; agrees
    with ``min_span_exact(dag, "free")`` by construction.
    """
    if dag.n > budget.max_vertices:
        raise BudgetExceeded(f"{dag.n} vertices exceed budget {budget.max_vertices}")
    if dag.m == 0:
        return _trivial_result(dag)
    deadline = budget.deadline()
    uppers: list[UpwardEmbedding] = []
    seen_reflections: set = set()
    for emb in enumerate_planar_embeddings(dag):
        key = min(emb.canonical_form(), emb.reflect().canonical_form())
        if key in seen_reflections:
            continue
        seen_reflections.add(key)
        uppers.extend(enumerate_large_angle_assignments(dag, emb))
    height = budget.max_height or dag.n
    for k in range(1, height):
        sigma = {e: k for e in range(dag.m)}
        for up in uppers:
            for leveling in enumerate_levelings(
                dag,
                sigma,
                height,
                compact=True,
                require_span=k if k > 1 else None,
                use_twins=False,
                deadline=deadline,
            ):
                witness = _LevelSearch(dag, leveling, up, deadline).run()
                if witness is not None:
                    return ExactResult(k, witness, embedding=up)
    raise Infeasible("no upward-planar layered drawing in any embedding")
