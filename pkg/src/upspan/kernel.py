"""Vertex-cover kernelization for span testing.

With a cover M, every vertex outside M has all neighbors inside M.
Degree-1 neighbors collapse to one per cover vertex and direction;
degree-2 transversals collapse to one per pair (a DAG admits only one
direction per pair); upper/lower ears beyond six per pair are replaced
by two block-replacement edges whose span sum must reach the removed
count plus two, which is exactly what reinsertion by repeated
subdivision needs.  The kernel is solved by the exact search with the
replacement edges exempt from the span bound, and solutions are lifted
back by hugging: a new wire runs beside its template at a fresh rational
offset on every level, so it inherits the template's crossing-freeness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .drawing import LayeredDrawing, validate
from .errors import BudgetExceeded, ConstraintViolated, NotACover
from .exact import DEFAULT_BUDGET, SearchBudget, _LevelSearch, enumerate_levelings
from .graphs import Dag, build_dag

Pair = tuple[str, str]


@dataclass(frozen=True)
class EarTable:
    upper: dict[Pair, tuple[str, ...]]  # degree-2 common sinks per cover pair
    lower: dict[Pair, tuple[str, ...]]  # degree-2 common sources
    transversal: dict[Pair, tuple[str, ...]]  # one in, one out
    upper_leaves: dict[str, tuple[str, ...]]  # degree-1, edge out of cover
    lower_leaves: dict[str, tuple[str, ...]]  # degree-1, edge into cover
    big: tuple[str, ...]  # outside vertices of degree three or more


def classify(dag: Dag, cover) -> EarTable:
    M = set(cover)
    for t, h in dag.edges:
        if t not in M and h not in M:
            raise NotACover(f"edge ({t}, {h}) is uncovered")
    upper: dict[Pair, list[str]] = {}
    lower: dict[Pair, list[str]] = {}
    trans: dict[Pair, list[str]] = {}
    up_leaf: dict[str, list[str]] = {}
    low_leaf: dict[str, list[str]] = {}
    big: list[str] = []
    for w in dag.vertices:
        if w in M:
            continue
        deg = dag.degree(w)
        if deg >= 3:
            big.append(w)
            continue
        if deg == 1:
            ins = dag.in_edges(w)
            if ins:
                up_leaf.setdefault(dag.edges[ins[0]][0], []).append(w)
            else:
                low_leaf.setdefault(dag.edges[dag.out_edges(w)[0]][1], []).append(w)
            continue
        ins = [dag.edges[e][0] for e in dag.in_edges(w)]
        outs = [dag.edges[e][1] for e in dag.out_edges(w)]
        if len(ins) == 2:
            upper.setdefault(tuple(sorted(ins)), []).append(w)
        elif len(outs) == 2:
            lower.setdefault(tuple(sorted(outs)), []).append(w)
        else:
            trans.setdefault(tuple(sorted([ins[0], outs[0]])), []).append(w)
    return EarTable(
        {p: tuple(sorted(v)) for p, v in upper.items()},
        {p: tuple(sorted(v)) for p, v in lower.items()},
        {p: tuple(sorted(v)) for p, v in trans.items()},
        {p: tuple(sorted(v)) for p, v in up_leaf.items()},
        {p: tuple(sorted(v)) for p, v in low_leaf.items()},
        tuple(sorted(big)),
    )


@dataclass
class KernelInstance:
    original: Dag
    cover: tuple[str, ...]
    reduced: Dag
    replacement_edges: tuple[Pair, ...]
    # per cover pair and polarity: (pair, kept six, removed, edge pair, bound)
    ear_blocks: tuple[tuple[Pair, str, tuple[str, ...], tuple[str, ...], tuple[Pair, Pair], int], ...]
    removed_leaves: tuple[tuple[str, str, str, tuple[str, ...]], ...]  # (cover v, polarity, kept, removed)
    removed_transversals: tuple[tuple[Pair, str, tuple[str, ...]], ...]  # (pair, kept, removed)

    @property
    def k(self) -> int:
        return len(self.cover)


def reduce(dag: Dag, cover) -> KernelInstance:
    table = classify(dag, cover)
    drop: set[str] = set()
    removed_leaves = []
    for polarity, groups in (("upper", table.upper_leaves), ("lower", table.lower_leaves)):
        for v, leaves in sorted(groups.items()):
            if len(leaves) > 1:
                removed_leaves.append((v, polarity, leaves[0], tuple(leaves[1:])))
                drop.update(leaves[1:])
    removed_trans = []
    for pair, ws in sorted(table.transversal.items()):
        if len(ws) > 1:
            removed_trans.append((pair, ws[0], tuple(ws[1:])))
            drop.update(ws[1:])
    ear_blocks = []
    new_edges: list[Pair] = []
    for polarity, groups in (("upper", table.upper), ("lower", table.lower)):
        for pair, ears in sorted(groups.items()):
            if len(ears) <= 6:
                continue
            kept, removed = ears[:6], ears[6:]
            drop.update(removed)
            e1 = (kept[0], kept[2])
            e2 = (kept[1], kept[3])
            new_edges += [e1, e2]
            ear_blocks.append(
                (pair, polarity, tuple(kept), tuple(removed), (e1, e2), len(ears) - 4)
            )
    vertices = [v for v in dag.vertices if v not in drop]
    edges = [e for e in dag.edges if e[0] not in drop and e[1] not in drop]
    reduced = build_dag(vertices, edges + new_edges)
    kernel = KernelInstance(
        original=dag,
        cover=tuple(sorted(cover)),
        reduced=reduced,
        replacement_edges=tuple(new_edges),
        ear_blocks=tuple(ear_blocks),
        removed_leaves=tuple(removed_leaves),
        removed_transversals=tuple(removed_trans),
    )
    assert reduced.n <= 44 * len(kernel.cover), (
        f"kernel has {reduced.n} vertices, above 44k = {44 * len(kernel.cover)}"
    )
    return kernel


def solve_s_good(
    kernel: KernelInstance, s: int, budget: SearchBudget = DEFAULT_BUDGET
) -> LayeredDrawing | None:
    """Drawing of the reduced graph where non-replacement edges have span
    at most s and each replacement pair's spans sum to its bound."""
    g = kernel.reduced
    if g.n > max(budget.max_vertices, 0) + 8:
        raise BudgetExceeded(f"kernel with {g.n} vertices exceeds the search budget")
    height = kernel.original.n  # compressing the original never raises spans
    repl = set(kernel.replacement_edges)
    sigma = {}
    for e, pair in enumerate(g.edges):
        sigma[e] = (height - 1) if pair in repl else s
    sums = tuple(
        ((g.edge_index(*e1), g.edge_index(*e2)), bound)
        for _, _, _, _, (e1, e2), bound in kernel.ear_blocks
    )
    deadline = budget.deadline()
    for leveling in enumerate_levelings(
        g,
        sigma,
        height,
        compact=False,
        sum_lower_bounds=sums,
        use_twins=True,
        deadline=deadline,
    ):
        witness = _LevelSearch(g, leveling, None, deadline).run()
        if witness is not None:
            return witness
    return None


# ---------------------------------------------------------------------------
# Lifting kernel drawings back to the original graph
# ---------------------------------------------------------------------------


class _Lift:
    """Mutable drawing under reinsertion; wires keyed by vertex pair."""

    def __init__(self, drawing: LayeredDrawing):
        self.level: dict[str, int] = dict(drawing.level)
        self.x: dict[str, Fraction] = dict(drawing.vertex_x)
        self.wires: dict[Pair, dict[int, Fraction]] = {}
        for e, (t, h) in enumerate(drawing.dag.edges):
            self.wires[(t, h)] = {
                drawing.level[t] + i: xx for i, xx in enumerate(drawing.wires[e])
            }

    def items_at(self, lv: int) -> list[Fraction]:
        out = [x for v, x in self.x.items() if self.level[v] == lv]
        for w in self.wires.values():
            if lv in w:
                out.append(w[lv])
        return sorted(set(out))

    def beside(self, lv: int, x: Fraction) -> Fraction:
        """A fresh x immediately right of x on the level."""
        items = self.items_at(lv)
        bigger = [y for y in items if y > x]
        return x + (bigger[0] - x) / 2 if bigger else x + 1

    def hug(self, ref: dict[int, Fraction], lo: int, hi: int) -> dict[int, Fraction]:
        """New wire points for levels lo..hi, each just right of the
        reference curve; inherits the reference's crossing-freeness."""
        return {lv: self.beside(lv, ref[lv]) for lv in range(lo, hi + 1)}

    def to_drawing(self, dag: Dag) -> LayeredDrawing:
        wires = {}
        for e, (t, h) in enumerate(dag.edges):
            w = self.wires[(t, h)]
            wires[e] = tuple(w[lv] for lv in range(self.level[t], self.level[h] + 1))
        return LayeredDrawing(dag, self.level, self.x, wires)


def reinsert_ears(kernel: KernelInstance, drawing: LayeredDrawing) -> LayeredDrawing:
    """Lift an s-good drawing of the reduced graph to the original."""
    lift = _Lift(drawing)
    # block-replacement edges host one removed ear per crossed level
    for pair, polarity, kept, removed, (e1, e2), bound in kernel.ear_blocks:
        u, v = pair
        spans = [
            lift.level[e1[1]] - lift.level[e1[0]],
            lift.level[e2[1]] - lift.level[e2[0]],
        ]
        if spans[0] + spans[1] < bound:
            raise ConstraintViolated(
                f"replacement spans {spans} sum below {bound} for pair {pair}"
            )
        queue = list(removed)
        for host in (e1, e2):
            wire = lift.wires.pop(host)
            base, top = host
            while queue and lift.level[top] - lift.level[base] >= 2:
                w = queue.pop(0)
                lv = lift.level[base] + 1
                lift.level[w] = lv
                lift.x[w] = wire[lv]
                for c in (u, v) if polarity == "upper" else ():
                    tmpl = dict(lift.wires[(c, base)])
                    tmpl.update({q: wire[q] for q in range(lift.level[base], lv + 1)})
                    new = lift.hug(tmpl, lift.level[c], lv)
                    new[lift.level[c]] = lift.x[c]
                    new[lv] = lift.x[w]
                    lift.wires[(c, w)] = new
                for c in (u, v) if polarity == "lower" else ():
                    tmpl = dict(lift.wires[(base, c)])
                    tmpl.update({q: wire[q] for q in range(lv, lift.level[base] + 1)})
                    new = lift.hug(tmpl, lv, lift.level[c])
                    new[lift.level[c]] = lift.x[c]
                    new[lv] = lift.x[w]
                    lift.wires[(w, c)] = new
                # the leftover replacement edge shrinks past the new ear
                wire = {q: x for q, x in wire.items() if q >= lv}
                base = w
            if not queue:
                break
        assert not queue, "s-good spans could not host every removed ear"
    # removed transversals hug the kept one
    for (u, v), keptw, removed in kernel.removed_transversals:
        lo, hi = (u, v) if lift.level[u] < lift.level[v] else (v, u)
        for w in removed:
            in_w = lift.hug(lift.wires[(lo, keptw)], lift.level[lo], lift.level[keptw])
            out_w = lift.hug(lift.wires[(keptw, hi)], lift.level[keptw], lift.level[hi])
            lv = lift.level[keptw]
            lift.level[w] = lv
            lift.x[w] = in_w[lv]
            out_w[lv] = in_w[lv]
            in_w[lift.level[lo]] = lift.x[lo]
            out_w[lift.level[hi]] = lift.x[hi]
            lift.wires[(lo, w)] = in_w
            lift.wires[(w, hi)] = out_w
    # removed degree-1 leaves hug the kept leaf
    for v, polarity, keptw, removed in kernel.removed_leaves:
        for w in removed:
            if polarity == "upper":
                new = lift.hug(lift.wires[(v, keptw)], lift.level[v], lift.level[keptw])
                new[lift.level[v]] = lift.x[v]
                lift.level[w] = lift.level[keptw]
                lift.x[w] = new[lift.level[keptw]]
                lift.wires[(v, w)] = new
            else:
                new = lift.hug(lift.wires[(keptw, v)], lift.level[keptw], lift.level[v])
                new[lift.level[v]] = lift.x[v]
                lift.level[w] = lift.level[keptw]
                lift.x[w] = new[lift.level[keptw]]
                lift.wires[(w, v)] = new
    result = lift.to_drawing(kernel.original)
    return result


def span_leq_via_vc(
    dag: Dag, cover, s: int, budget: SearchBudget = DEFAULT_BUDGET
) -> tuple[bool, LayeredDrawing | None]:
    """Decide span(G) <= s through the cover kernel; returns a witness."""
    kernel = reduce(dag, cover)
    drawn = solve_s_good(kernel, s, budget)
    if drawn is None:
        return False, None
    lifted = reinsert_ears(kernel, drawn)
    report = validate(dag, lifted)
    assert report.ok, f"lifted drawing invalid: {report.violations[:3]}"
    return True, lifted
