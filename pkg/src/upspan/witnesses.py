"""Span-2 witness drawings for the hardness gadgets.

Given a yes-partition, both reductions admit a span-2 drawing whose
levels follow the correctness proofs exactly; the x-coordinates here
realize those levels in the wire model.

Single-source gadget: nested fixed-length-path frames around the center
column of junction vertices, gadget stems running between consecutive
frame walls, bubbles stacked inside their pocket, shortcut wires hugging
their stem, escape paths on the far outside.

Tree gadget: all strands fan out of the central vertex; sinks stack on
the center column with their chains; each strand descends on a packed
fractional lane right of center; sources sit just right of their own
lane and escape rightward with a slope-one tail that clears every dead
outer wall within one level.
"""

from __future__ import annotations

from fractions import Fraction

from .drawing import LayeredDrawing
from .errors import InvalidInstance, InvalidPartition
from .generators import (
    GadgetMap,
    ThreePartitionInstance,
    gen_np_single_source,
    gen_np_tree,
)
from .graphs import Dag

Half = Fraction(1, 2)


class _Builder:
    def __init__(self, dag: Dag):
        self.dag = dag
        self.level: dict[str, int] = {}
        self.x: dict[str, Fraction] = {}
        self.mid: dict[tuple[str, str], dict[int, Fraction]] = {}

    def put(self, v: str, lv: int, x) -> None:
        self.level[v] = lv
        self.x[v] = Fraction(x)

    def interior(self, tail: str, head: str, lv: int, x) -> None:
        self.mid.setdefault((tail, head), {})[lv] = Fraction(x)

    def finish(self) -> LayeredDrawing:
        wires: dict[int, tuple[Fraction, ...]] = {}
        for e, (t, h) in enumerate(self.dag.edges):
            lo, hi = self.level[t], self.level[h]
            pts = [self.x[t]]
            extra = self.mid.get((t, h), {})
            for lv in range(lo + 1, hi):
                if lv in extra:
                    pts.append(extra[lv])
                else:
                    # default: ride the tail's column
                    pts.append(self.x[t])
            pts.append(self.x[h])
            wires[e] = tuple(pts)
        return LayeredDrawing(self.dag, self.level, self.x, wires)


def _spans_two_then_one(total_rise: int, edges: int) -> list[int]:
    """Span sequence of 2s followed by 1s realizing the rise exactly."""
    n2 = total_rise - edges
    if not (0 <= n2 <= edges):
        raise InvalidInstance(
            f"cannot climb {total_rise} with {edges} edges of span 1 or 2"
        )
    return [2] * n2 + [1] * (edges - n2)


def _match_partition(
    instance: ThreePartitionInstance, partition
) -> list[list[tuple[int, int]]]:
    """Per pocket, (value, gadget index) pairs consuming the multiset."""
    groups = tuple(tuple(int(x) for x in g) for g in partition)
    instance.check_partition(groups)
    free: dict[int, list[int]] = {}
    for idx, a in enumerate(instance.values):
        free.setdefault(a, []).append(idx)
    out = []
    for g in groups:
        row = []
        for a in g:
            row.append((a, free[a].pop(0)))
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# Single-source reduction witness
# ---------------------------------------------------------------------------


def witness_single_source(
    instance: ThreePartitionInstance, partition
) -> LayeredDrawing:
    if instance.B % 2 == 0:
        raise InvalidInstance(
            "witness layout needs odd B (even B doubles the frame unit)"
        )
    pockets = _match_partition(instance, partition)
    dag, tags = gen_np_single_source(instance)
    m, B = instance.m, instance.B
    unit = B + 1
    b = _Builder(dag)

    # lanes, inside-out; left negative, right positive; pocket-i stems run
    # between wall i-1 and wall i
    lane: dict[str, int] = {}
    nxt = 2  # x = 1 is reserved for s'' / -1 for s'
    for i in range(0, m + 1):
        if 1 <= i:
            for j in range(3):
                lane[f"stem{i}.{j}"] = nxt
                nxt += 1
        lane[f"F{i}S"] = nxt
        lane[f"F{i}L"] = nxt + 1
        nxt += 2
    lane["P+"] = nxt
    bubble_lane = lane["F0S"]

    b.put("s", -1, 0)
    b.put("s'", 0, -1)
    b.put("s''", 0, 1)
    b.put("t'", 3 * m * unit + 2, 0)
    for i in range(0, m + 1):
        b.put(f"t{i}", (m + i) * unit, 0)

    def frame_side(side: str, sgn: int) -> None:
        fork = "s'" if side == "'" else "s''"
        for i in range(0, m + 1):
            length = (m + i) * unit
            llane, slane = sgn * lane[f"F{i}L"], sgn * lane[f"F{i}S"]
            long_names = [f"F{side}{i}.L{j:04d}" for j in range(1, length)]
            for j, name in enumerate(long_names, start=1):
                b.put(name, j, llane)
            short_names = [f"F{side}{i}.S{j:04d}" for j in range(1, length // 2)]
            for j, name in enumerate(short_names, start=1):
                b.put(name, 2 * j, slane)
            # span-2 interiors ride the short lane
            prev = fork
            for j, name in enumerate(short_names + [f"t{i}"], start=1):
                b.interior(prev, name, 2 * j - 1, slane)
                prev = name
        # escape path
        third = f"F{side}{m}.L0002"
        plane = sgn * lane["P+"]
        names = [f"P+{side}.{j:05d}" for j in range(1, 3 * m * unit)]
        for j, name in enumerate(names, start=1):
            b.put(name, 2 + j, plane)

    frame_side("'", -1)
    frame_side("''", +1)

    for i, row in enumerate(pockets, start=1):
        base = (m + i - 1) * unit
        c = 0
        for j, (a, idx) in enumerate(row):
            g = f"U{idx}"
            r_lv = base + c + 1
            u_lv = base + c + a
            b.put(f"{g}.r", r_lv, 0)
            if a > 1:
                b.put(f"{g}.u", u_lv, 0)
            for side, sgn, stem in (("1", -1, f"{g}.P1_"), ("2", +1, f"{g}.P2_")):
                slane = sgn * lane[f"stem{i}.{j}"]
                spans = _spans_two_then_one(r_lv, m * unit)
                lv = 0
                prev = "s'" if side == "1" else "s''"
                for jj in range(1, m * unit):
                    name = f"{stem}{jj:04d}"
                    lv += spans[jj - 1]
                    b.put(name, lv, slane)
                    if spans[jj - 1] == 2:
                        b.interior(prev, name, lv - 1, slane)
                    prev = name
                assert lv + spans[-1] == r_lv
                if spans[-1] == 2:
                    b.interior(prev, f"{g}.r", r_lv - 1, slane)
            # bubbles
            if a > 1:
                for pal, sgn in (("P3", -1), ("P4", +1)):
                    names = [f"{g}.{pal}_{q:03d}" for q in range(1, a - 1)]
                    if pal == "P4" and a == 2:
                        continue
                    for q, name in enumerate(names, start=1):
                        b.put(name, r_lv + q, sgn * bubble_lane)
                # shortcuts: stem predecessor to bubble successor, span 2
                for pal, sgn, stem in (("P3", -1, f"{g}.P1_"), ("P4", +1, f"{g}.P2_")):
                    pred = f"{stem}{m * unit - 1:04d}"
                    if a > 2:
                        succ = f"{g}.{pal}_001"
                    else:
                        succ = f"{g}.u"
                    xm = sgn * (lane[f"stem{i}.{j}"] - Half)
                    b.interior(pred, succ, r_lv, xm)
            c += a
    drawing = b.finish()
    return drawing


# ---------------------------------------------------------------------------
# Tree reduction witness
# ---------------------------------------------------------------------------


def witness_tree(instance: ThreePartitionInstance, partition) -> LayeredDrawing:
    inst = instance.with_odd_B()
    if inst is not instance:
        # the odd-B shift adds the same amount to every value
        shift = inst.values[0] - instance.values[0]
        partition = tuple(tuple(x + shift for x in g) for g in partition)
    pockets = _match_partition(inst, partition)
    dag, tags = gen_np_tree(instance)
    m, B = inst.m, inst.B
    r_lv = -m * (B + 1)
    b = _Builder(dag)
    b.put("r", r_lv, 0)

    # strand order right-to-left in rotation: T_b, triples with their
    # separating path, finally T_t
    strands: list[tuple[str, int, int]] = []  # (tag, sink level, source level)
    strands.append(("Tb", 0, -2 * m * B * (B - 1)))
    for i, row in enumerate(pockets, start=1):
        c = 0
        for a, idx in row:
            sink = i * (B + 1) - B + c
            src = -2 * m * B * (B - 1) + (i - 1) * (B * B + 1) + (c + a) * B
            strands.append((f"Ta{idx}", sink, src))
            c += a
        if i <= m - 1:
            strands.append(
                (f"P{i}", i * (B + 1), -2 * m * B * (B - 1) + i * (B * B + 1))
            )
    strands.append(("Tt", m * (B + 1), -m * (B * B - 2 * B - 1)))

    K = len(strands)

    def up_lane(k: int) -> int:
        return -(k + 1)

    def down_lane(k: int) -> Fraction:
        return Fraction(k + 1, K + 2)

    def src_x(k: int) -> Fraction:
        return down_lane(k) + Fraction(1, 2 * (K + 2))

    for k, (tag, sink_lv, src_lv) in enumerate(strands):
        if tag.startswith("P"):
            i = int(tag[1:])
            e_up = (m + i) * (B + 1) // 2
            e_dn = B * (B - 1) * (2 * m - i) // 2
        else:
            e_up = m * (B + 1)
            e_dn = m * B * (B - 1)
        e_up2 = 2 * m * B * B
        names = [f"{tag}.{j:05d}" for j in range(1, e_up + e_dn + e_up2 + 1)]
        spans_up = _spans_two_then_one(sink_lv - r_lv, e_up)
        lv = r_lv
        prev = "r"
        for j in range(e_up):
            lv += spans_up[j]
            v = names[j]
            b.put(v, lv, up_lane(k) if j < e_up - 1 else 0)
            if spans_up[j] == 2:
                b.interior(prev, v, lv - 1, up_lane(k))
            prev = v
        assert lv == sink_lv
        spans_dn = _spans_two_then_one(sink_lv - src_lv, e_dn)
        for j in range(e_dn):
            lv -= spans_dn[j]
            v = names[e_up + j]
            upper = prev
            x = down_lane(k) if j < e_dn - 1 else src_x(k)
            b.put(v, lv, x)
            if spans_dn[j] == 2:
                b.interior(v, upper, lv + 1, down_lane(k))
            prev = v
        assert lv == src_lv
        # rightward slope-one escape
        for j in range(e_up2):
            lv += 1
            v = names[e_up + e_dn + j]
            b.put(v, lv, src_x(k) + j + 1)
            prev = v

    # chains above sinks and below sources of the integer trees
    for i, row in enumerate(pockets, start=1):
        c = 0
        for a, idx in row:
            sink = i * (B + 1) - B + c
            src = -2 * m * B * (B - 1) + (i - 1) * (B * B + 1) + (c + a) * B
            k = next(q for q, s in enumerate(strands) if s[0] == f"Ta{idx}")
            for q in range(1, a):
                b.put(f"Za{idx}.{q:03d}", sink + q, 0)
            for q in range(1, a * B):
                b.put(f"Zpa{idx}.{q:04d}", src - q, src_x(k))
            c += a

    # outer stubs
    tiny = Fraction(1, 3 * (K + 2))
    b.put("Yb.b", r_lv, tiny)
    b.put("Yb.a", r_lv - 1, tiny)
    b.put("Yt.b", r_lv + 1, -(K + 1))
    b.put("Yt.a", r_lv, -(K + 1))

    # escape path of the top tree
    peak_lv = m * (B + 1) + 1
    kt = K - 1
    b.put("Pp.peak", peak_lv, down_lane(kt))
    after_sink = f"Tt.{m * (B + 1) + 1:05d}"
    b.interior(after_sink, "Pp.peak", peak_lv - 1, down_lane(kt))
    tail_x = -(K + 2)
    for j in range(1, 3 * m * B * B + 1):
        b.put(f"Pp.{j:05d}", peak_lv - j, tail_x)
    return b.finish()


def witness_drawing(
    kind: str, instance: ThreePartitionInstance, partition
) -> LayeredDrawing:
    """Span-2 drawing of the chosen gadget realizing the partition."""
    if kind == "single_source":
        return witness_single_source(instance, partition)
    if kind == "tree":
        return witness_tree(instance, partition)
    raise ValueError(f"unknown witness kind {kind!r}")
