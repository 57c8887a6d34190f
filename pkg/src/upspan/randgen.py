"""Seeded random instance generators for cross-checking suites.

Rejection sampling is fine at desk scale; every generator is
deterministic given the caller's random.Random.
"""

from __future__ import annotations

import random

from .errors import NotStGraph
from .graphs import Dag, PlanarEmbedding, build_dag, planar_embedding


def random_dag(rng: random.Random, n: int, p: float) -> Dag:
    names = [f"v{i:02d}" for i in range(n)]
    perm = names[:]
    rng.shuffle(perm)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((perm[i], perm[j]))
    return build_dag(names, edges)


def random_connected_planar_dag(
    rng: random.Random, n: int, p: float = 0.45, tries: int = 4000
) -> Dag:
    for _ in range(tries):
        dag = random_dag(rng, n, p)
        if dag.m == 0 or not dag.is_connected():
            continue
        if planar_embedding(dag) is not None:
            return dag
    raise RuntimeError("failed to sample a connected planar dag")


def _with_outer_containing(dag: Dag, emb: PlanarEmbedding, vs: set[str]) -> PlanarEmbedding | None:
    for walk in emb.walks():
        seen: set[str] = set()
        for e, _ in walk:
            seen.update(dag.edges[e])
        if vs <= seen:
            return PlanarEmbedding(dag, emb.rotation, min(walk))
    return None


def random_plane_st_graph(rng: random.Random, n: int, tries: int = 6000) -> tuple[Dag, PlanarEmbedding]:
    """Plane st-graph: single source and sink, both on the outer face."""
    for _ in range(tries):
        dag = random_dag(rng, n, rng.uniform(0.3, 0.6))
        if not dag.is_connected():
            continue
        if len(dag.sources()) != 1 or len(dag.sinks()) != 1:
            continue
        emb = planar_embedding(dag)
        if emb is None:
            continue
        anchored = _with_outer_containing(
            dag, emb, {dag.sources()[0], dag.sinks()[0]}
        )
        if anchored is None:
            continue
        from .flow import build_dual_network

        try:
            build_dual_network(dag, anchored, {e: n for e in range(dag.m)})
        except NotStGraph:
            continue
        return dag, anchored
    raise RuntimeError("failed to sample a plane st-graph")


def random_plane_multisource(
    rng: random.Random, n: int, max_sources: int, tries: int = 6000
) -> tuple[Dag, PlanarEmbedding]:
    for _ in range(tries):
        dag = random_dag(rng, n, rng.uniform(0.25, 0.5))
        if not dag.is_connected():
            continue
        if not (1 <= len(dag.sources()) <= max_sources):
            continue
        emb = planar_embedding(dag)
        if emb is not None:
            return dag, emb
    raise RuntimeError("failed to sample a plane multi-source dag")


def random_tree_shape(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Random labelled tree edges on 0..n-1 (random attachment)."""
    return [(rng.randrange(0, i), i) for i in range(1, n)]


def random_directed_tree(rng: random.Random, n: int) -> Dag:
    names = [f"v{i:02d}" for i in range(n)]
    edges = []
    for a, b in random_tree_shape(rng, n):
        if rng.random() < 0.5:
            edges.append((names[a], names[b]))
        else:
            edges.append((names[b], names[a]))
    return build_dag(names, edges)


def random_source_sink_tree(rng: random.Random, n: int) -> Dag:
    """Random tree oriented so every vertex is a source or a sink."""
    names = [f"v{i:02d}" for i in range(n)]
    shape = random_tree_shape(rng, n)
    depth = {0: 0}
    for a, b in shape:
        depth[b] = depth[a] + 1
    flip = rng.random() < 0.5
    edges = []
    for a, b in shape:
        lower = depth[a] % 2 == (1 if flip else 0)
        edges.append((names[a], names[b]) if lower else (names[b], names[a]))
    return build_dag(names, edges)


def random_caterpillar(rng: random.Random, n: int) -> Dag:
    """Random caterpillar: spine path plus leaves, random edge directions."""
    assert n >= 2
    spine_len = rng.randint(1, max(1, n // 2))
    names = [f"v{i:02d}" for i in range(n)]
    shape = [(i, i + 1) for i in range(spine_len - 1)]
    for j in range(spine_len, n):
        shape.append((rng.randrange(0, spine_len), j))
    edges = []
    for a, b in shape:
        if rng.random() < 0.5:
            edges.append((names[a], names[b]))
        else:
            edges.append((names[b], names[a]))
    return build_dag(names, edges)


def random_single_source_planar(rng: random.Random, n: int, tries: int = 6000) -> Dag:
    for _ in range(tries):
        dag = random_dag(rng, n, rng.uniform(0.3, 0.55))
        if not dag.is_connected() or len(dag.sources()) != 1:
            continue
        if planar_embedding(dag) is not None:
            return dag
    raise RuntimeError("failed to sample a single-source planar dag")


def random_single_source_outerplanar(rng: random.Random, n: int, tries: int = 8000) -> Dag:
    from .graphs import outerplanar_embedding

    for _ in range(tries):
        dag = random_dag(rng, n, rng.uniform(0.25, 0.5))
        if not dag.is_connected() or len(dag.sources()) != 1:
            continue
        if outerplanar_embedding(dag) is not None:
            return dag
    raise RuntimeError("failed to sample a single-source outerplanar dag")


def random_small_cover_graph(
    rng: random.Random, n: int, cover_size: int = 2, tries: int = 8000
) -> tuple[Dag, tuple[str, ...]]:
    """Planar DAG together with a (not necessarily minimum) vertex cover."""
    for _ in range(tries):
        cover = [f"m{i}" for i in range(cover_size)]
        others = [f"w{i}" for i in range(n - cover_size)]
        edges = set()
        # optional edges inside the cover
        for i in range(cover_size):
            for j in range(i + 1, cover_size):
                if rng.random() < 0.5:
                    edges.add((cover[i], cover[j]))
        for w in others:
            deg = rng.choice([1, 1, 2, 2, 2, 3])
            ends = rng.sample(cover, min(deg, cover_size))
            for c in ends:
                if rng.random() < 0.5:
                    edges.add((c, w))
                else:
                    edges.add((w, c))
        try:
            dag = build_dag(cover + others, sorted(edges))
        except Exception:
            continue
        if not dag.is_connected():
            continue
        if planar_embedding(dag) is None:
            continue
        return dag, tuple(cover)
    raise RuntimeError("failed to sample a small-cover graph")
