"""Upward-planar layered drawings with bounded edge span.

Library surface: graph model and embeddings (``graphs``), the layered
drawing model and validator (``drawing``), a brute-force exact span oracle
(``exact``), the dual-circulation solver for plane st-graphs (``flow``),
solvers for graph classes with few sources (``class_solvers``), certified
tree drawers (``tree_draw``), lower-bound and hardness-gadget generators
(``generators``), the vertex-cover kernelization (``kernel``), and a batch
CLI (``cli``).
"""

from .graphs import (
    Dag,
    PlanarEmbedding,
    UpwardEmbedding,
    build_dag,
    check_upward_embedding,
    faces,
    structure_queries,
)

__all__ = [
    "Dag",
    "PlanarEmbedding",
    "UpwardEmbedding",
    "build_dag",
    "check_upward_embedding",
    "faces",
    "structure_queries",
]
