"""Exception types shared across the package."""

from __future__ import annotations


class UpspanError(Exception):
    """Base class for all package errors."""


class CycleDetected(UpspanError):
    pass


class SelfLoop(UpspanError):
    pass


class ParallelEdge(UpspanError):
    pass


class InconsistentRotation(UpspanError):
    pass


class NotUpward(UpspanError):
    pass


class MalformedWire(UpspanError):
    pass


class BudgetExceeded(UpspanError):
    pass


class Infeasible(UpspanError):
    """The graph admits no drawing at all in the requested mode."""


class NotStGraph(UpspanError):
    pass


class StNotOnOuterFace(UpspanError):
    pass


class NotPlanar(UpspanError):
    pass


class NotPlanarEmbedding(UpspanError):
    pass


class MultipleSources(UpspanError):
    pass


class InvalidUpwardEmbedding(UpspanError):
    pass


class NotOuterplanar(UpspanError):
    pass


class NotUpwardPlanar(UpspanError):
    pass


class NotCaterpillar(UpspanError):
    pass


class LongDirectedPath(UpspanError):
    pass


class TooSmall(UpspanError):
    pass


class InvalidInstance(UpspanError):
    pass


class InvalidPartition(UpspanError):
    pass


class NotACover(UpspanError):
    pass


class ConstraintViolated(UpspanError):
    pass
