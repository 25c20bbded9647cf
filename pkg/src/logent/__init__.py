"""Logical entropy: partitions, compound entropies, MaxEntropy and density matrices."""

from ._kernels import BACKEND
from .entropy import (
    Dist,
    JointDist,
    ProbPartition,
    H,
    box_diagram,
    compound_logical,
    compound_shannon,
    h,
    h_partition,
    kl_divergence,
    logical_divergence,
    mutual3_logical,
    mutual3_shannon,
)
from .errors import LogentError, SchemaError
from .partitions import (
    Partition,
    PairRelation,
    Universe,
    common_dits_exist,
    dit_count,
    ditset,
    from_equivalence,
    inditset,
    join,
    refines,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Dist",
    "H",
    "JointDist",
    "LogentError",
    "PairRelation",
    "Partition",
    "ProbPartition",
    "SchemaError",
    "Universe",
    "box_diagram",
    "common_dits_exist",
    "compound_logical",
    "compound_shannon",
    "dit_count",
    "ditset",
    "from_equivalence",
    "h",
    "h_partition",
    "inditset",
    "join",
    "kl_divergence",
    "logical_divergence",
    "mutual3_logical",
    "mutual3_shannon",
    "refines",
]
