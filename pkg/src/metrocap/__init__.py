"""Exact capacities and distinguishability bounds for tensor-power metrology models."""

from .rep_core import (
    UNBOUNDED,
    Decomposition,
    IrrepEntry,
    Model,
    Partition,
    WeightVector,
    decompose,
    enumerate_partitions,
    enumerate_weights,
    multiplicity_mp,
    multiplicity_su,
    weyl_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "UNBOUNDED",
    "Decomposition",
    "IrrepEntry",
    "Model",
    "Partition",
    "WeightVector",
    "decompose",
    "enumerate_partitions",
    "enumerate_weights",
    "multiplicity_mp",
    "multiplicity_su",
    "weyl_dimension",
    "__version__",
]
