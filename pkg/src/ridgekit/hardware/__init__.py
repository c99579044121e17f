"""Bit-exact models of the streaming hardware: adder tree, mean lanes, pipeline."""

from .adders import BitVector, cla_add, csa, dadda_layer_counts, dadda_reduce_17
from .mvcu import MvcuState, mvcu_cycle, mvcu_mean

__all__ = [
    "BitVector",
    "csa",
    "dadda_reduce_17",
    "dadda_layer_counts",
    "cla_add",
    "MvcuState",
    "mvcu_cycle",
    "mvcu_mean",
]
