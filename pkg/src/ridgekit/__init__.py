"""Fingerprint ridge-image preprocessing toolkit.

Software reference path (local adaptive binarization, 2x2 dilation,
two-subiteration parallel thinning) plus a bit-exact cycle-level model of
the streaming hardware pipeline that implements the same chain.
"""

from .estimators import AdaptiveBinarizer, Dilator, ParallelThinner, preprocessing_chain
from .hardware.adders import BitVector, cla_add, csa, dadda_layer_counts, dadda_reduce_17
from .hardware.mvcu import MvcuState, mvcu_cycle, mvcu_mean
from .hardware.pipeline import (
    EquivalenceReport,
    Pipeline,
    PipelineConfig,
    SimTrace,
    TimingReport,
    build_pipeline,
    export_trace,
    reference_taps,
    timing_report,
    verify_against_reference,
)
from .metrics import correlation, e_rms, snr_ms
from .morphology import (
    ThinningLUT,
    ThinningResult,
    build_lut,
    deletable,
    dilate_2x2,
    iteration_profile,
    neighbor_sum,
    neighbor_transitions,
    thin,
    thin_pass,
)
from .pnm import PnmDecodeError, crop, load_pbm, load_pgm, save_pbm, save_pgm
from .threshold import (
    BlockFactorReport,
    BlockGrid,
    ClassStats,
    ThresholdMap,
    binarize,
    block_factor,
    block_mean_threshold,
    build_block_grid,
    gray_histogram,
    optimal_threshold,
    otsu_binarize,
    otsu_threshold,
    select_block_size,
    threshold_map,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptiveBinarizer", "Dilator", "ParallelThinner", "preprocessing_chain",
    "BitVector", "csa", "dadda_reduce_17", "dadda_layer_counts", "cla_add",
    "MvcuState", "mvcu_cycle", "mvcu_mean",
    "Pipeline", "PipelineConfig", "SimTrace", "TimingReport", "EquivalenceReport",
    "build_pipeline", "export_trace", "reference_taps", "timing_report",
    "verify_against_reference",
    "correlation", "e_rms", "snr_ms",
    "ThinningLUT", "ThinningResult", "build_lut", "deletable", "dilate_2x2",
    "iteration_profile", "neighbor_sum", "neighbor_transitions", "thin", "thin_pass",
    "PnmDecodeError", "crop", "load_pbm", "load_pgm", "save_pbm", "save_pgm",
    "BlockFactorReport", "BlockGrid", "ClassStats", "ThresholdMap",
    "binarize", "block_factor", "block_mean_threshold", "build_block_grid",
    "gray_histogram", "optimal_threshold", "otsu_binarize", "otsu_threshold",
    "select_block_size", "threshold_map",
]
