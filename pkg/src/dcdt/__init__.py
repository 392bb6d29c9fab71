"""DCDT JPEG steganography.

Distortion cost domain transformation: spatial per-pixel embedding costs
computed on the decompressed image are mapped into per-DCT-coefficient
costs through an exponential weighting of each mode's spatial change
pattern, then embedding is simulated at the payload distortion bound.
Includes a self-contained baseline grayscale JPEG coefficient codec and
an optional mutually-dependent embedding extension.
"""

from .analysis import (
    BlockCostVector,
    ModeHistogram,
    mode_histogram,
    random_block_costs,
    spearman,
)
from .dct import (
    block_change,
    build_basis,
    decompress,
    forward_dct_block,
    mode_patterns,
    spatial_change,
)
from .errors import (
    ConstraintError,
    DcdtError,
    DegenerateCostsError,
    JpegError,
    TargetUnreachableError,
)
from .jpeg import (
    JpegImage,
    count_nonzero_ac,
    dump_sidecar,
    infer_quality,
    load_sidecar,
    parse_jpeg,
    serialize_jpeg,
)
from .mde import MdeConfig, OptimizedMap, candidate_cost, optimize_block, update_costs
from .pipeline import EmbedResult, embed, mde_embed
from .simulator import (
    ChangeProbabilities,
    EmbedConfig,
    JpegCostMap,
    apply_map,
    change_probs,
    payload_bits,
    simulate,
    solve_lambda,
    total_entropy,
    wet_guard,
)
from .spatial_cost import block_cost_sum, block_cost_sums, hill_cost
from .transform import DcdtParams, dcdt_cost, linear_cost, p_for_qf, p_from_table

__version__ = "0.1.0"

__all__ = [
    "BlockCostVector",
    "ChangeProbabilities",
    "ConstraintError",
    "DcdtError",
    "DcdtParams",
    "DegenerateCostsError",
    "EmbedConfig",
    "EmbedResult",
    "JpegCostMap",
    "JpegError",
    "JpegImage",
    "MdeConfig",
    "ModeHistogram",
    "OptimizedMap",
    "TargetUnreachableError",
    "apply_map",
    "block_change",
    "block_cost_sum",
    "block_cost_sums",
    "build_basis",
    "candidate_cost",
    "change_probs",
    "count_nonzero_ac",
    "dcdt_cost",
    "decompress",
    "dump_sidecar",
    "embed",
    "forward_dct_block",
    "hill_cost",
    "infer_quality",
    "linear_cost",
    "load_sidecar",
    "mde_embed",
    "mode_histogram",
    "mode_patterns",
    "optimize_block",
    "p_for_qf",
    "p_from_table",
    "parse_jpeg",
    "payload_bits",
    "random_block_costs",
    "serialize_jpeg",
    "simulate",
    "solve_lambda",
    "spatial_change",
    "spearman",
    "total_entropy",
    "update_costs",
    "wet_guard",
]
