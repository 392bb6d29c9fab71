"""Spatial-to-JPEG distortion cost transformation.

Per coefficient at mode (a, b) of block (m, n):

    rho = sum_ij d_mn(i, j)**p * |s_ab(i, j)|,

the exponential generalization whose p = 1 case weights spatial costs by
the absolute spatial change of a unit coefficient modification.  Also
provides the exponent parameter sources: the per-steganalyzer lookup
table and the linear quality-factor rule p = 0.02*(QF-75) + 0.48.
"""

from dataclasses import dataclass

import numpy as np

from .dct import mode_patterns

STEGANALYZERS = ("CC-JRM", "GFR", "SCA-GFR")

# (quality, steganalyzer) -> tuned exponent
P_TABLE = {
    (75, "CC-JRM"): 0.7,
    (75, "GFR"): 0.7,
    (75, "SCA-GFR"): 0.5,
    (80, "SCA-GFR"): 0.6,
    (85, "SCA-GFR"): 0.6,
    (90, "SCA-GFR"): 0.8,
    (95, "CC-JRM"): 0.9,
    (95, "GFR"): 1.1,
    (95, "SCA-GFR"): 0.9,
}


@dataclass(frozen=True)
class DcdtParams:
    """Resolved exponent plus where it came from (explicit/table/regression)."""

    p: float
    source: str = "explicit"

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError("exponent p must be positive")


def p_for_qf(qf: int) -> float:
    """Linear rule p = 0.02*(QF - 75) + 0.48, valid on QF in [75, 95]."""
    if not 75 <= qf <= 95:
        raise ValueError(f"qf {qf} outside the fitted interval [75, 95]")
    return 0.02 * (qf - 75) + 0.48


def p_from_table(qf: int, steganalyzer: str = "SCA-GFR") -> float:
    """Tuned exponent for (quality factor, steganalyzer)."""
    name = steganalyzer.upper()
    if name not in STEGANALYZERS:
        raise ValueError(f"unknown steganalyzer {steganalyzer!r}")
    key = (int(qf), name)
    if key not in P_TABLE:
        raise KeyError(f"no table entry for QF {qf} / {name}")
    return P_TABLE[key]


def mode_change_magnitudes(quant_table: np.ndarray) -> np.ndarray:
    """|spatial change| of a unit coefficient change, every mode.

    Shape (64, 64): row a*8+b holds the 64 cell magnitudes of mode (a, b)
    scaled by its quantization step.
    """
    q = np.asarray(quant_table, dtype=np.float64)
    mags = np.abs(mode_patterns()) * q[:, :, None, None]
    return mags.reshape(64, 64)


def _blockify(plane: np.ndarray) -> tuple[np.ndarray, int, int]:
    h, w = plane.shape
    bh, bw = h // 8, w // 8
    blocks = plane.reshape(bh, 8, bw, 8).transpose(0, 2, 1, 3).reshape(bh * bw, 64)
    return blocks, bh, bw


def _transform(weighted_costs: np.ndarray, quant_table: np.ndarray) -> np.ndarray:
    blocks, bh, bw = _blockify(weighted_costs)
    rho = blocks @ mode_change_magnitudes(quant_table).T
    return rho.reshape(bh, bw, 8, 8)


def dcdt_cost(costs: np.ndarray, quant_table: np.ndarray, p: float) -> np.ndarray:
    """Per-coefficient embedding costs, shape (bh, bw, 8, 8).

    `costs` is the spatial cost map over the full padded block grid.
    numpy's power leaves the array bit-identical at p = 1, so that case
    follows the exact expression path of the linear transformation.
    """
    costs = np.asarray(costs, dtype=np.float64)
    if not p > 0:
        raise ValueError("exponent p must be positive")
    if costs.ndim != 2 or costs.shape[0] % 8 or costs.shape[1] % 8:
        raise ValueError(
            f"cost map shape {costs.shape} is not a padded 8x8 block grid"
        )
    return _transform(costs**p, quant_table)


def linear_cost(costs: np.ndarray, quant_table: np.ndarray) -> np.ndarray:
    """The unexponentiated transformation (identical to dcdt_cost at p=1)."""
    costs = np.asarray(costs, dtype=np.float64)
    if costs.ndim != 2 or costs.shape[0] % 8 or costs.shape[1] % 8:
        raise ValueError(
            f"cost map shape {costs.shape} is not a padded 8x8 block grid"
        )
    return _transform(costs, quant_table)


def save_jpeg_cost_csv(rho: np.ndarray, path, header_lines=()) -> None:
    """Export: block_row,block_col,mode_row,mode_col,rho per line."""
    bh, bw = rho.shape[:2]
    with open(path, "w") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        fh.write("block_row,block_col,mode_row,mode_col,rho\n")
        for m in range(bh):
            for n in range(bw):
                for a in range(8):
                    for b in range(8):
                        fh.write(f"{m},{n},{a},{b},{rho[m, n, a, b]!r}\n")
