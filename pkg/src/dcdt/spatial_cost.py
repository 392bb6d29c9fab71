"""Spatial per-pixel embedding costs on the decompressed image.

Ships the high-pass/low-pass HiLL cost; any callable mapping a pixel
array to a same-shaped positive cost array can be used in its place.
"""

import numpy as np
from scipy import ndimage

KB_KERNEL = np.array(
    [[-1.0, 2.0, -1.0], [2.0, -4.0, 2.0], [-1.0, 2.0, -1.0]], dtype=np.float64
)
L1_KERNEL = np.full((3, 3), 1.0 / 9.0, dtype=np.float64)
L2_KERNEL = np.full((15, 15), 1.0 / 225.0, dtype=np.float64)

DEFAULT_EPS = 1e-10


def hill_cost(pixels: np.ndarray, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Per-pixel cost of a unit pixel change.

    cost = 1 / ((|pixels (x) KB| (x) L1) (x) L2 + eps) where (x) is 2-D
    correlation with mirror boundary padding.  Flat regions cost 1/eps.
    """
    pixels = np.asarray(pixels, dtype=np.float64)
    if pixels.ndim != 2 or pixels.shape[0] < 1 or pixels.shape[1] < 1:
        raise ValueError("pixel array must be 2-D and non-empty")
    residual = ndimage.correlate(pixels, KB_KERNEL, mode="reflect")
    smoothed = ndimage.correlate(np.abs(residual), L1_KERNEL, mode="reflect")
    smoothed = ndimage.correlate(smoothed, L2_KERNEL, mode="reflect")
    return 1.0 / (smoothed + eps)


def block_cost_sum(costs: np.ndarray, m: int, n: int) -> float:
    """Sum of the 64 pixel costs in block (m, n)."""
    bh, bw = costs.shape[0] // 8, costs.shape[1] // 8
    if not (0 <= m < bh and 0 <= n < bw):
        raise ValueError(f"block ({m}, {n}) outside {bh}x{bw} grid")
    return float(costs[8 * m : 8 * m + 8, 8 * n : 8 * n + 8].sum())


def block_cost_sums(costs: np.ndarray) -> np.ndarray:
    """Per-block cost sums over the whole map, shape (bh, bw)."""
    h, w = costs.shape
    if h % 8 or w % 8:
        raise ValueError("cost map dimensions must be multiples of 8")
    return costs.reshape(h // 8, 8, w // 8, 8).sum(axis=(1, 3))


def save_cost_csv(costs: np.ndarray, path) -> None:
    """Debug export: one image row per line, comma separated."""
    with open(path, "w") as fh:
        for row in costs:
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")
