"""Standard quantization table family and quality-factor inference."""

import numpy as np

# T.81 Annex K luminance table, natural (row-major) order.
ANNEX_K_LUMINANCE = np.array(
    [
        [16, 11, 10, 16, 24, 40, 51, 61],
        [12, 12, 14, 19, 26, 58, 60, 55],
        [14, 13, 16, 24, 40, 57, 69, 56],
        [14, 17, 22, 29, 51, 87, 80, 62],
        [18, 22, 37, 56, 68, 109, 103, 77],
        [24, 35, 55, 64, 81, 104, 113, 92],
        [49, 64, 78, 87, 103, 121, 120, 101],
        [72, 92, 95, 98, 112, 100, 103, 99],
    ],
    dtype=np.int64,
)


def standard_table(quality: int, force_baseline: bool = True) -> np.ndarray:
    """IJG-scaled luminance table for quality in 1..100."""
    if not 1 <= quality <= 100:
        raise ValueError(f"quality {quality} outside 1..100")
    scale = 5000 // quality if quality < 50 else 200 - 2 * quality
    table = (ANNEX_K_LUMINANCE * scale + 50) // 100
    table = np.clip(table, 1, 255 if force_baseline else 32767)
    return table.astype(np.int32)


def infer_quality(quant_table: np.ndarray) -> tuple[int, bool]:
    """Nearest standard quality factor for a quantization table.

    Returns (quality, exact) where `exact` marks a cell-for-cell match.
    Ties go to the lower quality.
    """
    q = np.asarray(quant_table, dtype=np.int64)
    best_quality, best_dist = 1, None
    for quality in range(1, 101):
        dist = int(np.abs(standard_table(quality) - q).sum())
        if best_dist is None or dist < best_dist:
            best_quality, best_dist = quality, dist
    return best_quality, best_dist == 0
