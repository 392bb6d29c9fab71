"""Orthonormal 8x8 block DCT: basis, per-mode spatial change patterns,
multi-mode block changes, and full-image decompression.

The basis matrix A holds the eight orthonormal DCT-II vectors as rows;
a unit change of the quantized coefficient at mode (a, b) moves the
decompressed block by q_ab * outer(A[a], A[b]).
"""

import math
from functools import lru_cache

import numpy as np

from .jpeg.image import JpegImage


@lru_cache(maxsize=1)
def build_basis() -> np.ndarray:
    """8x8 orthonormal DCT-II basis (rows are basis vectors)."""
    a = np.empty((8, 8), dtype=np.float64)
    for r in range(8):
        scale = math.sqrt(0.125) if r == 0 else 0.5
        for j in range(8):
            a[r, j] = scale * math.cos(r * (2 * j + 1) * math.pi / 16.0)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=1)
def mode_patterns() -> np.ndarray:
    """Spatial change per unit coefficient change, all 64 modes.

    Shape (8, 8, 8, 8): patterns[a, b] is the 8x8 block change for a +1
    change at mode (a, b) before quantization-step scaling.  Each pattern
    has unit L2 norm.
    """
    a = build_basis()
    p = np.einsum("ai,bj->abij", a, a)
    p.setflags(write=False)
    return p


def spatial_change(a: int, b: int, q: float) -> np.ndarray:
    """Block change for a +1 change of the quantized coefficient at mode
    (a, b) with quantization step q."""
    if not (0 <= a <= 7 and 0 <= b <= 7):
        raise ValueError(f"mode ({a}, {b}) out of range")
    return q * mode_patterns()[a, b]


def block_change(t: np.ndarray, quant_table: np.ndarray) -> np.ndarray:
    """Spatial change for simultaneous modifications t (ternary 8x8) of
    one block, each scaled by its quantization step."""
    basis = build_basis()
    x = np.asarray(t, dtype=np.float64) * np.asarray(quant_table, dtype=np.float64)
    return basis.T @ x @ basis


def forward_dct_block(pixels: np.ndarray) -> np.ndarray:
    """Forward 8x8 DCT-II of a pixel block (inverse of A^T C A)."""
    basis = build_basis()
    return basis @ np.asarray(pixels, dtype=np.float64) @ basis.T


def _round_half_away(x: np.ndarray) -> np.ndarray:
    return np.trunc(x + np.copysign(0.5, x))


def decompress(image: JpegImage, rounded: bool = True) -> np.ndarray:
    """Decompress to the spatial domain over the full padded block grid.

    Per block: dequantize, inverse DCT, +128 level shift; then (by
    default) round half away from zero and clamp to [0, 255].  The result
    covers block_rows*8 x block_cols*8 pixels, padding included.
    """
    basis = build_basis()
    deq = image.coeffs.astype(np.float64) * image.quant_table.astype(np.float64)
    blocks = basis.T @ deq @ basis + 128.0
    pixels = blocks.transpose(0, 2, 1, 3).reshape(
        image.block_rows * 8, image.block_cols * 8
    )
    if rounded:
        pixels = np.clip(_round_half_away(pixels), 0.0, 255.0)
    return pixels
