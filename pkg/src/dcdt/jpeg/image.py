"""Coefficient-domain representation of a parsed grayscale JPEG."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import MalformedMarkerError
from .format import COEFF_STORE_MAX, COEFF_STORE_MIN


@dataclass(frozen=True)
class HuffmanSpec:
    """A Huffman table as stored in a DHT segment: the per-length code
    count histogram (16 entries) and the symbol list."""

    counts: tuple
    symbols: tuple


@dataclass
class JpegImage:
    """Quantized-coefficient view of a baseline grayscale JPEG.

    `coeffs` has shape (block_rows, block_cols, 8, 8) with modes in
    natural (row-major) order; `quant_table` is the 8x8 step matrix in
    natural order.  Entropy-coding metadata is informational: writing
    always regenerates per-image optimal tables.
    """

    width: int
    height: int
    quant_table: np.ndarray
    coeffs: np.ndarray
    dc_tables: dict = field(default_factory=dict)
    ac_tables: dict = field(default_factory=dict)
    restart_interval: int = 0

    @property
    def block_rows(self) -> int:
        return (self.height + 7) // 8

    @property
    def block_cols(self) -> int:
        return (self.width + 7) // 8

    def validate(self) -> None:
        if self.width < 1 or self.height < 1:
            raise MalformedMarkerError("image dimensions must be positive")
        if self.quant_table.shape != (8, 8):
            raise MalformedMarkerError("quantization table must be 8x8")
        q = np.asarray(self.quant_table, dtype=np.int64)
        if q.min() < 1 or q.max() > 65535:
            raise MalformedMarkerError("quantization steps must lie in [1, 65535]")
        expect = (self.block_rows, self.block_cols, 8, 8)
        if self.coeffs.shape != expect:
            raise MalformedMarkerError(
                f"coefficient grid {self.coeffs.shape} does not match "
                f"dimensions {self.width}x{self.height} (expected {expect})"
            )
        c = np.asarray(self.coeffs, dtype=np.int64)
        if c.min() < COEFF_STORE_MIN or c.max() > COEFF_STORE_MAX:
            raise MalformedMarkerError("coefficients exceed 12 signed bits")

    def copy(self) -> "JpegImage":
        return JpegImage(
            width=self.width,
            height=self.height,
            quant_table=self.quant_table.copy(),
            coeffs=self.coeffs.copy(),
            dc_tables=dict(self.dc_tables),
            ac_tables=dict(self.ac_tables),
            restart_interval=self.restart_interval,
        )


def count_nonzero_ac(image: JpegImage) -> int:
    """Number of nonzero coefficients at the 63 AC modes (DC excluded)."""
    nz = np.count_nonzero(image.coeffs)
    nz_dc = np.count_nonzero(image.coeffs[:, :, 0, 0])
    return int(nz - nz_dc)
