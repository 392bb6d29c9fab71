"""COEF1 coefficient sidecar: a fixed-layout little-endian exchange format.

Layout: magic b"COEF1"; width, height as u32le; 64 quantization steps as
u16le in row-major mode order; then one 128-byte record per block in
raster order, 64 coefficients as i16le in row-major mode order.
"""

import struct

import numpy as np

from ..errors import SidecarError
from .image import JpegImage

MAGIC = b"COEF1"
_HEADER = struct.Struct("<II")


def dump_sidecar(image: JpegImage) -> bytes:
    image.validate()
    out = bytearray(MAGIC)
    out += _HEADER.pack(image.width, image.height)
    out += np.asarray(image.quant_table, dtype="<u2").tobytes()
    nblocks = image.block_rows * image.block_cols
    out += np.asarray(image.coeffs, dtype="<i2").reshape(nblocks, 64).tobytes()
    return bytes(out)


def load_sidecar(data: bytes) -> JpegImage:
    """Rebuild a JpegImage (without entropy-coding metadata) from sidecar bytes."""
    if len(data) < 5 or data[:5] != MAGIC:
        raise SidecarError("bad magic")
    if len(data) < 5 + 8 + 128:
        raise SidecarError("length mismatch: truncated header")
    width, height = _HEADER.unpack_from(data, 5)
    if width == 0 or height == 0:
        raise SidecarError("zero dimension")
    block_rows = (height + 7) // 8
    block_cols = (width + 7) // 8
    nblocks = block_rows * block_cols
    expected = 5 + 8 + 128 + 128 * nblocks
    if len(data) != expected:
        raise SidecarError(
            f"length mismatch: got {len(data)} bytes, expected {expected}"
        )
    quant = np.frombuffer(data, dtype="<u2", count=64, offset=13)
    coeffs = np.frombuffer(data, dtype="<i2", count=nblocks * 64, offset=141)
    image = JpegImage(
        width=width,
        height=height,
        quant_table=quant.reshape(8, 8).astype(np.int32),
        coeffs=coeffs.reshape(block_rows, block_cols, 8, 8).astype(np.int32),
    )
    try:
        image.validate()
    except Exception as exc:
        raise SidecarError(f"stored values violate coefficient invariants: {exc}")
    return image
