"""Shared constants of the baseline JPEG interchange format."""

import numpy as np

from ..errors import MalformedMarkerError

# Marker code bytes (second byte of the 0xFF xx pair).
SOI = 0xD8
EOI = 0xD9
SOS = 0xDA
DQT = 0xDB
DNL = 0xDC
DRI = 0xDD
DHT = 0xC4
DAC = 0xCC
COM = 0xFE
SOF0 = 0xC0
APP0 = 0xE0
RST0 = 0xD0
TEM = 0x01

SOF_CODES = frozenset(
    {0xC0, 0xC1, 0xC2, 0xC3, 0xC5, 0xC6, 0xC7, 0xC9, 0xCA, 0xCB, 0xCD, 0xCE, 0xCF}
)

# Zig-zag position of each natural-order (row-major) cell, per T.81 Figure 5.
ZIGZAG_OF_NATURAL = (
    0, 1, 5, 6, 14, 15, 27, 28,
    2, 4, 7, 13, 16, 26, 29, 42,
    3, 8, 12, 17, 25, 30, 41, 43,
    9, 11, 18, 24, 31, 40, 44, 53,
    10, 19, 23, 32, 39, 45, 52, 54,
    20, 22, 33, 38, 46, 51, 55, 60,
    21, 34, 37, 47, 50, 56, 59, 61,
    35, 36, 48, 49, 57, 58, 62, 63,
)

# Natural-order cell visited at each zig-zag position (inverse permutation).
NATURAL_OF_ZIGZAG = tuple(int(i) for i in np.argsort(ZIGZAG_OF_NATURAL))

# Coefficient bounds enforced at embedding time and at serialization.
# AC categories in baseline streams stop at 10 bits (|v| <= 1023); the DC
# value itself may reach -1024 (all-black block at quantization step 1)
# while keeping every differential within the 11-bit category.
DC_MIN, DC_MAX = -1024, 1023
AC_MIN, AC_MAX = -1023, 1023
MAX_DC_DIFF = 2047

# Parsed coefficients are accepted in the 12-bit two's-complement envelope.
COEFF_STORE_MIN, COEFF_STORE_MAX = -2048, 2047

# Frame size guard: parsing allocates the full block grid up front, so an
# upper bound on pixel count keeps arbitrary (fuzzed) headers from turning
# into multi-gigabyte allocations.
DEFAULT_MAX_PIXELS = 1 << 26


def coefficient_bounds() -> tuple[np.ndarray, np.ndarray]:
    """Per-mode (min, max) stego-value bounds as 8x8 arrays."""
    lo = np.full((8, 8), AC_MIN, dtype=np.int32)
    hi = np.full((8, 8), AC_MAX, dtype=np.int32)
    lo[0, 0] = DC_MIN
    hi[0, 0] = DC_MAX
    return lo, hi


def canonical_codes(counts, symbols):
    """Assign canonical Huffman codes to `symbols` given the per-length
    histogram `counts` (16 entries, lengths 1..16).

    Returns (codes, lengths) aligned with `symbols`.  Raises
    MalformedMarkerError if the histogram oversubscribes the code space.
    """
    if len(counts) != 16 or sum(counts) != len(symbols):
        raise MalformedMarkerError("huffman table histogram/symbol mismatch")
    codes = []
    lengths = []
    code = 0
    for n, cnt in enumerate(counts, start=1):
        if cnt < 0:
            raise MalformedMarkerError("negative huffman code count")
        for _ in range(cnt):
            if code >= (1 << n):
                raise MalformedMarkerError("huffman code space overflow")
            codes.append(code)
            lengths.append(n)
            code += 1
        code <<= 1
    return codes, lengths


def build_decode_tables(counts, symbols):
    """16-bit prefix lookup tables: prefix -> (symbol, code length).

    Length 0 marks prefixes that begin no valid code.
    """
    codes, lengths = canonical_codes(counts, symbols)
    sym = np.zeros(1 << 16, dtype=np.int32)
    ln = np.zeros(1 << 16, dtype=np.int32)
    for s, c, n in zip(symbols, codes, lengths):
        lo = c << (16 - n)
        hi = lo + (1 << (16 - n))
        sym[lo:hi] = s
        ln[lo:hi] = n
    return sym.tolist(), ln.tolist()
