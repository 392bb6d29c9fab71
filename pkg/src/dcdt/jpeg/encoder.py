"""Baseline grayscale JPEG writer.

Re-serializes a JpegImage with per-image optimal Huffman tables (T.81
Annex K code-length procedure).  The quantization table and coefficients
are preserved exactly; byte-level layout is not part of the contract.
"""

import numpy as np

from ..errors import CoefficientRangeError
from . import format as fmt
from .image import JpegImage


class _BitWriter:
    """MSB-first bit emitter with 0xFF00 byte stuffing."""

    __slots__ = ("out", "acc", "nbits")

    def __init__(self):
        self.out = bytearray()
        self.acc = 0
        self.nbits = 0

    def put(self, code: int, n: int) -> None:
        self.acc = (self.acc << n) | code
        self.nbits += n
        while self.nbits >= 8:
            self.nbits -= 8
            byte = (self.acc >> self.nbits) & 0xFF
            self.out.append(byte)
            if byte == 0xFF:
                self.out.append(0x00)
        self.acc &= (1 << self.nbits) - 1

    def finish(self) -> bytes:
        if self.nbits:
            pad = 8 - self.nbits
            self.put((1 << pad) - 1, pad)
        return bytes(self.out)


def _optimal_table(freq: np.ndarray) -> tuple[list, list]:
    """Code-length-limited optimal Huffman table (T.81 Annex K / K.2).

    `freq` has 256 entries; a reserved 257th pseudo-symbol guarantees no
    real symbol receives the all-ones code.  Returns (counts16, symbols).
    """
    freq = np.concatenate([freq.astype(np.int64), [1]])
    codesize = np.zeros(257, dtype=np.int64)
    others = np.full(257, -1, dtype=np.int64)

    while True:
        nz = np.flatnonzero(freq)
        if len(nz) <= 1:
            break
        # least frequency, ties resolved toward the largest symbol value
        order = nz[np.lexsort((-nz, freq[nz]))]
        v1, v2 = int(order[0]), int(order[1])
        freq[v1] += freq[v2]
        freq[v2] = 0
        codesize[v1] += 1
        while others[v1] != -1:
            v1 = others[v1]
            codesize[v1] += 1
        others[v1] = v2
        codesize[v2] += 1
        while others[v2] != -1:
            v2 = others[v2]
            codesize[v2] += 1

    bits = np.zeros(33, dtype=np.int64)
    for size in codesize[codesize > 0]:
        bits[min(int(size), 32)] += 1

    # limit code lengths to 16 bits (Annex K adjust procedure)
    for i in range(32, 16, -1):
        while bits[i] > 0:
            j = i - 2
            while bits[j] == 0:
                j -= 1
            bits[i] -= 2
            bits[i - 1] += 1
            bits[j + 1] += 2
            bits[j] -= 1
    i = 16
    while bits[i] == 0:
        i -= 1
    bits[i] -= 1  # drop the reserved pseudo-symbol's code

    # symbols ordered by pre-adjustment code size; the adjusted histogram
    # assigns their final lengths positionally
    symbols = []
    for size in range(1, 33):
        for sym in range(256):
            if codesize[sym] == size:
                symbols.append(sym)
    counts = [0] * 16
    for size in range(1, 17):
        counts[size - 1] = int(bits[size])
    return counts, symbols


def _code_arrays(counts, symbols):
    codes, lengths = fmt.canonical_codes(counts, symbols)
    code_of = [0] * 256
    len_of = [0] * 256
    for s, c, n in zip(symbols, codes, lengths):
        code_of[s] = c
        len_of[s] = n
    return code_of, len_of


def _magnitude(v: int) -> int:
    return abs(v).bit_length()


def _block_symbols(zz: list, diff: int):
    """Yield (symbol, extra_value, extra_bits) for one block in zig-zag order."""
    s = _magnitude(diff)
    yield s, (diff if diff >= 0 else diff + (1 << s) - 1), s
    run = 0
    for k in range(1, 64):
        v = zz[k]
        if v == 0:
            run += 1
            continue
        while run >= 16:
            yield 0xF0, 0, 0  # ZRL
            run -= 16
        s = _magnitude(v)
        yield (run << 4) | s, (v if v >= 0 else v + (1 << s) - 1), s
        run = 0
    if run:
        yield 0x00, 0, 0  # EOB


def _segment(marker: int, payload: bytes) -> bytes:
    return bytes([0xFF, marker]) + (len(payload) + 2).to_bytes(2, "big") + payload


def serialize_jpeg(image: JpegImage) -> bytes:
    """Emit a standards-conformant baseline JPEG for `image`."""
    image.validate()
    coeffs = np.asarray(image.coeffs, dtype=np.int64)
    nblocks = image.block_rows * image.block_cols
    zz = coeffs.reshape(nblocks, 64)[:, fmt.NATURAL_OF_ZIGZAG]

    ac = zz[:, 1:]
    if ac.size and (ac.min() < fmt.AC_MIN or ac.max() > fmt.AC_MAX):
        raise CoefficientRangeError("AC coefficient outside the 10-bit baseline range")
    dc = zz[:, 0]
    diffs = np.diff(dc, prepend=0)
    if np.abs(diffs).max(initial=0) > fmt.MAX_DC_DIFF:
        raise CoefficientRangeError("DC differential outside the 11-bit baseline range")

    zz_list = zz.tolist()
    diff_list = diffs.tolist()

    dc_freq = np.zeros(256, dtype=np.int64)
    ac_freq = np.zeros(256, dtype=np.int64)
    for blk in range(nblocks):
        gen = _block_symbols(zz_list[blk], diff_list[blk])
        sym, _, _ = next(gen)
        dc_freq[sym] += 1
        for sym, _, _ in gen:
            ac_freq[sym] += 1

    dc_counts, dc_symbols = _optimal_table(dc_freq)
    ac_counts, ac_symbols = _optimal_table(ac_freq)
    dc_code, dc_len = _code_arrays(dc_counts, dc_symbols)
    ac_code, ac_len = _code_arrays(ac_counts, ac_symbols)

    w = _BitWriter()
    for blk in range(nblocks):
        gen = _block_symbols(zz_list[blk], diff_list[blk])
        sym, extra, nbits = next(gen)
        w.put(dc_code[sym], dc_len[sym])
        if nbits:
            w.put(extra, nbits)
        for sym, extra, nbits in gen:
            w.put(ac_code[sym], ac_len[sym])
            if nbits:
                w.put(extra, nbits)
    entropy = w.finish()

    quant = np.asarray(image.quant_table, dtype=np.int64)
    pq = 1 if quant.max() > 255 else 0
    qzz = quant.reshape(64)[list(fmt.NATURAL_OF_ZIGZAG)]
    qbytes = b"".join(int(v).to_bytes(2 if pq else 1, "big") for v in qzz)

    out = bytearray()
    out += bytes([0xFF, fmt.SOI])
    out += _segment(fmt.APP0, b"JFIF\x00\x01\x01\x00\x00\x01\x00\x01\x00\x00")
    out += _segment(fmt.DQT, bytes([pq << 4]) + qbytes)
    sof = bytes([8]) + image.height.to_bytes(2, "big") + image.width.to_bytes(2, "big")
    sof += bytes([1, 1, 0x11, 0])
    out += _segment(fmt.SOF0, sof)
    out += _segment(fmt.DHT, bytes([0x00]) + bytes(dc_counts) + bytes(dc_symbols))
    out += _segment(fmt.DHT, bytes([0x10]) + bytes(ac_counts) + bytes(ac_symbols))
    out += _segment(fmt.SOS, bytes([1, 1, 0x00, 0, 63, 0]))
    out += entropy
    out += bytes([0xFF, fmt.EOI])
    return bytes(out)
