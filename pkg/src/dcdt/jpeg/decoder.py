"""Baseline sequential JPEG parser (grayscale, Huffman-coded).

Undoes entropy coding, DC prediction, and zig-zag ordering; coefficients
are returned exactly as quantized in the stream.  Arbitrary input bytes
either parse or raise a JpegError subclass.
"""

import numpy as np

from ..errors import (
    InvalidHuffmanCodeError,
    MalformedMarkerError,
    TruncatedStreamError,
    UnsupportedFeatureError,
)
from . import format as fmt
from .image import HuffmanSpec, JpegImage


class _SegmentReader:
    """Big-endian byte reads over the marker segment stream."""

    __slots__ = ("data", "pos")

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def u8(self) -> int:
        if self.pos >= len(self.data):
            raise TruncatedStreamError("unexpected end of stream")
        b = self.data[self.pos]
        self.pos += 1
        return b

    def u16(self) -> int:
        return (self.u8() << 8) | self.u8()

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise TruncatedStreamError("unexpected end of stream")
        b = self.data[self.pos : self.pos + n]
        self.pos += n
        return b


class _EntropyReader:
    """MSB-first bit reader over an entropy-coded segment.

    Removes 0xFF00 byte stuffing and stops at any real marker.  `bitbuf`
    holds exactly `bitcnt` valid low bits.
    """

    __slots__ = ("data", "pos", "bitbuf", "bitcnt", "at_marker", "marker_pos")

    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos
        self.bitbuf = 0
        self.bitcnt = 0
        self.at_marker = False
        self.marker_pos = -1

    def _fill(self) -> None:
        data = self.data
        n = len(data)
        while self.bitcnt <= 48:
            pos = self.pos
            if pos >= n:
                return
            b = data[pos]
            if b == 0xFF:
                if pos + 1 >= n:
                    # lone trailing 0xFF: treat as end of data
                    self.pos = n
                    return
                if data[pos + 1] == 0x00:
                    self.pos = pos + 2
                else:
                    self.at_marker = True
                    self.marker_pos = pos
                    return
            else:
                self.pos = pos + 1
            self.bitbuf = (self.bitbuf << 8) | b
            self.bitcnt += 8

    def decode(self, sym_lut, len_lut) -> int:
        """Decode one Huffman symbol via the 16-bit prefix tables."""
        if self.bitcnt < 16:
            self._fill()
        cnt = self.bitcnt
        if cnt >= 16:
            prefix = (self.bitbuf >> (cnt - 16)) & 0xFFFF
        else:
            prefix = (self.bitbuf << (16 - cnt)) & 0xFFFF
        n = len_lut[prefix]
        if n == 0:
            raise InvalidHuffmanCodeError("undecodable huffman prefix")
        if n > cnt:
            raise TruncatedStreamError("entropy-coded segment ended mid-code")
        self.bitcnt = cnt - n
        self.bitbuf &= (1 << self.bitcnt) - 1
        return sym_lut[prefix]

    def receive(self, n: int) -> int:
        """Read n raw bits (the magnitude bits following a symbol)."""
        if self.bitcnt < n:
            self._fill()
            if self.bitcnt < n:
                raise TruncatedStreamError("entropy-coded segment ended mid-value")
        self.bitcnt -= n
        v = (self.bitbuf >> self.bitcnt) & ((1 << n) - 1)
        self.bitbuf &= (1 << self.bitcnt) - 1
        return v

    def sync_restart(self, index: int) -> None:
        """Consume pad bits plus the expected RSTn marker."""
        if self.bitcnt >= 8:
            raise MalformedMarkerError("restart marker not byte-aligned")
        self.bitbuf = 0
        self.bitcnt = 0
        if not self.at_marker:
            self._fill()
        if not self.at_marker:
            raise TruncatedStreamError("missing restart marker")
        pos = self.marker_pos
        marker = self.data[pos + 1]
        if marker != fmt.RST0 + (index & 7):
            raise MalformedMarkerError(
                f"expected RST{index & 7}, found marker 0x{marker:02X}"
            )
        self.pos = pos + 2
        self.at_marker = False
        self.marker_pos = -1


def _extend(v: int, n: int) -> int:
    """Map n received magnitude bits to a signed value (T.81 EXTEND)."""
    if v < (1 << (n - 1)):
        return v - (1 << n) + 1
    return v


class _ParseState:
    def __init__(self, max_pixels: int):
        self.max_pixels = max_pixels
        self.quant = {}  # id -> np.ndarray (8,8) natural order
        self.dc_specs = {}
        self.ac_specs = {}
        self.restart_interval = 0
        self.width = None
        self.height = None
        self.component_tq = None


def _parse_dqt(seg: bytes, state: _ParseState) -> None:
    r = _SegmentReader(seg)
    while r.pos < len(seg):
        pq_tq = r.u8()
        pq, tq = pq_tq >> 4, pq_tq & 0x0F
        if pq not in (0, 1):
            raise MalformedMarkerError(f"bad quantization precision {pq}")
        if tq > 3:
            raise MalformedMarkerError(f"bad quantization table id {tq}")
        vals = [r.u16() if pq else r.u8() for _ in range(64)]
        if min(vals) < 1:
            raise MalformedMarkerError("zero quantization step")
        table = np.zeros((8, 8), dtype=np.int32)
        flat = table.reshape(64)
        for natural, zz in enumerate(fmt.ZIGZAG_OF_NATURAL):
            flat[natural] = vals[zz]
        state.quant[tq] = table
    if r.pos != len(seg):
        raise MalformedMarkerError("DQT payload length mismatch")


def _parse_dht(seg: bytes, state: _ParseState) -> None:
    r = _SegmentReader(seg)
    while r.pos < len(seg):
        tc_th = r.u8()
        tc, th = tc_th >> 4, tc_th & 0x0F
        if tc not in (0, 1):
            raise MalformedMarkerError(f"bad huffman table class {tc}")
        if th > 3:
            raise MalformedMarkerError(f"bad huffman table id {th}")
        counts = [r.u8() for _ in range(16)]
        total = sum(counts)
        if total > 256:
            raise MalformedMarkerError("huffman table with more than 256 codes")
        symbols = list(r.take(total))
        spec = HuffmanSpec(tuple(counts), tuple(symbols))
        (state.dc_specs if tc == 0 else state.ac_specs)[th] = spec
    if r.pos != len(seg):
        raise MalformedMarkerError("DHT payload length mismatch")


def _parse_sof0(seg: bytes, state: _ParseState) -> None:
    if state.width is not None:
        raise MalformedMarkerError("duplicate frame header")
    r = _SegmentReader(seg)
    precision = r.u8()
    height = r.u16()
    width = r.u16()
    ncomp = r.u8()
    if precision != 8:
        raise UnsupportedFeatureError(f"{precision}-bit sample precision")
    if ncomp != 1:
        raise UnsupportedFeatureError(f"{ncomp}-component (non-grayscale) image")
    if width == 0 or height == 0:
        raise MalformedMarkerError("zero frame dimension")
    if width * height > state.max_pixels:
        raise UnsupportedFeatureError(
            f"frame of {width}x{height} pixels exceeds the {state.max_pixels}-pixel limit"
        )
    r.u8()  # component id
    r.u8()  # sampling factors (irrelevant in a single-component scan)
    tq = r.u8()
    if tq > 3:
        raise MalformedMarkerError(f"bad quantization table selector {tq}")
    if r.pos != len(seg):
        raise MalformedMarkerError("SOF0 payload length mismatch")
    state.width = width
    state.height = height
    state.component_tq = tq


def _parse_sos_header(seg: bytes, state: _ParseState) -> tuple[int, int]:
    if state.width is None:
        raise MalformedMarkerError("SOS before frame header")
    r = _SegmentReader(seg)
    ns = r.u8()
    if ns != 1:
        raise MalformedMarkerError(f"expected single-component scan, got {ns}")
    r.u8()  # component selector
    td_ta = r.u8()
    td, ta = td_ta >> 4, td_ta & 0x0F
    ss = r.u8()
    se = r.u8()
    ahal = r.u8()
    if (ss, se, ahal) != (0, 63, 0):
        raise MalformedMarkerError("non-sequential scan parameters in SOF0 frame")
    if r.pos != len(seg):
        raise MalformedMarkerError("SOS payload length mismatch")
    if td not in state.dc_specs:
        raise MalformedMarkerError(f"scan references undefined DC table {td}")
    if ta not in state.ac_specs:
        raise MalformedMarkerError(f"scan references undefined AC table {ta}")
    if state.component_tq not in state.quant:
        raise MalformedMarkerError(
            f"frame references undefined quantization table {state.component_tq}"
        )
    return td, ta


def _decode_scan(data: bytes, pos: int, state: _ParseState, td: int, ta: int):
    """Decode all blocks of the single non-interleaved scan.

    Returns (zigzag coefficient list, position after the scan data).
    """
    dc_sym, dc_len = fmt.build_decode_tables(
        state.dc_specs[td].counts, state.dc_specs[td].symbols
    )
    ac_sym, ac_len = fmt.build_decode_tables(
        state.ac_specs[ta].counts, state.ac_specs[ta].symbols
    )
    block_rows = (state.height + 7) // 8
    block_cols = (state.width + 7) // 8
    nblocks = block_rows * block_cols
    out = [0] * (nblocks * 64)

    er = _EntropyReader(data, pos)
    interval = state.restart_interval
    pred = 0
    for blk in range(nblocks):
        if interval and blk and blk % interval == 0:
            er.sync_restart((blk // interval) - 1)
            pred = 0
        base = blk * 64
        # DC coefficient
        s = er.decode(dc_sym, dc_len)
        if s > 11:
            raise InvalidHuffmanCodeError(f"DC category {s} exceeds baseline range")
        if s:
            pred += _extend(er.receive(s), s)
            if not (fmt.COEFF_STORE_MIN <= pred <= fmt.COEFF_STORE_MAX):
                raise InvalidHuffmanCodeError("DC prediction left 12-bit range")
        out[base] = pred
        # AC coefficients
        k = 1
        while k < 64:
            rs = er.decode(ac_sym, ac_len)
            run, s = rs >> 4, rs & 0x0F
            if s == 0:
                if run == 0:  # EOB
                    break
                if run == 15:  # ZRL
                    k += 16
                    if k > 64:
                        raise InvalidHuffmanCodeError("ZRL ran past block end")
                    continue
                raise InvalidHuffmanCodeError(f"bad AC symbol 0x{rs:02X}")
            if s > 10:
                raise InvalidHuffmanCodeError(f"AC category {s} exceeds baseline range")
            k += run
            if k > 63:
                raise InvalidHuffmanCodeError("AC run past block end")
            out[base + k] = _extend(er.receive(s), s)
            k += 1
    end = er.marker_pos if er.at_marker else er.pos
    return out, end


def _natural_coeffs(zz: list, block_rows: int, block_cols: int) -> np.ndarray:
    arr = np.asarray(zz, dtype=np.int32).reshape(block_rows * block_cols, 64)
    natural = arr[:, fmt.ZIGZAG_OF_NATURAL]
    return natural.reshape(block_rows, block_cols, 8, 8)


def parse_jpeg(data: bytes, max_pixels: int = fmt.DEFAULT_MAX_PIXELS) -> JpegImage:
    """Parse a baseline sequential grayscale JPEG into coefficient form."""
    if not isinstance(data, (bytes, bytearray, memoryview)):
        raise TypeError("parse_jpeg expects a bytes-like object")
    data = bytes(data)
    if len(data) < 2 or data[0] != 0xFF or data[1] != fmt.SOI:
        raise MalformedMarkerError("missing SOI marker")

    state = _ParseState(max_pixels)
    r = _SegmentReader(data, 2)
    while True:
        b = r.u8()
        if b != 0xFF:
            raise MalformedMarkerError(f"expected marker, found byte 0x{b:02X}")
        marker = r.u8()
        while marker == 0xFF:  # optional fill bytes
            marker = r.u8()

        if marker == fmt.SOI:
            raise MalformedMarkerError("unexpected nested SOI")
        if marker == fmt.EOI:
            raise MalformedMarkerError("EOI before any scan")
        if marker == fmt.TEM or fmt.RST0 <= marker <= fmt.RST0 + 7:
            raise MalformedMarkerError(f"standalone marker 0x{marker:02X} outside scan")
        if marker in fmt.SOF_CODES and marker != fmt.SOF0:
            raise UnsupportedFeatureError(
                f"non-baseline frame type SOF{marker - 0xC0}"
            )
        if marker == fmt.DAC:
            raise UnsupportedFeatureError("arithmetic coding")

        length = r.u16()
        if length < 2:
            raise MalformedMarkerError("segment length below 2")
        seg = r.take(length - 2)

        if marker == fmt.DQT:
            _parse_dqt(seg, state)
        elif marker == fmt.DHT:
            _parse_dht(seg, state)
        elif marker == fmt.DRI:
            if len(seg) != 2:
                raise MalformedMarkerError("DRI payload length mismatch")
            state.restart_interval = (seg[0] << 8) | seg[1]
        elif marker == fmt.SOF0:
            _parse_sof0(seg, state)
        elif marker == fmt.SOS:
            td, ta = _parse_sos_header(seg, state)
            zz, _ = _decode_scan(data, r.pos, state, td, ta)
            block_rows = (state.height + 7) // 8
            block_cols = (state.width + 7) // 8
            image = JpegImage(
                width=state.width,
                height=state.height,
                quant_table=state.quant[state.component_tq].copy(),
                coeffs=_natural_coeffs(zz, block_rows, block_cols),
                dc_tables=dict(state.dc_specs),
                ac_tables=dict(state.ac_specs),
                restart_interval=state.restart_interval,
            )
            image.validate()
            return image
        # APPn, COM, DNL, and other length-carrying segments are skipped.
