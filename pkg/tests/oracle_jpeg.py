"""Independent naive baseline JPEG decoder used as a test oracle.

Bit-at-a-time tree-walk Huffman decoding over a dict of canonical codes;
deliberately shares no code with the package decoder.  Handles exactly
the subset the corpus exercises (grayscale SOF0, optional restarts).
"""

import numpy as np

ZIGZAG = [
    0, 1, 8, 16, 9, 2, 3, 10,
    17, 24, 32, 25, 18, 11, 4, 5,
    12, 19, 26, 33, 40, 48, 41, 34,
    27, 20, 13, 6, 7, 14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36,
    29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46,
    53, 60, 61, 54, 47, 55, 62, 63,
]  # natural index of the k-th zig-zag position


def _codes(counts, symbols):
    table = {}
    code = 0
    k = 0
    for n in range(1, 17):
        for _ in range(counts[n - 1]):
            table[(n, code)] = symbols[k]
            code += 1
            k += 1
        code <<= 1
    return table


class _Bits:
    def __init__(self, data, pos):
        self.data = data
        self.pos = pos
        self.cur = 0
        self.n = 0

    def bit(self):
        if self.n == 0:
            b = self.data[self.pos]
            if b == 0xFF:
                assert self.data[self.pos + 1] == 0x00, "marker inside entropy data"
                self.pos += 2
            else:
                self.pos += 1
            self.cur = b
            self.n = 8
        self.n -= 1
        return (self.cur >> self.n) & 1

    def bits(self, count):
        v = 0
        for _ in range(count):
            v = (v << 1) | self.bit()
        return v

    def symbol(self, table):
        code = 0
        for n in range(1, 17):
            code = (code << 1) | self.bit()
            if (n, code) in table:
                return table[(n, code)]
        raise AssertionError("undecodable code")

    def restart(self, idx):
        self.n = 0
        assert self.data[self.pos] == 0xFF
        assert self.data[self.pos + 1] == 0xD0 + (idx & 7)
        self.pos += 2


def _extend(v, n):
    return v if v >= (1 << (n - 1)) else v - (1 << n) + 1


def decode(data):
    """Return (width, height, quant 8x8, coeffs (bh, bw, 8, 8))."""
    assert data[0] == 0xFF and data[1] == 0xD8
    pos = 2
    quant = {}
    huff = {}
    restart = 0
    width = height = tq = None
    while True:
        assert data[pos] == 0xFF
        marker = data[pos + 1]
        pos += 2
        if marker == 0xD9:
            raise AssertionError("EOI before scan")
        length = (data[pos] << 8) | data[pos + 1]
        body = data[pos + 2 : pos + length]
        pos += length
        if marker == 0xDB:
            i = 0
            while i < len(body):
                pq, t = body[i] >> 4, body[i] & 15
                i += 1
                vals = []
                for _ in range(64):
                    if pq:
                        vals.append((body[i] << 8) | body[i + 1])
                        i += 2
                    else:
                        vals.append(body[i])
                        i += 1
                q = np.zeros(64, dtype=np.int64)
                for k, nat in enumerate(ZIGZAG):
                    q[nat] = vals[k]
                quant[t] = q.reshape(8, 8)
        elif marker == 0xC4:
            i = 0
            while i < len(body):
                cls, t = body[i] >> 4, body[i] & 15
                counts = list(body[i + 1 : i + 17])
                total = sum(counts)
                symbols = list(body[i + 17 : i + 17 + total])
                huff[(cls, t)] = _codes(counts, symbols)
                i += 17 + total
        elif marker == 0xDD:
            restart = (body[0] << 8) | body[1]
        elif marker == 0xC0:
            assert body[0] == 8 and body[5] == 1
            height = (body[1] << 8) | body[2]
            width = (body[3] << 8) | body[4]
            tq = body[8]
        elif marker == 0xDA:
            td, ta = body[2] >> 4, body[2] & 15
            break
    bh, bw = (height + 7) // 8, (width + 7) // 8
    dc, ac = huff[(0, td)], huff[(1, ta)]
    bits = _Bits(data, pos)
    coeffs = np.zeros((bh * bw, 64), dtype=np.int64)
    pred = 0
    for blk in range(bh * bw):
        if restart and blk and blk % restart == 0:
            bits.restart(blk // restart - 1)
            pred = 0
        s = bits.symbol(dc)
        if s:
            pred += _extend(bits.bits(s), s)
        coeffs[blk, 0] = pred
        k = 1
        while k < 64:
            rs = bits.symbol(ac)
            run, s = rs >> 4, rs & 15
            if s == 0:
                if run == 0:
                    break
                assert run == 15
                k += 16
                continue
            k += run
            coeffs[blk, ZIGZAG[k]] = _extend(bits.bits(s), s)
            k += 1
    return width, height, quant[tq], coeffs.reshape(bh, bw, 8, 8)
