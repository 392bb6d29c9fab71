"""Analytical instruments: rank correlation of block embedding costs and
per-mode modification histograms."""

from dataclasses import dataclass

import numpy as np

from .rng import uniform_stream


@dataclass
class BlockCostVector:
    """Per-block embedding costs in block-raster order."""

    values: np.ndarray
    label: str = ""


@dataclass
class ModeHistogram:
    counts: np.ndarray  # (8, 8) nonzero-change counts per mode
    total: int

    @property
    def percentages(self) -> np.ndarray:
        if self.total == 0:
            return np.zeros((8, 8), dtype=np.float64)
        return 100.0 * self.counts / self.total


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Fractional ranks (1-based); ties receive their average rank."""
    values = np.asarray(values, dtype=np.float64)
    uniq, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    avg = starts + (counts + 1) / 2.0
    return avg[inverse]


def spearman(x, y) -> float:
    """Rank correlation with average-rank tie handling."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("inputs must be 1-D sequences of equal length")
    if len(x) < 2:
        raise ValueError("need at least two observations")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    vx = float((dx * dx).sum())
    vy = float((dy * dy).sum())
    if vx == 0.0 or vy == 0.0:
        raise ValueError("constant input has no rank variance")
    return float((dx * dy).sum() / np.sqrt(vx * vy))


def random_block_costs(n: int, seed: int, label: str = "Rand") -> BlockCostVector:
    """n independent uniform (0, 1] draws from the pinned stream."""
    if n < 1:
        raise ValueError("n must be positive")
    values = 1.0 - uniform_stream(seed, n)
    return BlockCostVector(values, label)


def mode_histogram(m: np.ndarray) -> ModeHistogram:
    """Nonzero-change counts per DCT mode across all blocks."""
    m = np.asarray(m)
    counts = np.count_nonzero(m.reshape(-1, 8, 8), axis=0)
    return ModeHistogram(counts.astype(np.int64), int(counts.sum()))


def histogram_from_entries(entries) -> ModeHistogram:
    """Histogram from sparse (block_row, block_col, a, b, change) tuples."""
    counts = np.zeros((8, 8), dtype=np.int64)
    for _, _, a, b, change in entries:
        if change != 0:
            counts[a, b] += 1
    return ModeHistogram(counts, int(counts.sum()))


def save_block_costs_csv(vector: BlockCostVector, path) -> None:
    with open(path, "w") as fh:
        for v in vector.values:
            fh.write(f"{float(v)!r}\n")


def load_block_costs_csv(path) -> BlockCostVector:
    values = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            values.append(float(line))
    return BlockCostVector(np.asarray(values, dtype=np.float64))


def save_histogram_csv(hist: ModeHistogram, path) -> None:
    pct = hist.percentages
    with open(path, "w") as fh:
        fh.write("mode_row,mode_col,count,percentage\n")
        for a in range(8):
            for b in range(8):
                fh.write(f"{a},{b},{hist.counts[a, b]},{pct[a, b]!r}\n")
