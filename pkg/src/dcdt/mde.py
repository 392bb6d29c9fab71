"""Mutually dependent embedding extension.

Within one block, simultaneous coefficient changes interfere in the
spatial domain; the per-block cost of a candidate ternary pattern t is

    rho_k = sum_ij d_k(i, j)**p * |s_k(i, j)|,   s_k = A^T (t . q) A.

The trial map's nonzero signs are re-chosen per block by exhaustive
enumeration (2^n_k candidates, skipped above a threshold), and the
resulting map steers a directional cost update rho/v vs rho*v used by a
secondary embedding pass.
"""

from dataclasses import dataclass, field

import numpy as np

from .dct import build_basis
from .simulator import JpegCostMap


@dataclass(frozen=True)
class MdeConfig:
    T: int = 10
    v: float = 10.0

    def __post_init__(self):
        if self.T < 0:
            raise ValueError("candidate threshold T must be non-negative")
        if not self.v > 1:
            raise ValueError("penalty factor v must exceed 1")


@dataclass
class OptimizedMap:
    """Sign-optimized modification map plus the blocks left untouched."""

    m_prime: np.ndarray
    skipped_blocks: list = field(default_factory=list)


def _candidate_costs(
    t_stack: np.ndarray, powered_costs: np.ndarray, quant_table: np.ndarray
) -> np.ndarray:
    """Costs of stacked candidates (n, 8, 8) against d**p for one block."""
    basis = build_basis()
    x = t_stack.astype(np.float64) * np.asarray(quant_table, dtype=np.float64)
    s = basis.T @ x @ basis
    return np.abs(s).reshape(len(t_stack), 64) @ powered_costs.reshape(64)


def candidate_cost(
    t: np.ndarray, d_block: np.ndarray, quant_table: np.ndarray, p: float
) -> float:
    """Cost of one candidate pattern for a block with spatial costs d_block."""
    dp = np.asarray(d_block, dtype=np.float64) ** p
    return float(_candidate_costs(np.asarray(t)[None], dp, quant_table)[0])


def _sign_stack(n: int) -> np.ndarray:
    """All 2^n sign vectors as a binary counter: bit j of candidate c
    drives support position j (0 -> +1, 1 -> -1)."""
    counters = np.arange(1 << n, dtype=np.int64)
    bits = (counters[:, None] >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int32)


def optimize_block(
    m_k: np.ndarray,
    d_block: np.ndarray,
    quant_table: np.ndarray,
    p: float,
    T: int = 10,
) -> np.ndarray:
    """Minimum-cost sign reassignment over the support of m_k.

    Blocks with no changes or more than T changes are returned unchanged.
    Ties prefer the trial pattern, then the lexicographically smallest
    sign vector in row-major support order.
    """
    m_k = np.asarray(m_k, dtype=np.int32)
    support = np.argwhere(m_k != 0)
    n = len(support)
    if n == 0 or n > T:
        return m_k.copy()

    signs = _sign_stack(n)
    stack = np.zeros((1 << n, 8, 8), dtype=np.int32)
    rows, cols = support[:, 0], support[:, 1]
    stack[:, rows, cols] = signs

    dp = np.asarray(d_block, dtype=np.float64) ** p
    costs = _candidate_costs(stack, dp, quant_table)

    best = costs.min()
    tied = np.flatnonzero(costs == best)
    trial_signs = m_k[rows, cols]
    trial_index = int(((trial_signs < 0).astype(np.int64) << np.arange(n)).sum())
    if trial_index in tied:
        choice = trial_index
    else:
        choice = min(tied, key=lambda i: tuple(signs[i]))
    return stack[choice]


def optimize_map(
    m: np.ndarray,
    costs: np.ndarray,
    quant_table: np.ndarray,
    p: float,
    T: int = 10,
) -> OptimizedMap:
    """Per-block sign optimization over the whole map.

    `costs` is the spatial cost map covering the padded block grid.
    """
    bh, bw = m.shape[:2]
    out = np.empty_like(m, dtype=np.int32)
    skipped = []
    for bm in range(bh):
        for bn in range(bw):
            block = m[bm, bn]
            n_k = int(np.count_nonzero(block))
            if n_k == 0:
                out[bm, bn] = block
                continue
            if n_k > T:
                out[bm, bn] = block
                skipped.append((bm, bn))
                continue
            d_block = costs[8 * bm : 8 * bm + 8, 8 * bn : 8 * bn + 8]
            out[bm, bn] = optimize_block(block, d_block, quant_table, p, T)
    return OptimizedMap(out, skipped)


def update_costs(rho: np.ndarray, optimized: OptimizedMap, v: float) -> JpegCostMap:
    """Directional cost update steered by the optimized map.

    Where m' = +1: rho+ = rho/v, rho- = rho*v; mirrored for -1; unchanged
    where m' = 0 and on skipped blocks.
    """
    if not v > 1:
        raise ValueError("penalty factor v must exceed 1")
    rho = np.asarray(rho, dtype=np.float64)
    m = optimized.m_prime.copy()
    for bm, bn in optimized.skipped_blocks:
        m[bm, bn] = 0
    rp = np.where(m == 1, rho / v, np.where(m == -1, rho * v, rho))
    rm = np.where(m == -1, rho / v, np.where(m == 1, rho * v, rho))
    return JpegCostMap(rp, rm)
