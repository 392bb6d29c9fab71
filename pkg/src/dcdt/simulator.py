"""Payload-limited optimal embedding simulation.

Change probabilities follow the Gibbs form of minimal-distortion
embedding: beta+- = exp(-lambda*rho+-) / (1 + exp(-lambda*rho+) +
exp(-lambda*rho-)).  lambda is solved so the ternary entropy of the
change distribution meets the payload, then changes are sampled from the
pinned deterministic stream.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CoefficientRangeError, DegenerateCostsError, TargetUnreachableError
from .jpeg.format import coefficient_bounds
from .jpeg.image import JpegImage, count_nonzero_ac
from .rng import uniform_stream

LOG2_3 = math.log2(3.0)
DEFAULT_WET_COST = 1e13


@dataclass
class JpegCostMap:
    """Per-coefficient costs; symmetric maps alias one array."""

    rho_plus: np.ndarray
    rho_minus: np.ndarray

    @classmethod
    def symmetric(cls, rho: np.ndarray) -> "JpegCostMap":
        return cls(rho, rho)

    @property
    def is_symmetric(self) -> bool:
        return self.rho_plus is self.rho_minus or np.array_equal(
            self.rho_plus, self.rho_minus
        )


@dataclass
class ChangeProbabilities:
    beta_plus: np.ndarray
    beta_minus: np.ndarray


@dataclass(frozen=True)
class EmbedConfig:
    """Everything that determines an embedding besides the cover itself."""

    alpha: float
    p: float
    seed: int = 0
    wet_cost: float = DEFAULT_WET_COST
    lambda_tol: float = 1e-3
    mde: bool = False
    T: int = 10
    v: float = 10.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= LOG2_3:
            raise ValueError(f"alpha {self.alpha} outside [0, log2(3)]")
        if not self.p > 0:
            raise ValueError("exponent p must be positive")
        if self.T < 0:
            raise ValueError("candidate threshold T must be non-negative")
        if not self.v > 1:
            raise ValueError("penalty factor v must exceed 1")


def payload_bits(alpha: float, image: JpegImage) -> float:
    """Payload in bits: alpha times the nonzero AC coefficient count."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    return alpha * count_nonzero_ac(image)


def wet_guard(
    costs: JpegCostMap, image: JpegImage, wet_cost: float = DEFAULT_WET_COST
) -> JpegCostMap:
    """Force wet cost on any change direction that would leave the
    representable coefficient range."""
    lo, hi = coefficient_bounds()
    rp = np.array(costs.rho_plus, dtype=np.float64, copy=True)
    rm = np.array(costs.rho_minus, dtype=np.float64, copy=True)
    rp[image.coeffs + 1 > hi] = wet_cost
    rm[image.coeffs - 1 < lo] = wet_cost
    return JpegCostMap(rp, rm)


def change_probs(costs: JpegCostMap, lam: float) -> ChangeProbabilities:
    if not lam > 0:
        raise ValueError("lambda must be positive")
    ep = np.exp(-lam * costs.rho_plus)
    em = np.exp(-lam * costs.rho_minus)
    z = 1.0 + ep + em
    return ChangeProbabilities(ep / z, em / z)


def _entropy_term(p: np.ndarray) -> float:
    mask = p > 0.0
    vals = p[mask]
    return float(-(vals * np.log2(vals)).sum())


def total_entropy(probs: ChangeProbabilities) -> float:
    """Ternary entropy of the change distribution, in bits."""
    bp, bm = probs.beta_plus, probs.beta_minus
    b0 = 1.0 - bp - bm
    return _entropy_term(bp) + _entropy_term(bm) + _entropy_term(b0)


def solve_lambda(
    costs: JpegCostMap,
    target_bits: float,
    tol: float = 1e-3,
    wet_cost: float = DEFAULT_WET_COST,
) -> float:
    """lambda whose realized entropy is within tol*target of the target.

    Brackets by doubling from lambda = 1, then bisects; entropy is a
    strictly decreasing function of lambda.  Dry costs are normalized by
    their median before the search (wet entries stay absolute), which
    keeps the starting bracket scale-appropriate and makes the solved
    lambda exactly covariant under power-of-two cost scalings.
    """
    if target_bits <= 0:
        raise ValueError("target_bits must be positive")
    dry_plus = costs.rho_plus < wet_cost
    dry_minus = costs.rho_minus < wet_cost
    n_dry = int(np.count_nonzero(dry_plus | dry_minus))
    if n_dry == 0:
        raise DegenerateCostsError("all coefficients are wet")
    capacity = n_dry * LOG2_3
    if target_bits >= capacity:
        raise TargetUnreachableError(
            f"target {target_bits} bits >= capacity {capacity} bits"
        )

    dry_vals = np.concatenate(
        [costs.rho_plus[dry_plus].ravel(), costs.rho_minus[dry_minus].ravel()]
    )
    scale = float(np.median(dry_vals))
    if not np.isfinite(scale) or scale <= 0.0:
        scale = 1.0
    normalized = JpegCostMap(
        np.where(dry_plus, costs.rho_plus / scale, costs.rho_plus),
        np.where(dry_minus, costs.rho_minus / scale, costs.rho_minus),
    )

    def realized(lam: float) -> float:
        return total_entropy(change_probs(normalized, lam))

    lo, hi = 0.0, 1.0
    h_hi = realized(hi)
    doublings = 0
    while h_hi > target_bits:
        lo, hi = hi, hi * 2.0
        h_hi = realized(hi)
        doublings += 1
        if doublings > 200:
            raise DegenerateCostsError("entropy does not decrease with lambda")

    lam = hi
    h = h_hi
    for _ in range(200):
        if abs(h - target_bits) <= tol * target_bits:
            return lam / scale
        lam = 0.5 * (lo + hi)
        h = realized(lam)
        if h > target_bits:
            lo = lam
        else:
            hi = lam
    if abs(h - target_bits) <= tol * target_bits:
        return lam / scale
    raise DegenerateCostsError("lambda bisection failed to meet the payload")


def simulate(probs: ChangeProbabilities, seed: int) -> np.ndarray:
    """Sample a ternary modification map from the pinned stream.

    Coefficients are visited in block-raster order, modes row-major; the
    i-th uniform draw u selects +1 when u < beta+, -1 when u <
    beta+ + beta-, else 0.
    """
    bp = probs.beta_plus
    u = uniform_stream(seed, bp.size).reshape(bp.shape)
    m = np.zeros(bp.shape, dtype=np.int32)
    m[u < bp] = 1
    m[(u >= bp) & (u < bp + probs.beta_minus)] = -1
    return m


def apply_map(image: JpegImage, m: np.ndarray) -> JpegImage:
    """Add the modification map to the coefficients; all else preserved."""
    if m.shape != image.coeffs.shape:
        raise ValueError(f"map shape {m.shape} != coeffs {image.coeffs.shape}")
    lo, hi = coefficient_bounds()
    stego_coeffs = image.coeffs + m.astype(image.coeffs.dtype)
    changed = m != 0
    if np.any((stego_coeffs > hi) & changed) or np.any((stego_coeffs < lo) & changed):
        raise CoefficientRangeError("modification overflows coefficient range")
    out = image.copy()
    out.coeffs = stego_coeffs
    return out


def save_map_csv(m: np.ndarray, path) -> None:
    """Export nonzero entries: block_row,block_col,mode_row,mode_col,change."""
    with open(path, "w") as fh:
        fh.write("block_row,block_col,mode_row,mode_col,change\n")
        for bm, bn, a, b in np.argwhere(m != 0):
            fh.write(f"{bm},{bn},{a},{b},{m[bm, bn, a, b]}\n")


def load_map_csv(path) -> list:
    """Read nonzero map entries back as (block_row, block_col, a, b, change)."""
    entries = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("block_row"):
                continue
            bm, bn, a, b, c = (int(x) for x in line.split(","))
            entries.append((bm, bn, a, b, c))
    return entries
