"""End-to-end embedding: decompress, spatial costs, cost transformation,
simulation, and the optional mutually-dependent extension."""

import math
from dataclasses import dataclass

import numpy as np

from .dct import decompress
from .jpeg.image import JpegImage, count_nonzero_ac
from .mde import OptimizedMap, optimize_map, update_costs
from .rng import child_seed
from .simulator import (
    ChangeProbabilities,
    EmbedConfig,
    JpegCostMap,
    apply_map,
    change_probs,
    payload_bits,
    simulate,
    solve_lambda,
    total_entropy,
    wet_guard,
)
from .spatial_cost import hill_cost
from .transform import dcdt_cost


@dataclass
class EmbedResult:
    stego: JpegImage
    map: np.ndarray
    lam: float
    entropy_bits: float
    target_bits: float
    nonzero_ac: int
    change_count: int
    skipped_blocks: int = 0


def compute_cost_map(
    image: JpegImage, p: float, spatial_cost_fn=hill_cost
) -> tuple[np.ndarray, np.ndarray]:
    """(spatial cost map, symmetric per-coefficient costs) for a cover."""
    pixels = decompress(image)
    d = spatial_cost_fn(pixels)
    rho = dcdt_cost(d, image.quant_table, p)
    return d, rho


def _simulate_stage(
    costs: JpegCostMap, target_bits: float, tol: float, wet_cost: float, seed: int
) -> tuple[np.ndarray, float, float]:
    lam = solve_lambda(costs, target_bits, tol=tol, wet_cost=wet_cost)
    probs = change_probs(costs, lam)
    return simulate(probs, seed), lam, total_entropy(probs)


def embed(
    image: JpegImage, config: EmbedConfig, spatial_cost_fn=hill_cost
) -> EmbedResult:
    """Simulate payload-limited embedding; returns the stego image, the
    applied modification map, and the realized operating point."""
    nnz = count_nonzero_ac(image)
    target = payload_bits(config.alpha, image)
    if target == 0:
        return EmbedResult(
            stego=image.copy(),
            map=np.zeros_like(image.coeffs, dtype=np.int32),
            lam=math.inf,
            entropy_bits=0.0,
            target_bits=0.0,
            nonzero_ac=nnz,
            change_count=0,
        )

    d, rho = compute_cost_map(image, config.p, spatial_cost_fn)
    guarded = wet_guard(JpegCostMap.symmetric(rho), image, config.wet_cost)
    trial_map, lam, entropy = _simulate_stage(
        guarded, target, config.lambda_tol, config.wet_cost, child_seed(config.seed, 0)
    )
    skipped = 0
    final_map = trial_map

    if config.mde:
        optimized = optimize_map(trial_map, d, image.quant_table, config.p, config.T)
        skipped = len(optimized.skipped_blocks)
        directional = update_costs(rho, optimized, config.v)
        directional = wet_guard(directional, image, config.wet_cost)
        final_map, lam, entropy = _simulate_stage(
            directional,
            target,
            config.lambda_tol,
            config.wet_cost,
            child_seed(config.seed, 1),
        )

    stego = apply_map(image, final_map)
    return EmbedResult(
        stego=stego,
        map=final_map,
        lam=lam,
        entropy_bits=entropy,
        target_bits=target,
        nonzero_ac=nnz,
        change_count=int(np.count_nonzero(final_map)),
        skipped_blocks=skipped,
    )


def mde_embed(
    image: JpegImage, config: EmbedConfig, spatial_cost_fn=hill_cost
) -> tuple[JpegImage, np.ndarray]:
    """Mutually-dependent pipeline: trial embedding, per-block map
    optimization, directional cost update, secondary embedding."""
    if not config.mde:
        raise ValueError("mde_embed requires config.mde = True")
    result = embed(image, config, spatial_cost_fn)
    return result.stego, result.map
