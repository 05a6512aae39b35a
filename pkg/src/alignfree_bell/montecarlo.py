"""Finite-shot simulation of the four setting-pair experiments.

Shots are drawn i.i.d. from the exact 16x16 outcome tables (the four
single-qubit measurements commute, so the joint distribution IS the
table; simulating sequential collapse would change nothing).  Blocks are
seeded independently by (seed, role, block index), so runs are
reproducible and blocks could be sampled concurrently.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .config import P_GG_TARGET, SCHEMA_VERSION
from .errors import InsufficientConditioningEvents
from .linalg import haar_su2
from .measurement import (
    CLASSIFIER_VALUES,
    F_FAMILY,
    G_FAMILY,
    IDENTITY_ROTATION,
    OutcomeTable,
    outcome_bits,
    setting_pair_tables,
)

ROTATION_POLICIES = ("identity", "fixed-random", "fresh-per-block")

PAIRS = (
    (F_FAMILY, F_FAMILY),
    (F_FAMILY, G_FAMILY),
    (G_FAMILY, F_FAMILY),
    (G_FAMILY, G_FAMILY),
)


@dataclass(frozen=True)
class ExperimentConfig:
    shots_per_setting_pair: int
    rotation_policy: str = "identity"
    block_size: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.shots_per_setting_pair < 1:
            raise ValueError("shots_per_setting_pair must be >= 1")
        if self.rotation_policy not in ROTATION_POLICIES:
            raise ValueError(f"rotation_policy must be one of {ROTATION_POLICIES}")
        if (
            self.rotation_policy == "fresh-per-block"
            and self.shots_per_setting_pair % self.block_size != 0
        ):
            raise ValueError("block_size must divide shots for fresh-per-block")

    def to_dict(self) -> dict:
        return {
            "shots_per_setting_pair": self.shots_per_setting_pair,
            "rotation_policy": self.rotation_policy,
            "block_size": self.block_size,
            "seed": self.seed,
        }


def sample_outcomes(table: OutcomeTable, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n outcome pairs; returns an (n, 2) array of (index_a, index_b).

    Inverse-CDF sampling over the 256 cells in fixed row-major order.
    """
    p = np.clip(table.p.reshape(256), 0.0, None)
    cdf = np.cumsum(p)
    cells = np.searchsorted(cdf / cdf[-1], rng.random(n), side="right")
    return np.column_stack([cells // 16, cells % 16])


def _block_plan(config: ExperimentConfig) -> list[int]:
    shots = config.shots_per_setting_pair
    if config.rotation_policy != "fresh-per-block":
        return [shots]
    return [config.block_size] * (shots // config.block_size)


def _rotation_quadruple(config: ExperimentConfig, block: int):
    if config.rotation_policy == "identity":
        return (IDENTITY_ROTATION,) * 4
    # fixed-random reuses the block-0 quadruple for every block
    index = 0 if config.rotation_policy == "fixed-random" else block
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((config.seed, 0, index))))
    return tuple(haar_su2(rng) for _ in range(4))


# Exact-zero cell masks per setting pair, from the three zero constraints.
def _zero_cell_mask(pair: tuple[str, str]) -> np.ndarray | None:
    fam_a, fam_b = pair
    va = CLASSIFIER_VALUES[fam_a]
    vb = CLASSIFIER_VALUES[fam_b]
    if pair == (F_FAMILY, F_FAMILY):
        return np.outer(va == 1, vb == 1)
    if pair == (F_FAMILY, G_FAMILY):
        return np.outer(va == -1, vb == 1)
    if pair == (G_FAMILY, F_FAMILY):
        return np.outer(va == 1, vb == -1)
    return None


def _wald(numerator: int, denominator: int, target: float) -> dict:
    estimate = numerator / denominator
    se = float(np.sqrt(estimate * (1.0 - estimate) / denominator))
    # z is scored against the spread under the target value; for exact
    # targets (0 or 1) any deviating count is an outright failure
    null_se = float(np.sqrt(target * (1.0 - target) / denominator))
    if null_se == 0.0:
        z = 0.0 if estimate == target else float("inf")
    else:
        z = (estimate - target) / null_se
    return {
        "estimate": estimate,
        "standard_error": se,
        "target": target,
        "z": z,
        "n_effective": denominator,
        "count": numerator,
    }


def run_experiment(
    state: np.ndarray,
    config: ExperimentConfig,
    events_path: str | None = None,
    on_insufficient: str = "raise",
) -> dict:
    """Run the four setting-pair experiments and estimate the four
    probabilities with Wald standard errors.

    Near-exact-zero quantities get raw counts rather than meaningful
    intervals (Wald collapses there); zero-cell violation counts are
    reported per pair.  on_insufficient: "raise" raises
    InsufficientConditioningEvents when a conditioning count is zero,
    "note" records it in the report instead.
    """
    cell_counts = {pair: np.zeros((16, 16), dtype=np.int64) for pair in PAIRS}
    writer = None
    events_file = None
    if events_path is not None:
        events_file = open(events_path, "w", newline="")
        writer = csv.writer(events_file)
        writer.writerow(["block", "setting_a", "setting_b", "outcome_a", "outcome_b"])
    try:
        for block, block_shots in enumerate(_block_plan(config)):
            quad = _rotation_quadruple(config, block)
            tables = setting_pair_tables(state, *quad)
            for pair_index, pair in enumerate(PAIRS):
                rng = np.random.Generator(
                    np.random.PCG64(np.random.SeedSequence((config.seed, 1 + pair_index, block)))
                )
                draws = sample_outcomes(tables[pair], block_shots, rng)
                flat = draws[:, 0] * 16 + draws[:, 1]
                cell_counts[pair] += np.bincount(flat, minlength=256).reshape(16, 16)
                if writer is not None:
                    for oa, ob in draws:
                        writer.writerow([
                            block,
                            pair[0],
                            pair[1],
                            "".join(map(str, outcome_bits(int(oa)))),
                            "".join(map(str, outcome_bits(int(ob)))),
                        ])
    finally:
        if events_file is not None:
            events_file.close()

    shots = config.shots_per_setting_pair
    f_plus = CLASSIFIER_VALUES[F_FAMILY] == 1
    g_plus = CLASSIFIER_VALUES[G_FAMILY] == 1

    def cells(pair, mask_a, mask_b) -> int:
        return int(cell_counts[pair][np.ix_(mask_a, mask_b)].sum())

    quantities = {}
    quantities["p_fafb"] = _wald(cells(PAIRS[0], f_plus, f_plus), shots, 0.0)
    quantities["p_gagb"] = _wald(cells(PAIRS[3], g_plus, g_plus), shots, P_GG_TARGET)
    for name, pair, numer_masks, given_axis in (
        ("p_fa_given_gb", PAIRS[1], (f_plus, g_plus), "B"),
        ("p_fb_given_ga", PAIRS[2], (g_plus, f_plus), "A"),
    ):
        if given_axis == "B":
            n_given = int(cell_counts[pair][:, g_plus].sum())
        else:
            n_given = int(cell_counts[pair][g_plus, :].sum())
        if n_given == 0:
            if on_insufficient == "raise":
                raise InsufficientConditioningEvents(f"no conditioning events for {name}")
            quantities[name] = {
                "estimate": None,
                "target": 1.0,
                "insufficient_conditioning_events": True,
                "n_effective": 0,
            }
            continue
        quantities[name] = _wald(cells(pair, *numer_masks), n_given, 1.0)

    zero_cell_violations = {}
    for pair in PAIRS:
        mask = _zero_cell_mask(pair)
        if mask is not None:
            zero_cell_violations["x".join(pair)] = int(cell_counts[pair][mask].sum())

    classified_counts = {}
    for pair in PAIRS:
        va = CLASSIFIER_VALUES[pair[0]]
        vb = CLASSIFIER_VALUES[pair[1]]
        classified_counts["x".join(pair)] = {
            f"({sa:+d},{sb:+d})": cells(pair, va == sa, vb == sb)
            for sa in (1, -1)
            for sb in (1, -1)
        }

    return {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_dict(),
        "quantities": quantities,
        "classified_counts": classified_counts,
        "zero_cell_violations": zero_cell_violations,
    }
