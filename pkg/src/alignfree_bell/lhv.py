"""Exhaustive local-hidden-variable certification.

Any LHV model is a convex mixture of deterministic local strategies
(conditioning on the hidden variable makes every response deterministic;
the model is then a mixture over the finitely many response functions),
so it suffices to enumerate the 16^4 = 65 536 deterministic strategies
(one predetermined 4-bit outcome per party per setting family) and check
them against the three zero constraints:

  Z1: not (F_A = 1 and F_B = 1)
  Z2: G_B = 1 implies F_A = 1
  Z3: G_A = 1 implies F_B = 1

No strategy obeying all three can have G_A = G_B = 1, while the quantum
state gives that event probability 9/112 > 0.

The value-level logic alone is classifier-independent, so the fine
(outcome-level) enumeration accepts optional per-constraint overrides of
Alice's F table: a flipped entry models a transcription error in one
equation's zero set and must surface as a concrete witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .config import P_GG_TARGET
from .measurement import F_VALUES, G_VALUES

N_STRATEGIES = 16**4


@dataclass(frozen=True)
class ContradictionCertificate:
    n_strategies: int
    n_satisfying: int
    witnesses: tuple[tuple[int, int, int, int], ...]
    coarse_satisfying: int

    @property
    def valid(self) -> bool:
        return len(self.witnesses) == 0

    def to_dict(self) -> dict:
        return {
            "n_strategies": self.n_strategies,
            "n_satisfying_all_zero_constraints_with_gg": self.n_satisfying,
            "witnesses": [list(w) for w in self.witnesses],
            "coarse_satisfying": self.coarse_satisfying,
            "valid": self.valid,
            "hardy_chain": (
                "G_A=1 and G_B=1 force F_B=1 (Z3) and F_A=1 (Z2), "
                "contradicting Z1; hence every LHV model obeying the three "
                "zero constraints assigns probability 0 to (G_A=1, G_B=1), "
                "while the quantum value is 9/112."
            ),
        }


def _strategy_counts(f_eq1_a: np.ndarray, max_witnesses: int):
    """Vectorized sweep over all (a_f, a_g, b_f, b_g) outcome assignments.

    f_eq1_a is the F table used for Alice's side of constraint Z1 (equal
    to F_VALUES unless a transcription error is being injected).
    """
    a_f, a_g, b_f, b_g = np.meshgrid(
        np.arange(16), np.arange(16), np.arange(16), np.arange(16), indexing="ij"
    )
    z1 = ~((f_eq1_a[a_f] == 1) & (F_VALUES[b_f] == 1))
    z2 = (G_VALUES[b_g] != 1) | (F_VALUES[a_f] == 1)
    z3 = (G_VALUES[a_g] != 1) | (F_VALUES[b_f] == 1)
    gg = (G_VALUES[a_g] == 1) & (G_VALUES[b_g] == 1)
    satisfying = z1 & z2 & z3 & gg
    n_satisfying = int(satisfying.sum())
    witness_idx = np.argwhere(satisfying)[:max_witnesses]
    witnesses = tuple(tuple(int(v) for v in row) for row in witness_idx)
    return n_satisfying, witnesses


def _coarse_satisfying() -> int:
    """Same check over the 2^4 value assignments (F_A, G_A, F_B, G_B)."""
    count = 0
    for fa, ga, fb, gb in product((-1, 1), repeat=4):
        z1 = not (fa == 1 and fb == 1)
        z2 = gb != 1 or fa == 1
        z3 = ga != 1 or fb == 1
        if z1 and z2 and z3 and ga == 1 and gb == 1:
            count += 1
    return count


def enumerate_contradiction(
    mutate_classification: bool = False, max_witnesses: int = 10
) -> ContradictionCertificate:
    """Enumerate all 65 536 deterministic strategies.

    With mutate_classification=True, one entry of Alice's F table as used
    in constraint Z1 is flipped (outcome 0000 becomes F=-1 there), which
    must produce witnesses; this is the self-test for transcription bugs.
    """
    f_eq1_a = F_VALUES.copy()
    if mutate_classification:
        f_eq1_a[0] = -f_eq1_a[0]
    n_satisfying, witnesses = _strategy_counts(f_eq1_a, max_witnesses)
    return ContradictionCertificate(
        n_strategies=N_STRATEGIES,
        n_satisfying=n_satisfying,
        witnesses=witnesses,
        coarse_satisfying=_coarse_satisfying(),
    )


def lhv_best_model(drop_constraint: int | None = None) -> tuple[float, dict]:
    """Maximum P(G_A=1, G_B=1) over strategies obeying the zero constraints.

    Deterministic strategies make the event an indicator, so the optimum
    over mixtures equals the optimum over strategies: 1.0 if any
    constraint-satisfying strategy has G_A=G_B=1, else 0.0.  Dropping one
    constraint (drop_constraint in {1,2,3}) shows each is load-bearing.
    """
    a_f, a_g, b_f, b_g = np.meshgrid(
        np.arange(16), np.arange(16), np.arange(16), np.arange(16), indexing="ij"
    )
    constraints = {
        1: ~((F_VALUES[a_f] == 1) & (F_VALUES[b_f] == 1)),
        2: (G_VALUES[b_g] != 1) | (F_VALUES[a_f] == 1),
        3: (G_VALUES[a_g] != 1) | (F_VALUES[b_f] == 1),
    }
    allowed = np.ones(constraints[1].shape, dtype=bool)
    for label, mask in constraints.items():
        if label != drop_constraint:
            allowed &= mask
    gg = (G_VALUES[a_g] == 1) & (G_VALUES[b_g] == 1)
    achievable = allowed & gg
    max_gg = 1.0 if achievable.any() else 0.0
    description = {
        "max_gg": max_gg,
        "dropped_constraint": drop_constraint,
        "n_allowed_strategies": int(allowed.sum()),
        "n_achieving_gg": int(achievable.sum()),
        "quantum_value": P_GG_TARGET,
    }
    return max_gg, description
