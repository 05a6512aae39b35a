from itertools import product

from alignfree_bell.lhv import (
    N_STRATEGIES,
    enumerate_contradiction,
    lhv_best_model,
)
from alignfree_bell.measurement import outcome_bits


def brute_force_coarse_count():
    # independent re-derivation at the (F_A, G_A, F_B, G_B) value level
    count = 0
    for fa, ga, fb, gb in product((-1, 1), repeat=4):
        if fa == 1 and fb == 1:
            continue
        if gb == 1 and fa != 1:
            continue
        if ga == 1 and fb != 1:
            continue
        if ga == 1 and gb == 1:
            count += 1
    return count


def test_strategy_count():
    certificate = enumerate_contradiction()
    assert certificate.n_strategies == N_STRATEGIES == 65_536


def test_no_witnesses():
    certificate = enumerate_contradiction()
    assert certificate.n_satisfying == 0
    assert certificate.witnesses == ()
    assert certificate.valid


def test_coarse_and_fine_agree_with_oracle():
    certificate = enumerate_contradiction()
    assert certificate.coarse_satisfying == brute_force_coarse_count() == 0


def test_lhv_bound_is_zero():
    max_gg, description = lhv_best_model()
    assert max_gg == 0.0
    assert description["n_achieving_gg"] == 0
    assert description["quantum_value"] > max_gg


def test_dropping_any_constraint_releases_the_bound():
    for label in (1, 2, 3):
        max_gg, _ = lhv_best_model(drop_constraint=label)
        assert max_gg == 1.0


def test_mutated_classification_produces_witness():
    certificate = enumerate_contradiction(mutate_classification=True)
    assert not certificate.valid
    assert certificate.n_satisfying > 0
    # every witness must genuinely satisfy the mutated constraint system
    for a_f, a_g, b_f, b_g in certificate.witnesses:
        bits_af = outcome_bits(a_f)
        # with the Z1 table's entry for outcome 0000 flipped to -1,
        # a_f = 0000 escapes Z1 while still satisfying Z2 canonically
        assert bits_af == (0, 0, 0, 0)
