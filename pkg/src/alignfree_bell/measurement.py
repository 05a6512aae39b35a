"""Measurement settings, joint outcome tables, and the F/G coarse-graining.

Each party measures four qubits, one observable per qubit, in one of two
families:

  F family: axes (z, z, x, x) per local qubit 1..4
  G family: axes (z, x, z, x) per local qubit 1..4

with one SU(2) rotation per party per family applied to all four of that
party's devices (the measured observable on qubit k is u sigma_axis u†).
An outcome is a 4-bit string, bit k for local qubit k, bit value 0 for
the +1 eigenvalue.  The F classifier is -1 iff bit1 != bit2 and
bit3 != bit4; the G classifier is -1 iff bit1 != bit3 and bit2 != bit4;
each is -1 on exactly 4 of the 16 outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL_EXACT, P_GG_TARGET
from .errors import (
    ClassifierSettingMismatch,
    ConditionHasZeroProbability,
    PartyMismatch,
    WrongFamily,
)
from .linalg import kron

F_FAMILY = "F"
G_FAMILY = "G"
FAMILY_AXES = {F_FAMILY: ("z", "z", "x", "x"), G_FAMILY: ("z", "x", "z", "x")}

# Eigenvector columns per axis: column b is the eigenvector for outcome
# bit b (eigenvalue +1 for b=0, -1 for b=1).
_EIGENBASIS = {
    "z": np.eye(2, dtype=complex),
    "x": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0),
}

IDENTITY_ROTATION = np.eye(2, dtype=complex)


def outcome_bits(index: int) -> tuple[int, int, int, int]:
    """4-bit outcome string for a table index; bit 1 (local qubit 1) first."""
    return ((index >> 3) & 1, (index >> 2) & 1, (index >> 1) & 1, index & 1)


def outcome_index(bits) -> int:
    b1, b2, b3, b4 = bits
    return (b1 << 3) | (b2 << 2) | (b3 << 1) | b4


@dataclass(frozen=True)
class Outcome4:
    """One party's 4-bit outcome, tagged with its setting family."""

    bits: tuple[int, int, int, int]
    family: str

    @property
    def index(self) -> int:
        return outcome_index(self.bits)


@dataclass(frozen=True)
class PartySetting:
    """One party's chosen family plus the common rotation of its devices."""

    party: str  # "A" or "B"
    family: str  # F_FAMILY or G_FAMILY
    rotation: np.ndarray = field(default_factory=lambda: IDENTITY_ROTATION)

    @property
    def axes(self) -> tuple[str, str, str, str]:
        return FAMILY_AXES[self.family]


@dataclass(frozen=True)
class OutcomeTable:
    """16x16 joint probability table over (Alice outcome, Bob outcome)."""

    setting_a: PartySetting
    setting_b: PartySetting
    p: np.ndarray


def classify_f(outcome: Outcome4 | tuple[int, int, int, int]) -> int:
    """Collective F value of a 4-bit outcome in the (z,z,x,x) family."""
    if isinstance(outcome, Outcome4):
        if outcome.family != F_FAMILY:
            raise WrongFamily(f"F classifier applied to a {outcome.family}-family outcome")
        outcome = outcome.bits
    b1, b2, b3, b4 = outcome
    return -1 if (b1 != b2 and b3 != b4) else 1


def classify_g(outcome: Outcome4 | tuple[int, int, int, int]) -> int:
    """Collective G value of a 4-bit outcome in the (z,x,z,x) family."""
    if isinstance(outcome, Outcome4):
        if outcome.family != G_FAMILY:
            raise WrongFamily(f"G classifier applied to a {outcome.family}-family outcome")
        outcome = outcome.bits
    b1, b2, b3, b4 = outcome
    return -1 if (b1 != b3 and b2 != b4) else 1


# Classification value per table index, for the two families.
F_VALUES = np.array([classify_f(outcome_bits(o)) for o in range(16)])
G_VALUES = np.array([classify_g(outcome_bits(o)) for o in range(16)])
CLASSIFIER_VALUES = {F_FAMILY: F_VALUES, G_FAMILY: G_VALUES}


def measurement_basis(setting: PartySetting) -> np.ndarray:
    """16x16 matrix whose column o is the joint eigenvector |m_o> of the
    four rotated single-qubit observables with outcome bits o."""
    u = np.asarray(setting.rotation, dtype=complex)
    return kron(*[u @ _EIGENBASIS[axis] for axis in setting.axes])


def outcome_projector(setting: PartySetting, outcome: Outcome4) -> np.ndarray:
    """Rank-1 projector |m_o><m_o| on the party's 16-dim space."""
    if outcome.family != setting.family:
        raise WrongFamily("outcome family does not match the setting family")
    m = measurement_basis(setting)[:, outcome.index]
    return np.outer(m, m.conj())


def event_projector(setting: PartySetting, value: int) -> np.ndarray:
    """Sum of outcome projectors over all outcomes with the given F/G value."""
    basis = measurement_basis(setting)
    columns = basis[:, CLASSIFIER_VALUES[setting.family] == value]
    return columns @ columns.conj().T


def joint_outcome_table(
    state: np.ndarray, setting_a: PartySetting, setting_b: PartySetting
) -> OutcomeTable:
    """Exact 16x16 joint outcome distribution of an 8-qubit state.

    p[o_a, o_b] = |<m_{o_a}| x <m_{o_b}| psi>|^2, computed by contracting
    the 16x16 amplitude matrix with both measurement bases.
    """
    if setting_a.party != "A" or setting_b.party != "B":
        raise PartyMismatch("expected one Alice setting and one Bob setting")
    psi = np.asarray(state, dtype=complex).reshape(16, 16)
    amplitudes = measurement_basis(setting_a).conj().T @ psi @ measurement_basis(setting_b).conj()
    return OutcomeTable(setting_a, setting_b, np.abs(amplitudes) ** 2)


def aggregate(table: OutcomeTable, value_a: int, value_b: int) -> float:
    """P(classifier_A = value_a, classifier_B = value_b) from a table.

    The classifier on each side is the one matching that side's setting
    family (F classifier for F settings, G for G settings).
    """
    if value_a not in (-1, 1) or value_b not in (-1, 1):
        raise ClassifierSettingMismatch("classifier values must be +1 or -1")
    mask_a = CLASSIFIER_VALUES[table.setting_a.family] == value_a
    mask_b = CLASSIFIER_VALUES[table.setting_b.family] == value_b
    return float(table.p[np.ix_(mask_a, mask_b)].sum())


def conditional(table: OutcomeTable, target: tuple[str, int], given: tuple[str, int]) -> float:
    """P(target | given) where target/given are (side, value) pairs, e.g.
    ("A", 1) meaning that side's classifier equals +1."""
    masks = {}
    for side, value in (target, given):
        setting = table.setting_a if side == "A" else table.setting_b
        masks[(side, value)] = CLASSIFIER_VALUES[setting.family] == value
    mask_rows = np.ones(16, dtype=bool)
    mask_cols = np.ones(16, dtype=bool)
    for (side, value), mask in masks.items():
        if side == "A":
            mask_rows &= mask
        else:
            mask_cols &= mask
    p_joint = float(table.p[np.ix_(mask_rows, mask_cols)].sum())

    g_side, g_value = given
    g_setting = table.setting_a if g_side == "A" else table.setting_b
    g_mask = CLASSIFIER_VALUES[g_setting.family] == g_value
    if g_side == "A":
        p_given = float(table.p[g_mask, :].sum())
    else:
        p_given = float(table.p[:, g_mask].sum())
    if p_given <= 1e-12:
        raise ConditionHasZeroProbability(f"P({given}) = {p_given} is numerically zero")
    return p_joint / p_given


@dataclass(frozen=True)
class HardyRecord:
    """The four verified probabilities and their deviations from the
    targets (0, 1, 1, 9/112)."""

    p_fafb: float
    p_fa_given_gb: float
    p_fb_given_ga: float
    p_gagb: float
    rotations: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    max_abs_deviation: float
    passed: bool

    @property
    def deviations(self) -> tuple[float, float, float, float]:
        return (
            abs(self.p_fafb),
            abs(self.p_fa_given_gb - 1.0),
            abs(self.p_fb_given_ga - 1.0),
            abs(self.p_gagb - P_GG_TARGET),
        )

    def to_dict(self) -> dict:
        return {
            "p_fafb": self.p_fafb,
            "p_fa_given_gb": self.p_fa_given_gb,
            "p_fb_given_ga": self.p_fb_given_ga,
            "p_gagb": self.p_gagb,
            "targets": [0.0, 1.0, 1.0, P_GG_TARGET],
            "max_abs_deviation": self.max_abs_deviation,
            "pass": self.passed,
        }


def setting_pair_tables(
    state: np.ndarray,
    r_a: np.ndarray,
    rr_a: np.ndarray,
    r_b: np.ndarray,
    rr_b: np.ndarray,
) -> dict[tuple[str, str], OutcomeTable]:
    """The four tables (F,F), (F,G), (G,F), (G,G) for one rotation quadruple.

    r_a rotates all of Alice's F-family devices, rr_a her G-family
    devices; likewise r_b / rr_b for Bob.
    """
    fa = PartySetting("A", F_FAMILY, r_a)
    ga = PartySetting("A", G_FAMILY, rr_a)
    fb = PartySetting("B", F_FAMILY, r_b)
    gb = PartySetting("B", G_FAMILY, rr_b)
    return {
        (F_FAMILY, F_FAMILY): joint_outcome_table(state, fa, fb),
        (F_FAMILY, G_FAMILY): joint_outcome_table(state, fa, gb),
        (G_FAMILY, F_FAMILY): joint_outcome_table(state, ga, fb),
        (G_FAMILY, G_FAMILY): joint_outcome_table(state, ga, gb),
    }


def hardy_record(
    state: np.ndarray,
    r_a: np.ndarray = IDENTITY_ROTATION,
    rr_a: np.ndarray = IDENTITY_ROTATION,
    r_b: np.ndarray = IDENTITY_ROTATION,
    rr_b: np.ndarray = IDENTITY_ROTATION,
    tol: float = TOL_EXACT,
) -> HardyRecord:
    """Evaluate the four probabilities against their targets for one
    rotation quadruple (R_A, curly-R_A, R_B, curly-R_B)."""
    tables = setting_pair_tables(state, r_a, rr_a, r_b, rr_b)
    p_fafb = aggregate(tables[(F_FAMILY, F_FAMILY)], 1, 1)
    p_fa_given_gb = conditional(tables[(F_FAMILY, G_FAMILY)], ("A", 1), ("B", 1))
    p_fb_given_ga = conditional(tables[(G_FAMILY, F_FAMILY)], ("B", 1), ("A", 1))
    p_gagb = aggregate(tables[(G_FAMILY, G_FAMILY)], 1, 1)
    deviations = (
        abs(p_fafb),
        abs(p_fa_given_gb - 1.0),
        abs(p_fb_given_ga - 1.0),
        abs(p_gagb - P_GG_TARGET),
    )
    return HardyRecord(
        p_fafb=p_fafb,
        p_fa_given_gb=p_fa_given_gb,
        p_fb_given_ga=p_fb_given_ga,
        p_gagb=p_gagb,
        rotations=(r_a, rr_a, r_b, rr_b),
        max_abs_deviation=max(deviations),
        passed=max(deviations) <= tol,
    )
