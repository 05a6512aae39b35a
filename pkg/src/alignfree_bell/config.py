"""Shared numerical tolerances and report constants.

All comparisons in the library go through these named constants so the
whole pipeline can be audited in one place.
"""

# Generic "this quantity is exact in theory" tolerance.
TOL_EXACT = 1e-10

# Unitarity / Hermiticity structural checks.
TOL_UNITARY = 1e-12

# Tolerance for the four verified probabilities (0, 1, 1, 9/112).
TOL_PROBABILITY = 1e-9

# Relative nullspace threshold for the constraint solve.
DEFAULT_NULLSPACE_TOL = 1e-8

# Target of the positive-probability claim: P(G_A=1, G_B=1) = 9/112.
P_GG_TARGET = 9.0 / 112.0

# Version stamped into every JSON report.
SCHEMA_VERSION = 1
ARTIFACT_VERSION = "0.1.0"
