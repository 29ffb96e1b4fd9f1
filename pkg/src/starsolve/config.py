"""Tolerance constants.

All tolerances are relative to a problem scale unless the name says
absolute. Solver entry points take keyword overrides; these module values
are the documented defaults. Voltages are carried in IEEE-754 binary64,
which holds far more precision than any voltage measurement, so the
defaults are chosen well below measurement noise but above accumulated
rounding of the short formula pipelines.
"""

from __future__ import annotations

import os

# Absolute norm below which a vector counts as zero (direction undefined).
EPS_LEN = 1e-300

# Angle-sum and angle-comparison slack, in degrees.
EPS_ANG_DEG = 1e-9

# Clamp window for the sign-carrying product in the stable Heron evaluation:
# values in [-EPS_TRI_COEFF * (a+b+c)^2, 0] are treated as exactly collinear.
EPS_TRI_COEFF = 1e-12

# Point-coincidence tolerance, times the triangle perimeter.
EPS_PT_COEFF = 1e-9

# Coefficient-denominator gate, times the squared-edge scale a^2+b^2+c^2.
EPS_DEN_COEFF = 1e-10

# Relative disagreement beyond which two independent solution paths error.
CROSS_CHECK_REL = 1e-8

# Default relative closure-residual tolerance for solution acceptance.
RESIDUAL_TOL = 1e-8

# Interior angles at or above this (minus EPS_ANG_DEG) have no interior
# three-ray point; the solvers refuse rather than guess.
ANGLE_LIMIT_DEG = 120.0

# Environment variable that overrides RESIDUAL_TOL for the CLI.
TOLERANCE_ENV_VAR = "STAR_SOLVE_TOLERANCE"


def residual_tolerance(override: float | None = None) -> float:
    """Resolve the residual tolerance: explicit value, else env var, else default."""
    if override is not None:
        return float(override)
    raw = os.environ.get(TOLERANCE_ENV_VAR)
    if raw is not None:
        try:
            return float(raw)
        except ValueError as exc:
            raise ValueError(
                f"{TOLERANCE_ENV_VAR} must be a number, got {raw!r}"
            ) from exc
    return RESIDUAL_TOL
