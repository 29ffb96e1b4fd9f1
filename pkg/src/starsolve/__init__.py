"""starsolve: line voltages of three-phase star circuits from phase-to-phase
measurements, by solving the equivalent plane-geometry problems.

Library entry points:

* :func:`solve_symmetric_star` / :func:`solve_general_star` for the
  electrical formulation (voltages in volts, phase differences in degrees);
* :func:`fermat_solve` and :func:`general_distances_closed_form` /
  :func:`general_solve_by_circles` for the geometric formulation;
* :mod:`starsolve.oracle` for the independent verification machinery.

Every operation is a pure function; the package is thread-safe throughout.
"""

from .circuit import (
    LineVoltages,
    Phasor,
    PhaseToPhaseVoltages,
    ResidualReport,
    line_voltage_phasors,
    phasor_difference,
    solve_general_star,
    solve_symmetric_star,
    verify_solution,
)
from .errors import (
    AmbiguousIntersection,
    AngleAtLeast120,
    AngleOutOfRange,
    ConcentricCircles,
    CrossCheckMismatch,
    DegenerateTriangle,
    InconsistentMeasurement,
    InfeasibleConfiguration,
    NoConvergence,
    NoInteriorIntersection,
    NotATriangle,
    PhaseDiagnostic,
    SingularConfiguration,
    SingularSystem,
    StarSolveError,
    ZeroVector,
)
from .fermat import (
    FermatIntermediate,
    StarSolution,
    embed_triangle,
    fermat_apexes,
    fermat_distances_closed_form,
    fermat_line_solution,
    fermat_solve,
)
from .general import (
    CircleData,
    GeneralIntermediate,
    circumcircle_data,
    general_distances_closed_form,
    general_solve_by_circles,
    star_point_coefficients,
    validate_angles,
)
from .geometry import (
    PhaseAngles,
    PlaneVector,
    TriangleEdges,
    TriangleInvariants,
    angle_between,
    law_of_cosines_angle,
    perp,
    theta_squared,
    triangle_invariants,
)
from .oracle import (
    MinimizationResult,
    SynthesisSpec,
    intersect_circles,
    minimize_distance_sum,
    sample_waveform_amplitude,
    synthesize_triangle,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousIntersection",
    "AngleAtLeast120",
    "AngleOutOfRange",
    "CircleData",
    "ConcentricCircles",
    "CrossCheckMismatch",
    "DegenerateTriangle",
    "FermatIntermediate",
    "GeneralIntermediate",
    "InconsistentMeasurement",
    "InfeasibleConfiguration",
    "LineVoltages",
    "MinimizationResult",
    "NoConvergence",
    "NoInteriorIntersection",
    "NotATriangle",
    "PhaseAngles",
    "PhaseDiagnostic",
    "PhaseToPhaseVoltages",
    "Phasor",
    "PlaneVector",
    "ResidualReport",
    "SingularConfiguration",
    "SingularSystem",
    "StarSolution",
    "StarSolveError",
    "SynthesisSpec",
    "TriangleEdges",
    "TriangleInvariants",
    "ZeroVector",
    "angle_between",
    "circumcircle_data",
    "embed_triangle",
    "fermat_apexes",
    "fermat_distances_closed_form",
    "fermat_line_solution",
    "fermat_solve",
    "general_distances_closed_form",
    "general_solve_by_circles",
    "intersect_circles",
    "law_of_cosines_angle",
    "line_voltage_phasors",
    "minimize_distance_sum",
    "perp",
    "phasor_difference",
    "sample_waveform_amplitude",
    "solve_general_star",
    "solve_symmetric_star",
    "star_point_coefficients",
    "synthesize_triangle",
    "theta_squared",
    "triangle_invariants",
    "validate_angles",
    "verify_solution",
]
