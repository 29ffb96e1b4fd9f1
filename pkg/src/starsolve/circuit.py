"""Electrical front end: voltages in, voltages out.

Maps measured phase-to-phase voltages (and, for the general problem, the
load's phase differences) onto the plane-geometry solvers and returns the
recovered line voltages. Index convention, frozen here and nowhere else:
voltage index = opposite triangle edge, so U1' is the distance from the
vertex across edge u1 and is built from u2^2 + u3^2 - u1^2. Swapping
u2 <-> u3 together with psi2 <-> psi3 therefore swaps u2p <-> u3p.

Amplitude versus RMS: the solvers are homogeneous of degree one in
voltage, so feeding RMS values yields RMS results; no conversion is done.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import RESIDUAL_TOL
from .errors import AngleAtLeast120, InconsistentMeasurement, NotATriangle, PhaseDiagnostic
from .fermat import StarSolution, embed_triangle, fermat_distances_closed_form
from .general import general_distances_closed_form, validate_angles
from .geometry import ORIGIN, PhaseAngles, TriangleEdges

ALL_120 = PhaseAngles(120.0, 120.0, 120.0)


@dataclass(frozen=True)
class Phasor:
    """A sinusoid at the common grid frequency: amplitude and phase (degrees).

    The phase is normalized into [0, 360). Frequency never enters: all
    phasor arithmetic is frequency-independent.
    """

    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        if self.amplitude < 0.0:
            raise ValueError(f"amplitude must be nonnegative, got {self.amplitude}")
        object.__setattr__(self, "phase", self.phase % 360.0)

    def to_complex(self) -> complex:
        rad = math.radians(self.phase)
        return complex(self.amplitude * math.cos(rad),
                       self.amplitude * math.sin(rad))


def phasor_difference(p1: Phasor, p2: Phasor) -> Phasor:
    """Phasor of the voltage p1 - p2 (e.g. a phase-to-phase voltage from two
    line voltages). For equal amplitudes the result has amplitude
    2*A*|sin((phase1 - phase2)/2)|."""
    z = p1.to_complex() - p2.to_complex()
    amplitude = abs(z)
    if amplitude == 0.0:
        return Phasor(0.0, 0.0)
    return Phasor(amplitude, math.degrees(math.atan2(z.imag, z.real)))


@dataclass(frozen=True)
class PhaseToPhaseVoltages:
    """The three measurable voltages between phase terminals (volts).

    They are the edges of the phasor triangle, so they must satisfy the
    triangle inequality; a violating triple fits no phasor diagram and is
    rejected as an inconsistent measurement.
    """

    u1: float
    u2: float
    u3: float

    def __post_init__(self):
        try:
            TriangleEdges(self.u1, self.u2, self.u3)
        except NotATriangle as exc:
            raise InconsistentMeasurement(
                f"voltages ({self.u1}, {self.u2}, {self.u3}) fit no phasor "
                f"diagram: {exc}") from exc

    def to_edges(self) -> TriangleEdges:
        return TriangleEdges(self.u1, self.u2, self.u3)


@dataclass(frozen=True)
class LineVoltages:
    """The recovered (unmeasurable) line voltages between each phase terminal
    and the load star point, plus free-form diagnostics notes."""

    u1p: float
    u2p: float
    u3p: float
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.u1p, self.u2p, self.u3p)


def _diagnose(u: PhaseToPhaseVoltages, solution: StarSolution) -> tuple[str, ...]:
    notes = []
    scale = u.u1 + u.u2 + u.u3
    for name, value in zip(("u1p", "u2p", "u3p"), solution.distances()):
        if value < 1e-9 * scale:
            notes.append(f"{name} is zero within tolerance: "
                         "the load star point sits on a phase terminal")
    return tuple(notes)


def solve_symmetric_star(u: PhaseToPhaseVoltages) -> LineVoltages:
    """Line voltages of a load with all phase differences at 120 deg.

    This is the star circuit fed by a (possibly non-symmetric) generator
    whose line-voltage phases still sit 120 deg apart. Delegates to the
    120-deg interior point: U1' = (1/sqrt 6) * (sqrt3*(U2^2+U3^2-U1^2) +
    Theta^2) / sqrt(U1^2+U2^2+U3^2 + sqrt3*Theta^2), cyclically, where
    Theta^2 is the Heron radical of the voltage triangle.
    """
    try:
        solution = fermat_distances_closed_form(u.to_edges())
    except AngleAtLeast120 as exc:
        raise PhaseDiagnostic(exc.vertex, exc.angle_deg, exc.clamped) from exc
    return LineVoltages(*solution.distances(), diagnostics=_diagnose(u, solution))


def solve_general_star(u: PhaseToPhaseVoltages, psi1: float, psi2: float) -> LineVoltages:
    """Line voltages of a load with prescribed phase differences.

    ``psi1`` and ``psi2`` are the phase differences of the line voltages
    (degrees); the third is 360 - psi1 - psi2. With both at 120 deg this
    coincides with :func:`solve_symmetric_star`.
    """
    angles = validate_angles(psi1, psi2)
    solution = general_distances_closed_form(u.to_edges(), angles)
    return LineVoltages(*solution.distances(), diagnostics=_diagnose(u, solution))


def line_voltage_phasors(u: PhaseToPhaseVoltages, psi1: float = 120.0,
                         psi2: float = 120.0) -> tuple[Phasor, Phasor, Phasor]:
    """Supplementary output: full phasors of the recovered line voltages.

    The magnitudes are measurement-grade; the phases are frame-dependent
    (measured in the canonical triangle frame, from the load star point
    toward each phase terminal) because only phase differences are
    physical.
    """
    angles = validate_angles(psi1, psi2)
    if angles == ALL_120:
        solution = fermat_distances_closed_form(u.to_edges())
    else:
        solution = general_distances_closed_form(u.to_edges(), angles)
    a_vec, b_vec = embed_triangle(u.to_edges())
    x = solution.point
    result = []
    for amplitude, vertex in zip(solution.distances(), (b_vec, a_vec, ORIGIN)):
        direction = vertex - x
        phase = math.degrees(math.atan2(direction.y, direction.x)) % 360.0
        result.append(Phasor(amplitude, phase))
    return tuple(result)


@dataclass(frozen=True)
class ResidualReport:
    """Closure check of a proposed solution against the measurement."""

    residuals: tuple[float, float, float]
    max_residual: float
    tolerance: float
    passed: bool


def verify_solution(u: PhaseToPhaseVoltages, lv: LineVoltages,
                    angles: PhaseAngles = ALL_120,
                    tolerance: float = RESIDUAL_TOL) -> ResidualReport:
    """Check the mesh-rule closure: each measured voltage must close the
    triangle over its two line voltages and phase difference.

    u1^2 = u2p^2 + u3p^2 - 2 u2p u3p cos(psi1), cyclically. Passes iff
    every relative residual is below ``tolerance``.
    """
    cos1 = math.cos(math.radians(angles.psi_a))
    cos2 = math.cos(math.radians(angles.psi_b))
    cos3 = math.cos(math.radians(angles.psi_c))
    u1p, u2p, u3p = lv.as_tuple()
    r1 = abs(u2p * u2p + u3p * u3p - 2.0 * u2p * u3p * cos1 - u.u1 * u.u1) / (u.u1 * u.u1)
    r2 = abs(u3p * u3p + u1p * u1p - 2.0 * u3p * u1p * cos2 - u.u2 * u.u2) / (u.u2 * u.u2)
    r3 = abs(u1p * u1p + u2p * u2p - 2.0 * u1p * u2p * cos3 - u.u3 * u.u3) / (u.u3 * u.u3)
    residuals = (r1, r2, r3)
    worst = max(residuals)
    return ResidualReport(residuals=residuals, max_residual=worst,
                          tolerance=tolerance, passed=worst <= tolerance)
