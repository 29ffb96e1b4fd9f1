"""Independent verification machinery.

Nothing here reuses solver formulas: the minimizer polls the distance-sum
objective directly, the circle kernel is plain radical-line arithmetic,
and waveform sampling works in the time domain. These routines back the
test suite and the CLI ``verify`` command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random
from typing import TYPE_CHECKING, Sequence

from .errors import ConcentricCircles, NoConvergence
from .fermat import StarSolution, closure_residuals, point_from_distances
from .geometry import PhaseAngles, PlaneVector, TriangleEdges, perp

if TYPE_CHECKING:  # pragma: no cover - type-only, avoids a runtime cycle
    from .circuit import Phasor


# =========================================================================
# Forward synthesis: plant the answer, derive the measurement
# =========================================================================

@dataclass(frozen=True)
class SynthesisSpec:
    """A planted test instance: known distances and viewing angles.

    ``seed`` records which random draw produced the instance so failures
    reproduce bit-exactly; it plays no role in the synthesis itself.
    """

    distances: tuple[float, float, float]
    angles: PhaseAngles
    seed: int = 0

    def __post_init__(self):
        if any(d <= 0.0 for d in self.distances):
            raise ValueError(f"planted distances must be positive: {self.distances}")


def synthesize_triangle(spec: SynthesisSpec) -> tuple[TriangleEdges, StarSolution]:
    """Edges of the triangle whose interior point realizes the planted spec.

    Each edge follows from the law of cosines across its viewing angle:
    a^2 = b'^2 + c'^2 - 2 b' c' cos(psi_a), cyclically. The returned
    expected solution carries the planted distances and the corresponding
    canonical-frame point.
    """
    a_p, b_p, c_p = spec.distances
    cos_a = math.cos(math.radians(spec.angles.psi_a))
    cos_b = math.cos(math.radians(spec.angles.psi_b))
    cos_c = math.cos(math.radians(spec.angles.psi_c))
    a = math.sqrt(b_p * b_p + c_p * c_p - 2.0 * b_p * c_p * cos_a)
    b = math.sqrt(c_p * c_p + a_p * a_p - 2.0 * c_p * a_p * cos_b)
    c = math.sqrt(a_p * a_p + b_p * b_p - 2.0 * a_p * b_p * cos_c)
    edges = TriangleEdges(a, b, c)
    point = point_from_distances(edges, a_p, b_p, c_p)
    residuals = closure_residuals(edges, spec.angles, spec.distances)
    return edges, StarSolution(a_p, b_p, c_p, point, residuals)


def random_synthesis_spec(rng: Random, seed: int = 0,
                          symmetric: bool = False) -> SynthesisSpec:
    """Draw a planted instance: distances log-uniform in [0.1, 10], angles
    uniform on the 360-deg simplex, rejected until each lies in (60, 180).

    Only ``rng.random()`` is consumed, keeping draws stable across Python
    versions. With ``symmetric=True`` all angles are fixed at 120 deg.
    """
    log_lo, log_hi = math.log(0.1), math.log(10.0)
    distances = tuple(
        math.exp(log_lo + (log_hi - log_lo) * rng.random()) for _ in range(3)
    )
    if symmetric:
        return SynthesisSpec(distances, PhaseAngles(120.0, 120.0, 120.0), seed)
    while True:
        # Three unit-rate exponentials normalized to the simplex.
        draws = [-math.log(1.0 - rng.random()) for _ in range(3)]
        total = sum(draws)
        psis = [360.0 * d / total for d in draws]
        if all(60.0 < psi < 180.0 for psi in psis):
            psi_a, psi_b = psis[0], psis[1]
            return SynthesisSpec(
                distances, PhaseAngles(psi_a, psi_b, 360.0 - psi_a - psi_b), seed
            )


# =========================================================================
# Derivative-free minimization of the vertex-distance sum
# =========================================================================

@dataclass(frozen=True)
class MinimizationResult:
    point: PlaneVector
    value: float
    iterations: int
    converged: bool


def _embed_for_oracle(t: TriangleEdges) -> tuple[PlaneVector, PlaneVector, PlaneVector]:
    """Vertices (C, B, A) placed independently of the solver embedding."""
    ax = (t.a * t.a + t.b * t.b - t.c * t.c) / (2.0 * t.a)
    ay_sq = t.b * t.b - ax * ax
    return (
        PlaneVector(0.0, 0.0),
        PlaneVector(t.a, 0.0),
        PlaneVector(ax, math.sqrt(max(ay_sq, 0.0))),
    )


def _nelder_mead(f, start: PlaneVector, step: float, diameter_tol: float,
                 max_iter: int) -> tuple[PlaneVector, float, int, bool]:
    """Plain 2-D simplex descent (reflect / expand / contract / shrink).

    Tracks the best point ever polled, so the reported value is a true
    upper bound on the minimum over everything evaluated.
    """
    simplex = [start, PlaneVector(start.x + step, start.y),
               PlaneVector(start.x, start.y + step)]
    values = [f(v) for v in simplex]
    best_point = simplex[values.index(min(values))]
    best_value = min(values)

    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        order = sorted(range(3), key=lambda i: values[i])
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]

        diameter = max(simplex[i].distance_to(simplex[j])
                       for i in range(3) for j in range(i + 1, 3))
        if diameter < diameter_tol:
            converged = True
            break

        centroid = 0.5 * (simplex[0] + simplex[1])

        def polled(pt: PlaneVector) -> float:
            nonlocal best_point, best_value
            val = f(pt)
            if val < best_value:
                best_value, best_point = val, pt
            return val

        reflected = centroid + (centroid - simplex[2])
        f_r = polled(reflected)
        if f_r < values[0]:
            expanded = centroid + 2.0 * (centroid - simplex[2])
            f_e = polled(expanded)
            if f_e < f_r:
                simplex[2], values[2] = expanded, f_e
            else:
                simplex[2], values[2] = reflected, f_r
        elif f_r < values[1]:
            simplex[2], values[2] = reflected, f_r
        else:
            if f_r < values[2]:
                contracted = centroid + 0.5 * (reflected - centroid)
            else:
                contracted = centroid + 0.5 * (simplex[2] - centroid)
            f_c = polled(contracted)
            if f_c < min(f_r, values[2]):
                simplex[2], values[2] = contracted, f_c
            else:
                # Shrink toward the best vertex.
                simplex = [simplex[0],
                           simplex[0] + 0.5 * (simplex[1] - simplex[0]),
                           simplex[0] + 0.5 * (simplex[2] - simplex[0])]
                values = [values[0], polled(simplex[1]), polled(simplex[2])]

    return best_point, best_value, iterations, converged


def minimize_distance_sum(t: TriangleEdges, max_iter: int = 10_000) -> MinimizationResult:
    """Minimize |XA| + |XB| + |XC| by multi-started simplex search.

    Starts from the centroid and three seeds shifted toward the edge
    midpoints; each run terminates when the simplex diameter drops below
    1e-10 of the perimeter and is then re-polished once from a small
    simplex around its best point. Raises :class:`NoConvergence` only if
    every start hits the iteration cap.
    """
    vc, vb, va = _embed_for_oracle(t)

    def objective(pt: PlaneVector) -> float:
        return pt.distance_to(va) + pt.distance_to(vb) + pt.distance_to(vc)

    perimeter = t.perimeter()
    diameter_tol = 1e-10 * perimeter
    centroid = (1.0 / 3.0) * (va + vb + vc)
    midpoints = (0.5 * (vb + vc), 0.5 * (va + vc), 0.5 * (va + vb))
    starts = [centroid] + [0.5 * (centroid + mid) for mid in midpoints]

    best: tuple[PlaneVector, float] | None = None
    total_iterations = 0
    any_converged = False
    for start in starts:
        point, value, iters, ok = _nelder_mead(
            objective, start, 0.2 * perimeter / 3.0, diameter_tol, max_iter)
        total_iterations += iters
        if ok:
            # Re-polish from a fresh small simplex to escape any flat collapse.
            point, value, iters2, ok2 = _nelder_mead(
                objective, point, 1e3 * diameter_tol, diameter_tol, max_iter)
            total_iterations += iters2
            ok = ok and ok2
        any_converged = any_converged or ok
        if ok and (best is None or value < best[1]):
            best = (point, value)

    if best is None:
        raise NoConvergence(
            f"no simplex start converged within {max_iter} iterations")
    return MinimizationResult(point=best[0], value=best[1],
                              iterations=total_iterations, converged=any_converged)


# =========================================================================
# Circle-circle intersection kernel
# =========================================================================

def intersect_circles(c1: PlaneVector, r1: float, c2: PlaneVector, r2: float,
                      eps: float | None = None) -> tuple[PlaneVector, ...]:
    """Intersection points of two circles, ordered by x then y.

    Returns an empty tuple for separated or nested circles, one point at
    (near-)tangency, two points otherwise. ``eps`` is the absolute window
    around tangency; it defaults to 1e-12 of the radius scale.

    The half-chord height is the altitude of the triangle with sides
    (d, r1, r2), evaluated as a factored product; the naive
    sqrt(r1^2 - along^2) form loses everything to cancellation when both
    radii dwarf the center distance gap.
    """
    if r1 <= 0.0 or r2 <= 0.0:
        raise ValueError(f"radii must be positive, got {r1} and {r2}")
    if eps is None:
        eps = 1e-12 * (r1 + r2)
    d = c1.distance_to(c2)
    if d <= eps:
        raise ConcentricCircles(
            f"centers coincide within {eps:g}; intersection undefined")

    f_sep = r1 + r2 - d            # negative: circles separated
    f_nest = d - abs(r1 - r2)      # negative: one circle inside the other
    if f_sep < -eps or f_nest < -eps:
        return ()
    pair_sep = (d + r1 + r2) * max(f_sep, 0.0)
    pair_nest = (d + r1 - r2) * (d - r1 + r2)
    h = math.sqrt(pair_sep * max(pair_nest, 0.0)) / (2.0 * d)

    along = (d * d + (r1 - r2) * (r1 + r2)) / (2.0 * d)
    axis = (1.0 / d) * (c2 - c1)
    base = c1 + along * axis
    if h <= eps:
        return (base,)
    offset = h * perp(axis)
    points = sorted((base + offset, base - offset), key=lambda p: (p.x, p.y))
    return tuple(points)


# =========================================================================
# Time-domain waveform sampling
# =========================================================================

def sample_waveform_amplitude(phasors: Sequence["Phasor"],
                              signs: Sequence[int] | None = None,
                              n_samples: int = 8192) -> float:
    """Amplitude of a signed sum of equal-frequency cosines, by brute sampling.

    Evaluates sum_i sign_i * A_i * cos(theta + phase_i) over ``n_samples``
    uniform points of one period and returns (max - min) / 2. Sampling
    error is below (pi/n)^2 / 2 relative, about 7e-8 at the default.
    """
    if not phasors:
        raise ValueError("at least one phasor is required")
    if signs is None:
        signs = [1] * len(phasors)
    if len(signs) != len(phasors):
        raise ValueError("sign pattern length must match the phasor count")
    if n_samples < 1024:
        raise ValueError("need at least 1024 samples for the stated accuracy")

    terms = [(sign * ph.amplitude, math.radians(ph.phase))
             for sign, ph in zip(signs, phasors)]
    hi = -math.inf
    lo = math.inf
    step = 2.0 * math.pi / n_samples
    for k in range(n_samples):
        theta = k * step
        value = sum(amp * math.cos(theta + shift) for amp, shift in terms)
        hi = max(hi, value)
        lo = min(lo, value)
    return (hi - lo) / 2.0
