"""Interior point with prescribed viewing angles.

Generalizes the 120-deg problem: given the triangle's edge lengths and the
angles under which an unknown interior point X sees two of the edges (the
third follows, the three summing to a full turn), recover the distances
from X to the vertices. Two independent routes:

* a closed form in the edges and the angle cotangents, evaluated once per
  vertex through a cyclic relabeling, and
* the constructive route: X is where the two circles meet that each carry
  all points seeing one edge under its prescribed angle (inscribed-angle
  locus); both circles pass through vertex C, and X is the other point.

Setting every angle to 120 deg reproduces the dedicated solver in
:mod:`starsolve.fermat` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import EPS_DEN_COEFF, RESIDUAL_TOL
from .errors import (
    AmbiguousIntersection,
    DegenerateTriangle,
    InfeasibleConfiguration,
    NoInteriorIntersection,
    SingularConfiguration,
)
from .fermat import StarSolution, closure_residuals, embed_triangle, point_from_distances
from .geometry import (
    PhaseAngles,
    PlaneVector,
    TriangleEdges,
    cot_deg,
    perp,
    theta_squared,
)
from .oracle import intersect_circles

# Interiority slack for barycentric coordinates (dimensionless).
BARY_TOL = 1e-9

__all__ = [
    "PhaseAngles",
    "CircleData",
    "GeneralIntermediate",
    "validate_angles",
    "circumcircle_data",
    "star_point_coefficients",
    "general_distances_closed_form",
    "general_solve_by_circles",
]


def validate_angles(psi_a: float, psi_b: float) -> PhaseAngles:
    """Complete (psi_a, psi_b) with psi_c = 360 - psi_a - psi_b and validate."""
    return PhaseAngles(psi_a, psi_b, 360.0 - psi_a - psi_b)


# =========================================================================
# Inscribed-angle circles
# =========================================================================

@dataclass(frozen=True)
class CircleData:
    """Circumcircle centers/radii of the chords CB and CA for the prescribed
    viewing angles, plus the signed center heights over the chords."""

    center_r: PlaneVector
    center_s: PlaneVector
    rho_a: float
    rho_b: float
    h_r: float
    h_s: float


def circumcircle_data(a_vec: PlaneVector, b_vec: PlaneVector,
                      angles: PhaseAngles) -> CircleData:
    """Circles through {C, B} and {C, A} subtending psi_a resp. psi_b at X.

    The center of the chord-CB circle sits at half the chord plus a
    cotangent-scaled perpendicular; an obtuse viewing angle puts it on the
    far side of the chord from X, a right angle on the chord itself.
    """
    if a_vec.cross(b_vec) <= 1e-15 * a_vec.norm() * b_vec.norm():
        raise DegenerateTriangle("spanning vectors are collinear")
    a = a_vec.norm()
    b = b_vec.norm()
    cot_a = cot_deg(angles.psi_a)
    cot_b = cot_deg(angles.psi_b)
    return CircleData(
        center_r=0.5 * (a_vec + cot_a * perp(a_vec)),
        center_s=0.5 * (b_vec - cot_b * perp(b_vec)),
        rho_a=0.5 * a * math.sqrt(1.0 + cot_a * cot_a),
        rho_b=0.5 * b * math.sqrt(1.0 + cot_b * cot_b),
        h_r=-0.5 * a * cot_a,
        h_s=-0.5 * b * cot_b,
    )


# =========================================================================
# Closed-form coefficients and distances
# =========================================================================

@dataclass(frozen=True)
class GeneralIntermediate:
    """Coefficients of X = (alpha/2) a_vec + (beta/2) b_vec, with the ratio
    t = beta/alpha and its reciprocal t_star."""

    t: float
    t_star: float
    alpha: float
    beta: float


def star_point_coefficients(t: TriangleEdges, angles: PhaseAngles) -> GeneralIntermediate:
    """Solve the two circle equations for the expansion coefficients of X.

    Subtracting the quadratic circle equations leaves the linear relation
    beta = t * alpha; substituting back yields alpha and beta. The ``t``
    denominators vanish when X is collinear with a spanning vector, so
    near-vanishing denominators raise :class:`SingularConfiguration`
    instead of returning garbage coefficients.
    """
    a2, b2, c2 = t.a * t.a, t.b * t.b, t.c * t.c
    theta_sq = theta_squared(t)
    cot_a = cot_deg(angles.psi_a)
    cot_b = cot_deg(angles.psi_b)
    cos2c = a2 + b2 - c2  # 2 <a_vec, b_vec>

    d_a = c2 + b2 - a2 - cot_a * theta_sq
    d_b = c2 + a2 - b2 - cot_b * theta_sq
    gate = EPS_DEN_COEFF * (a2 + b2 + c2)
    if abs(d_a) < gate or abs(d_b) < gate:
        raise SingularConfiguration(
            f"coefficient denominators {d_a:.3e}, {d_b:.3e} below gate {gate:.3e}")

    ratio = d_b / d_a
    ratio_star = d_a / d_b
    alpha = (2.0 * a2 + ratio * cos2c + ratio * cot_a * theta_sq) / \
        (a2 + ratio * ratio * b2 + ratio * cos2c)
    beta = (2.0 * b2 + ratio_star * cos2c + ratio_star * cot_b * theta_sq) / \
        (b2 + ratio_star * ratio_star * a2 + ratio_star * cos2c)
    return GeneralIntermediate(t=ratio, t_star=ratio_star, alpha=alpha, beta=beta)


def _joint_vertex_distance(e1: float, e2: float, e_opp: float,
                           cot1: float, cot2: float, cot_opp: float,
                           theta_sq: float) -> float:
    """Distance from the vertex where edges e1 and e2 meet (e_opp across).

    cot1/cot2 belong to the viewing angles of e1/e2, cot_opp to the edge
    across. A non-positive radicand in the denominator means no point
    realizes the configuration.
    """
    s1, s2, s_opp = e1 * e1, e2 * e2, e_opp * e_opp
    core = s1 + s2 - s_opp
    numerator = 0.5 * abs((cot1 + cot2) * (core - theta_sq * cot_opp))
    denom = (s1 * (1.0 + cot1 * cot1) + s2 * (1.0 + cot2 * cot2)
             - (cot1 + cot2) * (core * cot_opp + theta_sq))
    if denom <= 0.0:
        raise InfeasibleConfiguration(
            f"distance denominator {denom:.3e} is not positive; "
            "no point sees the edges under these angles")
    return numerator / math.sqrt(denom)


def _rot3(triple: tuple, r: int) -> tuple:
    x, y, z = triple
    for _ in range(r % 3):
        x, y, z = y, z, x
    return (x, y, z)


def canonical_rotation(angles: PhaseAngles) -> int:
    """Cyclic rotation count placing the smallest viewing angle last, so the
    two largest (hence both >= 90 deg) drive the chord-circle construction."""
    psis = angles.as_tuple()
    smallest = min(range(3), key=lambda i: psis[i])
    return {2: 0, 0: 1, 1: 2}[smallest]


def _rotated_problem(t: TriangleEdges, angles: PhaseAngles,
                     r: int) -> tuple[TriangleEdges, PhaseAngles]:
    ea, eb, ec = _rot3(t.as_tuple(), r)
    pa, pb, pc = _rot3(angles.as_tuple(), r)
    return TriangleEdges(ea, eb, ec), PhaseAngles(pa, pb, pc)


def _barycentric(x: PlaneVector, a_vec: PlaneVector,
                 b_vec: PlaneVector) -> tuple[float, float, float]:
    """Coordinates (u, v, w) of x = v*a_vec + w*b_vec with u = 1 - v - w."""
    area = a_vec.cross(b_vec)
    v = x.cross(b_vec) / area
    w = a_vec.cross(x) / area
    return (1.0 - v - w, v, w)


def general_distances_closed_form(t: TriangleEdges, angles: PhaseAngles,
                                  residual_tol: float = RESIDUAL_TOL) -> StarSolution:
    """Closed-form distances from X to the three vertices.

    Each distance comes from the same expression under the cyclic
    relabeling (a,b,c; psi_a,psi_b,psi_c) -> (b,c,a; psi_b,psi_c,psi_a).
    The solution is accepted only if the law-of-cosines closure holds to
    ``residual_tol`` and the point lands inside the triangle. Interiority
    is validated through the expansion coefficients in the canonical
    labeling (skipped when those are singular; the distances themselves
    stay regular there); the reported point is rebuilt from the distances
    in the original frame.
    """
    theta_sq = theta_squared(t)
    cot_a, cot_b, cot_c = angles.cotangents()

    a_p = _joint_vertex_distance(t.b, t.c, t.a, cot_b, cot_c, cot_a, theta_sq)
    b_p = _joint_vertex_distance(t.c, t.a, t.b, cot_c, cot_a, cot_b, theta_sq)
    c_p = _joint_vertex_distance(t.a, t.b, t.c, cot_a, cot_b, cot_c, theta_sq)

    residuals = closure_residuals(t, angles, (a_p, b_p, c_p))
    if max(residuals) > residual_tol:
        raise InfeasibleConfiguration(
            f"closure residuals {residuals} exceed {residual_tol:g}; "
            "no interior point realizes these edges and angles")

    rot = canonical_rotation(angles)
    t_rot, angles_rot = _rotated_problem(t, angles, rot)
    try:
        coeff = star_point_coefficients(t_rot, angles_rot)
        a_vec, b_vec = embed_triangle(t_rot)
        x = 0.5 * coeff.alpha * a_vec + 0.5 * coeff.beta * b_vec
        bary = _barycentric(x, a_vec, b_vec)
        if min(bary) < -BARY_TOL:
            raise InfeasibleConfiguration(
                f"recovered point lies outside the triangle: barycentric {bary}")
    except SingularConfiguration:
        # Coefficients unusable; distances above are still regular there.
        pass

    point = point_from_distances(t, a_p, b_p, c_p)
    bary = _barycentric(point, *embed_triangle(t))
    if min(bary) < -BARY_TOL:
        raise InfeasibleConfiguration(
            f"recovered point lies outside the triangle: barycentric {bary}")
    return StarSolution(a_p, b_p, c_p, point, residuals)


def general_solve_by_circles(t: TriangleEdges, angles: PhaseAngles) -> StarSolution:
    """Constructive route: X as the non-vertex intersection of the two
    inscribed-angle circles.

    Both circles pass through vertex C by construction, so the root
    farther from C is selected and must land inside the triangle (within
    barycentric slack); tangency at C is the legitimate boundary case of
    a vanishing vertex distance.
    """
    rot = canonical_rotation(angles)
    t_rot, angles_rot = _rotated_problem(t, angles, rot)
    a_vec, b_vec = embed_triangle(t_rot)
    circles = circumcircle_data(a_vec, b_vec, angles_rot)

    points = intersect_circles(circles.center_r, circles.rho_a,
                               circles.center_s, circles.rho_b)
    if not points:
        raise NoInteriorIntersection(
            "the viewing-angle circles do not intersect; configuration infeasible")

    if len(points) == 2:
        strict = [p for p in points
                  if min(_barycentric(p, a_vec, b_vec)) > 1e-7]
        if len(strict) == 2:
            raise AmbiguousIntersection(
                "both circle intersections are interior; input is inconsistent")

    x = max(points, key=lambda p: p.norm_sq())
    bary = _barycentric(x, a_vec, b_vec)
    if min(bary) < -BARY_TOL:
        raise NoInteriorIntersection(
            f"circle intersection lies outside the triangle: barycentric {bary}")

    rotated_distances = (x.distance_to(b_vec), x.distance_to(a_vec), x.norm())
    a_p, b_p, c_p = _rot3(rotated_distances, (3 - rot) % 3)
    residuals = closure_residuals(t, angles, (a_p, b_p, c_p))
    point = point_from_distances(t, a_p, b_p, c_p)
    return StarSolution(a_p, b_p, c_p, point, residuals)
