"""Clearance-aware projection of sensed obstacle points.

Each sensed point is replaced by the point where a ray from the desired
position grazes the circle of radius r_c around it. When the vehicle is
already inside that circle the projection moves to the far side of the
circle, one degree off the line towards the obstacle.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from core.exceptions import CoincidentPoint, ZeroVector
from core.geometry import norm, rotate, sign, signed_angle

COINCIDENT = 1e-9
ONE_DEGREE = math.pi / 180.0
CCW = 'CCW'
CW = 'CW'


def _turn_sign(a, b):
    try:
        return sign(signed_angle(a, b))
    except ZeroVector:
        return 0.0


def project_point(p_d, v_d, p_ki, p_k_min, r_c):
    """Return ``(phi_e, p_star)`` for one sensed point."""
    p_d = np.asarray(p_d, dtype=float)[:2]
    p_ki = np.asarray(p_ki, dtype=float)[:2]
    r_i = p_ki - p_d
    r_min = np.asarray(p_k_min, dtype=float)[:2] - p_d
    distance = norm(r_i)
    if distance < COINCIDENT or norm(r_min) < COINCIDENT:
        raise CoincidentPoint('sensed point coincides with p_d')

    if distance > r_c:
        phi_e1 = signed_angle(r_min, r_i)
        k = sign(phi_e1)
        if k == 0:
            k = _turn_sign(r_min, v_d) or 1.0
        phi_e = phi_e1 + k * math.asin(r_c / distance)
        length = math.sqrt(distance ** 2 - r_c ** 2)
        p_star = p_d + length * rotate(r_min / norm(r_min), phi_e)
        return phi_e, p_star

    phi_pm1 = ONE_DEGREE * (_turn_sign(v_d, r_min) or 1.0)
    p_star = p_ki + r_c * rotate(-r_i / distance, phi_pm1)
    try:
        phi_e = signed_angle(r_min, p_star - p_d)
    except ZeroVector:
        phi_e = 0.0
    return phi_e, p_star


@dataclass
class ProjectedGeometry:
    p_star: list = field(default_factory=list)
    phi_e: list = field(default_factory=list)
    s1: np.ndarray = None
    s2: np.ndarray = None
    s3: np.ndarray = None
    s4: np.ndarray = None
    feasible_set: list = field(default_factory=list)
    circ_dir: str = CCW
    delta_phi: float = 0.0
    cluster_id: int = None
    violating: bool = False

    def contains(self, delta_phi, tolerance=1e-12):
        return any(lo - tolerance <= delta_phi <= hi + tolerance
                   for lo, hi in self.feasible_set)


def project_cluster(cluster, p_d, v_d, r_c):
    clearance = r_c + cluster.radius
    geometry = ProjectedGeometry(cluster_id=cluster.id)
    for point in cluster.points:
        phi_e, p_star = project_point(p_d, v_d, point, cluster.p_min,
                                      clearance)
        geometry.phi_e.append(phi_e)
        geometry.p_star.append(p_star)
    return geometry


def tangent_candidates(cluster, p_d, projected, r_c):
    """Fill ``s1..s4`` from the projections of e1, e2 and the nearest point.

    The vehicle-anchored branch applies when the nearest point violates
    the clearance.
    """
    p_d = np.asarray(p_d, dtype=float)[:2]
    clearance = r_c + cluster.radius
    p_e1 = projected.p_star[cluster.e1]
    p_e2 = projected.p_star[cluster.e2]
    p_min = projected.p_star[cluster.min_idx]
    violating = norm(cluster.p_min - p_d) < clearance
    anchor = p_d if violating else p_min
    projected.s1 = p_e1 - anchor
    projected.s2 = p_e1 - p_d
    projected.s3 = p_e2 - anchor
    projected.s4 = p_e2 - p_d
    projected.violating = violating
    return projected.s1, projected.s2, projected.s3, projected.s4
