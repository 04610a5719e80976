"""Course-change selection around sensed obstacles and yielding peers."""
import logging
import math

import numpy as np
from django.conf import settings

from core.exceptions import NoFeasibleCourse
from core.geometry import heading_vector, norm, wrap_angle

from .projection import (CCW, CW, ProjectedGeometry, project_cluster,
                         tangent_candidates)

logger = logging.getLogger(__name__)

TIE = 1e-9


def _unit_rows(vectors):
    lengths = np.linalg.norm(vectors, axis=1)
    safe = np.where(lengths > 1e-9, lengths, 1.0)
    return vectors / safe[:, None], lengths


def blocked_directions(directions, cluster, p_d, v_c, r_c):
    """Mask of unit ``directions`` whose motion closes on the cluster
    within its clearance."""
    clearance = r_c + cluster.radius
    r = cluster.points - p_d
    w_hat, w_norm = _unit_rows(v_c * directions - cluster.velocity)
    along = w_hat @ r.T
    lateral = np.abs(w_hat[:, :1] * r[:, 1] - w_hat[:, 1:] * r[:, 0])
    inside = np.linalg.norm(r, axis=1) <= clearance
    closing = ((along > 0) & (lateral < clearance)
               & (w_norm[:, None] > 1e-9) & ~inside)
    escaping_wrong_way = (directions @ r.T > 0) & inside
    return np.any(closing | escaping_wrong_way, axis=1)


def time_to_violation(cluster, p_d, direction, v_c, r_c):
    clearance = r_c + cluster.radius
    r = cluster.points - p_d
    if np.any(np.linalg.norm(r, axis=1) <= clearance):
        return 0.0
    w = v_c * direction - cluster.velocity
    speed = norm(w)
    if speed <= 1e-9:
        return math.inf
    w_hat = w / speed
    along = r @ w_hat
    lateral = np.abs(w_hat[0] * r[:, 1] - w_hat[1] * r[:, 0])
    hits = (along > 0) & (lateral < clearance)
    if not np.any(hits):
        return math.inf
    entry = along[hits] - np.sqrt(clearance ** 2 - lateral[hits] ** 2)
    return float(max(entry.min(), 0.0) / speed)


def _intervals(offsets, feasible):
    intervals = []
    start = None
    for offset, ok in zip(offsets, feasible):
        if ok and start is None:
            start = offset
        if ok:
            end = offset
        if not ok and start is not None:
            intervals.append((start, end))
            start = None
    if start is not None:
        intervals.append((start, end))
    return intervals


def _traverse_cost(direction, clusters, p_d, goal, commit, r_c):
    """Distance along ``direction`` until abreast of the obstacle points it
    passes, then straight to the goal."""
    travel = commit
    for cluster in clusters:
        r = cluster.points - p_d
        along = r @ direction
        lateral = np.abs(direction[0] * r[:, 1] - direction[1] * r[:, 0])
        near = (along > 0) & (lateral < 2.0 * (r_c + cluster.radius))
        if np.any(near):
            travel = max(travel, float(along[near].max()))
    return travel + norm(goal - (p_d + travel * direction))


def _choose(offsets, costs):
    best = None
    for offset, cost in zip(offsets, costs):
        if best is None:
            best = (offset, cost)
            continue
        if cost < best[1] - TIE:
            best = (offset, cost)
        elif abs(cost - best[1]) <= TIE:
            if abs(offset) < abs(best[0]) - 1e-12:
                best = (offset, cost)
            elif abs(abs(offset) - abs(best[0])) <= 1e-12 and offset > best[0]:
                best = (offset, cost)
    return best[0]


def plan_course_change(clusters, context, limits, resolution_deg=None):
    """Pick the heading change for the current sensing period.

    Offsets are measured from ``context.heading``. The feasible set is the
    intersection over all clusters; geometry is reported for the cluster
    the current course would violate first.
    """
    if limits.a_max <= 0:
        raise NoFeasibleCourse('no acceleration authority for a course '
                               'change')
    if resolution_deg is None:
        resolution_deg = settings.DRIFTSIM_SWEEP_RESOLUTION_DEG
    p_d = np.asarray(context.p_d, dtype=float)[:2]
    goal = np.asarray(context.goal, dtype=float)[:2]
    heading = context.heading
    v_c, r_c = limits.v_c, limits.r_c
    to_goal = goal - p_d
    goal_offset = None
    if norm(to_goal) > 1e-9:
        goal_offset = wrap_angle(
            math.atan2(to_goal[1], to_goal[0]) - heading)

    if not clusters:
        offset = 0.0 if goal_offset is None else goal_offset
        return ProjectedGeometry(
            feasible_set=[(-math.pi, math.pi)], delta_phi=offset,
            circ_dir=CW if offset < 0 else CCW)

    v_d = context.v_d
    if v_d is None:
        v_d = v_c * heading_vector(heading)
    current = heading_vector(heading)
    imminent = min(clusters, key=lambda c: (
        time_to_violation(c, p_d, current, v_c, r_c),
        norm(c.p_min - p_d)))
    geometry = project_cluster(imminent, p_d, v_d, r_c)
    tangent_candidates(imminent, p_d, geometry, r_c)

    steps = int(round(180.0 / resolution_deg))
    offsets = list(np.radians(np.arange(-steps + 1, steps + 1)
                              * resolution_deg))
    extras = [] if goal_offset is None else [goal_offset]
    for tangent in (geometry.s1, geometry.s2, geometry.s3, geometry.s4):
        if norm(tangent) > 1e-9:
            extras.append(wrap_angle(
                math.atan2(tangent[1], tangent[0]) - heading))
    offsets = np.array(sorted(set(offsets) | set(extras)))
    angles = heading + offsets
    directions = np.column_stack((np.cos(angles), np.sin(angles)))

    blocked = np.zeros(len(offsets), dtype=bool)
    for cluster in clusters:
        blocked |= blocked_directions(directions, cluster, p_d, v_c, r_c)
    feasible = ~blocked
    geometry.feasible_set = _intervals(offsets, feasible)
    if not geometry.feasible_set:
        logger.info('no feasible course at %s around cluster %s',
                    p_d, imminent.id)
        raise NoFeasibleCourse('every course change is blocked',
                               geometry=geometry)

    commit = max(v_c * limits.dT_s, r_c)
    candidates = offsets[feasible]
    costs = [_traverse_cost(directions[i], clusters, p_d, goal, commit, r_c)
             for i in np.flatnonzero(feasible)]
    geometry.delta_phi = float(_choose(candidates, costs))
    geometry.circ_dir = CW if geometry.delta_phi < 0 else CCW
    return geometry
