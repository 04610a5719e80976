"""Clearance monitoring.

A distance below the core radius ``r_cv`` is a collision. A distance
between ``r_cv`` and ``r_c`` is a temporary clearance violation, which the
planner is expected to steer out of.
"""
import logging

import numpy as np

from .events import COLLISION, RC_VIOLATION, Event

logger = logging.getLogger(__name__)


def separations(positions, obstacles, t):
    """Distances to the nearest obstacle boundary and between vehicles."""
    positions = np.atleast_2d(np.asarray(positions, dtype=float))[:, :2]
    to_obstacles = np.array([
        min((obstacle.distance(p, t) for obstacle in obstacles),
            default=np.inf)
        for p in positions])
    between = np.linalg.norm(positions[:, None, :] - positions[None, :, :],
                             axis=-1)
    np.fill_diagonal(between, np.inf)
    return to_obstacles, between


def check_safety(positions, obstacles, r_cv, r_c, t=0.0, ids=None):
    """Collision and clearance events for one instant.

    Vehicle pairs collide below the sum of their core radii and are
    reported once, by the lower index.
    """
    if ids is None:
        ids = list(range(len(r_cv)))
    to_obstacles, between = separations(positions, obstacles, t)
    events = []
    for i, vehicle_id in enumerate(ids):
        distance = to_obstacles[i]
        if distance < r_cv[i]:
            events.append(Event(t, vehicle_id, COLLISION,
                                {'with': 'obstacle',
                                 'distance': round(float(distance), 6)}))
        elif distance < r_c[i]:
            events.append(Event(t, vehicle_id, RC_VIOLATION,
                                {'with': 'obstacle',
                                 'distance': round(float(distance), 6)}))
        for j in range(i + 1, len(ids)):
            distance = between[i, j]
            detail = {'with': ids[j], 'distance': round(float(distance), 6)}
            if distance < r_cv[i] + r_cv[j]:
                events.append(Event(t, vehicle_id, COLLISION, detail))
            elif distance < max(r_c[i], r_c[j]):
                events.append(Event(t, vehicle_id, RC_VIOLATION, detail))
    for event in events:
        if event.kind == COLLISION:
            logger.warning('t=%.2f vehicle %s collided with %s',
                           event.t, event.vehicle_id, event.detail['with'])
    return events
