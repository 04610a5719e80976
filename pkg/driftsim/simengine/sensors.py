"""Range/bearing sensing of obstacles and in-range comms between vehicles."""
import math

import numpy as np
from django.conf import settings


def ray_directions(resolution_deg=None):
    if resolution_deg is None:
        resolution_deg = settings.DRIFTSIM_SCAN_RESOLUTION_DEG
    count = int(round(360.0 / resolution_deg))
    bearings = np.radians(np.arange(count) * resolution_deg)
    bearings = np.where(bearings > math.pi, bearings - 2 * math.pi,
                        bearings)
    return bearings, np.column_stack((np.cos(bearings), np.sin(bearings)))


def scan(position, obstacles, t, r_s, resolution_deg=None):
    """Nearest hit along each ray within ``r_s``.

    Returns ``(range, bearing, velocity)`` tuples; velocity is the velocity
    of the obstacle that produced the return.
    """
    if not obstacles:
        return []
    bearings, directions = ray_directions(resolution_deg)
    ranges = np.stack([obstacle.ray_ranges(position, directions, t)
                       for obstacle in obstacles])
    nearest = ranges.argmin(axis=0)
    best = ranges[nearest, np.arange(len(bearings))]
    returns = []
    for index in np.flatnonzero(best <= r_s):
        obstacle = obstacles[nearest[index]]
        returns.append((float(best[index]), float(bearings[index]),
                        obstacle.velocity.copy()))
    return returns


def peers_in_range(agent, agents, r_s):
    """Comms tuples of the other airborne vehicles within ``r_s``."""
    own = agent.position[:2]
    peers = []
    for other in agents:
        if other is agent or not other.airborne:
            continue
        if np.linalg.norm(other.position[:2] - own) <= r_s:
            peers.append(other.broadcast())
    return peers


def merge_recent(current, previous):
    """Keep peers that left range during the last period for one more
    period."""
    seen = {peer.vehicle_id for peer in current}
    held = [peer for peer in previous if peer.vehicle_id not in seen]
    return current + held, current

