"""Grouping of range/bearing returns into obstacle clusters."""
import math
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from core.geometry import vec2, wrap_angle


@dataclass
class ObstacleCluster:
    id: int
    points: np.ndarray
    velocity: np.ndarray = field(default_factory=vec2)
    e1: int = 0
    e2: int = 0
    min_idx: int = 0
    radius: float = 0.0

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        if len(self.points) == 0:
            raise ValueError('an obstacle cluster needs at least one point')
        self.velocity = np.asarray(self.velocity, dtype=float)

    @property
    def centroid(self):
        return self.points.mean(axis=0)

    @property
    def p_min(self):
        return self.points[self.min_idx]

    def nearest_to(self, p_d):
        self.min_idx = int(np.argmin(
            np.linalg.norm(self.points - np.asarray(p_d)[:2], axis=1)))
        return self

    def in_frame(self, frame_velocity):
        """Same cluster seen from a frame moving at ``frame_velocity``."""
        return ObstacleCluster(self.id, self.points.copy(),
                               self.velocity - frame_velocity, self.e1,
                               self.e2, self.min_idx, self.radius)

    @classmethod
    def from_peer(cls, peer, p_d):
        return cls(id=-peer.vehicle_id, points=[peer.p],
                   velocity=peer.velocity, radius=peer.r_c).nearest_to(p_d)


def _split(scan, range_gap, bearing_gap):
    groups = [[scan[0]]]
    for previous, current in zip(scan[:-1], scan[1:]):
        if (abs(current[0] - previous[0]) > range_gap
                or current[1] - previous[1] > bearing_gap):
            groups.append([])
        groups[-1].append(current)
    if len(groups) > 1:
        first, last = groups[0][0], groups[-1][-1]
        wrap = wrap_angle(first[1] - last[1])
        if 0 <= wrap <= bearing_gap and abs(first[0] - last[0]) <= range_gap:
            groups[0] = groups.pop() + groups[0]
    return groups


class ClusterTracker:
    """Keeps local cluster ids stable between scans."""

    def __init__(self, gate=3.0):
        self.gate = gate
        self.previous = {}
        self.next_id = 1

    def assign(self, centroids, dT_s):
        ids, velocities = [], []
        free = dict(self.previous)
        for centroid in centroids:
            match = None
            if free:
                best = min(free, key=lambda k: np.linalg.norm(
                    free[k] - centroid))
                if np.linalg.norm(free[best] - centroid) <= self.gate:
                    match = best
            if match is None:
                match = self.next_id
                self.next_id += 1
                velocities.append(vec2())
            else:
                velocities.append((centroid - free.pop(match)) / dT_s)
            ids.append(match)
        self.previous = dict(zip(ids, centroids))
        return ids, velocities


def cluster_obstacles(scan, origin, p_d=None, tracker=None, dT_s=1.0,
                      range_gap=None, bearing_gap=None):
    """Clusters from a scan of ``(range, bearing[, velocity])`` returns.

    Returns are converted to inertial points around ``origin``. A third
    tuple element is a measured obstacle velocity and takes precedence over
    the tracker's finite difference.
    """
    if not scan:
        return []
    if range_gap is None:
        range_gap = settings.DRIFTSIM_CLUSTER_RANGE_GAP
    if bearing_gap is None:
        bearing_gap = math.radians(settings.DRIFTSIM_CLUSTER_BEARING_GAP_DEG)
    origin = np.asarray(origin, dtype=float)[:2]
    reference = origin if p_d is None else np.asarray(p_d, dtype=float)[:2]
    scan = sorted(scan, key=lambda item: item[1])

    groups = _split(scan, range_gap, bearing_gap)
    point_sets = []
    for group in groups:
        point_sets.append(np.array([
            origin + r * np.array([math.cos(b), math.sin(b)])
            for r, b, *_ in group]))
    centroids = [points.mean(axis=0) for points in point_sets]
    if tracker is None:
        ids, velocities = list(range(1, len(groups) + 1)), [
            vec2() for _ in groups]
    else:
        ids, velocities = tracker.assign(centroids, dT_s)

    clusters = []
    for cluster_id, group, points, velocity in zip(
            ids, groups, point_sets, velocities):
        measured = [item[2] for item in group if len(item) > 2]
        if measured:
            velocity = np.mean(measured, axis=0)
        clusters.append(ObstacleCluster(
            id=cluster_id, points=points, velocity=velocity, e1=0,
            e2=len(points) - 1).nearest_to(reference))
    return clusters
