"""Static and moving obstacles: discs and convex or concave polygons."""
from dataclasses import dataclass, field

import numpy as np

from core.geometry import vec2


@dataclass(frozen=True)
class DiscObstacle:
    center: np.ndarray
    radius: float
    velocity: np.ndarray = field(default_factory=vec2)

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError('disc radius must be positive')
        object.__setattr__(self, 'center',
                           np.asarray(self.center, dtype=float))
        object.__setattr__(self, 'velocity',
                           np.asarray(self.velocity, dtype=float))

    def center_at(self, t):
        return self.center + self.velocity * t

    def distance(self, p, t):
        """Distance from ``p`` to the boundary, negative inside."""
        return float(np.linalg.norm(np.asarray(p)[:2] - self.center_at(t))
                     - self.radius)

    def ray_ranges(self, origin, directions, t):
        """Range along each unit direction to the first hit, inf on miss."""
        offset = np.asarray(origin, dtype=float)[:2] - self.center_at(t)
        b = directions @ offset
        c = offset @ offset - self.radius ** 2
        disc = b ** 2 - c
        ranges = np.full(len(directions), np.inf)
        hit = disc >= 0
        root = np.sqrt(np.where(hit, disc, 0.0))
        near = -b - root
        far = -b + root
        inside = c <= 0
        ranges = np.where(hit & (near >= 0), near, ranges)
        ranges = np.where(hit & inside, np.maximum(far, 0.0), ranges)
        return ranges


@dataclass(frozen=True)
class PolygonObstacle:
    vertices: np.ndarray
    velocity: np.ndarray = field(default_factory=vec2)

    def __post_init__(self):
        vertices = np.asarray(self.vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != 2 or len(vertices) < 3:
            raise ValueError('a polygon needs at least three 2D vertices')
        object.__setattr__(self, 'vertices', vertices)
        object.__setattr__(self, 'velocity',
                           np.asarray(self.velocity, dtype=float))

    def vertices_at(self, t):
        return self.vertices + self.velocity * t

    def edges(self, t):
        start = self.vertices_at(t)
        return start, np.roll(start, -1, axis=0)

    def contains(self, p, t):
        """Even-odd rule."""
        x, y = np.asarray(p, dtype=float)[:2]
        a, b = self.edges(t)
        crosses = (a[:, 1] > y) != (b[:, 1] > y)
        with np.errstate(divide='ignore', invalid='ignore'):
            x_cross = a[:, 0] + (y - a[:, 1]) * (b[:, 0] - a[:, 0]) / (
                b[:, 1] - a[:, 1])
        return bool(np.count_nonzero(crosses & (x < x_cross)) % 2)

    def distance(self, p, t):
        p = np.asarray(p, dtype=float)[:2]
        a, b = self.edges(t)
        edge = b - a
        length2 = np.einsum('ij,ij->i', edge, edge)
        s = np.clip(np.einsum('ij,ij->i', p - a, edge) / length2, 0.0, 1.0)
        nearest = a + s[:, None] * edge
        gap = float(np.min(np.linalg.norm(p - nearest, axis=1)))
        return -gap if self.contains(p, t) else gap

    def ray_ranges(self, origin, directions, t):
        origin = np.asarray(origin, dtype=float)[:2]
        a, b = self.edges(t)
        edge = b - a
        to_start = a - origin
        denominator = (directions[:, :1] * edge[:, 1]
                       - directions[:, 1:] * edge[:, 0])
        with np.errstate(divide='ignore', invalid='ignore'):
            along = (to_start[:, 0] * edge[:, 1]
                     - to_start[:, 1] * edge[:, 0]) / denominator
            s = (to_start[:, 0] * directions[:, 1:]
                 - to_start[:, 1] * directions[:, :1]) / denominator
        valid = ((np.abs(denominator) > 1e-12) & (along >= 0)
                 & (s >= 0) & (s <= 1))
        return np.where(valid, along, np.inf).min(axis=1)
