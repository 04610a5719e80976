"""Planar vector and angle helpers shared by every app.

Planning works on the (x, y) part of the 3D state; altitude belongs to the
flight controller alone.
"""
import math
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from .exceptions import ZeroVector

ZERO_NORM = 1e-12


def vec2(x=0.0, y=0.0):
    return np.array([x, y], dtype=float)


def vec3(x=0.0, y=0.0, z=0.0):
    return np.array([x, y, z], dtype=float)


def planar(v):
    return np.asarray(v, dtype=float)[:2].copy()


def lift(v, z=0.0):
    return vec3(v[0], v[1], z)


def norm(v):
    return float(np.linalg.norm(v))


def unit(v):
    n = norm(v)
    if n <= ZERO_NORM:
        raise ZeroVector(f'vector {v} has zero norm')
    return np.asarray(v, dtype=float) / n


def heading_vector(angle):
    return vec2(math.cos(angle), math.sin(angle))


def cross2(a, b):
    return float(a[0] * b[1] - a[1] * b[0])


def wrap_angle(angle):
    """Угол в (-pi, pi]."""
    wrapped = math.atan2(math.sin(angle), math.cos(angle))
    if wrapped <= -math.pi:
        return math.pi
    return wrapped


def sign(x):
    if x > 0:
        return 1.0
    if x < 0:
        return -1.0
    return 0.0


def signed_angle(a, b):
    """Counterclockwise angle that rotates ``a`` onto ``b``, in (-pi, pi]."""
    if norm(a) <= ZERO_NORM or norm(b) <= ZERO_NORM:
        raise ZeroVector('signed_angle needs two nonzero vectors')
    angle = math.atan2(cross2(a, b), float(np.dot(a, b)))
    if angle == -math.pi:
        return math.pi
    return angle


def rotation_matrix(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def rotate(v, angle):
    return rotation_matrix(angle) @ np.asarray(v, dtype=float)


@dataclass(frozen=True)
class Rotation2:
    angle: float

    @property
    def matrix(self):
        return rotation_matrix(self.angle)

    def inverse(self):
        return Rotation2(-self.angle)

    def __matmul__(self, other):
        if isinstance(other, Rotation2):
            return Rotation2(self.angle + other.angle)
        return self.matrix @ np.asarray(other, dtype=float)


@dataclass(frozen=True)
class EnvironmentConstants:
    rho: float = 1.225
    g: np.ndarray = field(default_factory=lambda: vec3(0.0, 0.0, -9.81))

    def __post_init__(self):
        if self.rho <= 0:
            raise ValueError('air density must be positive')
        object.__setattr__(self, 'g', np.asarray(self.g, dtype=float))

    @property
    def gravity(self):
        return norm(self.g)

    @classmethod
    def from_settings(cls):
        env = settings.DRIFTSIM_ENV
        return cls(rho=env['rho'], g=vec3(*env['g']))
