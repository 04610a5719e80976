"""Drift mode: when to enter it and which frame to plan in.

In drift mode the planner works in a frame translating with ``v_drift``.
Relative to that frame the wind is weak enough to leave planar thrust for
manoeuvring; the inertial cruise speed becomes ``v_c^D + |v_drift|``.
"""
import logging
import math
from collections import namedtuple
from dataclasses import dataclass, field, replace

import numpy as np
from django.conf import settings

from core.exceptions import DegenerateWind
from core.geometry import norm, vec2

logger = logging.getLogger(__name__)

NORMAL = 'normal'
DRIFT = 'drift'
MODES = (NORMAL, DRIFT)
DEGENERATE_WIND = 1e-9

DriftFrame = namedtuple('DriftFrame',
                        'v_air obstacle_velocities velocity v_o_max')


@dataclass(frozen=True)
class DriftState:
    mode: str = NORMAL
    v_drift: np.ndarray = field(default_factory=vec2)
    v_air_max_D: float = 0.0
    v_o_max_D: float = 0.0
    v_c_D: float = 0.0
    r_c: float = 0.0
    r_ce: float = 0.0
    v_c: float = 0.0
    f_planar_max: float = 0.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f'unknown mode {self.mode!r}')
        v_drift = np.asarray(self.v_drift, dtype=float)
        object.__setattr__(self, 'v_drift', v_drift)
        if (self.mode == NORMAL) != (norm(v_drift) == 0.0):
            raise ValueError('drift velocity must vanish exactly in normal '
                             'mode')

    @property
    def drifting(self):
        return self.mode == DRIFT

    @property
    def drift_speed(self):
        return norm(self.v_drift)

    def with_changes(self, **changes):
        return replace(self, **changes)


def authority_speed(f_planar_max, K_d):
    """Airspeed at which drag uses up the whole planar thrust."""
    return math.sqrt(f_planar_max / K_d)


def drift_trigger(mode, v_air_max, f_planar_max, K_d, hysteresis=None):
    """Next mode given the worst recent airspeed."""
    if hysteresis is None:
        hysteresis = settings.DRIFTSIM_DRIFT_HYSTERESIS
    drag = K_d * v_air_max ** 2
    if mode == NORMAL and drag > f_planar_max:
        return DRIFT
    if mode == DRIFT and drag < hysteresis * f_planar_max:
        return NORMAL
    return mode


def drift_bounds(v_air_max, f_planar_max, K_d):
    """Admissible ``|v_drift|`` interval; also bounds the downwind part."""
    c = authority_speed(f_planar_max, K_d)
    return v_air_max - c, math.sqrt(v_air_max ** 2 + c ** 2)


def solve_drift_velocity(v_air, v_air_max, f_planar_max, K_d, reserve=0.0):
    """Smallest drift velocity that restores control authority.

    The drift is taken straight downwind with magnitude
    ``v_air_max - sqrt((1 - reserve) f / K_d)``. A positive ``reserve``
    keeps part of the planar thrust free for manoeuvring in the drift
    frame and still lands inside the admissible interval.
    """
    if not 0 <= reserve < 1:
        raise ValueError('reserve must lie in [0, 1)')
    lower, _ = drift_bounds(v_air_max, f_planar_max, K_d)
    if lower <= 0:
        return vec2()
    v_air = np.asarray(v_air, dtype=float)[:2]
    magnitude = norm(v_air)
    if magnitude < DEGENERATE_WIND:
        raise DegenerateWind('wind direction is undefined')
    speed = v_air_max - authority_speed((1.0 - reserve) * f_planar_max, K_d)
    return speed * v_air / magnitude


def to_drift_frame(v_drift, v_air, obstacle_velocities=(), velocity=None):
    """Galilean change to the frame moving with ``v_drift``.

    Stationary obstacles are the constraining case, so the worst obstacle
    speed seen in the drift frame is ``|v_drift|``.
    """
    v_drift = np.asarray(v_drift, dtype=float)
    v_air = np.asarray(v_air, dtype=float)[:2] - v_drift
    obstacles = [np.asarray(v, dtype=float)[:2] - v_drift
                 for v in obstacle_velocities]
    if velocity is None:
        frame_velocity = vec2()
    else:
        frame_velocity = np.asarray(velocity, dtype=float)[:2] - v_drift
    return DriftFrame(v_air, obstacles, frame_velocity, norm(v_drift))
