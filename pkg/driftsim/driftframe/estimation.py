"""Wind estimation by inverting the drag model.

Whatever force the thrust and gravity do not explain is attributed to drag,
``d = -K_d(x_W) |v_w| v_w`` with ``v_w = p_dot - v_air``. Only the planar
part of the residual is used.
"""
import logging
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings
from scipy.optimize import fixed_point

from core.exceptions import NegligibleDrag, NonConverged
from core.geometry import lift, planar, vec2
from dynamics.aero import drag_coefficient_Kd

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 10


@dataclass(frozen=True)
class WindEstimate:
    v_air_tilde: np.ndarray = field(default_factory=vec2)
    residual: float = 0.0
    timestamp: float = 0.0
    v_air_max_tilde: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'v_air_tilde',
                           np.asarray(self.v_air_tilde, dtype=float))
        if not np.all(np.isfinite(self.v_air_tilde)):
            raise ValueError('wind estimate must be finite')
        if self.residual < 0:
            raise ValueError('residual is a norm')

    @property
    def speed(self):
        return float(np.linalg.norm(self.v_air_tilde))


def drag_residual(acceleration, applied_force, params, gravity):
    """Planar force left over after thrust and gravity."""
    total = params.m * np.asarray(acceleration, dtype=float)
    unexplained = (total - np.asarray(applied_force, dtype=float)
                   - params.m * np.asarray(gravity, dtype=float))
    return planar(unexplained)


def estimate_wind(velocity, acceleration, applied_force, params, env,
                  timestamp=0.0, min_drag=None):
    """Air velocity that explains the measured acceleration.

    The drag coefficient depends on the relative-wind direction, which
    carries the vertical speed of the vehicle, so the planar relative-wind
    speed ``s`` solves ``|d| = K_d(x_W(s)) |v_w(s)| s`` by fixed-point
    iteration.
    """
    if min_drag is None:
        min_drag = settings.DRIFTSIM_WIND_MIN_DRAG
    velocity = np.asarray(velocity, dtype=float)
    d = drag_residual(acceleration, applied_force, params, env.g)
    magnitude = float(np.linalg.norm(d))
    if magnitude < min_drag:
        raise NegligibleDrag(f'residual force {magnitude:.3g} N is below '
                             f'{min_drag:g} N')

    direction = -d / magnitude
    v_z = float(velocity[2]) if velocity.shape == (3,) else 0.0

    def relative_wind(s):
        return lift(direction * s, v_z)

    def update(s):
        v_w = relative_wind(s)
        speed = np.linalg.norm(v_w)
        K_d = drag_coefficient_Kd(params, v_w / speed, env.rho)
        return math.sqrt(magnitude * s / (K_d * speed))

    s0 = math.sqrt(magnitude / drag_coefficient_Kd(
        params, lift(direction), env.rho))
    try:
        s = float(fixed_point(update, s0, maxiter=MAX_ITERATIONS))
    except RuntimeError as error:
        raise NonConverged(str(error)) from error

    v_air = planar(velocity) - direction * s
    return WindEstimate(v_air, magnitude, timestamp, float(
        np.linalg.norm(v_air)))


class WindEstimator:
    """Filtered wind estimate of one vehicle.

    :meth:`update` takes the velocity at the end of each control period and
    the mean thrust vector applied over it; acceleration is the finite
    difference of consecutive velocities.
    """

    def __init__(self, params, env, tau=None, window=None):
        self.params = params
        self.env = env
        self.tau = settings.DRIFTSIM_WIND_FILTER_TAU if tau is None else tau
        self.window = (settings.DRIFTSIM_WIND_MAX_WINDOW
                       if window is None else window)
        self.estimate = WindEstimate()
        self._previous = None
        self._filtered = None
        self._history = deque()

    def _running_max(self, t, speed):
        while self._history and self._history[-1][1] <= speed:
            self._history.pop()
        self._history.append((t, speed))
        while self._history[0][0] < t - self.window:
            self._history.popleft()
        return self._history[0][1]

    def update(self, t, velocity, applied_force):
        velocity = np.asarray(velocity, dtype=float)
        if self._previous is None:
            self._previous = (t, velocity.copy())
            return self.estimate
        t_prev, v_prev = self._previous
        dt = t - t_prev
        if dt <= 0:
            return self.estimate
        self._previous = (t, velocity.copy())

        acceleration = (velocity - v_prev) / dt
        mean_velocity = 0.5 * (velocity + v_prev)
        try:
            raw = estimate_wind(mean_velocity, acceleration, applied_force,
                                self.params, self.env, t)
            measured, residual = raw.v_air_tilde, raw.residual
        except NegligibleDrag:
            measured, residual = planar(mean_velocity), 0.0
        except NonConverged:
            logger.warning('vehicle %s: wind estimate did not converge at '
                           't=%.2f, keeping the previous one',
                           self.params.vehicle_id, t)
            return self.estimate

        if self._filtered is None:
            self._filtered = measured.copy()
        else:
            alpha = dt / (self.tau + dt)
            self._filtered = self._filtered + alpha * (measured
                                                       - self._filtered)
        speed = float(np.linalg.norm(self._filtered))
        self.estimate = WindEstimate(self._filtered.copy(), residual, t,
                                     self._running_max(t, speed))
        return self.estimate
