"""Hyperbolic-tangent transitions in heading or speed.

A segment moves a quantity from ``x_prev`` to ``x_new`` over ``tau_f``
seconds starting at ``t0``. Outside that window it contributes a constant,
so endpoint values are exact and derivative jumps at the window edges are
bounded by ``2 * epsilon`` of the peak rate.
"""
import math
from dataclasses import dataclass

import numpy as np
from django.conf import settings

from core.exceptions import TooShort

HEADING = 'heading'
SPEED = 'speed'
KINDS = (HEADING, SPEED)


def default_epsilon(epsilon=None):
    return settings.DRIFTSIM_EPSILON_S if epsilon is None else epsilon


def saturation(epsilon=None):
    epsilon = default_epsilon(epsilon)
    return math.atanh(1.0 - epsilon)


def tau_f_min_heading(delta_phi, speed, a_max, epsilon=None):
    """Shortest heading transition whose centripetal peak equals a_max."""
    epsilon = default_epsilon(epsilon)
    if a_max <= 0:
        return math.inf
    return (abs(delta_phi) * saturation(epsilon) * abs(speed)
            / ((1.0 - epsilon) * a_max))


def tau_f_min_speed(delta_v, a_max, epsilon=None):
    epsilon = default_epsilon(epsilon)
    if a_max <= 0:
        return math.inf
    return abs(delta_v) * saturation(epsilon) / ((1.0 - epsilon) * a_max)


@dataclass(frozen=True)
class SigmoidSegment:
    kind: str
    x_prev: float
    x_new: float
    t0: float
    tau_f: float
    epsilon: float = None

    def __post_init__(self):
        object.__setattr__(self, 'epsilon', default_epsilon(self.epsilon))
        if self.kind not in KINDS:
            raise ValueError(f'unknown segment kind {self.kind!r}')
        if self.tau_f <= 0:
            raise TooShort('segment timespan must be positive')

    @property
    def delta(self):
        return self.x_new - self.x_prev

    @property
    def c3(self):
        return saturation(self.epsilon)

    @property
    def c2(self):
        return 2.0 * self.c3 / self.tau_f

    @property
    def c1(self):
        return self.delta / (2.0 * (1.0 - self.epsilon))

    @property
    def c4(self):
        return 0.5 * (self.x_new + self.x_prev)

    @property
    def t_end(self):
        return self.t0 + self.tau_f

    @property
    def peak_rate(self):
        return abs(self.c1 * self.c2)

    def shifted(self, t0=None, tau_f=None):
        return SigmoidSegment(
            self.kind, self.x_prev, self.x_new,
            self.t0 if t0 is None else t0,
            self.tau_f if tau_f is None else tau_f, self.epsilon)

    def contribution(self, t, order=0):
        """Change from ``x_prev`` (order 0) or its time derivative.

        Accepts scalars or numpy arrays of times.
        """
        t = np.asarray(t, dtype=float)
        inside = (t > self.t0) & (t < self.t_end)
        T = np.tanh(self.c2 * (t - self.t0) - self.c3)
        s = 1.0 - T ** 2
        k = self.c1 * self.c2 ** order
        if order == 0:
            value = self.c1 * T + self.c4 - self.x_prev
            result = np.where(t >= self.t_end, self.delta,
                              np.where(inside, value, 0.0))
        else:
            if order == 1:
                shape = s
            elif order == 2:
                shape = -2.0 * T * s
            elif order == 3:
                shape = (6.0 * T ** 2 - 2.0) * s
            elif order == 4:
                shape = (16.0 * T - 24.0 * T ** 3) * s
            else:
                raise ValueError('derivatives are available up to order 4')
            result = np.where(inside, k * shape, 0.0)
        if result.ndim == 0:
            return float(result)
        return result

    def value(self, t):
        return self.x_prev + self.contribution(t)


def fit_sigmoid(x_prev, x_new, tau_f, kind, t0=0.0, tau_f_min=0.0,
                epsilon=None):
    """Segment with exact endpoints; ``TooShort`` below ``tau_f_min``."""
    if tau_f < tau_f_min - 1e-12 or tau_f <= 0:
        raise TooShort(f'tau_f={tau_f:.4f} s is below the minimum '
                       f'{tau_f_min:.4f} s')
    return SigmoidSegment(kind, float(x_prev), float(x_new), float(t0),
                          float(tau_f), epsilon)
