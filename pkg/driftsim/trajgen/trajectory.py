"""Planar desired trajectories built from superposed sigmoid segments.

Heading and speed are a base value plus the sum of segment contributions.
Velocity follows from ``v * (cos phi, sin phi) + frame_velocity``; position
is the integral of velocity, accumulated panel by panel and cached.
"""
import logging
import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings
from scipy.optimize import bisect, minimize_scalar

from core.exceptions import TransitionInfeasible
from core.geometry import vec2, vec3

from .sigmoid import HEADING, SPEED, default_epsilon, tau_f_min_heading

logger = logging.getLogger(__name__)

GAUSS_ORDER = 8
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)
MAX_DELAYS = 8

TrajectorySample = namedtuple(
    'TrajectorySample', 'p v a jerk snap heading speed')


@dataclass
class PlannerLimits:
    a_max: float
    r_c: float
    v_c: float
    r_s: float
    dT_s: float
    epsilon: float = None

    def __post_init__(self):
        self.epsilon = default_epsilon(self.epsilon)
        if self.r_s <= self.r_c:
            raise ValueError('sensor range must exceed the clearance radius')

    @property
    def tau_f_min(self):
        """Minimum timespan of a half-turn at cruise speed."""
        return tau_f_min_heading(math.pi, self.v_c, self.a_max, self.epsilon)


@dataclass
class Trajectory:
    origin: np.ndarray
    epoch: float = 0.0
    heading0: float = 0.0
    speed0: float = 0.0
    frame_velocity: np.ndarray = field(default_factory=vec2)
    altitude: float = 0.0
    panel: float = 0.1
    segments: list = field(default_factory=list)

    def __post_init__(self):
        self.origin = np.asarray(self.origin, dtype=float)[:2].copy()
        self.frame_velocity = np.asarray(self.frame_velocity,
                                         dtype=float).copy()
        self._knots = [vec2()]

    # heading and speed

    def _sum(self, kind, t, order):
        base = self.heading0 if kind == HEADING else self.speed0
        total = (base if order == 0 else 0.0) + np.zeros(np.shape(t))
        for segment in self.segments:
            if segment.kind == kind:
                total = total + segment.contribution(t, order)
        if np.ndim(total) == 0:
            return float(total)
        return total

    def heading(self, t, order=0):
        return self._sum(HEADING, t, order)

    def speed(self, t, order=0):
        return self._sum(SPEED, t, order)

    @property
    def final_heading(self):
        return self.heading0 + sum(
            s.delta for s in self.segments if s.kind == HEADING)

    @property
    def final_speed(self):
        return self.speed0 + sum(
            s.delta for s in self.segments if s.kind == SPEED)

    @property
    def end_time(self):
        return max((s.t_end for s in self.segments), default=self.epoch)

    def pending(self, t, kind=None):
        return [s for s in self.segments
                if s.t_end > t and (kind is None or s.kind == kind)]

    # kinematics

    def _relative_velocity(self, t):
        phi = self.heading(t)
        v = self.speed(t)
        return np.stack((v * np.cos(phi), v * np.sin(phi)), axis=-1)

    def acceleration_norm(self, t):
        """Planar ||p''|| for scalar or array ``t``."""
        v = self.speed(t)
        v_dot = self.speed(t, 1)
        phi_dot = self.heading(t, 1)
        return np.hypot(v_dot, v * phi_dot)

    def _breakpoints(self, a, b):
        inner = sorted({edge for s in self.segments
                        for edge in (s.t0, s.t_end) if a < edge < b})
        return [a] + inner + [b]

    def _integrate(self, a, b):
        total = vec2()
        if b <= a:
            return total
        points = self._breakpoints(a, b)
        for lo, hi in zip(points[:-1], points[1:]):
            half = 0.5 * (hi - lo)
            times = lo + half * (_NODES + 1.0)
            total = total + half * (_WEIGHTS @ self._relative_velocity(times))
        return total

    def displacement(self, t):
        """Integral of the heading/speed velocity from epoch to ``t``."""
        elapsed = t - self.epoch
        if elapsed <= 0:
            return vec2()
        index = int(math.floor(elapsed / self.panel))
        while len(self._knots) <= index:
            k = len(self._knots)
            lo = self.epoch + (k - 1) * self.panel
            self._knots.append(
                self._knots[-1] + self._integrate(lo, lo + self.panel))
        start = self.epoch + index * self.panel
        return self._knots[index] + self._integrate(start, t)

    def quadrature_error(self, t):
        """Richardson check of the cached panels against half-width panels."""
        coarse = self.displacement(t)
        fine = vec2()
        lo = self.epoch
        while lo < t:
            hi = min(lo + 0.5 * self.panel, t)
            fine = fine + self._integrate(lo, hi)
            lo = hi
        return float(np.linalg.norm(fine - coarse))

    def invalidate_after(self, t):
        keep = int(math.floor(max(t - self.epoch, 0.0) / self.panel)) + 1
        del self._knots[keep:]

    def add_segment(self, segment):
        self.invalidate_after(segment.t0)
        self.segments.append(segment)

    def fold(self, t):
        """Absorb segments that ended before the panel containing ``t``."""
        panel_start = self.epoch + math.floor(
            max(t - self.epoch, 0.0) / self.panel) * self.panel
        finished = [s for s in self.segments if s.t_end <= panel_start]
        for segment in finished:
            if segment.kind == HEADING:
                self.heading0 += segment.delta
            else:
                self.speed0 += segment.delta
            self.segments.remove(segment)
        return len(finished)

    def copy(self):
        clone = Trajectory(self.origin, self.epoch, self.heading0,
                           self.speed0, self.frame_velocity, self.altitude,
                           self.panel, list(self.segments))
        clone._knots = [k.copy() for k in self._knots]
        return clone


def sample_trajectory(traj, t):
    """Desired position and derivatives through fourth order at ``t``."""
    phi = traj.heading(t)
    phi1, phi2, phi3 = (traj.heading(t, n) for n in (1, 2, 3))
    v = traj.speed(t)
    v1, v2, v3 = (traj.speed(t, n) for n in (1, 2, 3))
    u = vec2(math.cos(phi), math.sin(phi))
    n = vec2(-math.sin(phi), math.cos(phi))

    A = v2 - v * phi1 ** 2
    B = 2.0 * v1 * phi1 + v * phi2
    A_dot = v3 - v1 * phi1 ** 2 - 2.0 * v * phi1 * phi2
    B_dot = 2.0 * v2 * phi1 + 3.0 * v1 * phi2 + v * phi3

    elapsed = t - traj.epoch
    planar_p = (traj.origin + traj.frame_velocity * elapsed
                + traj.displacement(t))
    planar_v = v * u + traj.frame_velocity
    planar_a = v1 * u + v * phi1 * n
    planar_j = A * u + B * n
    planar_s = (A_dot - B * phi1) * u + (B_dot + A * phi1) * n

    def lift3(xy, z=0.0):
        return vec3(xy[0], xy[1], z)

    return TrajectorySample(
        p=lift3(planar_p, traj.altitude), v=lift3(planar_v),
        a=lift3(planar_a), jerk=lift3(planar_j), snap=lift3(planar_s),
        heading=phi, speed=v)


def peak_acceleration(traj, t_from, t_to, step=0.01):
    """Largest ||p''|| on [t_from, t_to]: dense grid, then local refine."""
    if t_to <= t_from:
        return float(traj.acceleration_norm(t_from))
    count = max(int(math.ceil((t_to - t_from) / step)), 1) + 1
    times = np.linspace(t_from, t_to, count)
    norms = traj.acceleration_norm(times)
    peak = float(norms.max())
    interior = np.flatnonzero(
        (norms[1:-1] >= norms[:-2]) & (norms[1:-1] >= norms[2:])) + 1
    for index in interior[np.argsort(norms[interior])[::-1][:3]]:
        refined = minimize_scalar(
            lambda s: -float(traj.acceleration_norm(s)),
            bounds=(times[index - 1], times[index + 1]), method='bounded',
            options={'xatol': 1e-10})
        peak = max(peak, -float(refined.fun))
    return peak


def _window(traj, segment):
    return (segment.t0, max(segment.t_end, traj.end_time))


def _violation(traj, segment, a_max, step):
    candidate = traj.copy()
    candidate.segments.append(segment)
    t_from, t_to = _window(candidate, segment)
    return peak_acceleration(candidate, t_from, t_to, step) - a_max


def _stretch(traj, segment, a_max, step, upper=64.0):
    """Smallest timespan factor in [1, upper] that satisfies a_max."""
    def margin(scale):
        return -_violation(traj, segment.shifted(tau_f=segment.tau_f * scale),
                           a_max, step)

    if margin(1.0) >= -1e-9:
        return segment
    if margin(upper) < -1e-9:
        return None
    scale = bisect(lambda s: margin(s) + 1e-9, 1.0, upper, xtol=1e-6)
    for _ in range(20):
        if margin(scale) >= -1e-9:
            break
        scale += 1e-6
    else:
        scale = upper
    return segment.shifted(tau_f=segment.tau_f * scale)


def _candidates(traj, segment):
    """The segment as asked, then delayed past the current transitions and
    by whole timespans after that."""
    yield segment
    start = max(segment.t0, traj.end_time)
    for k in range(MAX_DELAYS + 1):
        t0 = start + k * segment.tau_f
        if t0 > segment.t0:
            yield segment.shifted(t0=t0)


def append_transition(traj, new_segment, t_now, limits, step=None):
    """Add ``new_segment`` so the summed trajectory keeps ||p''|| <= a_max.

    The segment is stretched first; if no stretch works it is delayed to
    the end of the current transitions, then further, and stretched again.
    Raises ``TransitionInfeasible`` when no candidate fits.
    """
    if new_segment.delta == 0:
        return traj
    if limits.a_max <= 0:
        raise TransitionInfeasible(
            f'a_max={limits.a_max:.3g} leaves no room for a transition')
    if step is None:
        step = settings.DRIFTSIM_ACCEL_CHECK_STEP
    segment = new_segment
    if segment.t0 < t_now:
        segment = segment.shifted(t0=t_now)

    for candidate in _candidates(traj, segment):
        accepted = _stretch(traj, candidate, limits.a_max, step)
        if accepted is not None:
            break
    else:
        raise TransitionInfeasible(
            f'{segment.kind} segment of {segment.delta:.3f} cannot satisfy '
            f'a_max={limits.a_max:.3f}')
    if accepted.t0 > segment.t0:
        logger.debug('%s segment delayed from %.2f to %.2f s',
                     segment.kind, segment.t0, accepted.t0)
    traj.add_segment(accepted)
    return traj
