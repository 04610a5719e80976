"""Cruise speed and clearance radius adapted to the wind.

A cruise speed is safe when, at the worst airspeed it can meet, drag still
leaves planar acceleration and a half-turn started at the edge of sensor
range finishes outside the clearance radius.
"""
import logging
import math
from dataclasses import dataclass

from django.conf import settings
from scipy.optimize import bisect

from core.exceptions import NoControlAuthority
from trajgen.sigmoid import tau_f_min_heading
from trajgen.trajectory import PlannerLimits

from .drift import authority_speed

logger = logging.getLogger(__name__)

INFEASIBLE = -1.0


@dataclass(frozen=True)
class ThrustBudget:
    f_planar_max: float
    K_d: float
    m: float

    def acceleration(self, airspeed):
        return (self.f_planar_max - self.K_d * airspeed ** 2) / self.m

    @property
    def authority_speed(self):
        return authority_speed(self.f_planar_max, self.K_d)


def reaction_margin(v_c, limits, budget, v_air_max_frame, v_o_max_frame):
    """Distance left over after the worst-case reaction; negative when
    ``v_c`` is unsafe."""
    a_max = budget.acceleration(v_c + v_air_max_frame)
    if a_max <= 0:
        return INFEASIBLE
    tau = tau_f_min_heading(math.pi, v_c, a_max, limits.epsilon)
    return (limits.r_s - limits.r_c
            - (v_c + v_o_max_frame) * (limits.dT_s + tau))


def cruise_velocity(limits, v_air_max_frame, v_o_max_frame, budget,
                    tolerance=None):
    """Largest safe cruise speed in the frame the limits are given for.

    The bracket ``[0, sqrt(f / K_d)]`` does not depend on the wind, so for
    monotone inputs the bisection visits the same midpoints and its answer
    is monotone as well.
    """
    if tolerance is None:
        tolerance = settings.DRIFTSIM_CRUISE_TOLERANCE

    def margin(v_c):
        return reaction_margin(v_c, limits, budget, v_air_max_frame,
                               v_o_max_frame)

    if margin(0.0) <= 0:
        raise NoControlAuthority(
            f'no safe cruise speed at airspeed {v_air_max_frame:.2f} m/s')
    return float(bisect(margin, 0.0, budget.authority_speed,
                        xtol=tolerance))


@dataclass(frozen=True)
class ClearanceSchedule:
    """``r_c = r_cv + r_ce`` with ``r_ce`` growing linearly with wind up
    to the operable wind speed."""
    r_cv: float
    r_ce_min: float
    r_ce_max: float
    v_w_op: float

    def __post_init__(self):
        if not 0 <= self.r_ce_min <= self.r_ce_max:
            raise ValueError('clearance margins must satisfy '
                             '0 <= r_ce_min <= r_ce_max')

    def margin(self, v_air_max):
        share = min(max(v_air_max / self.v_w_op, 0.0), 1.0)
        return self.r_ce_min + (self.r_ce_max - self.r_ce_min) * share

    def radius(self, v_air_max):
        return self.r_cv + self.margin(v_air_max)


def update_rc_vc(v_air_max, schedule, r_s, dT_s, budget, v_o_max=0.0,
                 epsilon=None, r_ce=None, v_air_max_frame=None):
    """Clearance margin, clearance radius and cruise speed for a wind
    bound.

    ``r_ce`` overrides the scheduled margin; ``v_air_max_frame`` is the
    airspeed bound of the planning frame when it is not inertial.
    """
    if epsilon is None:
        epsilon = settings.DRIFTSIM_EPSILON_S
    if r_ce is None:
        r_ce = schedule.margin(v_air_max)
    if v_air_max_frame is None:
        v_air_max_frame = v_air_max
    r_c = schedule.r_cv + r_ce
    limits = PlannerLimits(a_max=budget.acceleration(v_air_max_frame),
                           r_c=r_c, v_c=0.0, r_s=r_s, dT_s=dT_s,
                           epsilon=epsilon)
    v_c = cruise_velocity(limits, v_air_max_frame, v_o_max, budget)
    return r_ce, r_c, v_c


class ClearanceAdapter:
    """Keeps ``r_c`` from shrinking until a lower margin has been asked
    for continuously during ``hold_down`` seconds."""

    def __init__(self, schedule, r_s, dT_s, budget, v_o_max=0.0,
                 hold_down=None):
        self.schedule = schedule
        self.r_s = r_s
        self.dT_s = dT_s
        self.budget = budget
        self.v_o_max = v_o_max
        self.hold_down = (settings.DRIFTSIM_RC_HOLD_DOWN
                          if hold_down is None else hold_down)
        self.r_ce = None
        self.r_c = None
        self.v_c = None
        self._lower_since = None

    def _margin(self, t, wanted):
        if self.r_ce is None:
            return wanted
        if wanted >= self.r_ce:
            self._lower_since = None
            if wanted > self.r_ce:
                logger.debug('clearance radius raised to %.2f m at t=%.1f',
                             self.schedule.r_cv + wanted, t)
            return wanted
        if self._lower_since is None:
            self._lower_since = t
        if t - self._lower_since < self.hold_down:
            return self.r_ce
        self._lower_since = None
        logger.debug('clearance radius lowered to %.2f m at t=%.1f',
                     self.schedule.r_cv + wanted, t)
        return wanted

    def update(self, t, v_air_max, v_air_max_frame=None, v_o_max=None):
        """Returns ``(r_c, v_c)`` for the wind bound at time ``t``.

        The clearance margin follows the inertial bound ``v_air_max``; the
        cruise speed is solved for ``v_air_max_frame`` and ``v_o_max`` when
        planning in the drift frame.
        """
        self.r_ce = self._margin(t, self.schedule.margin(v_air_max))
        self.r_c = self.schedule.r_cv + self.r_ce
        _, _, self.v_c = update_rc_vc(
            v_air_max, self.schedule, self.r_s, self.dT_s, self.budget,
            self.v_o_max if v_o_max is None else v_o_max, r_ce=self.r_ce,
            v_air_max_frame=v_air_max_frame)
        return self.r_c, self.v_c
