import logging
import math

import numpy as np
from django.conf import settings

from core.exceptions import DegenerateForce
from core.geometry import vec3

from .attitude import attitude_from_force, hover_attitude, pid_torque
from .gains import ControlCommand, RiseState
from .rise import reanchor, rise_force

logger = logging.getLogger(__name__)


class FlightController:
    """Cascaded controller of one vehicle.

    :meth:`outer` runs at the control period and fixes thrust and attitude
    set-points; :meth:`inner` is called on every integration substep and
    turns the attitude error into torque.
    """

    def __init__(self, params, gains, env):
        self.params = params
        self.gains = gains
        self.env = env
        self.rise = RiseState()
        self.command = ControlCommand(params.hover_thrust,
                                      hover_attitude(0.0), vec3())
        self.saturated = False
        self.degenerate = False
        self.tilt_limit = math.radians(settings.DRIFTSIM_TILT_LIMIT_DEG)
        self.deadband = settings.DRIFTSIM_SIGN_DEADBAND
        self.integral_limit = settings.DRIFTSIM_PID_INTEGRAL_LIMIT
        self.derivative_filter = settings.DRIFTSIM_PID_DERIVATIVE_FILTER

    def activate(self, state, sample):
        reanchor(self.rise, state, sample, self.gains)

    def reanchor(self, state, sample, disturbance=None):
        nu = None
        if disturbance is not None:
            nu = self.rise.nu.copy()
            nu[:2] = -np.asarray(disturbance, dtype=float)[:2]
        reanchor(self.rise, state, sample, self.gains, nu=nu)
        logger.debug('vehicle %s controller re-anchored',
                     self.params.vehicle_id)

    def outer(self, state, sample, yaw_d, dt):
        force, self.rise = rise_force(
            state, sample, self.gains, self.rise, dt, self.params.m,
            self.env.g, self.deadband)
        limit = self.params.thrust_limit
        try:
            f_cmd, q_d = attitude_from_force(force, yaw_d, limit,
                                             self.tilt_limit)
            self.degenerate = False
            self.saturated = bool(np.linalg.norm(force) > limit)
        except DegenerateForce:
            logger.warning('vehicle %s: desired force %s has no lift, '
                           'holding hover attitude',
                           self.params.vehicle_id, force)
            f_cmd, q_d = self.params.hover_thrust, hover_attitude(yaw_d)
            self.degenerate = True
            self.saturated = False
        self.command = ControlCommand(f_cmd, q_d, self.command.u)
        return self.command

    def inner(self, state, dt):
        u = pid_torque(self.command.q_d, state, self.gains, self.rise, dt,
                       self.integral_limit, self.derivative_filter)
        self.command = self.command.with_torque(u)
        return self.command
