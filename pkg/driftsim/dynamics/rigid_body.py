"""Six degree of freedom rigid body integrated with classic RK4.

State ordering is p, v, R_IB (row-major) and omega. R_IB maps inertial
vectors into the body frame, so thrust along body z appears in the
inertial frame as R_IB.T @ (0, 0, f).
"""
import logging

import numpy as np
from scipy.spatial.transform import Rotation

from core.exceptions import NonFiniteState
from core.geometry import vec3

from .aero import as_air_velocity, drag_force
from .params import NO_DISTURBANCE, VehicleState

logger = logging.getLogger(__name__)


def hat(w):
    return np.array([
        [0.0, -w[2], w[1]],
        [w[2], 0.0, -w[0]],
        [-w[1], w[0], 0.0],
    ])


def reorthonormalize(R):
    u, _, vt = np.linalg.svd(R)
    fixed = u @ vt
    if np.linalg.det(fixed) < 0:
        u[:, -1] *= -1
        fixed = u @ vt
    return fixed


def saturate_thrust(f_cmd, params):
    return float(np.clip(f_cmd, 0.0, params.thrust_limit))


def thrust_vector(R_IB, f_cmd):
    return R_IB.T @ vec3(0.0, 0.0, f_cmd)


def euler_angles(R_IB):
    """(roll, pitch, yaw) with pitch positive nose-up.

    Yaw and roll follow the usual ZYX sequence; pitch is the negated ZYX
    rotation about body y, so tilting thrust towards +x gives negative
    pitch.
    """
    yaw, theta, roll = Rotation.from_matrix(R_IB.T).as_euler('ZYX')
    return np.array([roll, -theta, yaw])


def rotation_from_euler(q):
    """Inverse of :func:`euler_angles`; returns R_IB."""
    roll, pitch, yaw = q
    R_BI = Rotation.from_euler('ZYX', [yaw, -pitch, roll]).as_matrix()
    return R_BI.T


def _derivative(x, params, f_cmd, torque, air, dist, rho, gravity):
    state = VehicleState.from_vector(x)
    force = (thrust_vector(state.R_IB, f_cmd) + params.m * gravity
             + drag_force(params, state, air, rho) + dist.d_p)
    J = params.J
    omega = state.omega
    omega_dot = np.linalg.solve(
        J, -np.cross(omega, J @ omega) + torque + state.R_IB @ dist.d_omega)
    R_dot = -hat(omega) @ state.R_IB
    return np.concatenate((state.v, force / params.m, R_dot.ravel(),
                           omega_dot))


def step(state, params, command, wind, dist=NO_DISTURBANCE, dt=0.01,
         env=None):
    """Advance one vehicle by ``dt`` holding the command and wind fixed."""
    if dt <= 0:
        raise ValueError('dt must be positive')
    rho = 1.225 if env is None else env.rho
    gravity = vec3(0.0, 0.0, -params.gravity) if env is None else env.g
    f_cmd = saturate_thrust(command.f_cmd, params)
    torque = np.asarray(command.u, dtype=float)
    air = as_air_velocity(wind)
    args = (params, f_cmd, torque, air, dist, rho, gravity)

    x = state.as_vector()
    k1 = _derivative(x, *args)
    k2 = _derivative(x + 0.5 * dt * k1, *args)
    k3 = _derivative(x + 0.5 * dt * k2, *args)
    k4 = _derivative(x + dt * k3, *args)
    x_next = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)

    if not np.all(np.isfinite(x_next)):
        logger.error('non-finite state after step: %s', x_next)
        raise NonFiniteState('rigid body state became non-finite')
    result = VehicleState.from_vector(x_next)
    result.R_IB = reorthonormalize(result.R_IB)
    return result
