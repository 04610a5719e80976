import math

import numpy as np

from core.exceptions import DegenerateForce
from core.geometry import vec3, wrap_angle
from dynamics.rigid_body import euler_angles

TILT_LIMIT = math.radians(60.0)
TORQUE_AXES = np.array([1.0, -1.0, 1.0])


def clamp_tilt(force, tilt_limit=TILT_LIMIT):
    """Limit the angle from vertical, keeping the vertical component."""
    horizontal = math.hypot(force[0], force[1])
    max_horizontal = force[2] * math.tan(tilt_limit)
    if horizontal <= max_horizontal:
        return np.asarray(force, dtype=float)
    scale = max_horizontal / horizontal
    return vec3(force[0] * scale, force[1] * scale, force[2])


def attitude_from_force(desired_force, yaw_d, f_max, tilt_limit=TILT_LIMIT):
    """Thrust magnitude and (roll, pitch, yaw) that realise a force."""
    force = np.asarray(desired_force, dtype=float)
    if force[2] <= 0 or np.linalg.norm(force) == 0:
        raise DegenerateForce(f'desired force {force} has no lift')
    force = clamp_tilt(force, tilt_limit)
    magnitude = float(np.linalg.norm(force))
    b3 = force / magnitude
    course = vec3(math.cos(yaw_d), math.sin(yaw_d), 0.0)
    b2 = np.cross(b3, course)
    b2 /= np.linalg.norm(b2)
    b1 = np.cross(b2, b3)
    R_BI = np.column_stack((b1, b2, b3))
    return min(magnitude, f_max), euler_angles(R_BI.T)


def hover_attitude(yaw_d):
    return vec3(0.0, 0.0, yaw_d)


def attitude_error(q_d, q):
    error = np.asarray(q_d, dtype=float) - np.asarray(q, dtype=float)
    error[2] = wrap_angle(error[2])
    return error


def pid_torque(q_d, state, gains, rise, dt, integral_limit=0.5,
               derivative_filter=0.01):
    """Body torque from a PID on the Euler-angle error."""
    error = attitude_error(q_d, euler_angles(state.R_IB))
    previous = error if rise.previous_error_q is None else (
        rise.previous_error_q)
    rise.integral_q = np.clip(
        rise.integral_q + 0.5 * dt * (error + previous),
        -integral_limit, integral_limit)
    raw = (error - previous) / dt
    rise.derivative_q = rise.derivative_q + dt / (derivative_filter + dt) * (
        raw - rise.derivative_q)
    rise.previous_error_q = error
    u = (gains.k_p * error + gains.k_i * rise.integral_q
         + gains.k_d * rise.derivative_q)
    return TORQUE_AXES * u
