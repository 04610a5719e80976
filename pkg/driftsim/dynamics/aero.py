"""Quadratic aerodynamic drag with a projected-area model."""
import math

import numpy as np

from core.exceptions import UndefinedDirection
from core.geometry import lift, vec3

from .params import RELATIVE_WIND_EPS, RelativeWind


def drag_coefficient_Kd(params, x_W, rho):
    """K_d = 1/2 rho C_d A_eff with A_eff = sum_i A_i |x_W,i|.

    Only the direction of ``x_W`` matters.
    """
    if rho <= 0:
        raise ValueError('air density must be positive')
    x_W = np.asarray(x_W, dtype=float)
    length = np.linalg.norm(x_W)
    if length < RELATIVE_WIND_EPS:
        raise UndefinedDirection('relative wind direction is undefined')
    area = float(np.dot(params.A, np.abs(x_W))) / length
    return 0.5 * rho * params.C_d * area * params.drag_scale


def planar_drag_coefficient(params, rho):
    """Largest K_d over horizontal relative-wind directions."""
    area = math.hypot(params.A[0], params.A[1])
    return 0.5 * rho * params.C_d * area * params.drag_scale


def as_air_velocity(v_air):
    v_air = np.asarray(v_air, dtype=float)
    if v_air.shape == (2,):
        return lift(v_air)
    return v_air


def drag_force(params, state, v_air, rho):
    relative = RelativeWind.between(state.v, as_air_velocity(v_air))
    if relative.undefined:
        return vec3()
    K_d = drag_coefficient_Kd(params, relative.x_W, rho)
    return -K_d * relative.magnitude * relative.v_w
