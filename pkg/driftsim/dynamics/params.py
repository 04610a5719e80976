import math
from dataclasses import dataclass, field, replace

import numpy as np

from core.exceptions import ConfigInvalid
from core.geometry import vec3

RELATIVE_WIND_EPS = 1e-9


def _require(condition, path, message):
    if not condition:
        raise ConfigInvalid([(path, message)])


@dataclass(frozen=True)
class VehicleParams:
    """Physical and policy constants of one vehicle.

    ``thrust_derate`` and ``drag_scale`` model a weakened vehicle; planners
    and the rigid body both see ``thrust_limit``.
    """
    m: float
    J: np.ndarray
    f_max: float
    C_d: float
    A: np.ndarray
    r_cv: float
    v_w_op: float
    vehicle_id: int
    r_min: float = 0.0
    thrust_derate: float = 1.0
    drag_scale: float = 1.0
    drift_enabled: bool = True
    gravity: float = 9.81

    def __post_init__(self):
        J = np.asarray(self.J, dtype=float)
        if J.shape == (3,):
            J = np.diag(J)
        A = np.asarray(self.A, dtype=float)
        object.__setattr__(self, 'J', J)
        object.__setattr__(self, 'A', A)
        _require(self.m > 0, 'm', 'mass must be positive')
        _require(J.shape == (3, 3) and np.allclose(J, J.T), 'J',
                'inertia must be a symmetric 3x3 matrix')
        _require(np.all(np.linalg.eigvalsh(J) > 0), 'J',
                'inertia must be positive definite')
        _require(self.C_d > 0, 'C_d', 'drag coefficient must be positive')
        _require(A.shape == (3,) and np.all(A > 0), 'A',
                'reference areas must be three positive values')
        _require(self.r_cv > 0, 'r_cv', 'core clearance must be positive')
        _require(self.v_w_op > 0, 'v_w_op', 'operable wind must be positive')
        _require(self.vehicle_id >= 0, 'vehicle_id',
                'ID must be an unsigned integer')
        _require(0 < self.thrust_derate <= 1, 'thrust_derate',
                'derate must lie in (0, 1]')
        _require(self.drag_scale > 0, 'drag_scale',
                'drag scale must be positive')
        _require(self.thrust_limit > self.m * self.gravity, 'f_max',
                'vehicle cannot hover with this thrust')

    @property
    def thrust_limit(self):
        return self.f_max * self.thrust_derate

    @property
    def hover_thrust(self):
        return self.m * self.gravity

    @property
    def planar_thrust(self):
        """Largest horizontal force available while holding altitude."""
        return math.sqrt(self.thrust_limit ** 2 - self.hover_thrust ** 2)

    def with_changes(self, **changes):
        return replace(self, **changes)


@dataclass
class VehicleState:
    p: np.ndarray = field(default_factory=vec3)
    v: np.ndarray = field(default_factory=vec3)
    R_IB: np.ndarray = field(default_factory=lambda: np.eye(3))
    omega: np.ndarray = field(default_factory=vec3)

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        self.R_IB = np.asarray(self.R_IB, dtype=float)
        self.omega = np.asarray(self.omega, dtype=float)

    def copy(self):
        return VehicleState(self.p.copy(), self.v.copy(), self.R_IB.copy(),
                            self.omega.copy())

    def as_vector(self):
        return np.concatenate(
            (self.p, self.v, self.R_IB.ravel(), self.omega))

    @classmethod
    def from_vector(cls, x):
        return cls(x[0:3], x[3:6], x[6:15].reshape(3, 3), x[15:18])

    def is_finite(self):
        return bool(np.all(np.isfinite(self.as_vector())))


@dataclass(frozen=True)
class RelativeWind:
    v_w: np.ndarray
    x_W: np.ndarray
    magnitude: float

    @property
    def undefined(self):
        return self.magnitude < RELATIVE_WIND_EPS

    @classmethod
    def between(cls, velocity, v_air):
        v_w = np.asarray(velocity, dtype=float) - np.asarray(v_air,
                                                              dtype=float)
        magnitude = float(np.linalg.norm(v_w))
        if magnitude < RELATIVE_WIND_EPS:
            return cls(v_w, vec3(), magnitude)
        return cls(v_w, v_w / magnitude, magnitude)


@dataclass(frozen=True)
class DisturbanceInputs:
    """External force and torque added on top of the computed drag."""
    d_p: np.ndarray = field(default_factory=vec3)
    d_omega: np.ndarray = field(default_factory=vec3)

    def __post_init__(self):
        object.__setattr__(self, 'd_p', np.asarray(self.d_p, dtype=float))
        object.__setattr__(self, 'd_omega',
                           np.asarray(self.d_omega, dtype=float))


NO_DISTURBANCE = DisturbanceInputs()
