from dataclasses import dataclass, field

import numpy as np

from core.exceptions import ConfigInvalid
from core.geometry import vec3


@dataclass(frozen=True)
class ControlGains:
    alpha1: float = 0.1
    alpha2: float = 1.0
    k_s: float = 0.05
    beta: float = 0.25
    k_p: float = 0.25
    k_i: float = 0.05
    k_d: float = 0.04

    def __post_init__(self):
        errors = []
        if self.k_s <= 0:
            errors.append(('k_s', 'must be positive'))
        if self.alpha2 <= 0.5:
            errors.append(('alpha2', 'must exceed 1/2'))
        for name in ('k_p', 'k_i', 'k_d'):
            if getattr(self, name) <= 0:
                errors.append((name, 'must be positive'))
        if self.alpha1 < 0 or self.beta < 0:
            errors.append(('alpha1', 'alpha1 and beta must be non-negative'))
        if errors:
            raise ConfigInvalid(errors)


@dataclass
class RiseState:
    """Integrator memory of the outer and inner loops."""
    nu: np.ndarray = field(default_factory=vec3)
    e2_initial: np.ndarray = field(default_factory=vec3)
    integral_q: np.ndarray = field(default_factory=vec3)
    previous_error_q: np.ndarray = None
    derivative_q: np.ndarray = field(default_factory=vec3)


@dataclass(frozen=True)
class ControlCommand:
    f_cmd: float
    q_d: np.ndarray
    u: np.ndarray

    def with_torque(self, u):
        return ControlCommand(self.f_cmd, self.q_d, u)
