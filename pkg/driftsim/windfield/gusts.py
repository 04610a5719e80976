import math
from dataclasses import dataclass

import numpy as np

from core.geometry import unit, vec2


@dataclass(frozen=True)
class GustEvent:
    """A one-minus-cosine gust front travelling along ``direction``."""
    amplitude: float
    direction: np.ndarray
    t_start: float
    duration: float
    origin: np.ndarray = None
    propagation_speed: float = math.inf
    front_width: float = math.inf

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError('gust amplitude must be non-negative')
        if self.duration <= 0:
            raise ValueError('gust duration must be positive')
        if self.propagation_speed <= 0:
            raise ValueError('gust propagation speed must be positive')
        object.__setattr__(self, 'direction', unit(self.direction))
        origin = vec2() if self.origin is None else self.origin
        object.__setattr__(self, 'origin', np.asarray(origin, dtype=float))

    def arrival_time(self, p):
        along = float(np.dot(np.asarray(p) - self.origin, self.direction))
        return self.t_start + max(along, 0.0) / self.propagation_speed

    def covers(self, p):
        if math.isinf(self.front_width):
            return True
        offset = np.asarray(p) - self.origin
        across = abs(offset[0] * self.direction[1]
                     - offset[1] * self.direction[0])
        return across <= self.front_width / 2.0

    @property
    def end_time(self):
        return self.t_start + self.duration


def gust_profile(event, p, t):
    if not event.covers(p):
        return vec2()
    elapsed = t - event.arrival_time(p)
    if elapsed < 0 or elapsed > event.duration:
        return vec2()
    envelope = 0.5 * (1.0 - math.cos(2.0 * math.pi * elapsed / event.duration))
    return event.amplitude * envelope * event.direction
