import logging
import math
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from core.geometry import norm, vec2

from .gusts import gust_profile
from .turbulence import synthesize_turbulence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MaskRegion:
    """Axis-aligned rectangle where the air is still."""
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def contains(self, p):
        return (self.x_min <= p[0] <= self.x_max
                and self.y_min <= p[1] <= self.y_max)


@dataclass
class WindField:
    mean: np.ndarray = field(default_factory=vec2)
    turbulence: object = None
    gusts: list = field(default_factory=list)
    mask_regions: list = field(default_factory=list)

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=float)
        self._grid = None
        if self.turbulence is not None:
            direction = (math.atan2(self.mean[1], self.mean[0])
                         if norm(self.mean) > 0 else 0.0)
            self._grid = synthesize_turbulence(self.turbulence, direction)

    @classmethod
    def uniform(cls, mean):
        return cls(mean=vec2(*mean))

    @property
    def grid(self):
        return self._grid

    def masked(self, p):
        return any(region.contains(p) for region in self.mask_regions)

    def turbulence_at(self, p, t):
        if self._grid is None:
            return vec2()
        params = self.turbulence
        n = params.grid_size
        advected = (np.asarray(p, dtype=float) - self.mean * t) / params.cell
        x0, y0 = np.floor(advected)
        fx, fy = advected - (x0, y0)
        ix0, iy0 = int(x0) % n, int(y0) % n
        ix1, iy1 = (ix0 + 1) % n, (iy0 + 1) % n
        g = self._grid
        return ((1 - fx) * (1 - fy) * g[:, iy0, ix0]
                + fx * (1 - fy) * g[:, iy0, ix1]
                + (1 - fx) * fy * g[:, iy1, ix0]
                + fx * fy * g[:, iy1, ix1])

    def sample(self, p, t):
        return sample_wind(self, p, t)

    def max_gust_end(self):
        return max((gust.end_time for gust in self.gusts), default=0.0)


def sample_wind(field, p, t):
    """Planar air velocity at position ``p`` and time ``t``."""
    p = np.asarray(p, dtype=float)[:2]
    if field.masked(p):
        return vec2()
    wind = field.mean + field.turbulence_at(p, t)
    for event in field.gusts:
        wind = wind + gust_profile(event, p, t)
    return wind


def dump_grid(field, path):
    """Write the turbulence grid as x, y, u, v rows."""
    if field.grid is None:
        raise ValueError('wind field has no turbulence grid')
    params = field.turbulence
    coords = np.arange(params.grid_size) * params.cell
    xs, ys = np.meshgrid(coords, coords, indexing='xy')
    frame = pd.DataFrame({
        'x': xs.ravel(),
        'y': ys.ravel(),
        'u': field.grid[0].ravel(),
        'v': field.grid[1].ravel(),
    })
    frame.to_csv(path, index=False, float_format='%.6f')
    logger.info('wind grid written to %s', path)
