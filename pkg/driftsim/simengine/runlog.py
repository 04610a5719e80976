"""Per-tick run log, event stream and run summary."""
import json
import logging
import os
from collections import namedtuple

import numpy as np
import pandas as pd
from django.conf import settings

from core.exceptions import EmptyLog, MissingColumn

from .events import COLLISION

logger = logging.getLogger(__name__)

COLUMNS = (
    't', 'vehicle_id', 'x', 'y', 'z', 'vx', 'vy', 'vz', 'xd', 'yd', 'zd',
    'goal_x', 'goal_y', 'mode', 'v_drift_x', 'v_drift_y', 'f_cmd',
    'saturated', 'v_air_x', 'v_air_y', 'r_c', 'v_c', 'min_distance',
    'events',
)
FLOAT_FORMAT = '%.6f'

GoalProgress = namedtuple('GoalProgress', 'reached t_reach')


def require_columns(frame, columns):
    if frame is None or len(frame.columns) == 0:
        raise EmptyLog('run log has no columns')
    missing = [name for name in columns if name not in frame.columns]
    if missing:
        raise MissingColumn(f'run log lacks columns: {", ".join(missing)}')
    if frame.empty:
        raise EmptyLog('run log has no rows')


class RunLog:
    def __init__(self, scenario, seed, dT_c):
        self.scenario = scenario
        self.seed = seed
        self.dT_c = dT_c
        self.rows = []
        self.events = []

    def add_row(self, row):
        self.rows.append(tuple(row[name] for name in COLUMNS))

    def add_events(self, events):
        self.events.extend(events)

    @property
    def collisions(self):
        return [event for event in self.events if event.kind == COLLISION]

    @property
    def exit_code(self):
        return 2 if self.collisions else 0

    def frame(self):
        return pd.DataFrame(self.rows, columns=COLUMNS)

    def to_csv(self, path):
        self.frame().to_csv(path, index=False, float_format=FLOAT_FORMAT)

    def write_events(self, path):
        with open(path, 'w', encoding='utf-8') as target:
            for event in self.events:
                target.write(json.dumps(event.as_record(), sort_keys=True,
                                        ensure_ascii=False))
                target.write('\n')

    def summary(self, exit_code=None):
        frame = self.frame()
        progress = goal_progress(frame, self.dT_c) if self.rows else {}
        vehicles = {}
        for vehicle_id, rows in frame.groupby('vehicle_id', sort=True):
            reached, t_reach = progress.get(vehicle_id, (False, None))
            saturated = rows['saturated'].astype(bool)
            vehicles[str(vehicle_id)] = {
                'goal_reached': bool(reached),
                't_reach': t_reach,
                'min_distance': _finite(rows['min_distance'].min()),
                'max_thrust': round(float(rows['f_cmd'].max()), 6),
                'drift_intervals': drift_intervals(rows),
                'longest_saturation': round(
                    longest_run(saturated, self.dT_c), 6),
                'crashed': bool((rows['z'] <= 0).any()),
            }
        return {
            'scenario': self.scenario,
            'seed': self.seed,
            'exit_code': self.exit_code if exit_code is None else exit_code,
            'collisions': len(self.collisions),
            'vehicles': vehicles,
        }

    def write(self, out_dir, exit_code=None):
        """runlog.csv, events.log and summary.json in ``out_dir``."""
        os.makedirs(out_dir, exist_ok=True)
        self.to_csv(os.path.join(out_dir, 'runlog.csv'))
        self.write_events(os.path.join(out_dir, 'events.log'))
        summary = self.summary(exit_code)
        with open(os.path.join(out_dir, 'summary.json'), 'w',
                  encoding='utf-8') as target:
            json.dump(summary, target, indent=2, sort_keys=True,
                      ensure_ascii=False)
        logger.info('run %s written to %s', self.scenario, out_dir)
        return summary


def _finite(value):
    value = float(value)
    return round(value, 6) if np.isfinite(value) else None


def _runs(mask):
    """(start, stop) index pairs of consecutive True values."""
    padded = np.concatenate(([False], np.asarray(mask, dtype=bool),
                             [False]))
    edges = np.flatnonzero(np.diff(padded.astype(int)))
    return list(zip(edges[::2], edges[1::2]))


def longest_run(mask, dT_c):
    """Longest stretch of consecutive ticks where ``mask`` holds, in s."""
    return max((stop - start for start, stop in _runs(mask)),
               default=0) * dT_c


def drift_intervals(rows):
    times = rows['t'].to_numpy()
    return [[round(float(times[start]), 6), round(float(times[stop - 1]), 6)]
            for start, stop in _runs(rows['mode'].to_numpy() == 'drift')]


def goal_progress(log, dT_c=None, radius=None, dwell=None):
    """Whether each vehicle settled at its goal, and when it arrived.

    A vehicle has reached its goal once it stays within ``radius`` of it
    for ``dwell`` seconds; ``t_reach`` is the first time of that stay.
    """
    if radius is None:
        radius = settings.DRIFTSIM_GOAL_RADIUS
    if dwell is None:
        dwell = settings.DRIFTSIM_GOAL_DWELL
    frame = log.frame() if isinstance(log, RunLog) else log
    require_columns(frame, ('t', 'vehicle_id', 'x', 'y', 'goal_x', 'goal_y'))
    progress = {}
    for vehicle_id, rows in frame.groupby('vehicle_id', sort=True):
        times = rows['t'].to_numpy()
        step = dT_c if dT_c is not None else (
            float(np.min(np.diff(times))) if len(times) > 1 else 0.0)
        inside = np.hypot(rows['x'] - rows['goal_x'],
                          rows['y'] - rows['goal_y']).to_numpy() <= radius
        result = GoalProgress(False, None)
        for start, stop in _runs(inside):
            if times[stop - 1] - times[start] + step >= dwell - 1e-9:
                result = GoalProgress(True, round(float(times[start]), 6))
                break
        progress[int(vehicle_id)] = result
    return progress
