"""Static SVG figures drawn from a run log.

Every kind takes the run log frame and returns a matplotlib figure; the
output is byte-stable for the same CSV because the SVG hash salt is fixed
and no date is written.
"""
import logging

import matplotlib
import numpy as np

from simengine.runlog import require_columns

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402

logger = logging.getLogger(__name__)

STYLE = {
    'svg.hashsalt': 'driftsim',
    'svg.fonttype': 'none',
    'font.size': 9,
    'axes.grid': True,
    'grid.alpha': 0.3,
    'legend.fontsize': 8,
    'lines.linewidth': 1.2,
    'figure.figsize': (7.0, 4.3),
}

BY_VEHICLE = ('t', 'vehicle_id')


def _vehicles(frame):
    return frame.groupby('vehicle_id', sort=True)


def _shade_drift(ax, rows):
    drifting = (rows['mode'] == 'drift').to_numpy()
    if drifting.any():
        ax.fill_between(rows['t'], 0, 1, where=drifting, alpha=0.12,
                        transform=ax.get_xaxis_transform(), step='mid')


def trajectory(frame, fig):
    ax = fig.add_subplot(1, 1, 1)
    for vehicle_id, rows in _vehicles(frame):
        line, = ax.plot(rows['x'], rows['y'], label=f'БЛА {vehicle_id}')
        ax.plot(rows['goal_x'].iloc[-1], rows['goal_y'].iloc[-1], marker='*',
                color=line.get_color(), markersize=9)
        ax.plot(rows['x'].iloc[0], rows['y'].iloc[0], marker='o',
                color=line.get_color(), markersize=4)
    ax.set_xlabel('x, м')
    ax.set_ylabel('y, м')
    ax.set_aspect('equal', adjustable='datalim')
    ax.legend(loc='best')


def tracking_error(frame, fig):
    ax = fig.add_subplot(1, 1, 1)
    for vehicle_id, rows in _vehicles(frame):
        error = np.linalg.norm(
            rows[['x', 'y', 'z']].to_numpy()
            - rows[['xd', 'yd', 'zd']].to_numpy(), axis=1)
        ax.plot(rows['t'], error, label=f'БЛА {vehicle_id}')
    ax.set_xlabel('t, с')
    ax.set_ylabel('|p - p_d|, м')
    ax.legend(loc='best')


def altitude(frame, fig):
    ax = fig.add_subplot(1, 1, 1)
    for vehicle_id, rows in _vehicles(frame):
        line, = ax.plot(rows['t'], rows['z'], label=f'БЛА {vehicle_id}')
        ax.plot(rows['t'], rows['zd'], linestyle='--', linewidth=0.8,
                color=line.get_color())
    ax.set_xlabel('t, с')
    ax.set_ylabel('z, м')
    ax.legend(loc='best')


def thrust(frame, fig):
    ax = fig.add_subplot(1, 1, 1)
    for vehicle_id, rows in _vehicles(frame):
        ax.plot(rows['t'], rows['f_cmd'], label=f'БЛА {vehicle_id}')
        _shade_drift(ax, rows)
    ax.set_xlabel('t, с')
    ax.set_ylabel('f, Н')
    ax.legend(loc='best')


def wind(frame, fig):
    """Estimated airspeed against the chosen drift speed."""
    ax = fig.add_subplot(1, 1, 1)
    for vehicle_id, rows in _vehicles(frame):
        line, = ax.plot(rows['t'], np.hypot(rows['v_air_x'], rows['v_air_y']),
                        label=f'БЛА {vehicle_id}, воздух')
        ax.plot(rows['t'], np.hypot(rows['v_drift_x'], rows['v_drift_y']),
                linestyle='--', color=line.get_color(),
                label=f'БЛА {vehicle_id}, дрейф')
    ax.set_xlabel('t, с')
    ax.set_ylabel('скорость, м/с')
    ax.legend(loc='best')


def rc_vc(frame, fig):
    top, bottom = fig.subplots(2, 1, sharex=True)
    for vehicle_id, rows in _vehicles(frame):
        top.plot(rows['t'], rows['r_c'], label=f'БЛА {vehicle_id}')
        bottom.plot(rows['t'], rows['v_c'], label=f'БЛА {vehicle_id}')
    top.set_ylabel('r_c, м')
    bottom.set_ylabel('v_c, м/с')
    bottom.set_xlabel('t, с')
    top.legend(loc='best')


KINDS = {
    'trajectory': (trajectory, ('x', 'y', 'goal_x', 'goal_y')),
    'tracking_error': (tracking_error, ('x', 'y', 'z', 'xd', 'yd', 'zd')),
    'altitude': (altitude, ('z', 'zd')),
    'thrust': (thrust, ('f_cmd', 'mode')),
    'wind': (wind, ('v_air_x', 'v_air_y', 'v_drift_x', 'v_drift_y')),
    'rc_vc': (rc_vc, ('r_c', 'v_c')),
}


def render(frame, kind, path):
    """Draw ``kind`` from ``frame`` into the SVG file at ``path``."""
    draw, columns = KINDS[kind]
    require_columns(frame, BY_VEHICLE + columns)
    frame = frame.sort_values(list(BY_VEHICLE), kind='mergesort')
    with plt.rc_context(STYLE):
        fig = plt.figure()
        try:
            draw(frame, fig)
            fig.tight_layout()
            fig.savefig(path, format='svg', metadata={'Date': None})
        finally:
            plt.close(fig)
    logger.info('%s plot written to %s', kind, path)
