"""Scenario description and its loading from JSON.

Every section is checked by a form from :mod:`simengine.forms`; all
problems are reported together as ``ConfigInvalid`` with dotted paths such
as ``vehicles[1].f_max``.
"""
import json
import logging
import math
import os
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from controller.gains import ControlGains
from core.exceptions import ConfigInvalid, NoControlAuthority
from core.geometry import EnvironmentConstants, vec2, vec3
from driftframe.cruise import ClearanceSchedule, ThrustBudget, update_rc_vc
from dynamics.aero import planar_drag_coefficient
from dynamics.params import VehicleParams
from windfield.field import MaskRegion, WindField
from windfield.gusts import GustEvent
from windfield.turbulence import TurbulenceParams

from .forms import (GainsForm, GustForm, MaskForm, ObstacleForm, SimForm,
                    TurbulenceForm, VehicleForm, WindForm)
from .obstacles import DiscObstacle, PolygonObstacle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimSettings:
    dT_s: float
    dT_c: float
    t_end: float
    seed: int
    r_s: float
    substep: float = 0.01

    @property
    def substeps(self):
        return max(int(round(self.dT_c / self.substep)), 1)

    @property
    def sensing_every(self):
        return int(round(self.dT_s / self.dT_c))

    @property
    def ticks(self):
        return int(round(self.t_end / self.dT_c))


@dataclass(frozen=True)
class VehicleSpec:
    params: VehicleParams
    gains: ControlGains
    schedule: ClearanceSchedule
    position: np.ndarray
    goal: np.ndarray
    heading: float = None
    v_o_max: float = 0.0

    @property
    def vehicle_id(self):
        return self.params.vehicle_id


@dataclass
class Scenario:
    name: str
    sim: SimSettings
    wind: WindField
    vehicles: list
    obstacles: list = field(default_factory=list)


def _form_errors(form, path):
    errors = []
    for name, messages in form.errors.items():
        where = path if name == '__all__' else f'{path}.{name}'
        errors.extend((where, message) for message in messages)
    return errors


def _check(form_class, data, path, errors):
    if not isinstance(data, dict):
        errors.append((path, 'ожидается объект'))
        return None
    form = form_class(data)
    if not form.is_valid():
        errors.extend(_form_errors(form, path))
        return None
    return form.cleaned_data


def _given(cleaned, name, default):
    value = cleaned.get(name)
    return default if value is None else value


def _build_wind(section, seed, errors):
    section = section or {}
    cleaned = _check(WindForm, section, 'wind', errors)
    turbulence = None
    if section.get('turbulence') is not None:
        data = _check(TurbulenceForm, section['turbulence'],
                      'wind.turbulence', errors)
        if data is not None:
            turbulence = TurbulenceParams(
                sigma=data['sigma'], L=data['L'],
                grid_size=data['grid_size'], cell=data['cell'], seed=seed,
                spreading_exponent=_given(data, 'spreading_exponent', 2.0))
    gusts = []
    for index, item in enumerate(section.get('gusts') or []):
        data = _check(GustForm, item, f'wind.gusts[{index}]', errors)
        if data is not None:
            gusts.append(GustEvent(
                amplitude=data['amplitude'], direction=data['direction'],
                t_start=data['t_start'], duration=data['duration'],
                origin=_given(data, 'origin', [0.0, 0.0]),
                propagation_speed=_given(data, 'propagation_speed',
                                         math.inf),
                front_width=_given(data, 'front_width', math.inf)))
    masks = []
    for index, item in enumerate(section.get('masks') or []):
        data = _check(MaskForm, item, f'wind.masks[{index}]', errors)
        if data is not None:
            masks.append(MaskRegion(data['x_min'], data['y_min'],
                                    data['x_max'], data['y_max']))
    if cleaned is None:
        return None
    return WindField(mean=vec2(*_given(cleaned, 'mean', [0.0, 0.0])),
                     turbulence=turbulence, gusts=gusts, mask_regions=masks)


def _build_vehicle(item, path, errors):
    data = _check(VehicleForm, item, path, errors)
    if data is None:
        return None
    gains_data = _check(GainsForm, item.get('gains') or {}, f'{path}.gains',
                        errors)
    if gains_data is None:
        return None
    try:
        params = VehicleParams(
            m=data['m'], J=data['J'], f_max=data['f_max'], C_d=data['C_d'],
            A=data['A'], r_cv=data['r_cv'], v_w_op=data['v_w_op'],
            vehicle_id=data['id'], r_min=_given(data, 'r_min', 0.0),
            thrust_derate=_given(data, 'thrust_derate', 1.0),
            drag_scale=_given(data, 'drag_scale', 1.0),
            drift_enabled=_given(data, 'drift_enabled', True))
    except ConfigInvalid as error:
        errors.extend((f'{path}.{name}', message)
                      for name, message in error.errors)
        return None
    try:
        gains = ControlGains(**{name: value
                                for name, value in gains_data.items()
                                if value is not None})
    except ConfigInvalid as error:
        errors.extend((f'{path}.gains.{name}', message)
                      for name, message in error.errors)
        return None
    schedule = ClearanceSchedule(params.r_cv, data['r_ce_min'],
                                 data['r_ce_max'], params.v_w_op)
    return VehicleSpec(params, gains, schedule, vec3(*data['position']),
                       vec2(*data['goal']), data.get('heading'),
                       _given(data, 'v_o_max', 0.0))


def _build_obstacle(item, path, errors):
    data = _check(ObstacleForm, item, path, errors)
    if data is None:
        return None
    velocity = _given(data, 'velocity', [0.0, 0.0])
    if data['kind'] == 'disc':
        return DiscObstacle(data['center'], data['radius'], velocity)
    return PolygonObstacle(data['vertices'], velocity)


def _check_layout(vehicles, obstacles, sim_data, errors):
    """Obstacles must be slower than every vehicle and goals must keep the
    widest clearance radius from every obstacle."""
    rho = EnvironmentConstants.from_settings().rho
    cruise = []
    for index, spec in enumerate(vehicles):
        params = spec.params
        budget = ThrustBudget(params.planar_thrust,
                              planar_drag_coefficient(params, rho), params.m)
        try:
            _, _, v_c = update_rc_vc(0.0, spec.schedule, sim_data['r_s'],
                                     sim_data['dT_s'], budget, spec.v_o_max)
        except NoControlAuthority:
            errors.append((f'vehicles[{index}]',
                           'нет безопасной крейсерской скорости даже '
                           'в штиль'))
            continue
        cruise.append(v_c)
        r_c = spec.schedule.radius(params.v_w_op)
        for number, obstacle in enumerate(obstacles):
            if obstacle.distance(spec.goal, 0.0) < r_c:
                errors.append((f'vehicles[{index}].goal',
                               f'цель ближе {r_c:.2f} м к препятствию '
                               f'obstacles[{number}]'))
    if not cruise:
        return
    slowest = min(cruise)
    for number, obstacle in enumerate(obstacles):
        if np.linalg.norm(obstacle.velocity) >= slowest:
            errors.append((f'obstacles[{number}].velocity',
                           f'препятствие не медленнее крейсерской скорости '
                           f'аппаратов ({slowest:.2f} м/с)'))


def build_scenario(config, seed=None, name=None):
    """Scenario from an already parsed JSON document."""
    errors = []
    if not isinstance(config, dict):
        raise ConfigInvalid([('', 'сценарий должен быть объектом')])
    sim_data = _check(SimForm, config.get('sim'), 'sim', errors)
    if sim_data is not None and seed is not None:
        sim_data['seed'] = seed
    wind = _build_wind(config.get('wind'),
                       sim_data['seed'] if sim_data else 0, errors)

    raw_vehicles = config.get('vehicles')
    if not isinstance(raw_vehicles, list) or not raw_vehicles:
        errors.append(('vehicles', 'нужен хотя бы один аппарат'))
        raw_vehicles = []
    vehicles = [_build_vehicle(item, f'vehicles[{index}]', errors)
                for index, item in enumerate(raw_vehicles)]
    ids = [spec.vehicle_id for spec in vehicles if spec is not None]
    for index, spec in enumerate(vehicles):
        if spec is not None and ids.count(spec.vehicle_id) > 1:
            errors.append((f'vehicles[{index}].id',
                           'идентификатор аппарата повторяется'))
    obstacles = [_build_obstacle(item, f'obstacles[{index}]', errors)
                 for index, item in enumerate(config.get('obstacles') or [])]

    if sim_data is not None:
        for index, spec in enumerate(vehicles):
            if spec is not None and spec.schedule.radius(
                    spec.params.v_w_op) >= sim_data['r_s']:
                errors.append((f'vehicles[{index}].r_ce_max',
                               'радиус безопасности не меньше дальности '
                               'датчиков'))
        if not errors:
            _check_layout(vehicles, obstacles, sim_data, errors)
    if errors:
        raise ConfigInvalid(errors)

    sim = SimSettings(sim_data['dT_s'], sim_data['dT_c'],
                      sim_data['t_end'], sim_data['seed'], sim_data['r_s'],
                      settings.DRIFTSIM_INTEGRATION_SUBSTEP)
    vehicles = sorted(vehicles, key=lambda spec: spec.vehicle_id)
    return Scenario(sim_data.get('name') or name or 'scenario', sim, wind,
                    vehicles, obstacles)


def load_scenario(path, seed=None):
    """Read and validate a scenario file."""
    try:
        with open(path, encoding='utf-8') as source:
            config = json.load(source)
    except OSError as error:
        raise ConfigInvalid([('', f'не удалось прочитать {path}: {error}')])
    except json.JSONDecodeError as error:
        raise ConfigInvalid([(f'line {error.lineno}', error.msg)])
    name = os.path.splitext(os.path.basename(path))[0]
    scenario = build_scenario(config, seed, name)
    logger.info('scenario %s: %d vehicles, %d obstacles, seed %d',
                scenario.name, len(scenario.vehicles),
                len(scenario.obstacles), scenario.sim.seed)
    return scenario


def bundled_scenario(name):
    return os.path.join(settings.DRIFTSIM_SCENARIOS_DIR, f'{name}.json')
