"""Fixed-step simulation loop.

Each control tick the vehicles are updated in ascending ID order; on
sensing ticks every vehicle first receives its scan and the comms tuples of
the peers in range, all taken from the same snapshot.
"""
import logging
from collections import defaultdict

import numpy as np

from core.exceptions import NonFiniteState
from core.geometry import EnvironmentConstants

from .agent import Agent
from .runlog import RunLog
from .safety import check_safety, separations
from .sensors import merge_recent, peers_in_range, scan

logger = logging.getLogger(__name__)


def _fresh(events, active):
    """Keep only events whose (vehicle, kind, counterpart) was not already
    reported on the previous tick."""
    keys = {(e.vehicle_id, e.kind, e.detail.get('with')) for e in events}
    fresh = [e for e in events
             if (e.vehicle_id, e.kind, e.detail.get('with')) not in active]
    return fresh, keys


def _min_distances(agents, obstacles, t):
    flying = [agent for agent in agents if agent.airborne]
    result = {agent.vehicle_id: np.inf for agent in agents}
    if not flying:
        return result
    to_obstacles, between = separations(
        [agent.position for agent in flying], obstacles, t)
    nearest = np.minimum(to_obstacles, between.min(axis=1))
    for agent, distance in zip(flying, nearest):
        result[agent.vehicle_id] = float(distance)
    return result


def _sense(agents, obstacles, sim, t, held):
    for agent in agents:
        if not agent.airborne:
            continue
        returns = scan(agent.position, obstacles, t, sim.r_s)
        current = peers_in_range(agent, agents, sim.r_s)
        peers, held[agent.vehicle_id] = merge_recent(
            current, held[agent.vehicle_id])
        yield agent, returns, peers


def run(scenario, env=None):
    """Simulate ``scenario`` to ``t_end`` and return its :class:`RunLog`.

    A non-finite state aborts the run; the exception carries the rows
    logged so far as ``partial_log``.
    """
    if env is None:
        env = EnvironmentConstants.from_settings()
    sim = scenario.sim
    agents = [Agent(spec, sim, env) for spec in scenario.vehicles]
    log = RunLog(scenario.name, sim.seed, sim.dT_c)
    held = defaultdict(list)
    active = set()
    logger.info('running %s: %d ticks, %d vehicles', scenario.name,
                sim.ticks, len(agents))

    for tick in range(sim.ticks):
        t = tick * sim.dT_c
        t_next = (tick + 1) * sim.dT_c
        try:
            if tick % sim.sensing_every == 0:
                for agent, returns, peers in list(_sense(
                        agents, scenario.obstacles, sim, t, held)):
                    agent.plan(t, returns, peers)
            for agent in agents:
                agent.advance(t, scenario.wind.sample(agent.position, t))
        except NonFiniteState as error:
            logger.error('run %s aborted at t=%.2f: %s', scenario.name, t,
                         error)
            raise NonFiniteState(str(error), partial_log=log) from error

        flying = [agent for agent in agents if agent.airborne]
        safety = check_safety(
            [agent.position for agent in flying], scenario.obstacles,
            [agent.params.r_cv for agent in flying],
            [agent.r_c for agent in flying], t_next,
            [agent.vehicle_id for agent in flying]) if flying else []
        safety, active = _fresh(safety, active)

        distances = _min_distances(agents, scenario.obstacles, t_next)
        for agent in agents:
            events = agent.drain_events() + [
                event for event in safety
                if event.vehicle_id == agent.vehicle_id]
            log.add_events(events)
            log.add_row(agent.row(t_next, distances[agent.vehicle_id],
                                  [event.kind for event in events]))

    logger.info('run %s finished: %d events, exit code %d', scenario.name,
                len(log.events), log.exit_code)
    return log
