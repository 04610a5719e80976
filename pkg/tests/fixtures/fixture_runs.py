import pytest
from simengine.engine import run
from simengine.scenario import build_scenario

from tests.fixtures.fixture_scenarios import with_gust


@pytest.fixture(scope='session', params=[19.0, 18.0], ids=['19ms', '18ms'])
def gust_run(request, scenario_a_config):
    """Scenario A flown with the bundled gust and the weaker variant."""
    scenario = build_scenario(with_gust(scenario_a_config, request.param))
    return scenario, run(scenario)


@pytest.fixture(scope='session')
def corridor_run(scenario_b):
    return scenario_b, run(scenario_b)
