import os

import pytest
from django.core.management import call_command
from simengine.scenario import bundled_scenario


@pytest.mark.parametrize('name', ['baseline', 'scenario_a', 'scenario_b'])
def test_runlog_is_byte_identical(name, tmp_path):
    outputs = []
    for attempt in ('first', 'second'):
        out = str(tmp_path / attempt)
        try:
            call_command('run', '--config', bundled_scenario(name),
                         '--out', out)
        except SystemExit as error:
            assert error.code in (0, 2), (
                f'Сценарий `{name}` завершился с кодом {error.code}'
            )
        with open(os.path.join(out, 'runlog.csv'), 'rb') as log:
            outputs.append(log.read())
    assert outputs[0] == outputs[1], (
        f'Два прогона сценария `{name}` с одним зерном дали разные runlog.csv'
    )
