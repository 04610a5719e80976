import json
import os
import shutil
import tempfile
from io import StringIO
from unittest import mock

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase, TestCase

from core.exceptions import EmptyLog, MissingColumn, NonFiniteState
from simengine.events import COLLISION, Event
from simengine.models import SimulationRun
from simengine.runlog import COLUMNS, RunLog
from simengine.scenario import bundled_scenario

from ..figures import KINDS
from ..management.commands.run import (EXIT_COLLISION, EXIT_CONFIG,
                                       EXIT_NON_FINITE)

DT = 0.1


def synthetic_log(ticks=30):
    """Two vehicles, the first one drifting through the middle third."""
    log = RunLog('synthetic', 5, DT)
    for tick in range(1, ticks + 1):
        for vehicle_id in (1, 2):
            drifting = vehicle_id == 1 and 10 <= tick < 20
            row = dict.fromkeys(COLUMNS, 0.0)
            row.update(
                t=tick * DT, vehicle_id=vehicle_id, x=0.1 * tick,
                y=5.0 * vehicle_id, z=10.0, xd=0.1 * tick, yd=5.0 * vehicle_id,
                zd=10.0, goal_x=3.0, goal_y=5.0 * vehicle_id,
                mode='drift' if drifting else 'normal',
                v_drift_y=8.0 if drifting else 0.0, f_cmd=5.4,
                saturated=0, v_air_y=12.0 if drifting else 0.0,
                r_c=1.2 if drifting else 0.8, v_c=1.0, min_distance=4.0,
                events='')
            log.add_row(row)
    return log


class TempDirMixin:
    def setUp(self):
        super().setUp()
        self.directory = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.directory, ignore_errors=True)

    def path(self, *parts):
        return os.path.join(self.directory, *parts)


class RunCommandTest(TempDirMixin, TestCase):
    def call(self, *args):
        stdout, stderr = StringIO(), StringIO()
        call_command('run', *args, stdout=stdout, stderr=stderr)
        return stdout.getvalue(), stderr.getvalue()

    def test_baseline_clean_run(self):
        stdout, _ = self.call('--config', bundled_scenario('baseline'),
                              '--out', self.path('out'))
        for name in ('runlog.csv', 'events.log', 'summary.json'):
            self.assertTrue(os.path.exists(self.path('out', name)), name)
        with open(self.path('out', 'summary.json'), encoding='utf-8') as f:
            summary = json.load(f)
        self.assertEqual(summary['exit_code'], 0)
        self.assertTrue(summary['vehicles']['1']['goal_reached'])
        self.assertIn('без столкновений', stdout)
        self.assertEqual(SimulationRun.objects.count(), 0)

    def test_save_records_run(self):
        """С флагом --save итог попадает в реестр запусков."""
        self.call('--config', bundled_scenario('baseline'),
                  '--out', self.path('out'), '--seed', '3', '--save')
        run = SimulationRun.objects.get()
        self.assertEqual(run.scenario, 'baseline')
        self.assertEqual(run.seed, 3)
        self.assertEqual(run.vehicles, 1)
        self.assertEqual(run.goals_reached, 1)
        self.assertEqual(run.output_dir, self.path('out'))

    def test_wind_grid_dump(self):
        with mock.patch('cli.management.commands.run.run',
                        return_value=synthetic_log()):
            self.call('--config', bundled_scenario('scenario_a'),
                      '--out', self.path('out'), '--wind-grid')
        with open(self.path('out', 'wind_grid.csv'), encoding='utf-8') as f:
            self.assertEqual(f.readline().strip(), 'x,y,u,v')

    def test_invalid_config_exits_with_field_path(self):
        with open(bundled_scenario('baseline'), encoding='utf-8') as source:
            config = json.load(source)
        del config['vehicles'][0]['f_max']
        with open(self.path('broken.json'), 'w', encoding='utf-8') as target:
            json.dump(config, target)
        stderr = StringIO()
        with self.assertRaises(SystemExit) as caught:
            call_command('run', '--config', self.path('broken.json'),
                         '--out', self.path('out'), stderr=stderr)
        self.assertEqual(caught.exception.code, EXIT_CONFIG)
        self.assertIn('vehicles[0].f_max', stderr.getvalue())
        self.assertFalse(os.path.exists(self.path('out')))

    def test_collision_exit_code(self):
        log = synthetic_log()
        log.add_events([Event(1.0, 1, COLLISION, {'with': 2})])
        with mock.patch('cli.management.commands.run.run',
                        return_value=log):
            with self.assertRaises(SystemExit) as caught:
                self.call('--config', bundled_scenario('baseline'),
                          '--out', self.path('out'))
        self.assertEqual(caught.exception.code, EXIT_COLLISION)
        self.assertTrue(os.path.exists(self.path('out', 'runlog.csv')))

    def test_non_finite_writes_partial_log(self):
        error = NonFiniteState('state blew up', partial_log=synthetic_log(5))
        with mock.patch('cli.management.commands.run.run',
                        side_effect=error):
            with self.assertRaises(SystemExit) as caught:
                self.call('--config', bundled_scenario('baseline'),
                          '--out', self.path('out'))
        self.assertEqual(caught.exception.code, EXIT_NON_FINITE)
        with open(self.path('out', 'summary.json'), encoding='utf-8') as f:
            self.assertEqual(json.load(f)['exit_code'], EXIT_NON_FINITE)


class PlotCommandTest(TempDirMixin, SimpleTestCase):
    def setUp(self):
        super().setUp()
        self.log_path = self.path('runlog.csv')
        synthetic_log().to_csv(self.log_path)

    def plot(self, kind, out, log=None):
        call_command('plot', '--log', log or self.log_path, '--kind', kind,
                     '--out', out, stdout=StringIO(), stderr=StringIO())

    def test_every_kind_renders_svg(self):
        for kind in KINDS:
            with self.subTest(kind=kind):
                out = self.path(f'{kind}.svg')
                self.plot(kind, out)
                with open(out, encoding='utf-8') as svg:
                    content = svg.read()
                self.assertIn('<svg', content)
                self.assertNotIn('<dc:date>', content)

    def test_output_is_byte_identical(self):
        """Один и тот же журнал даёт один и тот же SVG."""
        for kind in ('trajectory', 'rc_vc'):
            with self.subTest(kind=kind):
                first, second = self.path('a.svg'), self.path('b.svg')
                self.plot(kind, first)
                self.plot(kind, second)
                with open(first, 'rb') as a, open(second, 'rb') as b:
                    self.assertEqual(a.read(), b.read())

    def test_missing_column(self):
        with open(self.path('partial.csv'), 'w', encoding='utf-8') as f:
            f.write('t,vehicle_id,x,y\n0.1,1,0.0,0.0\n')
        with self.assertRaises(CommandError) as caught:
            self.plot('rc_vc', self.path('out.svg'),
                      log=self.path('partial.csv'))
        self.assertIsInstance(caught.exception.__cause__, MissingColumn)
        self.assertIn('r_c', str(caught.exception))

    def test_empty_log(self):
        cases = {
            'header.csv': ','.join(COLUMNS) + '\n',
            'blank.csv': '',
        }
        for name, content in cases.items():
            with self.subTest(name=name):
                with open(self.path(name), 'w', encoding='utf-8') as f:
                    f.write(content)
                with self.assertRaises(CommandError) as caught:
                    self.plot('altitude', self.path('out.svg'),
                              log=self.path(name))
                self.assertIsInstance(caught.exception.__cause__, EmptyLog)
