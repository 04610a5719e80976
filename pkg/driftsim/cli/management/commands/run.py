import os

from django.core.management.base import BaseCommand

from core.exceptions import ConfigInvalid, NonFiniteState
from simengine.engine import run
from simengine.models import SimulationRun
from simengine.scenario import load_scenario
from windfield.field import dump_grid

EXIT_CLEAN = 0
EXIT_CONFIG = 1
EXIT_COLLISION = 2
EXIT_NON_FINITE = 3


class Command(BaseCommand):
    help = 'Прогоняет сценарий и пишет runlog.csv, events.log, summary.json'

    def add_arguments(self, parser):
        parser.add_argument('--config', required=True,
                            help='JSON-файл сценария')
        parser.add_argument('--out', required=True,
                            help='каталог для результатов')
        parser.add_argument('--seed', type=int, default=None,
                            help='заменяет зерно турбулентности из сценария')
        parser.add_argument('--wind-grid', action='store_true',
                            help='сетка турбулентности в wind_grid.csv')
        parser.add_argument('--save', action='store_true',
                            help='записать итог в реестр запусков')

    def handle(self, *args, **options):
        try:
            scenario = load_scenario(options['config'], options['seed'])
        except ConfigInvalid as error:
            for path, message in error.errors:
                self.stderr.write(self.style.ERROR(f'{path}: {message}'))
            raise SystemExit(EXIT_CONFIG)

        out_dir = options['out']
        try:
            log = run(scenario)
        except NonFiniteState as error:
            self.stderr.write(self.style.ERROR(str(error)))
            if error.partial_log is not None:
                error.partial_log.write(out_dir, EXIT_NON_FINITE)
            raise SystemExit(EXIT_NON_FINITE)

        summary = log.write(out_dir)
        if options['wind_grid'] and scenario.wind.grid is not None:
            dump_grid(scenario.wind, os.path.join(out_dir, 'wind_grid.csv'))
        if options['save']:
            SimulationRun.from_summary(summary, out_dir)
        self._report(summary)
        if log.exit_code != EXIT_CLEAN:
            raise SystemExit(log.exit_code)

    def _report(self, summary):
        for vehicle_id, result in summary['vehicles'].items():
            if result['goal_reached']:
                status = f'цель достигнута за {result["t_reach"]:.1f} с'
            else:
                status = 'цель не достигнута'
            self.stdout.write(
                f'БЛА {vehicle_id}: {status}, '
                f'интервалов дрейфа {len(result["drift_intervals"])}, '
                f'макс. тяга {result["max_thrust"]:.2f} Н')
        if summary['collisions']:
            self.stderr.write(self.style.ERROR(
                f'столкновений: {summary["collisions"]}'))
        else:
            self.stdout.write(self.style.SUCCESS(
                f'{summary["scenario"]}: прогон завершён без столкновений'))
