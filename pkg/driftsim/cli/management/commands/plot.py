import pandas as pd
from django.core.management.base import BaseCommand, CommandError

from cli.figures import KINDS, render
from core.exceptions import MissingColumn


class Command(BaseCommand):
    help = 'Строит SVG-график по runlog.csv'

    def add_arguments(self, parser):
        parser.add_argument('--log', required=True, help='путь к runlog.csv')
        parser.add_argument('--kind', required=True, choices=sorted(KINDS),
                            help='вид графика')
        parser.add_argument('--out', required=True, help='куда писать SVG')

    def handle(self, *args, **options):
        try:
            frame = pd.read_csv(options['log'])
        except FileNotFoundError:
            raise CommandError(f'нет файла {options["log"]}')
        except pd.errors.EmptyDataError:
            frame = pd.DataFrame()
        try:
            render(frame, options['kind'], options['out'])
        except MissingColumn as error:
            raise CommandError(f'{options["log"]}: {error}') from error
        self.stdout.write(self.style.SUCCESS(
            f'{options["kind"]}: {options["out"]}'))
