import os

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
root_dir_content = os.listdir(BASE_DIR)
PROJECT_DIR_NAME = 'driftsim'
MANAGE_PATH = os.path.join(BASE_DIR, PROJECT_DIR_NAME)
# проверяем, что в корне репозитория лежит папка с проектом
if (
        PROJECT_DIR_NAME not in root_dir_content
        or not os.path.isdir(MANAGE_PATH)
):
    assert False, (
        f'В директории `{BASE_DIR}` не найдена папка c проектом '
        f'`{PROJECT_DIR_NAME}`. Убедитесь, что у вас верная структура '
        f'проекта.'
    )

project_dir_content = os.listdir(MANAGE_PATH)
FILENAME = 'manage.py'
# проверяем, что структура проекта верная, и manage.py на месте
if FILENAME not in project_dir_content:
    assert False, (
        f'В директории `{MANAGE_PATH}` не найден файл `{FILENAME}`. '
        f'Убедитесь, что у вас верная структура проекта.'
    )

from django.utils.version import get_version  # noqa: E402

assert get_version() < '3.0.0', 'Пожалуйста, используйте версию Django < 3.0.0'

from driftsim.settings import INSTALLED_APPS  # noqa: E402

for app in ('windfield', 'dynamics', 'controller', 'trajgen', 'driftframe',
            'simengine', 'cli'):
    assert any(name.split('.')[0] == app for name in INSTALLED_APPS), (
        f'Приложение `{app}` не зарегистрировано в `settings.INSTALLED_APPS`'
    )

pytest_plugins = [
    'tests.fixtures.fixture_scenarios',
    'tests.fixtures.fixture_runs',
]
