from django.apps import AppConfig


class WindfieldConfig(AppConfig):
    name = 'windfield'
