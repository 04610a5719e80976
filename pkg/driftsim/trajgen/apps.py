from django.apps import AppConfig


class TrajgenConfig(AppConfig):
    name = 'trajgen'
