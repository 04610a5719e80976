from django.apps import AppConfig


class DriftframeConfig(AppConfig):
    name = 'driftframe'
