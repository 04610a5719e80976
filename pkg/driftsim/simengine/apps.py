from django.apps import AppConfig


class SimengineConfig(AppConfig):
    name = 'simengine'
