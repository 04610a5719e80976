from django.contrib import admin

from .models import SimulationRun


class SimulationRunAdmin(admin.ModelAdmin):
    list_display = (
        'pk',
        'scenario',
        'seed',
        'exit_code',
        'goals_reached',
        'drift_intervals',
        'max_thrust',
        'created',
    )
    search_fields = ('scenario',)
    list_filter = ('exit_code', 'created')
    empty_value_display = '-пусто-'


admin.site.register(SimulationRun, SimulationRunAdmin)
