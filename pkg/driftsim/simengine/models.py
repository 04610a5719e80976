from django.db import models


class SimulationRun(models.Model):
    scenario = models.CharField(
        'Сценарий',
        max_length=200
    )
    seed = models.PositiveIntegerField('Зерно генератора')
    exit_code = models.PositiveSmallIntegerField('Код завершения')
    vehicles = models.PositiveSmallIntegerField('Аппаратов')
    goals_reached = models.PositiveSmallIntegerField('Достигли цели')
    drift_intervals = models.PositiveSmallIntegerField(
        'Интервалов дрейфа'
    )
    max_thrust = models.FloatField('Максимальная тяга, Н')
    output_dir = models.CharField(
        'Каталог результатов',
        max_length=500,
        blank=True
    )
    created = models.DateTimeField(
        'Дата запуска',
        auto_now_add=True
    )

    class Meta:
        ordering = ('-created',)
        verbose_name = 'Запуск'
        verbose_name_plural = 'Запуски'

    def __str__(self):
        return f'{self.scenario} #{self.seed}'

    @classmethod
    def from_summary(cls, summary, output_dir=''):
        vehicles = summary['vehicles'].values()
        return cls.objects.create(
            scenario=summary['scenario'],
            seed=summary['seed'],
            exit_code=summary['exit_code'],
            vehicles=len(vehicles),
            goals_reached=sum(v['goal_reached'] for v in vehicles),
            drift_intervals=sum(len(v['drift_intervals']) for v in vehicles),
            max_thrust=max((v['max_thrust'] for v in vehicles), default=0.0),
            output_dir=output_dir,
        )
