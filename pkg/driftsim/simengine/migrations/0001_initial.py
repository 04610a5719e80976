# Generated by Django 2.2.16 on 2026-10-19 10:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SimulationRun',
            fields=[
                ('id', models.AutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('scenario', models.CharField(max_length=200, verbose_name='Сценарий')),
                ('seed', models.PositiveIntegerField(verbose_name='Зерно генератора')),
                ('exit_code', models.PositiveSmallIntegerField(verbose_name='Код завершения')),
                ('vehicles', models.PositiveSmallIntegerField(verbose_name='Аппаратов')),
                ('goals_reached', models.PositiveSmallIntegerField(verbose_name='Достигли цели')),
                ('drift_intervals', models.PositiveSmallIntegerField(verbose_name='Интервалов дрейфа')),
                ('max_thrust', models.FloatField(verbose_name='Максимальная тяга, Н')),
                ('output_dir', models.CharField(blank=True, max_length=500, verbose_name='Каталог результатов')),
                ('created', models.DateTimeField(auto_now_add=True, verbose_name='Дата запуска')),
            ],
            options={
                'verbose_name': 'Запуск',
                'verbose_name_plural': 'Запуски',
                'ordering': ('-created',),
            },
        ),
    ]
