import numpy as np
from simengine.events import COLLISION
from simengine.runlog import goal_progress

from tests.utils import occupancy, vehicle_rows

EXPOSURE_X = 25.0
SECOND_GAP = (40.0, 42.0)


class TestCorridor:

    def test_clearance_grows_and_speed_drops_on_exposure(self, corridor_run):
        scenario, log = corridor_run
        frame = log.frame()
        for spec in scenario.vehicles:
            rows = vehicle_rows(frame, spec.vehicle_id)
            sheltered = rows[rows['x'] <= EXPOSURE_X]
            exposed = rows[rows['x'] > EXPOSURE_X]
            assert not exposed.empty, (
                f'Аппарат {spec.vehicle_id} не вылетел из укрытия'
            )
            before = sheltered.iloc[-1]
            assert exposed['r_c'].max() > before['r_c'], (
                f'Радиус безопасности аппарата {spec.vehicle_id} не вырос '
                f'на ветру'
            )
            assert exposed['v_c'].min() < before['v_c'], (
                f'Крейсерская скорость аппарата {spec.vehicle_id} не '
                f'снизилась на ветру'
            )

    def test_no_collisions(self, corridor_run):
        _, log = corridor_run
        collisions = [event for event in log.events
                      if event.kind == COLLISION]
        assert not collisions, f'Столкновения в сценарии B: {collisions}'
        assert log.exit_code == 0

    def test_second_gap_is_single_file(self, corridor_run):
        _, log = corridor_run
        counts = occupancy(log.frame(), *SECOND_GAP)
        assert not counts.empty, 'Никто не прошёл второй проход'
        assert counts.max() == 1, (
            'Во втором проходе одновременно оказались несколько аппаратов: '
            f't = {counts[counts > 1].index.tolist()[:5]}'
        )

    def test_every_vehicle_reaches_goal(self, corridor_run):
        scenario, log = corridor_run
        progress = goal_progress(log, scenario.sim.dT_c)
        missed = [vehicle_id for vehicle_id, result in progress.items()
                  if not result.reached]
        assert not missed, f'Не достигли цели аппараты: {missed}'
        times = [progress[spec.vehicle_id].t_reach
                 for spec in scenario.vehicles]
        assert np.all(np.isfinite(times))
