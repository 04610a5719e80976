import numpy as np
from simengine.events import COLLISION
from simengine.runlog import longest_run

from tests.utils import vehicle_rows

DRIFTING, PINNED = 1, 2
ALTITUDE = 10.0
FRAME_SETTLE = 2  # sensing periods after the last drift-speed raise


class TestGustDichotomy:

    def test_drift_vehicle_holds_altitude(self, gust_run):
        scenario, log = gust_run
        rows = vehicle_rows(log.frame(), DRIFTING)
        deviation = (rows['z'] - ALTITUDE).abs().max()
        assert deviation <= 0.5, (
            f'Аппарат с режимом дрейфа в сценарии `{scenario.name}` '
            f'отклонился по высоте на {deviation:.2f} м, допускается 0.5 м'
        )

    def test_drift_vehicle_enters_drift_once(self, gust_run):
        scenario, log = gust_run
        intervals = log.summary()['vehicles'][str(DRIFTING)]['drift_intervals']
        assert len(intervals) == 1, (
            f'Ожидался один интервал дрейфа, получено: {intervals}'
        )
        start, end = intervals[0]
        gust = scenario.wind.gusts[0]
        assert gust.t_start < start < end < gust.end_time + 10.0, (
            f'Интервал дрейфа {intervals[0]} не совпадает с порывом '
            f'[{gust.t_start}, {gust.end_time}]'
        )

    def test_drift_vehicle_unsaturated_in_drift_frame(self, gust_run):
        scenario, log = gust_run
        rows = vehicle_rows(log.frame(), DRIFTING)
        drifting = rows[rows['mode'] == 'drift']
        assert not drifting.empty, 'Аппарат так и не перешёл в режим дрейфа'
        speed = np.hypot(drifting['v_drift_x'], drifting['v_drift_y'])
        raised = drifting['t'][speed.diff().fillna(speed) != 0]
        settled = raised.max() + FRAME_SETTLE * scenario.sim.dT_s
        after = rows[rows['t'] >= settled]
        assert not after.empty, 'Скорость дрейфа менялась до конца прогона'
        saturated = after[after['saturated'] == 1]
        assert saturated.empty, (
            f'После установления системы дрейфа (t >= {settled:.1f} с) '
            f'тяга насыщалась в моменты {list(saturated["t"][:5])}'
        )

    def test_pinned_vehicle_loses_authority(self, gust_run):
        scenario, log = gust_run
        rows = vehicle_rows(log.frame(), PINNED)
        assert (rows['mode'] == 'normal').all(), (
            'Аппарат с отключённым дрейфом не должен переходить в дрейф'
        )
        crashed = bool((rows['z'] <= 0).any())
        saturated = longest_run(rows['saturated'].astype(bool),
                                scenario.sim.dT_c)
        assert crashed or saturated > 5.0, (
            f'Аппарат без дрейфа должен упасть или держать насыщение тяги '
            f'дольше 5 с, насыщение длилось {saturated:.1f} с'
        )

    def test_no_vehicle_hits_anything(self, gust_run):
        _, log = gust_run
        kinds = {event.kind for event in log.events
                 if event.vehicle_id == DRIFTING}
        assert COLLISION not in kinds, (
            'Аппарат в режиме дрейфа не должен сталкиваться'
        )
