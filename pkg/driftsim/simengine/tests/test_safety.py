import numpy as np
from django.test import SimpleTestCase

from core.geometry import vec2, vec3

from ..events import COLLISION, RC_VIOLATION
from ..obstacles import DiscObstacle
from ..safety import check_safety, separations

WALL = DiscObstacle(vec2(10, 0), 2.0)
R_CV, R_C = 0.3, 1.5


def kinds(events):
    return [event.kind for event in events]


class CheckSafetyTest(SimpleTestCase):
    def test_clear_of_obstacle(self):
        p = vec3(10 - 2 - R_C - 1e-6, 0, 10)
        self.assertEqual(check_safety([p], [WALL], [R_CV], [R_C]), [])

    def test_temporary_violation(self):
        """Между r_cv и r_c только предупреждение, не столкновение."""
        p = vec3(10 - 2 - 1.0, 0, 10)
        events = check_safety([p], [WALL], [R_CV], [R_C], t=3.0, ids=[7])
        self.assertEqual(kinds(events), [RC_VIOLATION])
        self.assertEqual(events[0].vehicle_id, 7)
        self.assertEqual(events[0].t, 3.0)
        self.assertEqual(events[0].detail['with'], 'obstacle')

    def test_collision(self):
        p = vec3(10 - 2 - 0.1, 0, 10)
        self.assertEqual(kinds(check_safety([p], [WALL], [R_CV], [R_C])),
                         [COLLISION])

    def test_inside_obstacle(self):
        self.assertEqual(
            kinds(check_safety([vec3(10, 0, 5)], [WALL], [R_CV], [R_C])),
            [COLLISION])

    def test_pairwise_uses_sum_of_core_radii(self):
        cases = (
            (0.5, [COLLISION]),
            (0.7, [RC_VIOLATION]),
            (1.6, []),
        )
        for gap, expected in cases:
            with self.subTest(gap=gap):
                positions = [vec3(0, 0, 10), vec3(gap, 0, 10)]
                events = check_safety(positions, [], [0.3, 0.3], [R_C, 1.0],
                                      ids=[1, 2])
                self.assertEqual(kinds(events), expected)
                for event in events:
                    self.assertEqual(event.vehicle_id, 1)
                    self.assertEqual(event.detail['with'], 2)

    def test_altitude_is_ignored(self):
        positions = [vec3(0, 0, 10), vec3(0.2, 0, 2)]
        self.assertEqual(
            kinds(check_safety(positions, [], [R_CV, R_CV], [R_C, R_C])),
            [COLLISION])


class SeparationsTest(SimpleTestCase):
    def test_matrix(self):
        to_obstacles, between = separations(
            [vec3(0, 0, 1), vec3(3, 4, 1)], [WALL], 0.0)
        np.testing.assert_allclose(to_obstacles,
                                   [8.0, np.hypot(7, 4) - 2.0])
        self.assertEqual(between[0, 1], 5.0)
        self.assertTrue(np.isinf(between[0, 0]))

    def test_no_obstacles(self):
        to_obstacles, _ = separations([vec3(0, 0, 1)], [], 0.0)
        self.assertTrue(np.isinf(to_obstacles[0]))
