import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import CoincidentPoint, NoFeasibleCourse
from core.geometry import vec2

from ..clustering import ObstacleCluster
from ..course import plan_course_change
from ..projection import (CCW, project_cluster, project_point,
                          tangent_candidates)
from ..ranking import NavContext
from ..trajectory import PlannerLimits


def limits(r_c=1.0, v_c=1.0):
    return PlannerLimits(a_max=1.0, r_c=r_c, v_c=v_c, r_s=12.5, dT_s=1.0)


def wall(x, ys):
    return ObstacleCluster(id=1, points=[(x, y) for y in ys], e1=0,
                           e2=len(ys) - 1).nearest_to(vec2())


class ProjectPointTest(SimpleTestCase):
    def test_tangent_point_example(self):
        _, p_star = project_point(vec2(), vec2(0, 1), vec2(5, 0), vec2(5, 0),
                                  3.0)
        np.testing.assert_allclose(p_star, [3.2, 2.4], atol=1e-12)
        _, mirrored = project_point(vec2(), vec2(0, -1), vec2(5, 0),
                                    vec2(5, 0), 3.0)
        np.testing.assert_allclose(mirrored, [3.2, -2.4], atol=1e-12)

    def test_zero_clearance_returns_point(self):
        _, p_star = project_point(vec2(1, 1), vec2(1, 0), vec2(4, 3),
                                  vec2(5, 1), 0.0)
        np.testing.assert_allclose(p_star, [4, 3], atol=1e-12)

    def test_inside_branch_example(self):
        _, p_star = project_point(vec2(), vec2(0, 1), vec2(1, 0), vec2(1, 0),
                                  2.0)
        np.testing.assert_allclose(p_star, [-0.9997, 0.0349], atol=1e-4)
        self.assertAlmostEqual(np.linalg.norm(p_star - vec2(1, 0)), 2.0,
                               places=12)

    def test_coincident_point(self):
        with self.assertRaises(CoincidentPoint):
            project_point(vec2(2, 2), vec2(1, 0), vec2(2, 2), vec2(3, 3),
                          1.0)

    def test_random_tangency(self):
        """1000 случайных конфигураций: касание окружности r_c."""
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 1000:
            p_d = rng.uniform(-10, 10, 2)
            p_k = rng.uniform(-10, 10, 2)
            p_min = p_k + rng.uniform(-2, 2, 2)
            r_c = rng.uniform(0.1, 4.0)
            v_d = rng.uniform(-2, 2, 2)
            distance = np.linalg.norm(p_k - p_d)
            if distance < 1e-3 or np.linalg.norm(p_min - p_d) < 1e-3:
                continue
            _, p_star = project_point(p_d, v_d, p_k, p_min, r_c)
            self.assertLess(abs(np.linalg.norm(p_star - p_k) - r_c), 1e-9)
            if distance > r_c:
                self.assertLess(abs(np.dot(p_star - p_d, p_star - p_k)),
                                1e-9)
            checked += 1


class TangentCandidatesTest(SimpleTestCase):
    def test_clear_branch(self):
        cluster = wall(5.0, [-2.0, -1.0, 0.0, 1.0, 2.0])
        geometry = project_cluster(cluster, vec2(), vec2(1, 0), 1.0)
        s1, s2, s3, s4 = tangent_candidates(cluster, vec2(), geometry, 1.0)
        np.testing.assert_allclose(s1, geometry.p_star[0] - geometry.p_star[2])
        np.testing.assert_allclose(s4, geometry.p_star[4])
        np.testing.assert_allclose(s2 * [1, -1], s4, atol=1e-9)
        self.assertFalse(geometry.violating)

    def test_violation_branch_is_vehicle_anchored(self):
        """При нарушении r_c касательные строятся от p_d."""
        cluster = wall(5.0, [-4.0, 0.0, 4.0])
        geometry = project_cluster(cluster, vec2(), vec2(1, 0), 5.5)
        s1, s2, s3, _ = tangent_candidates(cluster, vec2(), geometry, 5.5)
        self.assertTrue(geometry.violating)
        np.testing.assert_allclose(s1, geometry.p_star[0])
        np.testing.assert_allclose(s1, s2)
        np.testing.assert_allclose(s1 * [1, -1], s3, atol=1e-9)

    def test_inside_projection_moves_away(self):
        cluster = ObstacleCluster(id=1, points=[(0.5, 0.2)]).nearest_to(
            vec2())
        geometry = project_cluster(cluster, vec2(), vec2(1, 0), 1.0)
        s1, *_ = tangent_candidates(cluster, vec2(), geometry, 1.0)
        self.assertGreater(np.dot(vec2() - cluster.points[0], s1), 0)


class PlanCourseChangeTest(SimpleTestCase):
    def context(self, goal, heading=0.0):
        return NavContext(goal=np.asarray(goal, dtype=float), p_d=vec2(),
                          heading=heading)

    def test_no_clusters_turns_to_goal(self):
        geometry = plan_course_change([], self.context((0, 10)), limits())
        self.assertAlmostEqual(geometry.delta_phi, math.pi / 2)
        self.assertEqual(geometry.feasible_set, [(-math.pi, math.pi)])

    def test_symmetric_obstacle_prefers_ccw(self):
        """Симметричное препятствие: равные стоимости, выбор CCW."""
        cluster = wall(6.0, [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5])
        geometry = plan_course_change([cluster], self.context((20, 0)),
                                      limits())
        self.assertGreater(geometry.delta_phi, 0)
        self.assertEqual(geometry.circ_dir, CCW)
        self.assertTrue(geometry.contains(geometry.delta_phi))
        self.assertTrue(geometry.contains(-geometry.delta_phi))

    def test_single_gap(self):
        bearings = np.radians(np.arange(80, 401))
        points = [(8 * math.cos(b), 8 * math.sin(b)) for b in bearings]
        cluster = ObstacleCluster(id=1, points=points, e1=0,
                                  e2=len(points) - 1).nearest_to(vec2())
        geometry = plan_course_change([cluster], self.context((-20, 0)),
                                      limits())
        course = math.degrees(geometry.delta_phi)
        self.assertTrue(40 < course < 80, course)
        self.assertTrue(geometry.contains(geometry.delta_phi))
        for lo, hi in geometry.feasible_set:
            self.assertGreaterEqual(math.degrees(lo), 40)
            self.assertLessEqual(math.degrees(hi), 80)

    def test_enclosed_vehicle_has_no_course(self):
        bearings = np.radians(np.arange(0, 360))
        points = [(8 * math.cos(b), 8 * math.sin(b)) for b in bearings]
        cluster = ObstacleCluster(id=1, points=points, e1=0,
                                  e2=len(points) - 1).nearest_to(vec2())
        with self.assertRaises(NoFeasibleCourse):
            plan_course_change([cluster], self.context((20, 0)), limits())

    def test_violation_steers_away(self):
        cluster = ObstacleCluster(id=1, points=[(0.5, 0.0)]).nearest_to(
            vec2())
        geometry = plan_course_change([cluster], self.context((10, 0)),
                                      limits())
        self.assertLessEqual(math.cos(geometry.delta_phi), 1e-9)

    def test_peer_moving_alongside_does_not_block(self):
        peer = ObstacleCluster(id=-2, points=[(4.0, 0.0)],
                               velocity=vec2(1, 0), radius=1.0)
        geometry = plan_course_change([peer.nearest_to(vec2())],
                                      self.context((20, 0)), limits())
        self.assertEqual(geometry.delta_phi, 0.0)
