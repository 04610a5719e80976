import math

import numpy as np
from django.test import SimpleTestCase, override_settings

from core.exceptions import TooShort

from ..sigmoid import (HEADING, SPEED, fit_sigmoid, tau_f_min_heading,
                       tau_f_min_speed)
from ..trajectory import PlannerLimits


class FitSigmoidTest(SimpleTestCase):
    def test_quarter_turn_coefficients(self):
        segment = fit_sigmoid(0.0, math.pi / 2, 2.0, HEADING)
        self.assertAlmostEqual(segment.c3, 2.6467, places=4)
        self.assertAlmostEqual(segment.c2, 2.6467, places=4)
        self.assertAlmostEqual(segment.c1, 0.7933, places=4)
        self.assertAlmostEqual(segment.c4, math.pi / 4)

    @override_settings(DRIFTSIM_EPSILON_S=0.05)
    def test_saturation_level_from_settings(self):
        segment = fit_sigmoid(0.0, 1.0, 2.0, SPEED)
        self.assertEqual(segment.epsilon, 0.05)
        self.assertAlmostEqual(segment.c3, math.atanh(0.95))
        limits = PlannerLimits(a_max=1.0, r_c=1.0, v_c=2.0, r_s=10.0,
                               dT_s=1.0)
        self.assertEqual(limits.epsilon, 0.05)

    def test_endpoints_are_exact(self):
        """Значения на концах совпадают с заданными с точностью 1e-12."""
        rng = np.random.default_rng(1)
        for _ in range(200):
            x_prev, x_new = rng.uniform(-5, 5, size=2)
            t0, tau = rng.uniform(0, 10), rng.uniform(0.1, 5)
            segment = fit_sigmoid(x_prev, x_new, tau, SPEED, t0=t0)
            self.assertLessEqual(abs(segment.value(t0) - x_prev), 1e-12)
            self.assertLessEqual(
                abs(segment.value(t0 + tau) - x_new), 1e-12)
            self.assertLessEqual(
                abs(segment.value(t0 + tau + 1.0) - x_new), 1e-12)

    def test_constant_segment(self):
        segment = fit_sigmoid(1.5, 1.5, 1.0, SPEED)
        self.assertEqual(segment.c1, 0.0)
        for t in (0.0, 0.3, 0.9, 2.0):
            self.assertEqual(segment.value(t), 1.5)
            self.assertEqual(segment.contribution(t, 2), 0.0)

    def test_too_short(self):
        with self.assertRaises(TooShort):
            fit_sigmoid(0.0, 1.0, 0.5, SPEED, tau_f_min=1.0)

    def test_peak_rate_at_minimum_timespan(self):
        """При tau_f = tau_f,min пиковое ускорение равно a_max."""
        a_max, v_c = 1.3, 2.0
        for delta in (0.2, math.pi / 2, math.pi):
            with self.subTest(delta=delta):
                tau = tau_f_min_heading(delta, v_c, a_max)
                segment = fit_sigmoid(0.0, delta, tau, HEADING)
                self.assertAlmostEqual(segment.peak_rate * v_c, a_max,
                                       places=12)
                centre = segment.contribution(tau / 2, 1)
                self.assertAlmostEqual(centre, segment.peak_rate, places=12)
        tau = tau_f_min_speed(1.0, a_max)
        segment = fit_sigmoid(0.0, 1.0, tau, SPEED)
        self.assertAlmostEqual(segment.peak_rate, a_max, places=12)

    def test_derivatives_match_finite_differences(self):
        rng = np.random.default_rng(7)
        segment = fit_sigmoid(-0.4, 1.1, 1.7, HEADING, t0=3.0)
        h = 1e-5
        grid = np.linspace(segment.t0, segment.t_end, 20001)
        for order in range(1, 5):
            scale = np.max(np.abs(segment.contribution(grid, order)))
            for t in rng.uniform(segment.t0 + 1e-3, segment.t_end - 1e-3,
                                 100):
                with self.subTest(order=order, t=t):
                    fd = (segment.contribution(t + h, order - 1)
                          - segment.contribution(t - h, order - 1)) / (2 * h)
                    self.assertLess(
                        abs(fd - segment.contribution(t, order)),
                        1e-4 * scale)
