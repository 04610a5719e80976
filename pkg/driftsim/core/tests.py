import math

import numpy as np
from django.test import SimpleTestCase

from .exceptions import ZeroVector
from .geometry import (EnvironmentConstants, Rotation2, rotate,
                       signed_angle, vec2, wrap_angle)


class SignedAngleTest(SimpleTestCase):
    def test_known_angles(self):
        """signed_angle совпадает с ожидаемыми значениями."""
        cases = {
            ((1, 0), (0, 1)): math.pi / 2,
            ((1, 0), (1, 0)): 0.0,
            ((1, 0), (1, -1)): -math.pi / 4,
            ((1, 0), (-1, 0)): math.pi,
        }
        for (a, b), expected in cases.items():
            with self.subTest(a=a, b=b):
                self.assertAlmostEqual(
                    signed_angle(vec2(*a), vec2(*b)), expected, places=12)

    def test_antisymmetry(self):
        """Перестановка аргументов меняет знак угла."""
        rng = np.random.default_rng(7)
        for _ in range(200):
            a, b = rng.normal(size=2), rng.normal(size=2)
            self.assertAlmostEqual(
                signed_angle(a, b), -signed_angle(b, a), places=12)

    def test_zero_vector(self):
        with self.assertRaises(ZeroVector):
            signed_angle(vec2(0, 0), vec2(1, 0))


class RotateTest(SimpleTestCase):
    def test_examples(self):
        np.testing.assert_allclose(
            rotate(vec2(1, 0), math.pi / 2), [0, 1], atol=1e-12)
        np.testing.assert_allclose(rotate(vec2(3, 4), 0.0), [3, 4])
        np.testing.assert_allclose(
            rotate(vec2(1, 0), math.pi / 6), [0.8660254, 0.5], atol=1e-7)

    def test_roundtrip_and_length(self):
        """Поворот сохраняет длину и обратим."""
        rng = np.random.default_rng(11)
        for _ in range(500):
            v = rng.normal(size=2) * 10
            theta = rng.uniform(-10, 10)
            out = rotate(v, theta)
            self.assertAlmostEqual(
                np.linalg.norm(out), np.linalg.norm(v), places=12)
            np.testing.assert_allclose(rotate(out, -theta), v, atol=1e-10)

    def test_rotation2_inverse(self):
        r = Rotation2(0.7)
        np.testing.assert_allclose(
            (r @ r.inverse()).matrix, np.eye(2), atol=1e-12)

    def test_wrap_tie_break(self):
        self.assertEqual(wrap_angle(-math.pi), math.pi)


class EnvironmentTest(SimpleTestCase):
    def test_defaults(self):
        env = EnvironmentConstants.from_settings()
        self.assertAlmostEqual(env.gravity, 9.81)
        self.assertLess(env.g[2], 0)
        with self.assertRaises(ValueError):
            EnvironmentConstants(rho=0.0)
