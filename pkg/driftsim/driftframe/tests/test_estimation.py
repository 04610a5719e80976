import numpy as np
from django.test import SimpleTestCase

from controller.flight import FlightController
from controller.gains import ControlGains
from core.exceptions import NegligibleDrag
from core.geometry import EnvironmentConstants, lift, vec3
from dynamics.aero import drag_coefficient_Kd, drag_force
from dynamics.params import VehicleParams, VehicleState
from dynamics.rigid_body import saturate_thrust, step, thrust_vector
from trajgen.trajectory import TrajectorySample

from ..estimation import WindEstimator, estimate_wind

ENV = EnvironmentConstants()
HOVER_FORCE = vec3(0.0, 0.0, 0.54 * 9.81)


def vehicle(A=(0.04, 0.04, 0.09)):
    return VehicleParams(
        m=0.54, J=[0.0037, 0.0037, 0.007], f_max=15.0, C_d=0.41, A=A,
        r_cv=0.3, v_w_op=18.0, vehicle_id=1)


def isotropic_vehicle(K_d=0.01):
    area = K_d / (0.5 * 1.225 * 0.41)
    return vehicle(A=(area, area, area))


class EstimateWindTest(SimpleTestCase):
    def test_still_air(self):
        with self.assertRaises(NegligibleDrag):
            estimate_wind(vec3(), vec3(), HOVER_FORCE, vehicle(), ENV)

    def test_inverts_drag_model(self):
        """d = (0.4, 0) Н при K_d = 0.01 даёт ветер sqrt(40) м/с."""
        applied = HOVER_FORCE - vec3(0.4, 0.0, 0.0)
        estimate = estimate_wind(vec3(), vec3(), applied,
                                 isotropic_vehicle(), ENV)
        np.testing.assert_allclose(estimate.v_air_tilde,
                                   [np.sqrt(40.0), 0.0], rtol=1e-9)
        self.assertAlmostEqual(estimate.residual, 0.4)

    def test_oblique_residual(self):
        """Наклонный ветер: |v_air| = sqrt(|d| / K_d) для направления d."""
        params = vehicle()
        d = np.array([0.3, 0.2])
        applied = HOVER_FORCE - lift(d, 0.0)
        estimate = estimate_wind(vec3(), vec3(), applied, params, ENV)
        K_d = drag_coefficient_Kd(params, lift(d, 0.0), ENV.rho)
        self.assertAlmostEqual(estimate.speed,
                               np.sqrt(np.linalg.norm(d) / K_d), places=9)
        np.testing.assert_allclose(
            estimate.v_air_tilde / estimate.speed, d / np.linalg.norm(d))

    def test_climbing_vehicle(self):
        params = isotropic_vehicle()
        state = VehicleState(v=vec3(0.0, 0.0, 1.0))
        drag = drag_force(params, state, vec3(5.0, 0.0, 0.0), ENV.rho)
        estimate = estimate_wind(state.v, drag / params.m, HOVER_FORCE,
                                 params, ENV)
        np.testing.assert_allclose(estimate.v_air_tilde, [5.0, 0.0],
                                   atol=1e-6)


class WindEstimatorTest(SimpleTestCase):
    def test_first_update_keeps_still_air(self):
        estimator = WindEstimator(vehicle(), ENV)
        estimate = estimator.update(0.0, vec3(), HOVER_FORCE)
        np.testing.assert_array_equal(estimate.v_air_tilde, [0.0, 0.0])

    def test_running_max_forgets_old_peaks(self):
        estimator = WindEstimator(vehicle(), ENV, tau=0.0, window=2.0)
        self.assertEqual(estimator._running_max(0.0, 5.0), 5.0)
        self.assertEqual(estimator._running_max(1.0, 3.0), 5.0)
        self.assertEqual(estimator._running_max(2.5, 1.0), 3.0)
        self.assertEqual(estimator._running_max(3.5, 2.0), 2.0)

    def test_closed_loop_hover(self):
        """Зависание в постоянном ветре: оценка сходится к ветру."""
        params = vehicle()
        for speed in (3.0, 6.0, 9.0, 12.0):
            with self.subTest(speed=speed):
                wind = vec3(speed, 0.0, 0.0)
                controller = FlightController(params, ControlGains(), ENV)
                estimator = WindEstimator(params, ENV)
                hold = vec3(0.0, 0.0, 10.0)
                state = VehicleState(p=hold)
                target = TrajectorySample(hold, vec3(), None, None, None,
                                          0.0, 0.0)
                controller.activate(state, target)
                estimator.update(0.0, state.v, HOVER_FORCE)
                errors = []
                for tick in range(1, 101):
                    controller.outer(state, target, 0.0, 0.1)
                    applied = vec3()
                    for _ in range(10):
                        command = controller.inner(state, 0.01)
                        f_cmd = saturate_thrust(command.f_cmd, params)
                        before = thrust_vector(state.R_IB, f_cmd)
                        state = step(state, params, command, wind, dt=0.01,
                                     env=ENV)
                        after = thrust_vector(state.R_IB, f_cmd)
                        applied += 0.05 * (before + after)
                    estimate = estimator.update(tick * 0.1, state.v,
                                                applied)
                    if tick * 0.1 > 5.0:
                        errors.append(np.linalg.norm(
                            estimate.v_air_tilde - lift(wind)[:2]))
                self.assertLess(max(errors), 0.5)
                self.assertGreaterEqual(estimate.v_air_max_tilde,
                                        estimate.speed)
