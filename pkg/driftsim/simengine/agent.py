"""One simulated vehicle: sensing, drift logic, planning and control.

:meth:`Agent.plan` runs every sensing period and edits the desired
trajectory; :meth:`Agent.advance` runs every control period and integrates
the rigid body under the flight controller.
"""
import logging
import math

import numpy as np
from django.conf import settings

from controller.flight import FlightController
from core.exceptions import (DegenerateWind, NoControlAuthority,
                             NoFeasibleCourse, TransitionInfeasible)
from core.geometry import lift, norm, planar, vec2, vec3, wrap_angle
from driftframe.cruise import ClearanceAdapter, ThrustBudget
from driftframe.drift import (DRIFT, NORMAL, DriftState, drift_trigger,
                              solve_drift_velocity, to_drift_frame)
from driftframe.estimation import WindEstimator
from dynamics.aero import drag_force, planar_drag_coefficient
from dynamics.params import VehicleState
from dynamics.rigid_body import (rotation_from_euler, saturate_thrust, step,
                                 thrust_vector)
from trajgen.clustering import (ClusterTracker, ObstacleCluster,
                                cluster_obstacles)
from trajgen.course import plan_course_change
from trajgen.ranking import NavContext, PeerInfo, rank_vehicles
from trajgen.sigmoid import (HEADING, SPEED, fit_sigmoid, saturation,
                             tau_f_min_heading, tau_f_min_speed)
from trajgen.trajectory import (PlannerLimits, Trajectory, append_transition,
                                sample_trajectory)

from .events import (ARRIVED, CRASH, DRIFT_ENTER, DRIFT_EXIT, GROUNDED,
                     NO_FEASIBLE_COURSE, Event)

logger = logging.getLogger(__name__)

DRIFT_STEP = 0.25
SPEED_DEADBAND = 0.05
ALIGNED = math.radians(2.0)


def _bearing(vector, default):
    if norm(vector) <= 1e-9:
        return default
    return math.atan2(vector[1], vector[0])


class Agent:
    def __init__(self, spec, sim, env):
        self.spec = spec
        self.params = spec.params
        self.sim = sim
        self.env = env
        self.goal = np.asarray(spec.goal, dtype=float)
        start = np.asarray(spec.position, dtype=float)
        heading = spec.heading
        if heading is None:
            heading = _bearing(self.goal - start[:2], 0.0)

        self.state = VehicleState(
            p=start.copy(), R_IB=rotation_from_euler(vec3(0.0, 0.0, heading)))
        self.controller = FlightController(self.params, spec.gains, env)
        self.estimator = WindEstimator(self.params, env)
        self.budget = ThrustBudget(
            self.params.planar_thrust,
            planar_drag_coefficient(self.params, env.rho), self.params.m)
        self.adapter = ClearanceAdapter(spec.schedule, sim.r_s, sim.dT_s,
                                        self.budget, spec.v_o_max)
        self.tracker = ClusterTracker()
        self.reserve = settings.DRIFTSIM_AUTHORITY_RESERVE
        self.deadband = math.radians(settings.DRIFTSIM_COURSE_DEADBAND_DEG)
        self.min_transition = settings.DRIFTSIM_MIN_TRANSITION
        self.hop_radius = 0.5 * settings.DRIFTSIM_GOAL_RADIUS
        self.drift = DriftState(f_planar_max=self.budget.f_planar_max)

        self.traj = Trajectory(start[:2], 0.0, heading, 0.0,
                               altitude=float(start[2]))
        self.sample = sample_trajectory(self.traj, 0.0)
        self.limits = None
        self.r_c = spec.schedule.radius(0.0)
        self.v_c = 0.0
        self.f_cmd = self.params.hover_thrust
        self.saturated = False
        self.airborne = True
        self.grounded = False
        self.blocked = False
        self.stopping = False
        self.holding = False
        self.events = []

        self.controller.activate(self.state, self.sample)
        self.estimator.update(0.0, self.state.v, -self.params.m * env.g)

    @property
    def vehicle_id(self):
        return self.params.vehicle_id

    @property
    def position(self):
        return self.state.p

    def broadcast(self):
        return PeerInfo(
            vehicle_id=self.vehicle_id, v_c=self.v_c,
            v_d=planar(self.sample.v), r_c=self.r_c,
            v_w_op=self.params.v_w_op, p=planar(self.state.p),
            velocity=planar(self.state.v))

    def drain_events(self):
        events, self.events = self.events, []
        return events

    def _event(self, t, kind, **detail):
        self.events.append(Event(t, self.vehicle_id, kind, detail))
        logger.info('t=%.2f vehicle %s: %s %s', t, self.vehicle_id, kind,
                    detail or '')

    def _expected_drag(self, velocity, v_air):
        moving = VehicleState(v=lift(velocity))
        return drag_force(self.params, moving, v_air, self.env.rho)

    def _rebase(self, t, heading, speed, frame_velocity, disturbance=None,
                origin=None):
        """Start a fresh trajectory at the current desired position."""
        if origin is None:
            origin = planar(self.sample.p)
        self.traj = Trajectory(origin, t, heading, speed, frame_velocity,
                               altitude=self.traj.altitude)
        self.sample = sample_trajectory(self.traj, t)
        self.controller.reanchor(self.state, self.sample, disturbance)
        self.stopping = False

    # drift mode

    def _update_mode(self, t, estimate):
        """Drift trigger; True when the planning frame changed."""
        v_air_max = estimate.v_air_max_tilde
        f, K_d = self.budget.f_planar_max, self.budget.K_d
        mode = NORMAL
        if self.params.drift_enabled:
            mode = drift_trigger(self.drift.mode, v_air_max, f, K_d)
        if mode == NORMAL:
            if self.drift.drifting:
                self._exit_drift(t, estimate)
                return True
            return False
        try:
            wanted = solve_drift_velocity(estimate.v_air_tilde, v_air_max, f,
                                          K_d, self.reserve)
        except DegenerateWind:
            logger.warning('vehicle %s: wind direction undefined at t=%.1f, '
                           'drift frame unchanged', self.vehicle_id, t)
            return False
        if not self.drift.drifting:
            if norm(wanted) > 0:
                self._enter_drift(t, wanted, estimate, DRIFT_ENTER)
                return True
        elif norm(wanted) > self.drift.drift_speed + DRIFT_STEP:
            self._enter_drift(t, wanted, estimate)
            return True
        return False

    def _enter_drift(self, t, v_drift, estimate, kind=None):
        self.holding = False
        self.drift = self.drift.with_changes(mode=DRIFT, v_drift=v_drift)
        self._rebase(t, self.traj.heading(t), 0.0, v_drift,
                     self._expected_drag(v_drift, estimate.v_air_tilde))
        if kind is not None:
            self._event(t, kind, v_drift=[round(float(c), 6)
                                          for c in v_drift])
        else:
            logger.debug('vehicle %s drift velocity raised to %.2f m/s',
                         self.vehicle_id, norm(v_drift))

    def _exit_drift(self, t, estimate):
        velocity = planar(self.sample.v)
        self.drift = self.drift.with_changes(mode=NORMAL, v_drift=vec2())
        self._rebase(t, _bearing(velocity, self.traj.heading(t)),
                     norm(velocity), vec2(),
                     self._expected_drag(velocity, estimate.v_air_tilde))
        self._event(t, DRIFT_EXIT)

    def _ground(self, t, estimate, reason):
        self.r_c = self.adapter.r_c
        self.v_c = 0.0
        if self.grounded:
            return
        self.grounded = True
        frame_velocity = self.drift.v_drift
        self._rebase(t, self.traj.heading(t), 0.0, frame_velocity,
                     self._expected_drag(frame_velocity,
                                         estimate.v_air_tilde))
        logger.warning('vehicle %s grounded: %s', self.vehicle_id, reason)
        self._event(t, GROUNDED, reason=reason)

    # planning

    def _update_clearance(self, t, estimate):
        """Clearance radius, cruise speed and limits in the current frame."""
        v_air_max = estimate.v_air_max_tilde
        frame = to_drift_frame(self.drift.v_drift, estimate.v_air_tilde)
        v_air_max_frame = max(v_air_max - frame.v_o_max, 0.0)
        v_o_max = self.spec.v_o_max + frame.v_o_max
        r_c, v_c_frame = self.adapter.update(t, v_air_max, v_air_max_frame,
                                             v_o_max)
        self.r_c = r_c
        self.v_c = v_c_frame + frame.v_o_max
        self.drift = self.drift.with_changes(
            v_air_max_D=v_air_max_frame, v_o_max_D=v_o_max, v_c_D=v_c_frame,
            r_c=r_c, r_ce=self.adapter.r_ce, v_c=self.v_c)
        self.limits = PlannerLimits(
            a_max=self.budget.acceleration(v_c_frame + v_air_max_frame),
            r_c=r_c, v_c=v_c_frame, r_s=self.sim.r_s, dT_s=self.sim.dT_s)

    def plan(self, t, scan_returns=(), peers=()):
        if not self.airborne:
            return
        self.traj.fold(t)
        self.sample = sample_trajectory(self.traj, t)
        estimate = self.estimator.estimate
        try:
            self._update_clearance(t, estimate)
            stale = False
        except NoControlAuthority:
            stale = True
        if self._update_mode(t, estimate) or stale:
            try:
                self._update_clearance(t, estimate)
            except NoControlAuthority as error:
                self._ground(t, estimate, str(error))
                return
        if self.grounded:
            self.grounded = False
            logger.info('vehicle %s regained control authority at t=%.1f',
                        self.vehicle_id, t)

        if self.holding or self._arrive(t):
            return
        try:
            self._plan_course(t, scan_returns, peers, estimate)
        except TransitionInfeasible as error:
            logger.warning('vehicle %s keeps its trajectory at t=%.1f: %s',
                           self.vehicle_id, t, error)

    def _plan_course(self, t, scan_returns, peers, estimate):
        p_d = planar(self.sample.p)
        frame_velocity = self.drift.v_drift
        clusters = [cluster.in_frame(frame_velocity)
                    for cluster in cluster_obstacles(
                        list(scan_returns), self.position, p_d,
                        self.tracker, self.sim.dT_s)]
        peers = list(peers)
        maneuver, table = rank_vehicles(self.broadcast(), peers,
                                        estimate.speed)
        obstacle_ids = {cluster.id for cluster in clusters}
        clusters.extend(
            ObstacleCluster.from_peer(peer, p_d).in_frame(frame_velocity)
            for peer in peers if peer.vehicle_id in maneuver)
        context = NavContext(
            self.goal, p_d, self.traj.final_heading,
            I_nr={peer.vehicle_id for peer in peers}, I_mnvr=maneuver,
            I_obs=obstacle_ids, v_c_star=table)
        try:
            geometry = plan_course_change(clusters, context, self.limits)
        except NoFeasibleCourse:
            if not self.blocked:
                self._event(t, NO_FEASIBLE_COURSE)
            self.blocked = True
            self._set_speed(t, 0.0)
            return
        self.blocked = False

        delta = geometry.delta_phi
        if abs(delta) > self.deadband:
            speed = max(self.traj.speed(t), self.traj.final_speed)
            tau = max(tau_f_min_heading(delta, speed, self.limits.a_max),
                      self.min_transition)
            heading = self.traj.final_heading
            append_transition(
                self.traj, fit_sigmoid(heading, heading + delta, tau,
                                       HEADING, t0=t), t, self.limits)
        self._set_speed(t, self.limits.v_c)

    def _set_speed(self, t, target):
        current = self.traj.final_speed
        delta = target - current
        if delta == 0 or (target > 0 and abs(delta) < SPEED_DEADBAND):
            return
        tau = max(tau_f_min_speed(delta, self.limits.a_max),
                  self.min_transition)
        append_transition(
            self.traj, fit_sigmoid(current, target, tau, SPEED, t0=t), t,
            self.limits)

    # arrival

    def _arrive(self, t):
        """Brake onto the goal; True while arrival owns the trajectory."""
        if self.drift.drifting or self.blocked:
            return False
        to_goal = self.goal - planar(self.sample.p)
        distance = norm(to_goal)
        if self.stopping:
            if t < self.traj.end_time:
                return True
            if distance <= self.hop_radius:
                self._rebase(t, self.traj.final_heading, 0.0, vec2(),
                             origin=self.goal)
                self.holding = True
                self._event(t, ARRIVED)
            else:
                self._approach(t, to_goal, distance)
            return True

        speed = self.traj.final_speed
        if self.traj.pending(t) or speed <= 0:
            return False
        offset = wrap_angle(_bearing(to_goal, self.traj.final_heading)
                            - self.traj.final_heading)
        if abs(offset) > ALIGNED:
            return False
        tau = max(tau_f_min_speed(speed, self.limits.a_max),
                  self.min_transition)
        gap = distance - 0.5 * speed * tau
        if gap > speed * self.sim.dT_s:
            return False
        self.traj.add_segment(fit_sigmoid(speed, 0.0, tau, SPEED,
                                          t0=t + max(gap, 0.0) / speed))
        self.stopping = True
        return True

    def _approach(self, t, to_goal, distance):
        """Accelerate, coast and stop so the run ends exactly on the goal."""
        a_max = self.limits.a_max
        epsilon = self.limits.epsilon
        speed = min(self.limits.v_c, distance / self.min_transition,
                    math.sqrt(distance * (1.0 - epsilon) * a_max
                              / saturation(epsilon)))
        tau = max(tau_f_min_speed(speed, a_max, epsilon),
                  self.min_transition)
        coast = max(distance - speed * tau, 0.0) / speed
        self._rebase(t, _bearing(to_goal, self.traj.final_heading), 0.0,
                     vec2())
        self.traj.add_segment(fit_sigmoid(0.0, speed, tau, SPEED, t0=t))
        self.traj.add_segment(fit_sigmoid(speed, 0.0, tau, SPEED,
                                          t0=t + tau + coast))
        self.stopping = True

    # control

    def advance(self, t, wind):
        """Fly one control period with the wind held at ``wind``."""
        if not self.airborne:
            self.saturated = False
            return
        dT_c = self.sim.dT_c
        self.sample = sample_trajectory(self.traj, t)
        command = self.controller.outer(self.state, self.sample,
                                        self.sample.heading, dT_c)
        self.f_cmd = command.f_cmd
        self.saturated = self.controller.saturated

        substeps = self.sim.substeps
        h = dT_c / substeps
        air = lift(wind)
        applied = vec3()
        for _ in range(substeps):
            command = self.controller.inner(self.state, h)
            f = saturate_thrust(command.f_cmd, self.params)
            before = thrust_vector(self.state.R_IB, f)
            self.state = step(self.state, self.params, command, air, dt=h,
                              env=self.env)
            applied += 0.5 * h * (before + thrust_vector(self.state.R_IB, f))
        self.estimator.update(t + dT_c, self.state.v, applied / dT_c)

        if self.state.p[2] <= 0:
            self.airborne = False
            self.state.v = vec3()
            self.state.omega = vec3()
            logger.warning('vehicle %s hit the ground at t=%.2f',
                           self.vehicle_id, t + dT_c)
            self._event(t + dT_c, CRASH,
                        position=[round(float(c), 6) for c in self.state.p])

    def row(self, t, min_distance, kinds):
        p, v, p_d = self.state.p, self.state.v, self.sample.p
        v_air = self.estimator.estimate.v_air_tilde
        return {
            't': t, 'vehicle_id': self.vehicle_id,
            'x': p[0], 'y': p[1], 'z': p[2],
            'vx': v[0], 'vy': v[1], 'vz': v[2],
            'xd': p_d[0], 'yd': p_d[1], 'zd': p_d[2],
            'goal_x': self.goal[0], 'goal_y': self.goal[1],
            'mode': self.drift.mode,
            'v_drift_x': self.drift.v_drift[0],
            'v_drift_y': self.drift.v_drift[1],
            'f_cmd': self.f_cmd, 'saturated': int(self.saturated),
            'v_air_x': v_air[0], 'v_air_y': v_air[1],
            'r_c': self.r_c, 'v_c': self.v_c,
            'min_distance': min_distance,
            'events': ';'.join(kinds),
        }
