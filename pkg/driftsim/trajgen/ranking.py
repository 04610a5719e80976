from dataclasses import dataclass, field

import numpy as np

from core.exceptions import DuplicateID
from core.geometry import vec2


@dataclass(frozen=True)
class PeerInfo:
    """Comms tuple broadcast by a vehicle every sensing period."""
    vehicle_id: int
    v_c: float
    v_d: np.ndarray
    r_c: float
    v_w_op: float
    p: np.ndarray = field(default_factory=vec2)
    velocity: np.ndarray = field(default_factory=vec2)


@dataclass
class NavContext:
    goal: np.ndarray
    p_d: np.ndarray
    heading: float
    v_d: np.ndarray = None
    I_nr: set = field(default_factory=set)
    I_mnvr: set = field(default_factory=set)
    I_obs: set = field(default_factory=set)
    v_c_star: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.I_mnvr <= self.I_nr:
            raise ValueError('I_mnvr must be a subset of I_nr')


def effective_cruise_speed(v_c, v_d, v_w_op, v_air_est):
    """v_c* is zero for vehicles that are over-winded or hovering."""
    if v_air_est > v_w_op:
        return 0.0
    if np.linalg.norm(v_d) == 0:
        return 0.0
    return float(v_c)


def rank_vehicles(own, peers, v_air_est):
    """IDs of the peers this vehicle has to maneuver around.

    Returns the set and the v_c* table keyed by ID.
    """
    seen = {own.vehicle_id}
    for peer in peers:
        if peer.vehicle_id in seen:
            raise DuplicateID(f'vehicle ID {peer.vehicle_id} is not unique')
        seen.add(peer.vehicle_id)

    table = {own.vehicle_id: effective_cruise_speed(
        own.v_c, own.v_d, own.v_w_op, v_air_est)}
    for peer in peers:
        table[peer.vehicle_id] = effective_cruise_speed(
            peer.v_c, peer.v_d, peer.v_w_op, v_air_est)

    mine = table[own.vehicle_id]
    maneuver = set()
    for peer in peers:
        theirs = table[peer.vehicle_id]
        if mine > theirs or (mine == theirs
                             and own.vehicle_id > peer.vehicle_id):
            maneuver.add(peer.vehicle_id)
    return maneuver, table
