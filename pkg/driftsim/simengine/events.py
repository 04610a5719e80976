from dataclasses import dataclass, field

COLLISION = 'Collision'
RC_VIOLATION = 'RcViolation'
CRASH = 'Crash'
DRIFT_ENTER = 'DriftEnter'
DRIFT_EXIT = 'DriftExit'
GROUNDED = 'Grounded'
NO_FEASIBLE_COURSE = 'NoFeasibleCourse'
ARRIVED = 'Arrived'


@dataclass(frozen=True)
class Event:
    t: float
    vehicle_id: int
    kind: str
    detail: dict = field(default_factory=dict)

    def as_record(self):
        return {'t': round(self.t, 6), 'vehicle_id': self.vehicle_id,
                'kind': self.kind, **self.detail}
