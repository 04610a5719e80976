class DriftsimError(Exception):
    """Базовое исключение симулятора."""


class ZeroVector(DriftsimError):
    pass


class InvalidGrid(DriftsimError):
    pass


class UndefinedDirection(DriftsimError):
    pass


class NonFiniteState(DriftsimError):
    def __init__(self, message, partial_log=None):
        super().__init__(message)
        self.partial_log = partial_log


class DegenerateForce(DriftsimError):
    pass


class DuplicateID(DriftsimError):
    pass


class CoincidentPoint(DriftsimError):
    pass


class NoFeasibleCourse(DriftsimError):
    def __init__(self, message, geometry=None):
        super().__init__(message)
        self.geometry = geometry


class TooShort(DriftsimError):
    pass


class TransitionInfeasible(DriftsimError):
    pass


class NonConverged(DriftsimError):
    pass


class NegligibleDrag(DriftsimError):
    pass


class DegenerateWind(DriftsimError):
    pass


class NoControlAuthority(DriftsimError):
    pass


class ConfigInvalid(DriftsimError):
    def __init__(self, errors):
        self.errors = errors
        super().__init__('; '.join(
            f'{path}: {message}' for path, message in errors))


class MissingColumn(DriftsimError):
    pass


class EmptyLog(MissingColumn):
    pass
