"""Exception hierarchy.  Every domain failure derives from BasilicaError so the
CLI can report it by class name."""


class BasilicaError(ValueError):
    pass


class NonMonotone(BasilicaError):
    pass


class NotDyadic(BasilicaError):
    pass


class Unrealizable(BasilicaError):
    pass


class DepthCap(BasilicaError):
    pass


class NotLaminationPoint(BasilicaError):
    pass


class InvalidAddress(BasilicaError):
    pass


class NotThompson(BasilicaError):
    pass


class NotLaminationPreserving(BasilicaError):
    pass


class UnresolvedComponent(BasilicaError):
    pass


class NotMember(BasilicaError):
    pass


class SearchExhausted(BasilicaError):
    pass


class NonMonotoneOnE(BasilicaError):
    pass


class GeometryUnavailable(BasilicaError):
    pass


class NoConvergence(BasilicaError):
    pass
