"""Exception types raised by the library."""


class StationarityError(Exception):
    """Base class for input errors raised by this package."""


class DimensionMismatch(StationarityError):
    pass


class DomainError(StationarityError):
    """An outcome lies outside the utility function's domain."""


class MeasurabilityViolation(StationarityError):
    def __init__(self, message, date=None, cell=None):
        super().__init__(message)
        self.date = date
        self.cell = cell


class NotDeterministic(StationarityError):
    pass


class LengthMismatch(StationarityError):
    pass


class NegativeMass(StationarityError):
    pass


class InvalidDistortion(StationarityError):
    pass


class InvalidCapacity(StationarityError):
    pass


class InvalidProbability(StationarityError):
    pass


class InvalidModel(StationarityError):
    pass


class SamplingExhausted(StationarityError):
    pass


class UnknownExample(StationarityError):
    pass
