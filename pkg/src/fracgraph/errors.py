"""Exception hierarchy. Each family maps to a distinct CLI exit code."""


class FracGraphError(Exception):
    exit_code = 1


class InputParseError(FracGraphError):
    exit_code = 3


class ValidationError(FracGraphError):
    exit_code = 4


class OutOfDomainError(ValidationError):
    pass


class DegenerateZoneError(FracGraphError):
    exit_code = 5


class NoPathError(FracGraphError):
    exit_code = 6


class NoCracksError(FracGraphError):
    exit_code = 10


class UndefinedScoreError(FracGraphError):
    exit_code = 11


class IdMismatchError(FracGraphError):
    exit_code = 7


class DamageDataError(FracGraphError):
    """Bad damage series; carries the offending series id and row."""

    exit_code = 8

    def __init__(self, message, simulation_id=None, row=None):
        super().__init__(message)
        self.simulation_id = simulation_id
        self.row = row


class GridMismatchError(FracGraphError):
    exit_code = 12


class InfeasibleSpecError(FracGraphError):
    exit_code = 9
