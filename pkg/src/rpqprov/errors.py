"""Exception hierarchy shared by every module of the package."""

import os

DEFAULT_STATE_CAP = 1_000_000
STATE_CAP_ENV = "RPQPROV_STATE_CAP"


class RpqProvError(Exception):
    """Base class for all errors raised by rpqprov."""


class SemiringError(RpqProvError, ValueError):
    """An operand does not belong to the semiring it is used with."""


class RpqSyntaxError(RpqProvError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class FormatError(RpqProvError, ValueError):
    """Malformed graph or automaton text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownObjectError(RpqProvError, LookupError):
    def __str__(self):
        return f"unknown object {self.args[0]!r}"


class MissingBoundError(RpqProvError, ValueError):
    pass


class MissingSphereLevel(RpqProvError, LookupError):
    def __str__(self):
        return f"no sphere available at level {self.args[0]!r}"


class StateCapExceeded(RpqProvError, RuntimeError):
    """A construction needed more states than its budget allows."""

    def __init__(self, cap, what="construction"):
        super().__init__(f"{what} exceeded the state cap of {cap} states")
        self.cap = cap


def resolve_state_cap(cap=None):
    if cap is not None:
        return int(cap)
    env = os.environ.get(STATE_CAP_ENV)
    if env:
        return int(float(env))
    return DEFAULT_STATE_CAP
