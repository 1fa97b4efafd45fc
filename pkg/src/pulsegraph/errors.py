"""Exception hierarchy.

Every error raised by the library derives from :class:`PulseGraphError`.
Errors raised while walking a graph carry the edge-label path from the root
to the offending node in ``path``.
"""

from __future__ import annotations


def format_path(path) -> str:
    if path is None:
        return "?"
    if not path:
        return "<root>"
    return "/".join(str(p) for p in path)


class PulseGraphError(Exception):
    def __init__(self, message: str = "", *, path=None):
        super().__init__(message)
        self.path = tuple(path) if path is not None else None

    def __str__(self) -> str:
        msg = super().__str__()
        if self.path is not None:
            msg = f"{msg} (at {format_path(self.path)})"
        return msg


class InvalidNode(PulseGraphError, ValueError):
    """A node could not be constructed from the given arguments."""


class ArityError(InvalidNode):
    pass


class PhaseModeError(InvalidNode):
    pass


class CategoryViolation(PulseGraphError, TypeError):
    """A scalar was supplied where a waveform is required, or vice versa."""


class ClockReplacement(CategoryViolation):
    """A clock slot received a waveform that is not a clock."""


class UnboundVariable(PulseGraphError, LookupError):
    def __init__(self, key: str, *, path=None):
        super().__init__(f"unbound variable {key!r}", path=path)
        self.key = key


class DivisionByZero(PulseGraphError, ZeroDivisionError):
    pass


class SingularPower(PulseGraphError, ArithmeticError):
    pass


class UnboundedDuration(PulseGraphError, ValueError):
    pass


class NegativeDuration(PulseGraphError, ValueError):
    pass


class UnsupportedWaveform(PulseGraphError):
    """The target cannot realize the waveform found at ``path``."""

    def __init__(self, kind: str, *, path=None, reason: str = ""):
        msg = f"unsupported waveform {kind}"
        if reason:
            msg = f"{msg}: {reason}"
        super().__init__(msg, path=path)
        self.kind = kind


class VisitError(PulseGraphError):
    """Wraps a foreign exception raised by a visit handler."""


class ScheduleError(PulseGraphError):
    pass


class ScheduleViolation(PulseGraphError):
    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        msg = f"{len(self.violations)} negative-duration violation(s)"
        super().__init__(msg, path=first.path if first else None)


class PipelineError(PulseGraphError):
    def __init__(self, pass_index: int, pass_name: str, cause: BaseException, channel=None):
        self.pass_index = pass_index
        self.pass_name = pass_name
        self.channel = channel
        self.cause = cause
        where = f"pass {pass_index} ({pass_name})"
        if channel is not None:
            where = f"{where}, channel {channel}"
        super().__init__(f"{where}: {cause}", path=None)


class SchemaError(PulseGraphError, ValueError):
    """Malformed JSON document; ``field`` names the offending location."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
