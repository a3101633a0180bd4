"""
Custom errors for fsdnet.  Every error carries the exit code the cli
returns when it escapes a command

"""
from typing import Optional, Iterable


class FsdError(Exception):
    """
    Base error for fsdnet.

    Attributes
    ----------
    cls.default_msg: str
        default message to report
    cls.exit_code: int
        process exit code used by the cli
    msg: str
        message to report

    """
    default_msg = 'fsdnet failed'
    exit_code = 1

    def __init__(self, msg: Optional[str] = None):
        self.msg = msg or self.default_msg
        super().__init__(self.msg)

    def __str__(self):
        return self.msg


class ConfigError(FsdError):
    """Bad configuration, flags or generator parameters"""
    default_msg = 'Invalid configuration'
    exit_code = 2


class MissingColumn(ConfigError):
    """Requested column is not in the CSV header"""
    def __init__(self, column: str, available: Iterable[str] = ()):
        self.column = column
        self.available = list(available)
        msg = (f'Column {column!r} not found in header. '
               f'Available: {", ".join(self.available) or "none"}')
        super().__init__(msg)


class InvalidThresholds(ConfigError):
    """Classification or verdict thresholds out of order"""
    default_msg = 'Invalid thresholds'


class InvalidGeneratorSpec(ConfigError):
    """Generator parameters violate the model's constraints"""
    default_msg = 'Invalid generator spec'


class DataError(FsdError):
    """Problem with the input data itself"""
    default_msg = 'Invalid input data'
    exit_code = 3


class ParseError(DataError):
    """
    Malformed line in an edge list or cell in a CSV

    Attributes
    ----------
    lineno: int
        1-based line (edge list) or row (csv) number
    text: str
        the offending text

    """
    def __init__(
            self,
            lineno: int,
            text: str,
            reason: Optional[str] = None,
            kind: str = 'line'
    ):
        self.lineno = lineno
        self.text = text
        self.reason = reason
        msg = f'Malformed {kind} {lineno}: {text!r}'
        if reason:
            msg += f' ({reason})'
        super().__init__(msg)


class EmptySample(DataError):
    """No nonzero values to score"""
    default_msg = 'Empty sample: no nonzero values to score'


class NoSignificantDigit(DataError, ValueError):
    """Zero has no first significant digit"""
    default_msg = 'No significant digit: value is 0'


class UnknownUser(DataError, KeyError):
    """User id not present in the graph"""
    def __init__(self, user):
        self.user = user
        super().__init__(f'Unknown user {user!r}: not present in the graph')


class ValidationFailed(FsdError):
    """At least one validated column failed"""
    default_msg = 'Validation failed'
    exit_code = 4
