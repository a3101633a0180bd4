"""
Dataset validation verdicts.  A sample whose count columns track Benford
closely (r above pass_min) passes; r at or below warn_min fails

"""
from aenum import Enum
from collections import namedtuple
from typing import Optional

from . import config
from .stats import ConformanceReport
from .utils import errors


class Verdict(Enum):
    PASS = 'PASS'
    WARN = 'WARN'
    FAIL = 'FAIL'


class VerdictThresholds(namedtuple('VerdictThresholds', 'pass_min warn_min')):
    __slots__ = ()

    def __new__(cls, pass_min: Optional[float] = None, warn_min: Optional[float] = None):
        self = super().__new__(
            cls,
            float(config.validate.pass_min if pass_min is None else pass_min),
            float(config.validate.warn_min if warn_min is None else warn_min)
        )

        if not self.warn_min < self.pass_min:
            raise errors.InvalidThresholds(
                f'warn_min ({self.warn_min}) must be below '
                f'pass_min ({self.pass_min})'
            )

        return self


def verdict(
        report: ConformanceReport,
        thresholds: Optional[VerdictThresholds] = None
) -> Verdict:
    """
    PASS when r > pass_min, WARN when warn_min < r <= pass_min, else FAIL.
    An undefined r fails

    """
    thresholds = thresholds or VerdictThresholds()
    r = report.pearson_r

    if r is not None and r > thresholds.pass_min:
        return Verdict.PASS
    if r is not None and r > thresholds.warn_min:
        return Verdict.WARN

    return Verdict.FAIL
