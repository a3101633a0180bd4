"""
Egocentric FSD analysis.  For each focal user, the first digits of their
friends' own friend counts are scored against Benford and binned

"""
from __future__ import annotations  # forward reference

import logging

from aenum import Enum
from collections import namedtuple
from typing import Iterable, Iterator, Mapping, Optional, Union

from . import config
from .ingest import DegreeTable
from .stats import FsdHistogram, ConformanceReport, conformance
from .utils import errors

_log = logging.getLogger(__name__)


class Bin(Enum):
    CONFORMANT = 'conformant'
    INTERMEDIATE = 'intermediate'
    SUSPICIOUS = 'suspicious'
    UNDEFINED = 'undefined'


class ClassificationThresholds(namedtuple(
        'ClassificationThresholds', 'conformant_min suspicious_max min_degree'
)):
    """
    r >= conformant_min is conformant, r < suspicious_max is suspicious.
    Egos with fewer than min_degree friends are not scored.  Unset fields
    come from config.ego

    """
    __slots__ = ()

    def __new__(
            cls,
            conformant_min: Optional[float] = None,
            suspicious_max: Optional[float] = None,
            min_degree: Optional[int] = None
    ):
        conf = config.ego
        self = super().__new__(
            cls,
            float(conf.conformant_min if conformant_min is None else conformant_min),
            float(conf.suspicious_max if suspicious_max is None else suspicious_max),
            int(conf.min_degree if min_degree is None else min_degree)
        )

        if not self.suspicious_max < self.conformant_min:
            raise errors.InvalidThresholds(
                f'suspicious_max ({self.suspicious_max}) must be below '
                f'conformant_min ({self.conformant_min})'
            )
        if self.min_degree < 1:
            raise errors.InvalidThresholds('min_degree must be at least 1')

        return self


def classify(
        report: Union[ConformanceReport, float, None],
        thresholds: Optional[ClassificationThresholds] = None
) -> Bin:
    """
    Bin a conformance report by its Pearson r

    Parameters
    ----------
    report: Union[ConformanceReport, float, None]
        a report, or r itself. None means undefined
    thresholds: Optional[ClassificationThresholds]

    Returns
    -------
    Bin

    """
    thresholds = thresholds or ClassificationThresholds()
    r = report.pearson_r if isinstance(report, ConformanceReport) else report

    if r is None:
        return Bin.UNDEFINED
    if r >= thresholds.conformant_min:
        return Bin.CONFORMANT
    if r < thresholds.suspicious_max:
        return Bin.SUSPICIOUS

    return Bin.INTERMEDIATE


class EgoReport:
    """
    Scored egocentric network for one user

    Attributes
    ----------
    user: int
        the focal user
    ego_size: int
        friends with a degree record (zero-degree friends included)
    missing: int
        friends with no degree record at all
    hist: FsdHistogram
        over the friends' degrees
    report: Optional[ConformanceReport]
        None when every friend has degree 0
    bin: Bin

    """
    __slots__ = ('user', 'ego_size', 'missing', 'hist', 'report', 'bin')

    def __init__(
            self,
            user: int,
            hist: FsdHistogram,
            missing: int,
            thresholds: ClassificationThresholds,
            chi_warn: Optional[int] = None
    ):
        self.user = user
        self.hist = hist
        self.missing = missing
        self.ego_size = hist.total + hist.excluded_zero
        self.report = conformance(hist, chi_warn=chi_warn) if hist.total else None
        self.bin = classify(self.report, thresholds)

    @property
    def r(self) -> Optional[float]:
        return self.report.pearson_r if self.report else None

    def sort_key(self):
        """Ascending r, undefined last, ties by user"""
        return self.r is None, self.r if self.r is not None else 0.0, self.user

    def to_dict(self) -> dict:
        return {
            'user': self.user,
            'ego_size': self.ego_size,
            'missing': self.missing,
            'pearson_r': self.r,
            'bin': self.bin.value,
            'histogram': self.hist.to_dict(),
            'report': self.report.to_dict() if self.report else None
        }

    def __eq__(self, other):
        if not isinstance(other, EgoReport):
            return NotImplemented
        return (self.user == other.user and self.hist == other.hist
                and self.missing == other.missing and self.bin == other.bin)

    def __hash__(self):
        return hash((self.user, tuple(self.hist.counts), self.missing))

    def __repr__(self):
        r = 'undefined' if self.r is None else f'{self.r:.4f}'
        return (f'EgoReport(user={self.user}, ego_size={self.ego_size}, '
                f'r={r}, bin={self.bin.value})')


def _friend_degrees(
        graph: DegreeTable,
        user: int,
        degree: str,
        degrees: Optional[Mapping[int, int]]
) -> tuple[list[int], int]:
    """Known friend degrees and the number of friends without a record"""
    known, missing = [], 0

    for f in graph.friends(user):
        k = degrees.get(f) if degrees is not None else graph.degree(f, degree)
        if k is None:
            missing += 1
        else:
            known.append(k)

    return known, missing


def ego_histogram(
        graph: DegreeTable,
        user: int,
        degree: Optional[str] = None,
        degrees: Optional[Mapping[int, int]] = None
) -> FsdHistogram:
    """
    FSD histogram over the degrees of everyone user points to

    Parameters
    ----------
    graph: DegreeTable
        parsed with adjacency
    user: int
        focal user
    degree: Optional[str]
        'out' or 'in' degree of friends. Default config.ego.degree
    degrees: Optional[Mapping[int, int]]
        external friend counts overriding the graph's own degrees

    Returns
    -------
    FsdHistogram
        friends with degree 0 land in excluded_zero

    """
    known, _ = _friend_degrees(graph, user, degree or config.ego.degree, degrees)
    return FsdHistogram.from_values(known)


def ego_report(
        graph: DegreeTable,
        user: int,
        thresholds: Optional[ClassificationThresholds] = None,
        degree: Optional[str] = None,
        degrees: Optional[Mapping[int, int]] = None
) -> EgoReport:
    """Score one ego regardless of its size"""
    thresholds = thresholds or ClassificationThresholds()
    known, missing = _friend_degrees(graph, user, degree or config.ego.degree,
                                     degrees)
    return report_from_degrees(user, known, thresholds, missing)


def report_from_degrees(
        user: int,
        friend_degrees: Iterable[int],
        thresholds: Optional[ClassificationThresholds] = None,
        missing: int = 0,
        chi_warn: Optional[int] = None
) -> EgoReport:
    """Score an ego given its friends' degrees directly"""
    hist = FsdHistogram.from_values(friend_degrees)
    return EgoReport(user, hist, missing, thresholds or ClassificationThresholds(),
                     chi_warn)


class EgoSummary:
    """
    Tallies over a scan

    Attributes
    ----------
    counts: dict[Bin, int]
        emitted reports per bin
    skipped: int
        users below min_degree
    missing_friends: int
        dangling friend ids across all emitted egos

    """
    def __init__(self, thresholds: ClassificationThresholds):
        self.thresholds = thresholds
        self.counts = {b: 0 for b in Bin}
        self.skipped = 0
        self.missing_friends = 0

    @property
    def evaluated(self) -> int:
        return sum(self.counts.values())

    def add(self, report: EgoReport) -> None:
        self.counts[report.bin] += 1
        self.missing_friends += report.missing

    @property
    def scored(self) -> int:
        """Evaluated egos with a defined r"""
        return self.evaluated - self.counts[Bin.UNDEFINED]

    def fraction_at_least(self) -> float:
        """Fraction of scored egos with r >= conformant_min"""
        n = self.scored
        return self.counts[Bin.CONFORMANT] / n if n else 0.0

    def fraction_below(self) -> float:
        """Fraction of scored egos with r < suspicious_max"""
        n = self.scored
        return self.counts[Bin.SUSPICIOUS] / n if n else 0.0

    def to_dict(self) -> dict:
        return {
            'evaluated': self.evaluated,
            'scored': self.scored,
            'skipped': self.skipped,
            'missing_friends': self.missing_friends,
            'bins': {b.value: n for b, n in self.counts.items()},
            'fraction_conformant': self.fraction_at_least(),
            'fraction_suspicious': self.fraction_below(),
            'thresholds': dict(self.thresholds._asdict())
        }


class EgoScan:
    """
    Lazily scores every user with at least min_degree friends, in ascending
    user id order.  The summary is complete once iteration finishes

    Parameters
    ----------
    graph: DegreeTable
        parsed with adjacency
    thresholds: Optional[ClassificationThresholds]
    degree: Optional[str]
        'out' or 'in'. Default config.ego.degree
    degrees: Optional[Mapping[int, int]]
        external friend counts
    chi_warn: Optional[int]
        chi-square large-sample threshold per ego

    """
    def __init__(
            self,
            graph: DegreeTable,
            thresholds: Optional[ClassificationThresholds] = None,
            degree: Optional[str] = None,
            degrees: Optional[Mapping[int, int]] = None,
            chi_warn: Optional[int] = None
    ):
        if not graph.has_adjacency:
            raise errors.ConfigError('Ego scans need an edge list parsed '
                                     'with adjacency')

        self.graph = graph
        self.thresholds = thresholds or ClassificationThresholds()
        self.degree = degree or config.ego.degree
        self.degrees = degrees
        self.chi_warn = chi_warn
        self.summary = EgoSummary(self.thresholds)

    def __iter__(self) -> Iterator[EgoReport]:
        self.summary = EgoSummary(self.thresholds)
        min_degree = self.thresholds.min_degree

        for user in sorted(self.graph.nodes()):
            known, missing = _friend_degrees(self.graph, user, self.degree,
                                             self.degrees)
            if len(known) < min_degree:
                self.summary.skipped += 1
                continue

            report = report_from_degrees(user, known, self.thresholds, missing,
                                         self.chi_warn)
            self.summary.add(report)
            yield report

        _log.info(f'Scanned {self.summary.evaluated:,} egos '
                  f'({self.summary.skipped:,} below {min_degree} friends)')


def scan_egos(
        graph: DegreeTable,
        thresholds: Optional[ClassificationThresholds] = None,
        **kwargs
) -> tuple[list[EgoReport], EgoSummary]:
    """Run an EgoScan to completion"""
    scan = EgoScan(graph, thresholds, **kwargs)
    reports = list(scan)
    return reports, scan.summary


def rank(reports: Iterable[EgoReport]) -> list[EgoReport]:
    """Ascending r, undefined last"""
    return sorted(reports, key=EgoReport.sort_key)


def top_deviating(reports: Iterable[EgoReport], k: Optional[int] = None) -> list[EgoReport]:
    """The k scored egos that deviate most from Benford"""
    k = config.ego.top if k is None else k
    return [rep for rep in rank(reports) if rep.r is not None][:k]
