"""
First significant digit extraction, the Benford distribution, histogram
accumulation and conformance metrics.

Pearson r is the primary conformance measure.  MAD and chi-square are
supplementary; chi-square is flagged once n is large enough that any tiny
deviation dominates it

"""
from __future__ import annotations  # forward reference

import logging
import functools

import numpy as np

from collections import namedtuple
from typing import Iterable, Optional, Union

from . import config
from .utils import errors

_log = logging.getLogger(__name__)

DIGITS = tuple(range(1, 10))

# every power of ten representable in uint64 (10**19 < 2**64)
_POW10 = np.array([10 ** k for k in range(20)], dtype=np.uint64)
_UINT64_MAX = 2 ** 64 - 1

ChiSquare = namedtuple('ChiSquare', 'statistic warning threshold')


def fsd(value: int) -> int:
    """
    First significant digit of a positive integer, by repeated division

    Parameters
    ----------
    value: int
        a positive integer

    Returns
    -------
    int
        the leading decimal digit, 1-9

    """
    value = int(value)

    if value == 0:
        raise errors.NoSignificantDigit
    if value < 0:
        raise errors.DataError(f'Negative value {value} has no place in a count')

    while value >= 10:
        value //= 10

    return value


def fsd_array(values: Union[np.ndarray, Iterable[int]]) -> np.ndarray:
    """
    Vectorized exact fsd over unsigned 64-bit integers. Zeros map to 0

    Parameters
    ----------
    values: Union[np.ndarray, Iterable[int]]
        nonnegative integers

    Returns
    -------
    np.ndarray
        int64 array of digits in 0..9

    """
    arr = _as_uint64(values)
    k = np.searchsorted(_POW10, arr, side='right').astype(np.int64) - 1
    digits = arr // _POW10[np.maximum(k, 0)]
    return digits.astype(np.int64)


def _as_uint64(values: Union[np.ndarray, Iterable[int]]) -> np.ndarray:
    """Coerce to uint64 without letting negatives wrap around"""
    if isinstance(values, np.ndarray):
        if values.dtype == np.uint64:
            return values
        if values.dtype.kind == 'i':
            if values.size and values.min() < 0:
                raise errors.DataError('Negative values cannot be counted')
            return values.astype(np.uint64)
        if values.dtype.kind == 'u':
            return values.astype(np.uint64)
        values = values.tolist()

    values = list(values)
    if any(v < 0 for v in values):
        raise errors.DataError('Negative values cannot be counted')
    if any(v > _UINT64_MAX for v in values):
        raise errors.DataError('Value exceeds the unsigned 64-bit range')

    return np.array(values, dtype=np.uint64)


class FsdHistogram:
    """
    Counts of first significant digits 1-9 plus a tally of zeros seen.
    Mutable while accumulating; merging returns a new histogram

    Parameters
    ----------
    counts: Optional[Iterable[int]]
        9 counts for digits 1..9
    excluded_zero: int
        number of zero values skipped

    """
    __slots__ = ('counts', 'excluded_zero')

    def __init__(
            self,
            counts: Optional[Iterable[int]] = None,
            excluded_zero: int = 0
    ):
        counts = np.zeros(9, dtype=np.int64) if counts is None else counts
        self.counts = np.array(counts, dtype=np.int64)

        if self.counts.shape != (9,) or (self.counts < 0).any():
            raise ValueError('counts must be 9 nonnegative integers')
        if excluded_zero < 0:
            raise ValueError('excluded_zero must be nonnegative')

        self.excluded_zero = int(excluded_zero)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def count(self, digit: int) -> int:
        """Count for a single digit 1-9"""
        return int(self.counts[digit - 1])

    def add(self, value: int) -> FsdHistogram:
        """Accumulate one value. Zeros only bump excluded_zero"""
        if value == 0:
            self.excluded_zero += 1
        else:
            self.counts[fsd(value) - 1] += 1

        return self

    def update(self, values: Union[np.ndarray, Iterable[int]]) -> FsdHistogram:
        """Accumulate a batch of values at once"""
        digits = fsd_array(values)
        binned = np.bincount(digits, minlength=10)
        self.excluded_zero += int(binned[0])
        self.counts += binned[1:10]
        return self

    def merge(self, other: FsdHistogram) -> FsdHistogram:
        return FsdHistogram(self.counts + other.counts,
                            self.excluded_zero + other.excluded_zero)

    __add__ = merge

    def copy(self) -> FsdHistogram:
        return FsdHistogram(self.counts.copy(), self.excluded_zero)

    def proportions(self) -> np.ndarray:
        """Observed proportions, all zero for an empty histogram"""
        n = self.total
        if n == 0:
            return np.zeros(9)
        return self.counts / n

    def to_dict(self) -> dict:
        return {
            'counts': {str(d): self.count(d) for d in DIGITS},
            'total': self.total,
            'excluded_zero': self.excluded_zero
        }

    @classmethod
    def from_values(
            cls,
            values: Union[np.ndarray, Iterable[int]]
    ) -> FsdHistogram:
        return cls().update(values)

    def __eq__(self, other):
        if not isinstance(other, FsdHistogram):
            return NotImplemented
        return (np.array_equal(self.counts, other.counts)
                and self.excluded_zero == other.excluded_zero)

    def __repr__(self):
        counts = {d: self.count(d) for d in DIGITS if self.count(d)}
        return (f'FsdHistogram(counts={counts}, total={self.total}, '
                f'excluded_zero={self.excluded_zero})')


class BenfordExpected:
    """
    Benford probabilities p[d] = log10(1 + 1/d), d = 1..9

    Attributes
    ----------
    p: np.ndarray
        9 probabilities, read-only

    """
    __slots__ = ('p',)

    def __init__(self):
        d = np.arange(1, 10, dtype=np.float64)
        self.p = np.log10(1 + 1 / d)
        self.p.setflags(write=False)

    def __getitem__(self, digit: int) -> float:
        return float(self.p[digit - 1])

    def __iter__(self):
        return iter(self.p)

    def __len__(self):
        return 9


@functools.lru_cache(maxsize=None)
def benford_expected() -> BenfordExpected:
    return BenfordExpected()


def _vector(x, name: str) -> np.ndarray:
    if isinstance(x, BenfordExpected):
        return x.p
    if isinstance(x, FsdHistogram):
        return x.proportions()

    arr = np.asarray(x, dtype=np.float64)
    if arr.shape != (9,):
        raise ValueError(f'{name} must have 9 entries, got shape {arr.shape}')

    return arr


def accumulate(hist: FsdHistogram, value: int) -> FsdHistogram:
    """Functional alias for FsdHistogram.add"""
    return hist.add(value)


def merge(a: FsdHistogram, b: FsdHistogram) -> FsdHistogram:
    return a.merge(b)


def pearson_r(observed, expected=None) -> Optional[float]:
    """
    Pearson product-moment correlation of two 9-vectors

    Parameters
    ----------
    observed
        9 proportions (or counts; r is scale invariant)
    expected
        9 probabilities. Default Benford

    Returns
    -------
    Optional[float]
        r in [-1, 1], or None when either vector has zero variance

    """
    x = _vector(observed, 'observed')
    y = _vector(benford_expected() if expected is None else expected,
                'expected')

    # constant vectors are undefined even if rounding leaves a residue
    if np.all(x == x[0]) or np.all(y == y[0]):
        return None

    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)

    if sxx == 0 or syy == 0:
        return None

    r = float(dx @ dy) / np.sqrt(sxx * syy)
    return float(min(1.0, max(-1.0, r)))


def mad(observed, expected=None) -> float:
    """Mean absolute deviation over the 9 digits"""
    x = _vector(observed, 'observed')
    y = _vector(benford_expected() if expected is None else expected,
                'expected')
    return float(np.mean(np.abs(x - y)))


def deviation_pct(observed, expected=None) -> np.ndarray:
    """Per-digit 100 * |obs - exp| / exp"""
    x = _vector(observed, 'observed')
    y = _vector(benford_expected() if expected is None else expected,
                'expected')
    return 100 * np.abs(x - y) / y


def chi_square(
        hist: Union[FsdHistogram, Iterable[float]],
        expected=None,
        warn_threshold: Optional[int] = None
) -> ChiSquare:
    """
    Pearson chi-square statistic over the 9 digit bins

    Parameters
    ----------
    hist: Union[FsdHistogram, Iterable[float]]
        a histogram or 9 observed counts
    expected
        9 probabilities. Default Benford
    warn_threshold: Optional[int]
        n above which the statistic is flagged. Default config.stats.chi_warn

    Returns
    -------
    ChiSquare
        (statistic, warning, threshold)

    """
    if isinstance(hist, FsdHistogram):
        obs = hist.counts.astype(np.float64)
    else:
        obs = _vector(hist, 'counts')

    p = _vector(benford_expected() if expected is None else expected,
                'expected')
    n = float(obs.sum())

    if n <= 0:
        raise errors.EmptySample

    threshold = config.stats.chi_warn if warn_threshold is None else warn_threshold
    exp = n * p
    stat = float(np.sum((obs - exp) ** 2 / exp))
    warning = n > threshold

    if warning:
        _log.warning(f'chi-square over n={n:,.0f} exceeds {threshold:,}; '
                     'tiny deviations dominate it at this scale')

    return ChiSquare(stat, bool(warning), int(threshold))


class ConformanceReport(namedtuple(
        'ConformanceReport',
        'n excluded_zero observed expected pearson_r mad chi_square '
        'chi_square_warning chi_square_threshold deviation_pct'
)):
    """
    Observed vs expected FSD proportions with all conformance metrics.
    pearson_r is None when undefined (zero-variance observed)

    """
    __slots__ = ()

    @property
    def defined(self) -> bool:
        return self.pearson_r is not None

    def deviating_digits(self, threshold_pct: Optional[float] = None) -> list[int]:
        """Digits whose deviation exceeds threshold_pct percent"""
        if threshold_pct is None:
            threshold_pct = config.stats.deviation_flag_pct
        return [d for d, dev in zip(DIGITS, self.deviation_pct)
                if dev > threshold_pct]

    def digit_rows(self) -> list[tuple[int, float, float, float]]:
        """(digit, observed, expected, deviation_pct) rows for plotting"""
        return [(d, float(o), float(e), float(v)) for d, o, e, v in
                zip(DIGITS, self.observed, self.expected, self.deviation_pct)]

    def to_dict(self) -> dict:
        return {
            'n': int(self.n),
            'excluded_zero': int(self.excluded_zero),
            'observed': [float(x) for x in self.observed],
            'expected': [float(x) for x in self.expected],
            'pearson_r': self.pearson_r,
            'pearson_defined': self.defined,
            'mad': float(self.mad),
            'chi_square': {
                'statistic': float(self.chi_square),
                'large_n_warning': bool(self.chi_square_warning),
                'warn_threshold': int(self.chi_square_threshold)
            },
            'deviation_pct': [float(x) for x in self.deviation_pct],
            'deviating_digits': self.deviating_digits()
        }


def conformance(
        hist: FsdHistogram,
        expected=None,
        chi_warn: Optional[int] = None
) -> ConformanceReport:
    """
    Score a histogram against Benford

    Parameters
    ----------
    hist: FsdHistogram
        the accumulated histogram. Must have a nonzero total
    expected
        9 probabilities. Default Benford
    chi_warn: Optional[int]
        chi-square warning threshold. Default config.stats.chi_warn

    Returns
    -------
    ConformanceReport
        the assembled report

    """
    if hist.total == 0:
        raise errors.EmptySample(
            f'Empty sample: no nonzero values ({hist.excluded_zero:,} zeros)'
        )

    expected = benford_expected() if expected is None else expected
    exp = _vector(expected, 'expected')
    obs = hist.proportions()
    chi = chi_square(hist, exp, chi_warn)

    return ConformanceReport(
        n=hist.total,
        excluded_zero=hist.excluded_zero,
        observed=obs,
        expected=exp,
        pearson_r=pearson_r(obs, exp),
        mad=mad(obs, exp),
        chi_square=chi.statistic,
        chi_square_warning=chi.warning,
        chi_square_threshold=chi.threshold,
        deviation_pct=deviation_pct(obs, exp)
    )
