"""
Generator specs and the seeded random source shared by every generator.

Randomness is numpy's PCG64 seeded through SeedSequence(seed,
spawn_key=(stream, substream)).  Generators only call Generator.random, so
a stream is identical however it is chunked

"""
from __future__ import annotations  # forward reference

import math
import numbers
import logging

import munch
import numpy as np

from aenum import Enum
from typing import Any, Optional, Union

from .. import config
from ..utils import errors

_log = logging.getLogger(__name__)


class Model(Enum):
    LOG_UNIFORM = 'log_uniform'
    POWER_LAW = 'power_law'
    PINTEREST_MIN5 = 'pinterest_min5'
    BOTNET_BAND = 'botnet_band'
    LEADING_ONE = 'leading_one'


DEFAULT_PARAMS = {
    Model.LOG_UNIFORM: {'lo': 1, 'hi': 10 ** 6},
    Model.POWER_LAW: {'alpha': 2.0, 'kmin': 1, 'kmax': 10 ** 6},
    Model.PINTEREST_MIN5: {'m': 5, 'q': 0.4, 'alpha': 2.0,
                           'kmin': 1, 'kmax': 10 ** 6},
    Model.BOTNET_BAND: {'a': 400, 'b': 600},
    Model.LEADING_ONE: {'share': 0.945, 'lo': 10, 'hi': 10 ** 4},
}

INTEGER_PARAMS = frozenset({'lo', 'hi', 'kmin', 'kmax', 'm', 'a', 'b'})


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """
    Seeded generator for an independent stream

    Parameters
    ----------
    seed: int
        64-bit seed
    key: int
        spawn key path selecting the stream

    Returns
    -------
    np.random.Generator
        PCG64-backed generator

    """
    seq = np.random.SeedSequence(seed, spawn_key=tuple(key))
    return np.random.Generator(np.random.PCG64(seq))


class GeneratorSpec:
    """
    Parameters for a synthetic population

    Parameters
    ----------
    model: Union[Model, str]
        the population model
    n: int
        population size
    seed: Optional[int]
        64-bit seed. Default config.synthetics.seed
    stream: int
        stream index, for many independent populations under one seed
    params
        model-specific parameters, defaults in DEFAULT_PARAMS

    """
    def __init__(
            self,
            model: Union[Model, str],
            n: int,
            seed: Optional[int] = None,
            stream: int = 0,
            **params: Any
    ):
        try:
            self.model = Model(model)
        except ValueError:
            valid = ', '.join(m.value for m in Model)
            raise errors.InvalidGeneratorSpec(
                f'Unknown model {model!r}. Choose from {valid}'
            )

        unknown = set(params) - set(DEFAULT_PARAMS[self.model])
        if unknown:
            raise errors.InvalidGeneratorSpec(
                f'Unknown {self.model.value} parameters: '
                f'{", ".join(sorted(unknown))}'
            )

        self.n = int(n)
        self.seed = int(config.synthetics.seed if seed is None else seed)
        self.stream = int(stream)
        self.params = munch.Munch(DEFAULT_PARAMS[self.model])
        self.params.update(params)
        self.validate()

    def validate(self) -> None:
        p = self.params
        bad = errors.InvalidGeneratorSpec

        for key in INTEGER_PARAMS.intersection(p):
            p[key] = _as_int(key, p[key])

        if self.n < 1:
            raise bad('n must be at least 1')
        if not 0 <= self.seed < 2 ** 64:
            raise bad('seed must fit in 64 unsigned bits')

        if self.model in (Model.LOG_UNIFORM, Model.LEADING_ONE):
            if p.lo < 1 or p.hi <= p.lo:
                raise bad(f'Need 1 <= lo < hi, got lo={p.lo}, hi={p.hi}')
            _check_span(p.lo, p.hi, self.model)
        if self.model in (Model.POWER_LAW, Model.PINTEREST_MIN5):
            if p.alpha <= 1:
                raise bad(f'alpha must exceed 1, got {p.alpha}')
            if p.kmin < 1 or p.kmax <= p.kmin:
                raise bad(f'Need 1 <= kmin < kmax, got {p.kmin}, {p.kmax}')
        if self.model is Model.POWER_LAW:
            _check_span(p.kmin, p.kmax, self.model)
        if self.model is Model.PINTEREST_MIN5:
            if p.m < 1:
                raise bad(f'm must be at least 1, got {p.m}')
            if not 0 <= p.q <= 1:
                raise bad(f'q must be in [0, 1], got {p.q}')
        if self.model is Model.BOTNET_BAND:
            if not 1 <= p.a <= p.b:
                raise bad(f'Need 1 <= a <= b, got a={p.a}, b={p.b}')
        if self.model is Model.LEADING_ONE:
            if not 0 <= p.share <= 1:
                raise bad(f'share must be in [0, 1], got {p.share}')

    def replace(self, **changes: Any) -> GeneratorSpec:
        """Copy with some fields changed"""
        d = {'model': self.model, 'n': self.n, 'seed': self.seed,
             'stream': self.stream, **self.params}
        d.update(changes)
        return GeneratorSpec(**d)

    def to_dict(self) -> dict:
        return {
            'model': self.model.value,
            'n': self.n,
            'seed': self.seed,
            'stream': self.stream,
            'params': munch.unmunchify(self.params),
            'rng': config.synthetics.rng
        }

    @classmethod
    def from_dict(cls, data: dict) -> GeneratorSpec:
        return cls(data['model'], data['n'], data.get('seed'),
                   data.get('stream', 0), **data.get('params', {}))

    def __eq__(self, other):
        if not isinstance(other, GeneratorSpec):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        params = ', '.join(f'{k}={v}' for k, v in self.params.items())
        return (f'GeneratorSpec({self.model.value}, n={self.n}, '
                f'seed={self.seed}, stream={self.stream}, {params})')


def _check_span(lo: float, hi: float, model: Model) -> None:
    decades = math.log10(hi / lo)

    if decades < 1:
        raise errors.InvalidGeneratorSpec(
            f'{model.value} range spans {decades:.2f} decades; need at least 1'
        )
    if decades < 3:
        _log.info(f'{model.value} range spans only {decades:.2f} decades; '
                  'first digits converge slowly below 3')


def _as_int(key: str, value: Any) -> int:
    """Integral numbers (1e6, 400.0) as int; anything else is rejected"""
    if not isinstance(value, bool) and isinstance(value, numbers.Real):
        if isinstance(value, numbers.Integral) or float(value).is_integer():
            return int(value)

    raise errors.InvalidGeneratorSpec(f'{key} must be an integer, got {value!r}')
