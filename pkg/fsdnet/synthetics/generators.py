"""
Seeded population generators.  Each yields int64 chunks; draw() joins them

"""
import hashlib
import logging

import numpy as np

from typing import Callable, Iterable, Iterator, Optional

from .. import config
from ..utils import errors
from .spec import GeneratorSpec, Model, make_rng

_log = logging.getLogger(__name__)


def _chunks(n: int, chunk_size: Optional[int]) -> Iterator[int]:
    """Sizes of consecutive chunks covering n"""
    chunk_size = chunk_size or config.synthetics.chunk_size
    done = 0
    while done < n:
        size = min(chunk_size, n - done)
        done += size
        yield size


def _pareto(u: np.ndarray, alpha: float, kmin: float, kmax: float) -> np.ndarray:
    """Inverse CDF of the continuous Pareto truncated to [kmin, kmax], floored"""
    tail = 1 - (kmax / kmin) ** (1 - alpha)
    x = kmin * (1 - u * tail) ** (-1 / (alpha - 1))
    return np.clip(np.floor(x), kmin, kmax).astype(np.int64)


def gen_log_uniform(
        spec: GeneratorSpec,
        chunk_size: Optional[int] = None
) -> Iterator[np.ndarray]:
    """
    floor(10**u) with u uniform on [log10(lo), log10(hi)).  Over whole
    decades the first digits are exactly Benford

    """
    lo, hi = spec.params.lo, spec.params.hi
    a, b = np.log10(lo), np.log10(hi)
    rng = make_rng(spec.seed, spec.stream, 0)

    for size in _chunks(spec.n, chunk_size):
        u = a + (b - a) * rng.random(size)
        v = np.floor(10 ** u).astype(np.int64)
        yield np.clip(v, lo, hi - 1).astype(np.int64)  # rounding at the edges


def gen_power_law(
        spec: GeneratorSpec,
        chunk_size: Optional[int] = None
) -> Iterator[np.ndarray]:
    """p(k) proportional to k**-alpha on [kmin, kmax]"""
    p = spec.params
    rng = make_rng(spec.seed, spec.stream, 0)

    for size in _chunks(spec.n, chunk_size):
        yield _pareto(rng.random(size), p.alpha, p.kmin, p.kmax)


def gen_pinterest_min5(
        spec: GeneratorSpec,
        chunk_size: Optional[int] = None
) -> Iterator[np.ndarray]:
    """
    Forced minimum m plus an atom at m.  With probability q a user stays at
    exactly m follows, otherwise max(m, power-law draw).  The power-law
    stream is the one gen_power_law uses for the same seed

    """
    p = spec.params
    tail_rng = make_rng(spec.seed, spec.stream, 0)
    stick_rng = make_rng(spec.seed, spec.stream, 1)

    for size in _chunks(spec.n, chunk_size):
        tail = _pareto(tail_rng.random(size), p.alpha, p.kmin, p.kmax)
        stick = stick_rng.random(size) < p.q
        yield np.where(stick, p.m, np.maximum(p.m, tail)).astype(np.int64)


def gen_botnet_band(
        spec: GeneratorSpec,
        chunk_size: Optional[int] = None
) -> Iterator[np.ndarray]:
    """Uniform integers on [a, b]"""
    a, b = spec.params.a, spec.params.b
    rng = make_rng(spec.seed, spec.stream, 0)

    for size in _chunks(spec.n, chunk_size):
        v = a + np.floor(rng.random(size) * (b - a + 1)).astype(np.int64)
        yield np.minimum(v, b).astype(np.int64)


def gen_leading_one(
        spec: GeneratorSpec,
        chunk_size: Optional[int] = None
) -> Iterator[np.ndarray]:
    """
    Self-reported counts where a fixed share start with 1.  Exactly
    round(share * n) values lead with 1, placed at random; the rest have
    mantissas spread log-uniformly over [2, 10)

    """
    p = spec.params
    ones = int(round(p.share * spec.n))
    decade_rng = make_rng(spec.seed, spec.stream, 0)
    place_rng = make_rng(spec.seed, spec.stream, 1)
    mantissa_rng = make_rng(spec.seed, spec.stream, 2)

    # positions holding the `ones` smallest keys lead with 1
    keys = place_rng.random(spec.n)
    lead = np.zeros(spec.n, dtype=bool)
    lead[np.argsort(keys, kind='stable')[:ones]] = True

    lo_exp = int(np.ceil(np.log10(p.lo)))
    hi_exp = max(lo_exp + 1, int(np.floor(np.log10(p.hi))))
    start = 0

    for size in _chunks(spec.n, chunk_size):
        decade = lo_exp + np.floor(decade_rng.random(size) * (hi_exp - lo_exp))
        u = mantissa_rng.random(size)
        is_one = lead[start:start + size]
        mantissa = np.where(is_one, 1 + u,  # [1, 2)
                            2 * 5 ** u)     # log-uniform on [2, 10)
        start += size
        yield np.floor(mantissa * 10 ** decade).astype(np.int64)


GENERATORS: dict[Model, Callable[..., Iterator[np.ndarray]]] = {
    Model.LOG_UNIFORM: gen_log_uniform,
    Model.POWER_LAW: gen_power_law,
    Model.PINTEREST_MIN5: gen_pinterest_min5,
    Model.BOTNET_BAND: gen_botnet_band,
    Model.LEADING_ONE: gen_leading_one,
}


def generate(
        spec: GeneratorSpec,
        chunk_size: Optional[int] = None
) -> Iterator[np.ndarray]:
    """Dispatch on spec.model"""
    _log.debug(f'Generating {spec!r}')
    return GENERATORS[spec.model](spec, chunk_size)


def draw(spec: GeneratorSpec) -> np.ndarray:
    """Whole population as one array"""
    return np.concatenate(list(generate(spec)))


def stream_digest(chunks: Iterable[np.ndarray]) -> str:
    """
    sha256 of the values rendered as ASCII decimal, one per line with a
    trailing LF.  Independent of how the stream is chunked

    """
    h = hashlib.sha256()
    for chunk in chunks:
        if len(chunk):
            h.update(('\n'.join(map(str, chunk.tolist())) + '\n').encode('ascii'))
    return h.hexdigest()


def expected_power_law_fsd(alpha: float) -> np.ndarray:
    """
    First digit law of a Pareto density x**-alpha over whole decades:
    P(d) proportional to d**(1-alpha) - (d+1)**(1-alpha)

    """
    if alpha <= 1:
        raise errors.InvalidGeneratorSpec(f'alpha must exceed 1, got {alpha}')
    d = np.arange(1, 10, dtype=np.float64)
    w = d ** (1 - alpha) - (d + 1) ** (1 - alpha)
    return w / w.sum()
