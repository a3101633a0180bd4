"""
Stride sampling over an id space.  Take an id, jump ahead by stride; when
an id has no account, step forward by 1 until one does

"""
from typing import Iterator, Optional

from ..utils import errors
from .spec import make_rng


def simulate_id_sampling(
        space: int,
        stride: int,
        miss: float = 0.0,
        seed: Optional[int] = None,
        start: int = 0
) -> Iterator[int]:
    """
    Walk [start, space) the way a crawler over sequential user ids would

    Parameters
    ----------
    space: int
        size of the id space
    stride: int
        jump after each successful sample
    miss: float
        probability that a probed id has no account
    seed: Optional[int]
        seed for the miss draws. Default 0
    start: int
        first id probed

    Returns
    -------
    Iterator[int]
        sampled ids, strictly increasing

    """
    if stride < 1:
        raise errors.ConfigError(f'stride must be at least 1, got {stride}')
    if not 0 <= miss < 1:
        raise errors.ConfigError(f'miss must be in [0, 1), got {miss}')

    rng = make_rng(0 if seed is None else seed, 0)
    cur = start

    while cur < space:
        if miss and rng.random() < miss:
            cur += 1
            continue

        yield cur
        cur += stride
