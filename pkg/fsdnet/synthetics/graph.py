"""
Synthetic edge lists for ego analysis fixtures.

Every focal user points to its own friends.  A friend with planned degree k
points to the first k filler nodes, so its out-degree is exactly k.  Fillers
have no outgoing edges and are shared across friends

"""
import logging

import numpy as np

from collections import namedtuple
from typing import Iterable, Iterator, Optional, Sequence

from ..utils import errors
from .spec import GeneratorSpec
from .generators import draw

_log = logging.getLogger(__name__)

EgoPlan = namedtuple('EgoPlan', 'user degrees')  # degrees of each friend


def plan_egos(
        users: Sequence[int],
        friends: int,
        spec: GeneratorSpec
) -> list[EgoPlan]:
    """
    One plan per user with friend degrees drawn from spec.  User i draws
    from stream spec.stream + i so plans are independent and reproducible

    Parameters
    ----------
    users: Sequence[int]
        focal user ids
    friends: int
        friends per ego
    spec: GeneratorSpec
        friend degree model. n is replaced by friends

    Returns
    -------
    list[EgoPlan]

    """
    if friends < 1:
        raise errors.InvalidGeneratorSpec('Each ego needs at least 1 friend')

    return [
        EgoPlan(user, draw(spec.replace(n=friends, stream=spec.stream + i)))
        for i, user in enumerate(users)
    ]


def build_synthetic_graph(
        plans: Iterable[EgoPlan],
        first_friend: Optional[int] = None
) -> Iterator[str]:
    """
    Edge list lines ("src dst\\n") realizing the plans

    Parameters
    ----------
    plans: Iterable[EgoPlan]
        focal users and their friends' degrees
    first_friend: Optional[int]
        first id for friend nodes. Default one past the largest focal user

    Returns
    -------
    Iterator[str]
        lines in the ingest edge list format

    """
    plans = [EgoPlan(p.user, np.asarray(p.degrees, dtype=np.int64))
             for p in plans]

    if not plans:
        return

    users = [p.user for p in plans]
    if len(set(users)) != len(users):
        raise errors.InvalidGeneratorSpec('Focal users must be unique')

    for p in plans:
        if len(p.degrees) == 0:
            raise errors.InvalidGeneratorSpec(f'User {p.user} has no friends')
        if (p.degrees < 1).any():
            raise errors.InvalidGeneratorSpec(
                f'User {p.user} plans a friend with degree 0'
            )

    next_id = max(users) + 1 if first_friend is None else first_friend
    n_friends = sum(len(p.degrees) for p in plans)
    filler = next_id + n_friends
    max_degree = max(int(p.degrees.max()) for p in plans)

    if any(next_id <= u < filler + max_degree for u in users):
        raise errors.InvalidGeneratorSpec('Friend ids overlap focal users')

    _log.info(f'Building graph: {len(plans):,} egos, {n_friends:,} friends, '
              f'{max_degree:,} fillers')

    yield f'# synthetic ego graph: {len(plans)} egos\n'

    for p in plans:
        friend_ids = range(next_id, next_id + len(p.degrees))
        next_id += len(p.degrees)

        for f in friend_ids:
            yield f'{p.user} {f}\n'

        for f, k in zip(friend_ids, p.degrees.tolist()):
            for j in range(k):
                yield f'{f} {filler + j}\n'
