"""
Monte Carlo calibration of the ego bins.  Run once; the bounds asserted in
tests/test_ego.py and tests/test_synthetics.py come from its output

Egos of `friends` friends with log-uniform degrees over whole decades (first
digits Benford in expectation) are scored, and the share over 0.9 / under
0.5 reported, along with the highest r any botnet-band ego reaches

"""
import sys
import logging

import numpy as np

from fsdnet.ego import report_from_degrees
from fsdnet.synthetics import GeneratorSpec, draw


def ego_rs(model: str, egos: int, friends: int, seed: int, **params) -> np.ndarray:
    degrees = draw(GeneratorSpec(model, egos * friends, seed=seed, **params))
    return np.array([report_from_degrees(i, row).r
                     for i, row in enumerate(degrees.reshape(egos, friends))],
                    dtype=float)


def main(egos: int = 100000, friends: int = 100, seed: int = 1):
    organic = ego_rs('log_uniform', egos, friends, seed)
    bots = ego_rs('botnet_band', egos // 10, friends, seed, a=400, b=600)

    share = np.mean(organic > 0.9)
    se = np.sqrt(share * (1 - share) / egos)

    print(f'organic egos: {egos:,} x {friends} friends')
    print(f'  r > 0.9: {share:.4f} (se {se:.4f})')
    print(f'  r < 0.5: {np.mean(organic < 0.5):.6f}')
    print(f'  min r:   {np.nanmin(organic):.4f}')
    print(f'botnet egos: {len(bots):,}, max r {np.nanmax(bots):.4f}')


if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING)
    main(*map(int, sys.argv[1:]))
