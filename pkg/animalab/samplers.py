"""
Random animals assembled from the walks and the decoder.

Infinite objects are only ever produced inside a ball B(r): the walk is
stopped at the ladder time that makes the ball final, and every visit
above the decoding window 2r + 1 is replaced by its exact landing point.
"""
from fractions import Fraction

import logging
import math

import numpy as np

from . import exceptions
from .decorators import retrying
from .encoding import WindowDecoder, decode
from .utils import get_setting, step_cap
from .walks import (
    WalkTrace, draw_steps, excursion_skip, nonneg_return_weights,
    sample_excursion, sample_nonneg_step, sample_shaved_nonpos, sample_step,
    shave)

logger = logging.getLogger(__name__)


def sample_bhp(rng, cap=None):
    """Boltzmann half-pyramid: P(A = C) = 3^-|C|."""
    return decode(sample_excursion(rng, cap=cap).values)


def _excursion_into(decoder, root, rng, cap):
    # Drops a positive excursion started at `root` into the decoder,
    # skipping whatever happens above the window.
    level = decoder.span
    x = root
    decoder.drop(x)
    steps = 0
    while True:
        x += sample_step(rng)
        if x > level:
            x = excursion_skip(level, rng)
        if x < root:
            return
        decoder.drop(x)
        steps += 1
        if steps > cap:
            raise exceptions.StepCapExceeded(cap)


def sample_bhp_ball(r, rng, cap=None):
    """The Boltzmann half-pyramid intersected with B(r)."""
    decoder = WindowDecoder(r)
    _excursion_into(decoder, 0, rng, cap or step_cap())
    return decoder.animal()


def sample_uip_ball(r, rng, cap=None):
    """
    The uniform infinite pyramid intersected with B(r): the shaved walk
    decoded until it first hits -(r + 1).
    """
    decoder = WindowDecoder(r)
    cap = cap or step_cap()
    level = decoder.span
    x = running_min = 0
    decoder.drop(0)
    steps = 0
    while x > -(r + 1):
        x += sample_step(rng)
        if x > level:
            x = excursion_skip(level, rng)
        if x < running_min:
            x = running_min = running_min - 1
        decoder.drop(x)
        steps += 1
        if steps > cap:
            logger.warning('UIP ball of radius %d reached the step cap', r)
            raise exceptions.StepCapExceeded(cap)
    return decoder.animal()


def sample_uip_minus_ball(r, rng, cap=None):
    trace = sample_shaved_nonpos(r + 1, rng, cap)
    return WindowDecoder(r).extend(trace.values).animal()


def sample_uip_plus_ball(r, rng, cap=None):
    return sample_uip_minus_ball(r, rng, cap).mirror()


def _bluered(r, rng, cap):
    decoder = WindowDecoder(r)
    level = decoder.span
    z = 0
    decoder.drop(0)
    steps = 0
    # blue: the walk kept >= 0 until it leaves the window for good
    while True:
        step = sample_nonneg_step(z, rng)
        if step == 1 and z == level:
            weights = nonneg_return_weights(level)
            j = rng.pick(weights)
            if j == len(weights) - 1:
                break
            z = level - j
        else:
            z += step
        decoder.drop(z)
        steps += 1
        if steps > cap:
            raise exceptions.StepCapExceeded(cap)
    # red: a half-pyramid rooted at x with probability 1/2, x decreasing
    red_columns = set()
    for x in range(level, -1, -1):
        if rng.bernoulli(Fraction(1, 2)):
            columns = _RecordingDecoder(decoder)
            _excursion_into(columns, x, rng, cap)
            red_columns |= columns.columns
    return decoder, red_columns


class _RecordingDecoder(object):
    # Forwards drops and remembers their columns.

    def __init__(self, decoder):
        self.decoder = decoder
        self.span = decoder.span
        self.columns = set()

    def drop(self, x):
        self.columns.add(x)
        return self.decoder.drop(x)


def sample_uip_plus_bluered(r, rng, cap=None):
    """
    UIP_PLUS in B(r) from a walk conditioned to stay >= 0 (blue)
    followed by independent half-pyramids (red).
    """
    decoder, _ = _bluered(r, rng, cap or step_cap())
    return decoder.animal()


def sample_red_columns(r, rng, cap=None):
    """Columns 0..r that received a red vertex in the blue/red sampler."""
    _, columns = _bluered(r, rng, cap or step_cap())
    return {x for x in columns if 0 <= x <= r}


def _batch_rows(n):
    # about eight acceptances per batch at the pyramid acceptance rate
    return int(min(4096, max(64, 8 * math.sqrt(3 * math.pi * n))))


def _pyramid_batch(n, rng):
    rows = _batch_rows(n)
    steps = draw_steps(rng, rows * n).reshape(rows, n)
    values = np.zeros((rows, n + 1), dtype=np.int64)
    np.cumsum(steps, axis=1, out=values[:, 1:])
    prefix_min = values[:, :n].min(axis=1)
    accepted = np.flatnonzero(values[:, n] < prefix_min)
    return [tuple(int(v) for v in values[i, :n]) for i in accepted], rows


def iter_uniform_pyramids(n, rng, budget=None):
    """
    Uniform pyramids with n vertices: shaved prefixes of walks that make
    a new minimum at time n.
    """
    if n < 1:
        raise exceptions.DomainError('sample_uniform_pyramid', n)
    budget = budget or get_setting('ANIMALAB_RETRY_BUDGET')
    tried = accepted = batches = 0
    while True:
        paths, rows = _pyramid_batch(n, rng)
        tried += rows
        accepted += len(paths)
        batches += 1
        for values in paths:
            yield shave(WalkTrace(values)).values
        if tried >= budget and not accepted:
            raise exceptions.RetryBudgetExceeded(tried, accepted)
        if batches % 64 == 0:
            logger.info('uniform pyramids of size %d: acceptance %.4g',
                        n, accepted / tried)


@retrying
def _uniform_pyramid_attempt(n, rng):
    paths, rows = _pyramid_batch(n, rng)
    if not paths:
        return None
    logger.debug('pyramid batch: %d of %d accepted', len(paths), rows)
    return paths[0]


def sample_uniform_pyramid(n, rng, budget=None):
    if n < 1:
        raise exceptions.DomainError('sample_uniform_pyramid', n)
    values = _uniform_pyramid_attempt(n, rng, budget=budget)
    return decode(shave(WalkTrace(values)).values)


def _half_batch(n, window, rng):
    rows = _batch_rows(n)
    length = n + window
    steps = draw_steps(rng, rows * length).reshape(rows, length)
    values = np.zeros((rows, length + 1), dtype=np.int64)
    np.cumsum(steps, axis=1, out=values[:, 1:])
    negative = values < 0
    has_exit = negative.any(axis=1)
    first = np.where(has_exit, negative.argmax(axis=1), -1)
    accepted = np.flatnonzero((first >= n) & (first <= length))
    return [tuple(int(v) for v in values[i, :first[i]]) for i in accepted]


@retrying
def _half_pyramid_attempt(n, window, rng):
    paths = _half_batch(n, window, rng)
    return paths[0] if paths else None


def sample_uniform_half_pyramid(n, window, rng, budget=None):
    """
    Uniform non-negative pyramid with n..n + window vertices; exact size
    n for window 0.
    """
    if n < 1 or window < 0:
        raise exceptions.DomainError('sample_uniform_half_pyramid',
                                     (n, window))
    return decode(_half_pyramid_attempt(n, window, rng, budget=budget))
