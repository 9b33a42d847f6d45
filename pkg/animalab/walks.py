"""
The animal walk S, its shaved version and the conditioned walks.

S has i.i.d. increments with law mu(1) = 2/3 and mu(-g) = 2^-g / 3 for
g >= 1. Every sampler takes an RngStream so runs are reproducible from
(seed, stream_id) whatever the scheduling.
"""
from dataclasses import dataclass
from fractions import Fraction

import logging
import math

import numpy as np

from . import exceptions, hardcode
from .decorators import trace_kinds
from .utils import get_setting, step_cap

logger = logging.getLogger(__name__)

TWO_THIRDS = 2.0 / 3.0


class RngStream(object):
    """
    Counter-based random stream: Philox keyed by (seed, stream_id).

    Uniforms are served from a buffer; `randbelow` gives exact uniform
    integers of any size for sampling exact rational laws.
    """

    def __init__(self, seed=hardcode.default_seed, stream_id=0,
                 buffer_size=4096):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        sequence = np.random.SeedSequence(
            self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.Philox(sequence))
        self.buffer_size = buffer_size
        self._buffer = np.empty(0)
        self._pos = 0

    def __repr__(self):
        return 'RngStream(seed=%d, stream_id=%d)' % (self.seed, self.stream_id)

    def uniform(self):
        if self._pos >= len(self._buffer):
            self._buffer = self.generator.random(self.buffer_size)
            self._pos = 0
        u = self._buffer[self._pos]
        self._pos += 1
        return float(u)

    def uniforms(self, size):
        return self.generator.random(size)

    def randbelow(self, n):
        if n < 1:
            raise exceptions.DomainError('randbelow', n)
        bits = n.bit_length()
        words = (bits + 31) // 32
        while True:
            chunk = self.generator.integers(
                0, 1 << 32, size=words, dtype=np.uint64)
            value = 0
            for word in chunk:
                value = (value << 32) | int(word)
            value >>= words * 32 - bits
            if value < n:
                return value

    def pick(self, weights):
        # Index drawn with probability proportional to integer weights.
        target = self.randbelow(sum(weights))
        for index, weight in enumerate(weights):
            if target < weight:
                return index
            target -= weight
        raise AssertionError('weights changed while picking')

    def bernoulli(self, p):
        p = Fraction(p)
        return self.randbelow(p.denominator) < p.numerator

    def spawn(self, stream_id):
        return RngStream(self.seed, stream_id, self.buffer_size)


@dataclass(frozen=True)
class WalkTrace:
    values: tuple
    kind: str = hardcode.walk_kind_raw
    ladder_times: tuple = ()
    attempts: int = 1

    def __len__(self):
        return len(self.values)

    def to_json(self):
        return {
            'kind': self.kind,
            'values': list(self.values),
            'ladder_times': list(self.ladder_times),
        }


def step_law(k):
    """Exact probability of the increment k."""
    if k == 1:
        return Fraction(2, 3)
    if k <= -1:
        return Fraction(1, 3 * 2 ** (-k))
    return Fraction(0)


def step_variance():
    # E[X^2] = 2/3 + sum_g g^2 2^-g / 3 = 2/3 + 6/3, the mean is 0
    return Fraction(8, 3)


def geometric(rng):
    """G on {1, 2, ...} with P(G = g) = 2^-g, by inverse CDF."""
    return 1 + int(math.floor(-math.log2(1.0 - rng.uniform())))


def sample_step(rng):
    u = rng.uniform()
    if u < TWO_THIRDS:
        return 1
    v = max(3.0 * u - 2.0, 0.0)
    return -(1 + int(math.floor(-math.log2(1.0 - v))))


def steps_from_uniforms(u):
    steps = np.ones(u.shape, dtype=np.int64)
    down = u >= TWO_THIRDS
    v = np.maximum(3.0 * u[down] - 2.0, 0.0)
    steps[down] = -(1 + np.floor(-np.log2(1.0 - v)).astype(np.int64))
    return steps


def draw_steps(rng, size):
    return steps_from_uniforms(rng.uniforms(size))


def ladder_times(values):
    """Indices of the strict new minima (descending ladder epochs)."""
    times = []
    running_min = values[0]
    for k in range(1, len(values)):
        if values[k] < running_min:
            times.append(k)
            running_min = values[k]
    return tuple(times)


def sample_walk(n, rng):
    if n < 0:
        raise exceptions.DomainError('sample_walk', n)
    values = np.zeros(n + 1, dtype=np.int64)
    if n:
        values[1:] = np.cumsum(draw_steps(rng, n))
    values = tuple(int(v) for v in values)
    return WalkTrace(values, hardcode.walk_kind_raw, ladder_times(values))


@trace_kinds(hardcode.walk_kind_raw)
def shave(trace):
    values = trace.values
    start = values[0]
    shaved = [start]
    running_min = start
    ladders = 0
    for v in values[1:]:
        if v < running_min:
            running_min = v
            ladders += 1
        shaved.append(v - running_min + start - ladders)
    return WalkTrace(tuple(shaved), hardcode.walk_kind_shaved,
                     trace.ladder_times, trace.attempts)


@trace_kinds(hardcode.walk_kind_raw, hardcode.walk_kind_shaved)
def path_prob(trace):
    values = trace.values
    n = len(values) - 1
    if trace.kind == hardcode.walk_kind_raw:
        exponent = values[-1] - values[0]
    else:
        exponent = values[-1] - min(values)
    return Fraction(2) ** exponent / 3 ** n


def exit_probability(x, y):
    """P(S enters ]-inf, -y] before hitting x), started at 0."""
    if x < 0 or y < 1:
        raise exceptions.DomainError('exit_probability', (x, y))
    return Fraction(x, x + y + 1)


def width_tail(k):
    # P(max of a positive excursion >= k) for k >= 1
    if k < 1:
        return Fraction(1)
    return 1 - exit_probability(k, 1)


def h_plus(z):
    if z < 0:
        raise exceptions.DomainError('h_plus', z)
    return z + 2


def h_minus(z):
    if z > 0:
        raise exceptions.DomainError('h_minus', z)
    return abs(z) + 1


def h_pair(m, x):
    if not m <= x <= 0:
        raise exceptions.DomainError('h_pair', (m, x))
    return (abs(x) + 1) * (abs(m) + 2)


def shaved_exit_probability(m, x, N):
    """P_(m,x)(the shaved walk hits -N before 1)."""
    if not -N < m <= x <= 0:
        raise exceptions.DomainError('shaved_exit_probability', (m, x, N))
    return Fraction(h_pair(m, x), (N + 1) * (N + 2))


def nonneg_harmonic_defect(z):
    """sum_j mu(j) h+(z + j) 1{z + j >= 0} - h+(z), exactly."""
    total = step_law(1) * h_plus(z + 1)
    total += sum(step_law(-g) * h_plus(z - g) for g in range(1, z + 1))
    return total - h_plus(z)


def walk_nonneg_row(z):
    """Exact transition row of the walk conditioned to stay >= 0."""
    if z < 0:
        raise exceptions.DomainError('walk_nonneg_row', z)
    row = {1: step_law(1) * Fraction(h_plus(z + 1), h_plus(z))}
    for g in range(1, z + 1):
        row[-g] = step_law(-g) * Fraction(h_plus(z - g), h_plus(z))
    return row


def sample_nonneg_step(z, rng):
    if rng.uniform() < TWO_THIRDS * (z + 3) / (z + 2):
        return 1
    # P(-g | down) is proportional to 2^-g (z - g + 2) on 1 <= g <= z
    while True:
        g = geometric(rng)
        if g <= z and rng.uniform() * (z + 1) < z - g + 2:
            return -g


def excursion_skip(level, rng):
    """
    Landing point of S when it comes back to ]-inf, level] from above.

    The undershoot is geometric, so the landing is level - j with
    probability 2^-(j+1) whatever happened above the level.
    """
    return level - (geometric(rng) - 1)


def nonneg_return_weights(level):
    """
    Exact law of the walk conditioned to stay >= 0 started at level + 1:
    integer weights of landing at level - j for j = 0..level, followed
    by the weight of never coming back.
    """
    denominator = 2 ** (level + 1) * (level + 3)
    weights = [2 ** (level - j) * (level - j + 2) for j in range(level + 1)]
    return weights + [denominator - sum(weights)]


def nonneg_return_probability(level):
    weights = nonneg_return_weights(level)
    return Fraction(sum(weights[:-1]), sum(weights))


def sample_excursion(rng, max_length=None, cap=None):
    """
    Values S_0 .. S_{T-1} of a positive excursion, T the first entry
    into the negatives. Returns None once the excursion is longer than
    `max_length`.
    """
    cap = cap or step_cap()
    values = [0]
    position = 0
    chunk = 64
    while True:
        path = position + np.cumsum(draw_steps(rng, chunk))
        negative = np.flatnonzero(path < 0)
        if negative.size:
            values.extend(path[:negative[0]].tolist())
            if max_length is not None and len(values) > max_length:
                return None
            return WalkTrace(tuple(values), hardcode.walk_kind_raw)
        values.extend(path.tolist())
        position = int(path[-1])
        if max_length is not None and len(values) > max_length:
            return None
        if len(values) > cap:
            logger.warning('excursion reached the step cap %d', cap)
            raise exceptions.StepCapExceeded(cap)
        chunk = min(chunk * 2, 1 << 16)


def _bounded_excursion(k, rng, cap):
    # One attempt: None as soon as the excursion exceeds k.
    values = [0]
    x = 0
    while True:
        x += sample_step(rng)
        if x < 0:
            return values
        if x > k:
            return None
        values.append(x)
        if len(values) > cap:
            raise exceptions.StepCapExceeded(cap)


def sample_conditioned_excursion(k, rng, cap=None):
    """Positive excursion conditioned on its supremum being <= k."""
    if k < 0:
        raise exceptions.DomainError('sample_conditioned_excursion', k)
    cap = cap or step_cap()
    budget = get_setting('ANIMALAB_RETRY_BUDGET')
    for attempt in range(1, budget + 1):
        values = _bounded_excursion(k, rng, cap)
        if values is not None:
            return WalkTrace(tuple(values), hardcode.walk_kind_raw,
                             attempts=attempt)
    raise exceptions.RetryBudgetExceeded(budget)


def sample_shaved_nonpos(depth, rng, cap=None):
    """
    The shaved walk conditioned to stay <= 0, stopped when it first hits
    -depth: conditioned excursions V^k (sup <= k) shifted down by k.
    """
    if depth < 1:
        raise exceptions.DomainError('sample_shaved_nonpos', depth)
    values = []
    ladders = []
    attempts = 0
    for k in range(depth):
        if k:
            ladders.append(len(values))
        excursion = sample_conditioned_excursion(k, rng, cap)
        attempts += excursion.attempts
        values.extend(v - k for v in excursion.values)
    ladders.append(len(values))
    values.append(-depth)
    return WalkTrace(tuple(values), hardcode.walk_kind_nonpos,
                     tuple(ladders), attempts)


def shaved_pair_row(m, x):
    """
    Exact h-tilted transition row of (running min, value) for the shaved
    walk kept <= 0: maps the next pair to its probability.
    """
    here = h_pair(m, x)
    row = dict()
    if x + 1 <= 0:
        row[(m, x + 1)] = step_law(1) * Fraction(h_pair(m, x + 1), here)
    for v in range(m, x):
        row[(m, v)] = step_law(v - x) * Fraction(h_pair(m, v), here)
    new_min = Fraction(2) ** (m - x) / 3
    row[(m - 1, m - 1)] = new_min * Fraction(h_pair(m - 1, m - 1), here)
    return row


def sample_shaved_bivariate(depth, rng, start=(0, 0), cap=None):
    """
    Stepwise sampler of the shaved walk kept <= 0 from a pair
    (m, x), stopped when the value first hits -depth.
    """
    m, x = start
    if not -depth < m <= x <= 0:
        raise exceptions.DomainError('sample_shaved_bivariate', start)
    cap = cap or step_cap()
    values = [x]
    ladders = []
    while x > -depth:
        row = shaved_pair_row(m, x)
        states = list(row)
        denominator = math.lcm(*(p.denominator for p in row.values()))
        weights = [int(row[s] * denominator) for s in states]
        new_m, x = states[rng.pick(weights)]
        if new_m < m:
            ladders.append(len(values))
        m = new_m
        values.append(x)
        if len(values) > cap:
            raise exceptions.StepCapExceeded(cap)
    return WalkTrace(tuple(values), hardcode.walk_kind_nonpos,
                     tuple(ladders))


def sample_walk_nonneg(n, rng, start=0):
    if n < 0 or start < 0:
        raise exceptions.DomainError('sample_walk_nonneg', (n, start))
    values = [start]
    z = start
    for _ in range(n):
        z += sample_nonneg_step(z, rng)
        values.append(z)
    return WalkTrace(tuple(values), hardcode.walk_kind_nonneg)
