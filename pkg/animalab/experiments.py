"""
Monte-Carlo experiments against the exact formulas.

An experiment runs `trials` independent trials split over RNG streams.
Each stream fills a Tally; tallies are folded in stream-id order and
turned into a McReport whose exact columns come from kernels and
enumeration.
"""
from collections import namedtuple
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import csv
import io
import logging
import math
import os

import numpy as np
from celery import group
from scipy import stats

from . import exceptions, hardcode
from .core import AdmissibleSet, Animal
from .encoding import WindowDecoder, decode
from .enumeration import (
    excursion_law, first_layer_tv, kernel_layer_law, source_layer_law,
    total_variation)
from .kernels import (
    ball_prob, cherry_probs, enumerate_row, extreme_move_probs,
    future_infimum_prob, martingale_drift, pinching_cdf, sample_transition)
from .samplers import (
    iter_uniform_pyramids, sample_bhp_ball, sample_red_columns,
    sample_uip_ball, sample_uip_minus_ball, sample_uip_plus_ball,
    sample_uip_plus_bluered)
from .utils import (
    dumps, fixture_path, get_setting, jsonable, load_json, write_text)
from .walks import (
    RngStream, draw_steps, exit_probability, sample_excursion, sample_step,
    width_tail)

logger = logging.getLogger(__name__)

EXPERIMENTS = dict()


def register(name):
    def _decorator(cls):
        cls.name = name
        EXPERIMENTS[name] = cls
        return cls
    return _decorator


def get_experiment(name):
    try:
        return EXPERIMENTS[name]
    except KeyError:
        raise exceptions.UnknownExperiment(name)


@dataclass
class ExperimentConfig:
    name: str
    model: str = hardcode.kernel_uip
    radius: int = 1
    size: int = 4
    height: int = 100
    trials: int = 10000
    seed: int = hardcode.default_seed
    streams: int = hardcode.default_streams
    output: str = None
    fmt: str = hardcode.report_csv
    params: dict = field(default_factory=dict)
    calibrate: bool = False

    def __post_init__(self):
        get_experiment(self.name)
        if self.trials < 1 or self.streams < 1:
            raise exceptions.DomainError(
                'ExperimentConfig', (self.trials, self.streams))
        if self.radius < 0 or self.size < 1 or self.height < 1:
            raise exceptions.DomainError(
                'ExperimentConfig', (self.radius, self.size, self.height))
        if self.fmt not in (hardcode.report_csv, hardcode.report_json):
            raise exceptions.DomainError('ExperimentConfig', self.fmt)
        self.params = {
            key: tuple(value) if isinstance(value, list) else value
            for key, value in self.params.items()
        }

    def to_json(self):
        return jsonable(asdict(self))

    @classmethod
    def from_json(cls, data):
        return cls(**data)

    def allocation(self):
        # trials per stream, the remainder to the lowest ids
        share, extra = divmod(self.trials, self.streams)
        return [share + (1 if i < extra else 0) for i in range(self.streams)]

    def param(self, key, default):
        return self.params.get(key, default)

    def param_set(self, key, default):
        # `C=2` on the command line arrives as a bare integer
        value = self.param(key, default)
        return AdmissibleSet((value,) if isinstance(value, int) else value)


class Tally(object):
    """Per-stream counters, JSON friendly so celery can carry them."""

    def __init__(self, data=None):
        data = data or dict()
        self.trials = data.get('trials', 0)
        self.capped = data.get('capped', 0)
        self.counts = dict(data.get('counts', {}))
        self.sums = {k: list(v) for k, v in data.get('sums', {}).items()}
        self.hist = {k: dict(v) for k, v in data.get('hist', {}).items()}
        self.series = {k: list(v) for k, v in data.get('series', {}).items()}
        self.errors = list(data.get('errors', []))

    def hit(self, event, k=1):
        self.counts[event] = self.counts.get(event, 0) + k

    def add(self, name, value):
        n, s, s2 = self.sums.get(name, (0, 0.0, 0.0))
        self.sums[name] = [n + 1, s + value, s2 + value * value]

    def bump(self, name, value, k=1):
        bins = self.hist.setdefault(name, dict())
        bins[str(value)] = bins.get(str(value), 0) + k

    def record(self, name, value):
        self.series.setdefault(name, []).append(value)

    def merge(self, other):
        self.trials += other.trials
        self.capped += other.capped
        for event, k in other.counts.items():
            self.hit(event, k)
        for name, (n, s, s2) in other.sums.items():
            m, t, t2 = self.sums.get(name, (0, 0.0, 0.0))
            self.sums[name] = [m + n, t + s, t2 + s2]
        for name, bins in other.hist.items():
            for value, k in bins.items():
                self.bump(name, value, k)
        for name, values in other.series.items():
            self.series.setdefault(name, []).extend(values)
        self.errors.extend(other.errors)
        return self

    def to_json(self):
        return {
            'trials': self.trials, 'capped': self.capped,
            'counts': self.counts, 'sums': self.sums, 'hist': self.hist,
            'series': self.series, 'errors': self.errors,
        }


ReportRow = namedtuple('ReportRow', hardcode.report_columns)


def _split(exact):
    if exact is None:
        return None, None
    exact = Fraction(exact)
    return exact.numerator, exact.denominator


def _z(empirical, exact, stderr):
    if exact is None:
        return None
    if stderr > 0:
        return (empirical - float(exact)) / stderr
    return 0.0 if empirical == float(exact) else math.inf


def probability_row(experiment, event, k, n, exact=None):
    empirical = k / n if n else 0.0
    p = float(exact) if exact is not None else empirical
    stderr = math.sqrt(p * (1 - p) / n) if n else 0.0
    num, den = _split(exact)
    return ReportRow(experiment, event, n, empirical, num, den, stderr,
                     _z(empirical, exact, stderr))


def mean_row(experiment, event, sums, exact=None):
    n, s, s2 = sums
    mean = s / n if n else 0.0
    variance = max(s2 / n - mean * mean, 0.0) * n / (n - 1) if n > 1 else 0.0
    stderr = math.sqrt(variance / n) if n else 0.0
    num, den = _split(exact)
    return ReportRow(experiment, event, n, mean, num, den, stderr,
                     _z(mean, exact, stderr))


def _format(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return '%.10g' % value
    return str(value)


@dataclass
class McReport:
    experiment: str
    rows: list
    notes: dict = field(default_factory=dict)

    def row(self, event):
        for row in self.rows:
            if row.event == event:
                return row
        raise KeyError(event)

    def max_abs_z(self):
        zs = [abs(row.z) for row in self.rows if row.z is not None]
        return max(zs, default=0.0)

    def to_csv(self):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(hardcode.report_columns)
        for row in self.rows:
            writer.writerow([_format(value) for value in row])
        return buffer.getvalue()

    def to_json(self):
        return dumps({
            'experiment': self.experiment,
            'rows': [
                {k: _format(v) if isinstance(v, float) else v
                 for k, v in row._asdict().items()}
                for row in self.rows
            ],
            'notes': self.notes,
        })

    def render(self, fmt=hardcode.report_csv):
        return self.to_json() if fmt == hardcode.report_json else \
            self.to_csv()


def animal_label(animal):
    return ';'.join('%d,%d' % v for v in animal.vertices)


def parse_animal_label(label):
    return Animal([tuple(int(c) for c in part.split(','))
                   for part in label.split(';')])


def layers_label(layers):
    return '|'.join(','.join(str(x) for x in A) for A in layers)


class Experiment(object):
    """
    One trial at a time. Subclasses record events in a Tally and give
    the exact values those events are compared to.
    """
    name = None

    def __init__(self, config):
        self.config = config

    def trial(self, rng, tally):
        raise NotImplementedError

    def exact(self, tally):
        return dict()

    def notes(self, tally):
        return dict()

    def rows(self, tally):
        exact = self.exact(tally)
        events = list(exact) + sorted(e for e in tally.counts
                                      if e not in exact)
        return [probability_row(self.name, event, tally.counts.get(event, 0),
                                tally.trials, exact.get(event))
                for event in events]

    def report(self, tally):
        notes = self.notes(tally)
        if tally.capped:
            notes['capped_trials'] = tally.capped
        if tally.errors:
            notes['stream_errors'] = tally.errors
        return McReport(self.name, self.rows(tally), notes)


@register('exit')
class ExitExperiment(Experiment):
    def trial(self, rng, tally):
        x, y = self.config.param('x', 3), self.config.param('y', 2)
        value = 0
        while -y < value < x:
            value += sample_step(rng)
        tally.hit('exit_low' if value <= -y else 'hit_x')

    def exact(self, tally):
        p = exit_probability(self.config.param('x', 3),
                             self.config.param('y', 2))
        return {'exit_low': p, 'hit_x': 1 - p}


@register('width')
class WidthExperiment(Experiment):
    def trial(self, rng, tally):
        kmax = self.config.param('kmax', 5)
        value = top = 0
        while 0 <= value < kmax:
            value += sample_step(rng)
            top = max(top, value)
        for k in range(1, top + 1):
            tally.hit('W>=%d' % k)

    def exact(self, tally):
        return {'W>=%d' % k: width_tail(k)
                for k in range(1, self.config.param('kmax', 5) + 1)}


BALL_SAMPLERS = {
    hardcode.kernel_uip: sample_uip_ball,
    hardcode.kernel_bhp: sample_bhp_ball,
    hardcode.kernel_uipp: sample_uip_plus_ball,
    hardcode.model_uipm: sample_uip_minus_ball,
    hardcode.model_bluered: sample_uip_plus_bluered,
}


@register('ball')
class BallExperiment(Experiment):
    def trial(self, rng, tally):
        sampler = BALL_SAMPLERS[self.config.model]
        tally.hit(animal_label(sampler(self.config.radius, rng)))

    def exact(self, tally):
        return {
            label: ball_prob(self.config.model, parse_animal_label(label),
                             self.config.radius)
            for label in sorted(tally.counts)
        }

    def notes(self, tally):
        mass = sum(self.exact(tally).values(), Fraction(0))
        return {'model': self.config.model, 'radius': self.config.radius,
                'exact_mass_observed': mass}


@register('cutcolumn')
class CutColumnExperiment(Experiment):
    def trial(self, rng, tally):
        red = sample_red_columns(self.config.radius, rng)
        for x in range(self.config.radius + 1):
            if x not in red:
                tally.hit('no_red_%d' % x)

    def exact(self, tally):
        return {'no_red_%d' % x: Fraction(1, x + 2)
                for x in range(self.config.radius + 1)}


@register('martingale')
class MartingaleExperiment(Experiment):
    def trial(self, rng, tally):
        A = AdmissibleSet([0])
        centered_max = centered_minmax = centered_spread = 0.0
        for _ in range(self.config.height):
            drift = float(martingale_drift(A))
            B = sample_transition(hardcode.kernel_uip, A, rng)
            centered_max += B.max - A.max - drift
            centered_minmax += B.min * B.max - A.min * A.max - drift
            centered_spread += (B.max - B.min) - (A.max - A.min) - 2 * drift
            A = B
        tally.add('max+min', A.max + A.min)
        tally.add('centered_max', centered_max)
        tally.add('centered_min*max', centered_minmax)
        tally.add('centered_spread', centered_spread)

    def rows(self, tally):
        return [mean_row(self.name, name, tally.sums[name], Fraction(0))
                for name in ('max+min', 'centered_max', 'centered_min*max',
                             'centered_spread')
                if name in tally.sums]


class _SourceRowExperiment(Experiment):
    default_source = (0, 2, 4)

    @property
    def source(self):
        return self.config.param_set('A', self.default_source)

    def table(self):
        return enumerate_row(hardcode.kernel_uip, self.source)


@register('extreme')
class ExtremeExperiment(_SourceRowExperiment):
    default_source = (0, 4)

    def events(self, A, B):
        up, down = B.max == A.max + 1, B.min == A.min - 1
        return {'max_up': up, 'min_down': down, 'both': up and down}

    def trial(self, rng, tally):
        A = self.source
        B = sample_transition(hardcode.kernel_uip, A, rng)
        for event, happened in self.events(A, B).items():
            if happened:
                tally.hit(event)

    def exact(self, tally):
        moves = extreme_move_probs(self.source)
        return {'max_up': moves.max_up, 'min_down': moves.min_down,
                'both': moves.joint}


@register('cherry')
class CherryExperiment(_SourceRowExperiment):

    @property
    def particle(self):
        A = self.source
        return self.config.param('b', A[len(A) // 2])

    def event(self, B):
        b = self.particle
        left, right = b - 1 in B, b + 1 in B
        if left and right:
            return 'both'
        if left:
            return 'left_only'
        if right:
            return 'right_only'
        return 'neither'

    def trial(self, rng, tally):
        tally.hit(self.event(
            sample_transition(hardcode.kernel_uip, self.source, rng)))

    def exact(self, tally):
        table = self.table()
        return {event: table.event_prob(
                    lambda B, event=event: self.event(B) == event)
                for event in ('both', 'left_only', 'right_only', 'neither')}

    def notes(self, tally):
        A, b = self.source, self.particle
        if b not in A or b in (A.min, A.max):
            return dict()
        i = A.index(b)
        return {'closed_form': cherry_probs(b - A[i - 1], A[i + 1] - b)
                ._asdict()}


@register('futurinf')
class FutureInfimumExperiment(Experiment):
    """
    P(every UIP_PLUS layer stays >= b). The depth proxy runs the chain
    to `height` and overestimates the event; the Rao-Blackwell column
    weighs each surviving run by the exact probability of staying above
    b afterwards and is unbiased.
    """

    def trial(self, rng, tally):
        C = self.config.param_set('C', (2,))
        b = self.config.param('b', 1)
        A = C
        alive = C.min >= b
        for _ in range(self.config.height):
            if not alive:
                break
            A = sample_transition(hardcode.kernel_uipp, A, rng)
            alive = A.min >= b
        if alive:
            tally.hit('proxy')
        tally.add('rao_blackwell',
                  float(future_infimum_prob(A, b)) if alive else 0.0)

    def rows(self, tally):
        exact = future_infimum_prob(self.config.param_set('C', (2,)),
                                    self.config.param('b', 1))
        rows = [probability_row(self.name, 'proxy',
                                tally.counts.get('proxy', 0), tally.trials,
                                exact)]
        if 'rao_blackwell' in tally.sums:
            rows.append(mean_row(self.name, 'rao_blackwell',
                                 tally.sums['rao_blackwell'], exact))
        return rows

    def notes(self, tally):
        return {'proxy_depth': self.config.height,
                'proxy_bias': 'overestimates'}


def _checkpoints(height):
    points = [1, 2, 3] + [10 ** k for k in range(1, 9) if 10 ** k < height]
    return sorted({h for h in points if h <= height} | {height})


@register('sausaging')
class SausagingExperiment(Experiment):
    """
    T is the first height at which the UIP is a single vertex. Runs that
    do not pinch by `height` are counted as capped.
    """
    exact_depth = 3

    def trial(self, rng, tally):
        A = AdmissibleSet([0])
        pinches = returns = 0
        first = None
        for n in range(1, self.config.height + 1):
            A = sample_transition(hardcode.kernel_uip, A, rng)
            if len(A) == 1:
                pinches += 1
                first = first or n
                returns += A.min == 0
        if first is None:
            tally.hit('unpinched')
        else:
            tally.record('T', first)
        tally.add('pinches', pinches)
        tally.add('returns_to_root', returns)

    def pinched_by(self, tally):
        observed = np.asarray(tally.series.get('T', []))
        return {h: int((observed <= h).sum())
                for h in _checkpoints(self.config.height)}

    def rows(self, tally):
        exact = pinching_cdf(min(self.exact_depth, self.config.height))
        rows = [probability_row(
                    self.name, 'T<=%d' % h, k, tally.trials,
                    exact[h - 1] if h <= len(exact) else None)
                for h, k in self.pinched_by(tally).items()]
        for name in ('pinches', 'returns_to_root'):
            if name in tally.sums:
                rows.append(mean_row(self.name, name, tally.sums[name]))
        return rows

    def running_means(self, tally):
        # T is not integrable: the running mean keeps drifting up
        observed = np.asarray(tally.series.get('T', []), dtype=float)
        sizes = [10 ** k for k in range(2, 9) if 10 ** k <= len(observed)]
        return {n: float(observed[:n].mean()) for n in sizes}

    def notes(self, tally):
        fractions = {h: k / tally.trials if tally.trials else 0.0
                     for h, k in self.pinched_by(tally).items()}
        notes = {
            'ccdf': {h: 1 - f for h, f in fractions.items()},
            'running_mean': self.running_means(tally),
            'nondecreasing': all(
                a <= b for a, b in zip(list(fractions.values()),
                                       list(fractions.values())[1:])),
        }
        path = fixture_path(self.config.param(
            'fixture', get_setting('ANIMALAB_SAUSAGING_FIXTURE')))
        if self.config.calibrate:
            write_fixture(path, self.config, fractions)
            notes['fixture_written'] = path
        elif os.path.exists(path):
            fixture = load_json(path)
            notes['fixture'] = fixture
            notes['above_fixture'] = {
                h: fractions[int(h)] >= float(Fraction(t)) - 4 * math.sqrt(
                    float(Fraction(t)) * (1 - float(Fraction(t))) /
                    max(tally.trials, 1))
                for h, t in fixture.get('thresholds', {}).items()
                if int(h) in fractions
            }
        return notes


def write_fixture(path, config, fractions):
    exact = pinching_cdf(2)
    data = {
        'config': config.to_json(),
        'calibrated': True,
        'command': hardcode.sausaging_calibration % (
            config.trials, config.height, config.seed, config.streams),
        'floors': {'1': exact[0], '2': exact[1]},
        'thresholds': {str(h): '%.6f' % f for h, f in fractions.items()},
    }
    write_text(path, dumps(data) + '\n')
    logger.info('sausaging fixture written to %s', path)


@register('general_source')
class GeneralSourceExperiment(Experiment):
    @property
    def source(self):
        return self.config.param_set('D', (0, 2))

    @property
    def depth(self):
        return self.config.param('h', 1)

    def trial(self, rng, tally):
        layers = [self.source]
        for _ in range(self.depth):
            layers.append(
                sample_transition(hardcode.kernel_uip, layers[-1], rng))
        tally.hit(layers_label(layers))

    def exact(self, tally):
        law = kernel_layer_law(self.source, self.depth)
        return {layers_label(key): p for key, p in sorted(law.items())}

    def notes(self, tally):
        law = kernel_layer_law(self.source, self.depth)
        sizes = self.config.param('sizes', (6, 9, 12))
        if isinstance(sizes, int):
            sizes = (sizes,)
        distances = {
            n: total_variation(source_layer_law(self.source, n, self.depth),
                               law)
            for n in sizes
        }
        return {'tv_uniform_vs_kernel': {n: float(d)
                                          for n, d in distances.items()}}


@register('local_limit')
class LocalLimitExperiment(Experiment):
    """B(r) of uniform pyramids with `size` vertices against the UIP."""

    def __init__(self, config):
        super(LocalLimitExperiment, self).__init__(config)
        self._pyramids = None

    def trial(self, rng, tally):
        if self._pyramids is None:
            self._pyramids = iter_uniform_pyramids(self.config.size, rng)
        path = next(self._pyramids)
        ball = WindowDecoder(self.config.radius).extend(path).animal()
        tally.hit(animal_label(ball))

    def exact(self, tally):
        return {
            label: ball_prob(hardcode.kernel_uip, parse_animal_label(label),
                             self.config.radius)
            for label in sorted(tally.counts)
        }

    def notes(self, tally):
        empirical = {label: Fraction(k, tally.trials)
                     for label, k in tally.counts.items()}
        notes = {'size': self.config.size,
                 'tv': float(total_variation(empirical, self.exact(tally)))}
        if self.config.radius == 1:
            # B(1) is the root and the first layer
            notes['tv_finite'] = float(first_layer_tv(self.config.size))
        return notes


@register('transience')
class TransienceExperiment(Experiment):
    def trial(self, rng, tally):
        checkpoint = self.config.param(
            'checkpoint', max(1, self.config.height // 100))
        A = AdmissibleSet([0])
        early = None
        for n in range(1, self.config.height + 1):
            A = sample_transition(hardcode.kernel_uipp, A, rng)
            if n == checkpoint:
                early = A.min
        if early is not None and A.min > early:
            tally.hit('min_grew')
        tally.add('final_min', A.min)

    def rows(self, tally):
        rows = [probability_row(self.name, 'min_grew',
                                tally.counts.get('min_grew', 0),
                                tally.trials)]
        if 'final_min' in tally.sums:
            rows.append(mean_row(self.name, 'final_min',
                                 tally.sums['final_min']))
        return rows


@register('height')
class HeightExperiment(Experiment):
    """
    Exploratory tail of the BHP height. Excursions longer than
    `max_length` are kept as censored above every fitted height.
    """

    def trial(self, rng, tally):
        trace = sample_excursion(
            rng, max_length=self.config.param('max_length', 10 ** 5))
        if trace is None:
            tally.hit('censored')
            return
        tally.bump('H', decode(trace.values).height)

    def tail(self, tally):
        heights = tally.hist.get('H', dict())
        censored = tally.counts.get('censored', 0)
        grid = [h for h in (1, 2, 4, 8, 16, 32, 64)
                if h <= self.config.param('hmax', 32)]
        return {h: censored + sum(k for value, k in heights.items()
                                  if int(value) >= h)
                for h in grid}

    def rows(self, tally):
        return [probability_row(self.name, 'H>=%d' % h, k, tally.trials)
                for h, k in self.tail(tally).items()]

    def notes(self, tally):
        points = [(h, k / tally.trials) for h, k in self.tail(tally).items()
                  if k and tally.trials]
        if len(points) < 3:
            return {'alpha': None}
        fit = stats.linregress([math.log(h) for h, _ in points],
                               [math.log(p) for _, p in points])
        return {'alpha': -fit.slope, 'r_value': fit.rvalue,
                'censored': tally.counts.get('censored', 0)}


@register('undershoot')
class UndershootExperiment(Experiment):
    """Undershoots below the running minimum against geometric(1/2)."""
    bins = 6

    def trial(self, rng, tally):
        values = np.cumsum(draw_steps(rng, self.config.param('steps', 1000)))
        previous = np.minimum.accumulate(np.concatenate(([0], values)))[:-1]
        below = values < previous
        for j in (previous[below] - values[below] - 1).tolist():
            tally.bump('j', min(j, self.bins))

    def counts(self, tally):
        bins = tally.hist.get('j', dict())
        return [bins.get(str(j), 0) for j in range(self.bins + 1)]

    def exact_law(self):
        law = [Fraction(1, 2 ** (j + 1)) for j in range(self.bins)]
        return law + [Fraction(1, 2 ** self.bins)]

    def rows(self, tally):
        observed = self.counts(tally)
        total = sum(observed)
        labels = ['j=%d' % j for j in range(self.bins)] + \
            ['j>=%d' % self.bins]
        return [probability_row(self.name, label, k, total, p)
                for label, k, p in zip(labels, observed, self.exact_law())]

    def notes(self, tally):
        observed = self.counts(tally)
        total = sum(observed)
        if not total:
            return {'undershoots': 0}
        expected = [float(p) * total for p in self.exact_law()]
        test = stats.chisquare(observed, expected)
        return {'undershoots': total, 'chi2': float(test.statistic),
                'p_value': float(test.pvalue)}


@register('excursion_law')
class ExcursionLawExperiment(Experiment):
    def trial(self, rng, tally):
        kmax = self.config.param('kmax', 6)
        trace = sample_excursion(rng, max_length=kmax)
        tally.hit('size>%d' % kmax if trace is None else
                  'size=%d' % len(trace))

    def exact(self, tally):
        kmax = self.config.param('kmax', 6)
        law = excursion_law(kmax).a
        exact = {'size=%d' % n: law[n] for n in range(1, kmax + 1)}
        exact['size>%d' % kmax] = 1 - sum(law.values(), Fraction(0))
        return exact


def run_trials(config, stream_id, trials):
    """One stream: `trials` trials from RngStream(seed, stream_id)."""
    rng = RngStream(config.seed, stream_id)
    runner = get_experiment(config.name)(config)
    tally = Tally()
    for _ in range(trials):
        try:
            runner.trial(rng, tally)
        except exceptions.StepCapExceeded:
            tally.capped += 1
            continue
        except exceptions.RetryBudgetExceeded as error:
            logger.warning('stream %d of %s stopped: %s',
                           stream_id, config.name, error)
            tally.errors.append('stream %d: %s' % (stream_id, error))
            break
        tally.trials += 1
    return tally


def run_streams(config):
    """Fans the streams out as celery tasks and folds the tallies."""
    from .tasks import runStream

    payload = config.to_json()
    signatures = group(
        runStream.s(payload, stream_id, trials)
        for stream_id, trials in enumerate(config.allocation())
    )
    if get_setting('ANIMALAB_TASKS_EAGER'):
        results = signatures.apply().get()
    else:
        results = signatures.apply_async().get()
    total = Tally()
    for data in results:
        total.merge(Tally(data))
    return total


def experiment(config):
    runner = get_experiment(config.name)(config)
    logger.info('experiment %s: %d trials over %d streams',
                config.name, config.trials, config.streams)
    report = runner.report(run_streams(config))
    if config.output:
        write_text(config.output, report.render(config.fmt))
    return report
