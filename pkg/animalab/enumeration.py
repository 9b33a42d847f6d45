"""
Exact counting of pyramids, half-pyramids and compact-source animals,
the excursion and renewal series of the animal walk, and exact checks of
the combinatorial identities behind the layer kernels.
"""
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import logging
import math

import numpy as np

from . import exceptions, hardcode
from .core import AdmissibleSet, augment, eta, eta_plus
from .encoding import decode, encode, enumerate_paths, iter_valid_paths
from .kernels import (
    enumerate_row, kernel_prob, martingale_drift, normalizer,
    transition_weights)
from .utils import get_setting
from .walks import RngStream

logger = logging.getLogger(__name__)

COUNT_KINDS = tuple(kind for kind, _ in hardcode.count_kind)


def _check_kind(kind, n):
    if kind not in COUNT_KINDS:
        raise exceptions.DomainError('count kind', kind)
    if n < 1:
        raise exceptions.DomainError(kind, n)


def _suffix_sums(row):
    suffix = [0] * (len(row) + 1)
    for d in range(len(row) - 1, -1, -1):
        suffix[d] = suffix[d + 1] + row[d]
    return suffix


def _pyramid_dp(n):
    # d = value - running min; from d the path goes to d + 1, to every
    # 1 <= e < d, and to 0 twice (the min itself and min - 1).
    row = [1]
    for _ in range(n - 1):
        suffix = _suffix_sums(row)
        following = [0] * (len(row) + 1)
        for d, c in enumerate(row):
            following[d + 1] += c
        for e in range(1, len(row)):
            following[e] += suffix[e + 1]
        following[0] += row[0] + 2 * suffix[1]
        row = following
    return sum(row)


def _half_dp(n):
    # z = value >= 0; from z the path goes to z + 1 or any 0 <= e < z.
    row = [1]
    for _ in range(n - 1):
        suffix = _suffix_sums(row)
        following = [0] * (len(row) + 1)
        for z, c in enumerate(row):
            following[z + 1] += c
        for e in range(len(row)):
            following[e] += suffix[e + 1]
        row = following
    return sum(row)


def _compact_dp(n):
    # (d, fresh): fresh while the running min is the last source, the
    # only moment a new source (two below the min) may be created.
    rows = {True: [1], False: [0]}
    for _ in range(n - 1):
        size = len(rows[True]) + 1
        following = {True: [0] * size, False: [0] * size}
        for fresh, row in rows.items():
            suffix = _suffix_sums(row)
            for d, c in enumerate(row):
                following[fresh][d + 1] += c
            for e in range(1, len(row)):
                following[fresh][e] += suffix[e + 1]
            following[fresh][0] += suffix[1]
            following[False][0] += suffix[0]
            if fresh:
                following[True][0] += suffix[0]
        rows = following
    return sum(rows[True]) + sum(rows[False])


def count_dp(kind, n):
    _check_kind(kind, n)
    if kind == hardcode.count_pyramid:
        return _pyramid_dp(n)
    if kind == hardcode.count_half:
        return _half_dp(n)
    return _compact_dp(n)


def count_naive(kind, n):
    """
    Oracle over absolute (value, running min, last source) states, the
    cubic version of count_dp.
    """
    _check_kind(kind, n)
    states = {(0, 0, 0): 1}
    for _ in range(n - 1):
        following = dict()
        for (x, m, s), c in states.items():
            low = 0 if kind == hardcode.count_half else m - 1
            targets = [(v, min(m, v), s) for v in range(low, x)]
            targets.append((x + 1, m, s))
            if kind == hardcode.count_compact and m == s:
                targets.append((s - 2, s - 2, s - 2))
            for key in targets:
                following[key] = following.get(key, 0) + c
        states = following
    return sum(states.values())


def count(kind, n):
    """Number of animals of the class with n vertices."""
    return count_dp(kind, n)


@dataclass(frozen=True)
class CountTable:
    kind: str
    counts: dict = field(default_factory=dict)

    @classmethod
    def build(cls, kind, n_max):
        return cls(kind, {n: count(kind, n) for n in range(1, n_max + 1)})

    def __getitem__(self, n):
        return self.counts[n]

    def to_json(self):
        return {'kind': self.kind,
                'counts': {str(n): str(c) for n, c in self.counts.items()}}


def enumerate_animals(kind, n, sources=None):
    """Streams every animal of the class with n vertices."""
    cap = get_setting('ANIMALAB_ENUMERATE_MAX_SIZE')
    if n > cap:
        raise exceptions.EnumerationCapExceeded(n, cap)
    if sources is None:
        _check_kind(kind, n)
    for path in enumerate_paths(kind, n, sources=sources):
        yield decode(path)


class SeriesCoeffs(namedtuple('SeriesCoeffs', ['a', 'u'])):
    """
    a[n]: probability that the walk first enters the negatives at n.
    u[n]: probability that n is a descending ladder time.
    """
    __slots__ = ()


def excursion_law(n_max):
    if n_max < 1:
        raise exceptions.DomainError('excursion_law', n_max)
    # 3^n a_n and 3^n u_n are integers
    A = [0] * (n_max + 1)
    U = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        A[n] = (1 if n == 1 else 0) + A[n - 1] + sum(
            A[i] * A[n - 1 - i] for i in range(1, n - 1))
        U[n] = A[n] + sum(A[k] * U[n - k] for k in range(1, n))
    return SeriesCoeffs(
        {n: Fraction(A[n], 3 ** n) for n in range(1, n_max + 1)},
        {n: Fraction(U[n], 3 ** n) for n in range(1, n_max + 1)},
    )


def renewal_series(n_max):
    """Float version of excursion_law for large n."""
    a = np.zeros(n_max + 1)
    u = np.zeros(n_max + 1)
    for n in range(1, n_max + 1):
        pairs = np.dot(a[1:n - 1], a[n - 2:0:-1]) if n > 2 else 0.0
        a[n] = (float(n == 1) + a[n - 1] + pairs) / 3.0
        u[n] = a[n] + np.dot(a[1:n], u[n - 1:0:-1])
    return a, u


def verify_renewal_asymptotics(n, checkpoints=None):
    if n < 1:
        raise exceptions.DomainError('verify_renewal_asymptotics', n)
    a, u = renewal_series(n)
    if checkpoints is None:
        checkpoints = [10 ** k for k in range(1, 9) if 10 ** k < n] + [n]
    rows = []
    for k in checkpoints:
        rows.append({
            'n': k,
            'a_ratio': float(
                a[k] / (math.sqrt(3 / (4 * math.pi)) * k ** -1.5)),
            'u_ratio': float(u[k] * math.sqrt(3 * math.pi * k)),
        })
    gaps = [abs(row['u_ratio'] - 1) for row in rows]
    return {
        'checkpoints': rows,
        'a_partial_sum': float(a.sum()),
        'a_positive': bool((a[1:] > 0).all()),
        'monotone': all(x >= y for x, y in zip(gaps, gaps[1:])),
        'converged': gaps[-1] < 0.05,
    }


def _walk_exit_mass(n, floor_is_min):
    # Walk distribution over the distance d to the floor (the running
    # min, or 0 for the walk kept non-negative), then the last step.
    row = [Fraction(1)]
    for _ in range(n - 1):
        following = [Fraction(0)] * (len(row) + 1)
        for d, p in enumerate(row):
            if not p:
                continue
            following[d + 1] += p * Fraction(2, 3)
            for e in range(d):
                following[e] += p * Fraction(1, 3 * 2 ** (d - e))
            if floor_is_min:
                following[0] += p * Fraction(1, 3 * 2 ** d)
        row = following
    return sum((p * Fraction(1, 3 * 2 ** d) for d, p in enumerate(row)),
               Fraction(0))


def pyramid_exit_mass(n):
    """P(S_n < min of S_0 .. S_{n-1})."""
    return _walk_exit_mass(n, floor_is_min=True)


def half_exit_mass(n):
    """P(S stays >= 0 before n and is negative at n)."""
    return _walk_exit_mass(n, floor_is_min=False)


def shaved_confined_min_mass(n):
    """P(the shaved walk stays <= 0 up to n and makes a new min at n)."""
    states = {(0, 0): Fraction(1)}
    for _ in range(n - 1):
        following = dict()
        for (m, x), p in states.items():
            moves = [((m, v), Fraction(1, 3 * 2 ** (x - v)))
                     for v in range(m, x)]
            moves.append(((m - 1, m - 1), Fraction(1, 3 * 2 ** (x - m))))
            if x + 1 <= 0:
                moves.append(((m, x + 1), Fraction(2, 3)))
            for key, q in moves:
                following[key] = following.get(key, Fraction(0)) + p * q
        states = following
    return sum((p * Fraction(1, 3 * 2 ** (x - m))
                for (m, x), p in states.items()), Fraction(0))


class BridgeCheck(namedtuple('BridgeCheck', [
        'holds', 'n', 'pyramid', 'half', 'remark'])):
    __slots__ = ()

    def __bool__(self):
        return self.holds


def verify_counting_bridge(n):
    """
    Counts against 3^n times the walk probabilities, plus the equality
    between non-negative excursions of S and confined new minima of the
    shaved walk.
    """
    if n < 1:
        raise exceptions.DomainError('verify_counting_bridge', n)
    half = half_exit_mass(n)
    pyramid = (count_dp(hardcode.count_pyramid, n),
               3 ** n * pyramid_exit_mass(n))
    half_pair = (count_dp(hardcode.count_half, n), 3 ** n * half)
    remark = (half, shaved_confined_min_mass(n))
    holds = pyramid[0] == pyramid[1] and half_pair[0] == half_pair[1] and \
        remark[0] == remark[1]
    return BridgeCheck(holds, n, pyramid, half_pair, remark)


def _match(counts, reference):
    # Index shifts s such that counts[n] == reference[n + s] for all n.
    shifts = []
    for s in (-1, 0, 1):
        pairs = [(c, n + s) for n, c in counts.items()
                 if 0 <= n + s < len(reference)]
        if pairs and all(c == reference[i] for c, i in pairs):
            shifts.append(s)
    return shifts


def oeis_assignment(n_max=12):
    """
    Which reference sequence each class matches, computed from the DPs.
    The literature remark pairs non-negative half-pyramids with A005773
    and pyramids with A001006; `remark_agrees` says whether the counts
    confirm it.
    """
    references = {'A005773': hardcode.oeis_a005773,
                  'A001006': hardcode.oeis_a001006}
    assignment = dict()
    for kind in (hardcode.count_pyramid, hardcode.count_half):
        counts = {n: count(kind, n) for n in range(1, n_max + 1)}
        assignment[kind] = {
            name: _match(counts, reference)
            for name, reference in references.items()
            if _match(counts, reference)
        }
    remark_agrees = 'A005773' in assignment[hardcode.count_half] and \
        'A001006' in assignment[hardcode.count_pyramid]
    if not remark_agrees:
        logger.info('counts disagree with the remark: %r', assignment)
    return {'assignment': assignment, 'remark_agrees': remark_agrees}


def source_layer_law(sources, n, h):
    """
    Exact law of the first h + 1 layers of a uniform animal with n
    vertices and the given source set.
    """
    law = dict()
    total = 0
    for animal in enumerate_animals(None, n, sources=sources):
        key = tuple(tuple(animal.rows.get(y, ())) for y in range(h + 1))
        law[key] = law.get(key, 0) + 1
        total += 1
    if not total:
        raise exceptions.DomainError('source_layer_law', (sources, n))
    return {key: Fraction(c, total) for key, c in law.items()}


def kernel_layer_law(sources, h):
    """Law of the first h + 1 UIP layers started from `sources`."""
    law = {(tuple(AdmissibleSet(sources)),): Fraction(1)}
    for _ in range(h):
        following = dict()
        for key, p in law.items():
            for B, q in enumerate_row(hardcode.kernel_uip, key[-1]):
                following[key + (tuple(B),)] = p * q
        law = following
    return law


def total_variation(p, q):
    keys = set(p) | set(q)
    return sum((abs(p.get(k, 0) - q.get(k, 0)) for k in keys),
               Fraction(0)) / 2


def first_layer_law(n):
    """
    Exact law of the first layer of a uniform pyramid with n vertices.
    Without (-1, 1) the rest is a pyramid rooted at (1, 1), so each
    single child has probability count(n - 1) / count(n).
    """
    if n < 1:
        raise exceptions.DomainError('first_layer_law', n)
    if n == 1:
        return {(): Fraction(1)}
    single = Fraction(count(hardcode.count_pyramid, n - 1),
                      count(hardcode.count_pyramid, n))
    return {(-1,): single, (1,): single, (-1, 1): 1 - 2 * single}


def first_layer_tv(n):
    """Total variation between first_layer_law(n) and the UIP first layer."""
    limit = {tuple(B): p for B, p in enumerate_row(hardcode.kernel_uip, [0])}
    return total_variation(first_layer_law(n), limit)


class IdentityCheck(namedtuple('IdentityCheck', [
        'holds', 'name', 'lhs', 'rhs', 'witness'])):
    __slots__ = ()

    def __bool__(self):
        return self.holds


def _subsets(F):
    for size in range(1, len(F) + 1):
        yield from combinations(F, size)


def _jolie(params):
    n = params['n']
    lhs = sum(math.prod(2 * (b - a) - 1 for a, b in zip(x, x[1:]))
              for x in _subsets(range(n + 1)))
    return lhs, 3 ** n


def _distinct(params, least=1):
    F = tuple(sorted(set(params['F'])))
    if len(F) < least or len(F) != len(params['F']):
        raise exceptions.DomainError('F', params['F'])
    return F


def _gencomb_uip(params):
    F = _distinct(params)
    return sum(eta(B) for B in _subsets(F)), eta_plus(F)


def _gencomb_bhp(params):
    F = _distinct(params)
    return (sum(eta(B) * B[-1] for B in _subsets(F)),
            1 + (F[-1] - 1) * eta_plus(F))


def _gencomb_uipp(params):
    F = _distinct(params)
    return (sum(eta(B) * B[0] * B[-1] for B in _subsets(F)),
            1 + (F[-1] - 1) * (F[0] + 1) * eta_plus(F))


def _fmax(params):
    F = _distinct(params, least=2)
    lhs = sum(eta(B) for B in _subsets(F) if B[-1] == F[-1])
    rhs = (F[-1] - F[-2]) * math.prod(
        F[j] - F[j - 1] + 1 for j in range(1, len(F) - 1))
    return lhs, rhs


def _fmaxmin(params):
    F = _distinct(params, least=3)
    lhs = sum(eta(B) for B in _subsets(F)
              if B[0] == F[0] and B[-1] == F[-1])
    rhs = (F[1] - F[0]) * (F[-1] - F[-2]) * math.prod(
        F[j] - F[j - 1] + 1 for j in range(2, len(F) - 1))
    return lhs, rhs


def _eta(params):
    A = AdmissibleSet(params['A'])
    return 3 ** len(A) * eta(A), eta_plus(augment(A))


def _kernel_checks(A):
    # (label, lhs, rhs) triples, all exact.
    A = AdmissibleSet(A)
    kinds = [hardcode.kernel_uip]
    if A.min >= 0:
        kinds += [hardcode.kernel_bhp, hardcode.kernel_uipp]
    rows = {kind: enumerate_row(kind, A) for kind in kinds}
    for kind, row in rows.items():
        yield 'row sum %s' % kind, row.total(), 1
        yield ('chain total %s' % kind,
               transition_weights(kind, A).total, normalizer(kind, A))

    uip = rows[hardcode.kernel_uip]
    drift = martingale_drift(A)
    yield 'max drift', uip.expectation(max), A.max + drift
    yield ('min*max drift', uip.expectation(lambda B: B[0] * B[-1]),
           A.min * A.max + drift)
    yield ('max+min martingale', uip.expectation(lambda B: B[0] + B[-1]),
           A.min + A.max)
    yield ('spread drift', uip.expectation(lambda B: B[-1] - B[0]),
           A.max - A.min + 2 * drift)

    if A.min >= 0:
        for B, p in uip:
            yield ('h-transform %r' % (B,),
                   kernel_prob(hardcode.kernel_uipp, A, B) *
                   (A.min + 1) * (A.max + 2),
                   p * (B[0] + 1) * (B[-1] + 2))

    for a in sorted({x for x in A} | {x - 1 for x in A}):
        left = uip.marginal(hi=a - 1)
        right = uip.marginal(lo=a + 2)
        joint = dict()
        for B, p in uip:
            key = (frozenset(b for b in B if b <= a - 1),
                   frozenset(b for b in B if b >= a + 2))
            joint[key] = joint.get(key, Fraction(0)) + p
        for l, pl in left.items():
            for r, pr in right.items():
                yield ('independence at %d' % a,
                       joint.get((l, r), Fraction(0)), pl * pr)
        below = enumerate_row(hardcode.kernel_uip,
                              [x for x in A if x <= a + 1])
        above = enumerate_row(hardcode.kernel_uip, [x for x in A if x >= a])
        yield 'left marginal at %d' % a, left, below.marginal(hi=a - 1)
        yield 'right marginal at %d' % a, right, above.marginal(lo=a + 2)

    for a, b in combinations(A, 2):
        inner = enumerate_row(hardcode.kernel_uip,
                              [x for x in A if a <= x <= b])
        yield ('restriction to ]%d, %d[' % (a, b),
               uip.marginal(a + 1, b - 1), inner.marginal(a + 1, b - 1))


def _check_kernels(name, params):
    for label, lhs, rhs in _kernel_checks(params['A']):
        if lhs != rhs:
            return IdentityCheck(False, name, lhs, rhs, label)
    return IdentityCheck(True, name, None, None, None)


def _check_bridge(name, params):
    result = verify_counting_bridge(params['n'])
    return IdentityCheck(result.holds, name, result.pyramid, result.half,
                         None if result.holds else result)


def _check_bijection(name, params):
    # encode(decode(p)) = p over every valid path up to length n
    window = params.get('window', hardcode.bijection_window)
    checked = 0
    for length in range(1, params['n'] + 1):
        for path in iter_valid_paths(length, -window, window,
                                     params.get('start')):
            animal = decode(path)
            back = tuple(encode(animal))
            if back != path or len(animal) != length:
                return IdentityCheck(False, name, path, back, dict(params))
            checked += 1
    logger.info('bijection: %d paths of length <= %d', checked, params['n'])
    return IdentityCheck(True, name, checked, checked, None)


def _check_renewal(name, params):
    series = excursion_law(params['n'])
    for k in range(1, params['n'] + 1):
        pairs = (
            ('u', 3 ** k * series.u[k], count(hardcode.count_pyramid, k)),
            ('a', 3 ** k * series.a[k], count(hardcode.count_half, k)),
        )
        for label, lhs, rhs in pairs:
            if lhs != rhs:
                return IdentityCheck(False, name, lhs, rhs, (label, k))
    return IdentityCheck(True, name, None, None, None)


_SUMS = {
    hardcode.identity_jolie: _jolie,
    hardcode.identity_gencomb_uip: _gencomb_uip,
    hardcode.identity_gencomb_bhp: _gencomb_bhp,
    hardcode.identity_gencomb_uipp: _gencomb_uipp,
    hardcode.identity_fmax: _fmax,
    hardcode.identity_fmaxmin: _fmaxmin,
    hardcode.identity_eta: _eta,
}

_CHECKS = {
    hardcode.identity_kernels: _check_kernels,
    hardcode.identity_bridge: _check_bridge,
    hardcode.identity_renewal: _check_renewal,
    hardcode.identity_bijection: _check_bijection,
}

GENCOMB = (
    hardcode.identity_gencomb_uip, hardcode.identity_gencomb_bhp,
    hardcode.identity_gencomb_uipp, hardcode.identity_fmax,
    hardcode.identity_fmaxmin,
)


def verify_identity(name, params):
    """
    Evaluates both sides of the identity `name` exactly. The result is
    falsy on failure, with the parameters as witness.
    """
    if name in _CHECKS:
        return _CHECKS[name](name, params)
    if name not in _SUMS:
        raise exceptions.UnknownIdentity(name)
    lhs, rhs = _SUMS[name](params)
    return IdentityCheck(lhs == rhs, name, lhs, rhs,
                         None if lhs == rhs else dict(params))


def random_params(name, rng):
    if name == hardcode.identity_jolie:
        return {'n': rng.randbelow(15)}
    if name in (hardcode.identity_bridge, hardcode.identity_renewal):
        return {'n': 1 + rng.randbelow(12)}
    if name == hardcode.identity_bijection:
        return {'n': 1 + rng.randbelow(4), 'start': 0}
    if name in (hardcode.identity_eta, hardcode.identity_kernels):
        if name == hardcode.identity_kernels:
            # even subsets of [0, 12], shifted
            pool = np.arange(0, 13, 2)
            shift = rng.randbelow(5) - 2
        else:
            pool = np.arange(-12, 13, 2)
            shift = rng.randbelow(2)
        size = 1 + rng.randbelow(min(6, len(pool)))
        chosen = rng.generator.choice(pool, size=size, replace=False)
        return {'A': tuple(sorted(int(x) + shift for x in chosen))}
    least = {hardcode.identity_fmax: 2, hardcode.identity_fmaxmin: 3}.get(
        name, 1)
    size = least + rng.randbelow(11 - least)
    chosen = rng.generator.choice(np.arange(-15, 16), size=size,
                                  replace=False)
    return {'F': tuple(sorted(int(x) for x in chosen))}


def random_sweep(name, trials, seed=hardcode.default_seed):
    """Failing checks of `trials` random instances of the identity."""
    names = GENCOMB if name == hardcode.identity_gencomb else (name,)
    for each in names:
        if each not in _SUMS and each not in _CHECKS:
            raise exceptions.UnknownIdentity(each)
    rng = RngStream(seed, 0)
    failures = []
    for each in names:
        for _ in range(trials):
            result = verify_identity(each, random_params(each, rng))
            if not result:
                failures.append(result)
    logger.info('%s: %d random checks, %d failures',
                name, trials * len(names), len(failures))
    return failures
