"""
Exact layer kernels of the Boltzmann half-pyramid (BHP), the uniform
infinite pyramid (UIP) and the uniform infinite non-negative pyramid
(UIP_PLUS), with the closed-form marginals built on them.

All three kernels are weighted chains over F = [A] (intersected with N
when the model lives on N): a target B = {b_1 < ... < b_k} weighs

    lead(b_1) * prod(b_{i+1} - b_i - 1) * tail(b_k)

with lead = 1 for the UIP and b + 1 otherwise (a phantom particle at -2),
and tail = 1 except for UIP_PLUS where it is b + 2. The BHP also moves
to EMPTY with weight 1.
"""
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import logging

from . import exceptions, hardcode
from .core import (
    EMPTY, AdmissibleSet, Animal, augment, eta, in_cone, is_directed_animal,
    layer)
from .utils import get_setting

logger = logging.getLogger(__name__)

KERNEL_KINDS = tuple(kind for kind, _ in hardcode.kernel_kind)


def _check_source(kind, A):
    if kind not in KERNEL_KINDS:
        raise exceptions.DomainError('kernel kind', kind)
    A = AdmissibleSet(A)
    if kind != hardcode.kernel_uip and A.min < 0:
        raise exceptions.DomainError(kind, A)
    return A


def support(kind, A):
    F = augment(A)
    if kind == hardcode.kernel_uip:
        return tuple(F)
    return tuple(f for f in F if f >= 0)


def normalizer(kind, A):
    base = 3 ** len(A) * eta(A)
    if kind == hardcode.kernel_bhp:
        return (A.min + 1) * base
    if kind == hardcode.kernel_uipp:
        return (A.min + 1) * (A.max + 2) * base
    return base


def target_weight(kind, B):
    if B is EMPTY:
        return 1 if kind == hardcode.kernel_bhp else 0
    weight = eta(B)
    if kind in (hardcode.kernel_bhp, hardcode.kernel_uipp):
        weight *= B[0] + 1
    if kind == hardcode.kernel_uipp:
        weight *= B[-1] + 2
    return weight


def kernel_prob(kind, A, B):
    A = _check_source(kind, A)
    if B is EMPTY:
        return Fraction(target_weight(kind, B), normalizer(kind, A))
    B = tuple(sorted(B))
    if not B or not set(B) <= set(support(kind, A)):
        return Fraction(0)
    return Fraction(target_weight(kind, B), normalizer(kind, A))


@dataclass(frozen=True)
class TransitionTable:
    kind: str
    source: AdmissibleSet
    entries: dict

    def __iter__(self):
        return iter(self.entries.items())

    def __len__(self):
        return len(self.entries)

    def total(self):
        return sum(self.entries.values(), Fraction(0))

    def expectation(self, func):
        # func is not called on EMPTY
        return sum((p * func(B) for B, p in self.entries.items()
                    if B is not EMPTY), Fraction(0))

    def event_prob(self, predicate):
        return sum((p for B, p in self.entries.items() if predicate(B)),
                   Fraction(0))

    def marginal(self, lo=None, hi=None):
        """Law of the target intersected with [lo, hi] (bounds optional)."""
        law = dict()
        for B, p in self.entries.items():
            key = frozenset(
                b for b in B
                if (lo is None or b >= lo) and (hi is None or b <= hi))
            law[key] = law.get(key, Fraction(0)) + p
        return law


def enumerate_row(kind, A):
    A = _check_source(kind, A)
    F = support(kind, A)
    cap = get_setting('ANIMALAB_ENUMERATION_CAP')
    if len(F) > cap:
        raise exceptions.EnumerationCapExceeded(len(F), cap)
    Z = normalizer(kind, A)
    entries = dict()
    if kind == hardcode.kernel_bhp:
        entries[EMPTY] = Fraction(1, Z)
    for size in range(1, len(F) + 1):
        for B in combinations(F, size):
            weight = target_weight(kind, B)
            if weight:
                entries[AdmissibleSet(B)] = Fraction(weight, Z)
    logger.debug('enumerated %d targets from %r (%s)', len(entries), A, kind)
    return TransitionTable(kind, A, entries)


TransitionWeights = namedtuple(
    'TransitionWeights', ['support', 'chain', 'lead', 'tail', 'total'])


def transition_weights(kind, A):
    """
    Suffix weights of the chain engine: chain[j] is the total weight of
    targets whose smallest element is support[j], not counting lead[j].
    total is the row normalizer.
    """
    A = _check_source(kind, A)
    F = support(kind, A)
    phantom = kind != hardcode.kernel_uip
    lead = [f + 1 if phantom else 1 for f in F]
    tail = [f + 2 if kind == hardcode.kernel_uipp else 1 for f in F]
    chain = [0] * len(F)
    s1 = s2 = 0
    for j in range(len(F) - 1, -1, -1):
        chain[j] = tail[j] + s2 - (F[j] + 1) * s1
        s1 += chain[j]
        s2 += F[j] * chain[j]
    total = sum(l * w for l, w in zip(lead, chain))
    if kind == hardcode.kernel_bhp:
        total += 1
    return TransitionWeights(F, tuple(chain), tuple(lead), tuple(tail), total)


def sample_transition(kind, A, rng):
    weights = transition_weights(kind, A)
    F, chain = weights.support, weights.chain
    first = [l * w for l, w in zip(weights.lead, chain)]
    if kind == hardcode.kernel_bhp:
        first.append(1)
    j = rng.pick(first)
    if j == len(F):
        return EMPTY
    picked = [F[j]]
    while True:
        options = [weights.tail[j]] + [
            (F[i] - F[j] - 1) * chain[i] for i in range(j + 1, len(F))]
        step = rng.pick(options)
        if step == 0:
            return AdmissibleSet(picked)
        j = j + step
        picked.append(F[j])


def _pyramid_checks(model, C, r):
    if not isinstance(C, Animal):
        C = Animal(C)
    info = is_directed_animal(C)
    if not info.pyramid:
        raise exceptions.DomainError('marginal_ball', C)
    if C.height != r or any(abs(v.x) > r for v in C):
        raise exceptions.DomainError('marginal_ball', (C, r))
    if model in (hardcode.kernel_bhp, hardcode.kernel_uipp) and \
            not info.nonneg:
        raise exceptions.DomainError('marginal_ball', C)
    if model == hardcode.model_uipm and not info.nonpos:
        raise exceptions.DomainError('marginal_ball', C)
    return C


def marginal_ball(model, C, r):
    """P(A intersected with B(r) = C) for C of height exactly r."""
    C = _pyramid_checks(model, C, r)
    if model == hardcode.model_uipm:
        return marginal_ball(hardcode.kernel_uipp, C.mirror(), r)
    top = layer(C, r)
    below = 3 ** (len(C) - len(top))
    if model == hardcode.kernel_uip:
        return Fraction(eta(top), below)
    if model == hardcode.kernel_bhp:
        return Fraction((top.min + 1) * eta(top), below)
    if model == hardcode.kernel_uipp:
        return Fraction((top.min + 1) * (top.max + 2) * eta(top), 2 * below)
    raise exceptions.DomainError('marginal_ball', model)


def boundary(D):
    """Inner boundary of the domain left free by the cones above D."""
    D = [tuple(d) for d in D]

    def covered(w):
        return any(in_cone(d, w) for d in D)

    def on_boundary(v):
        x, y = v
        return not covered(v) and (
            covered((x - 1, y + 1)) or covered((x + 1, y + 1)))

    return covered, on_boundary


def marginal_general(C, D):
    """P(UIP intersected with B(D) = C) for a proper boundary subset D."""
    if not isinstance(C, Animal):
        C = Animal(C)
    D = {tuple(d) for d in D}
    if not D or not D <= {tuple(v) for v in C}:
        raise exceptions.NotProperBoundary('D must be a non-empty subset of C')
    covered, on_boundary = boundary(D)
    if any(covered(v) for v in C):
        raise exceptions.NotProperBoundary('C leaves the domain B(D)')
    if {tuple(v) for v in C if on_boundary(v)} != D:
        raise exceptions.NotProperBoundary(
            'the boundary of B(D) meets C outside D')
    xs = sorted(x for x, _ in D)
    if len(set(xs)) != len(xs):
        raise exceptions.NotProperBoundary('two vertices of D share a column')
    return Fraction(eta(xs), 3 ** (len(C) - len(D)))


def subset_containment_prob(A, B):
    A, B = AdmissibleSet(A), AdmissibleSet(B)
    if not set(B) <= set(A):
        raise exceptions.DomainError('subset_containment_prob', (A, B))
    return Fraction(eta(B), eta(A)) * Fraction(3) ** (len(B) - len(A))


CherryProbs = namedtuple(
    'CherryProbs', ['both', 'right_only', 'left_only', 'neither'])


def cherry_probs(gap_left, gap_right):
    """
    Joint law of (b - 1, b + 1) in the next UIP layer for an interior
    particle b with gaps b - a and c - b to its neighbours.
    """
    for gap in (gap_left, gap_right):
        if gap < 2 or gap % 2:
            raise exceptions.DomainError('cherry_probs', gap)
    j, k = max(gap_left, 4), max(gap_right, 4)
    den = 3 * (j - 1) * (k - 1)
    return CherryProbs(
        both=Fraction((j - 2) * (k - 2), den),
        right_only=Fraction(j * (k - 2), den),
        left_only=Fraction((j - 2) * k, den),
        neither=Fraction(j + k - 1, den),
    )


ExtremeMoves = namedtuple('ExtremeMoves', ['max_up', 'min_down', 'joint'])


def extreme_move_probs(A):
    """
    Probabilities that the max moves up, that the min moves down, and of
    both, read off the enumerated UIP row from A.
    """
    A = AdmissibleSet(A)
    table = enumerate_row(hardcode.kernel_uip, A)
    up, down = A.max + 1, A.min - 1
    return ExtremeMoves(
        table.event_prob(lambda B: up in B),
        table.event_prob(lambda B: down in B),
        table.event_prob(lambda B: up in B and down in B),
    )


def martingale_drift(A):
    """
    Exact drift of max and of min * max under the UIP kernel. The spread
    max - min drifts by twice this.
    """
    A = AdmissibleSet(A)
    return Fraction(1, 3 ** len(A) * eta(A))


def future_infimum_prob(C, b):
    """P(all later UIP_PLUS layers stay >= b | current layer C)."""
    C = AdmissibleSet(C)
    if C.min < 0 or not 0 <= b <= C.min:
        raise exceptions.DomainError('future_infimum_prob', (C, b))
    return Fraction((C.min + 1 - b) * (C.max + 2 - b),
                    (C.min + 1) * (C.max + 2))


def source_local_limit_prob(D):
    """
    Probability that the UIP layer chain started from the floor of D
    produces the layers of D up to its height.
    """
    if not isinstance(D, Animal):
        D = Animal(D)
    layers = D.layers()
    return Fraction(eta(layers[-1]) * 3 ** len(layers[-1]),
                    eta(layers[0]) * 3 ** len(D))


def pinching_cdf(h):
    """Exact P(T <= n) for n = 1..h, T the first singleton UIP layer."""
    alive = {AdmissibleSet([0]): Fraction(1)}
    cdf = []
    pinched = Fraction(0)
    for _ in range(h):
        following = dict()
        for A, p in alive.items():
            for B, q in enumerate_row(hardcode.kernel_uip, A):
                if len(B) == 1:
                    pinched += p * q
                else:
                    # translation invariance: keep states anchored at min
                    key = B.shift(-B.min)
                    following[key] = following.get(key, Fraction(0)) + p * q
        alive = following
        cdf.append(pinched)
    return cdf


def bhp_prob(C):
    """P(BHP = C) for a non-negative pyramid C."""
    if not isinstance(C, Animal):
        C = Animal(C)
    if not is_directed_animal(C).nonneg:
        raise exceptions.DomainError('bhp_prob', C)
    return Fraction(1, 3 ** len(C))


def ball_prob(model, C, r):
    """
    P(model intersected with B(r) = C). Only the BHP can stop below
    height r, in which case the ball holds the whole animal.
    """
    if not isinstance(C, Animal):
        C = Animal(C)
    if model == hardcode.model_bluered:
        model = hardcode.kernel_uipp
    if C.height == r:
        return marginal_ball(model, C, r)
    if model == hardcode.kernel_bhp and C.height < r:
        return bhp_prob(C)
    return Fraction(0)
