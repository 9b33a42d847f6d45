from django.test import SimpleTestCase, override_settings

from fractions import Fraction
import math

from scipy import stats

from animalab import encoding, exceptions, hardcode
from animalab.core import EMPTY, AdmissibleSet, Animal, augment, eta_plus
from animalab.kernels import (
    ball_prob, bhp_prob, cherry_probs, enumerate_row, extreme_move_probs,
    future_infimum_prob, kernel_prob, marginal_ball, marginal_general,
    martingale_drift, normalizer, pinching_cdf, sample_transition,
    source_local_limit_prob, subset_containment_prob, transition_weights)
from animalab.walks import RngStream

UIP = hardcode.kernel_uip
BHP = hardcode.kernel_bhp
UIPP = hardcode.kernel_uipp


def pyramids(kind, n):
    return [encoding.decode(p) for p in encoding.enumerate_paths(kind, n)]


def chain_prob(kind, animal):
    layers = animal.layers()
    return math.prod(kernel_prob(kind, a, b)
                     for a, b in zip(layers, layers[1:]))


class KernelRowTests(SimpleTestCase):
    def test_rows_from_the_root(self):
        self.assertEqual(dict(enumerate_row(UIP, [0])), {
            AdmissibleSet([-1]): Fraction(1, 3),
            AdmissibleSet([1]): Fraction(1, 3),
            AdmissibleSet([-1, 1]): Fraction(1, 3),
        })
        self.assertEqual(dict(enumerate_row(BHP, [0])), {
            EMPTY: Fraction(1, 3),
            AdmissibleSet([1]): Fraction(2, 3),
        })
        self.assertEqual(dict(enumerate_row(UIPP, [0])),
                         {AdmissibleSet([1]): 1})

    def test_kernel_prob(self):
        self.assertEqual(kernel_prob(UIP, [0, 2], [-1, 3]), Fraction(1, 3))
        self.assertEqual(kernel_prob(BHP, [0, 2], [3]), Fraction(4, 9))
        self.assertEqual(kernel_prob(UIPP, [0, 2], [3]), Fraction(5, 9))
        self.assertEqual(kernel_prob(BHP, [0, 2], EMPTY), Fraction(1, 9))
        self.assertEqual(kernel_prob(UIP, [0], EMPTY), 0)
        self.assertEqual(kernel_prob(UIP, [0], [3]), 0)
        self.assertEqual(kernel_prob(BHP, [0], [-1]), 0)

    def test_bad_sources(self):
        with self.assertRaises(exceptions.DomainError):
            kernel_prob(BHP, [-2, 0], [-1])
        with self.assertRaises(exceptions.DomainError):
            enumerate_row('XYZ', [0])
        with self.assertRaises(exceptions.InvalidAdmissibleSet):
            enumerate_row(UIP, [0, 1])

    def test_rows_are_stochastic(self):
        for A in [(0,), (0, 2), (0, 4), (0, 2, 6), (1, 5, 7, 13)]:
            for kind in (UIP, BHP, UIPP):
                self.assertEqual(enumerate_row(kind, A).total(), 1, (kind, A))
        for A in [(-3, 1), (-6, -2, 4)]:
            self.assertEqual(enumerate_row(UIP, A).total(), 1)

    def test_chain_engine_totals(self):
        for A in [(0,), (0, 2), (0, 4), (0, 2, 6), (2, 4, 10, 12)]:
            for kind in (UIP, BHP, UIPP):
                self.assertEqual(transition_weights(kind, A).total,
                                 normalizer(kind, AdmissibleSet(A)))
            self.assertEqual(transition_weights(UIP, A).total,
                             eta_plus(augment(A)))

    def test_marginal_of_a_row(self):
        table = enumerate_row(UIP, [0, 2])
        law = table.marginal(lo=0)
        self.assertEqual(sum(law.values()), 1)
        self.assertEqual(law[frozenset()], Fraction(1, 9))
        self.assertEqual(law[frozenset([1, 3])], Fraction(2, 9))

    @override_settings(ANIMALAB_ENUMERATION_CAP=3)
    def test_enumeration_cap(self):
        with self.assertRaises(exceptions.EnumerationCapExceeded):
            enumerate_row(UIP, [0, 4])
        enumerate_row(UIP, [0, 2])


class SampleTransitionTests(SimpleTestCase):
    def check_row(self, kind, A, n, seed):
        table = enumerate_row(kind, A)
        targets = [B for B, _ in table]
        index = {B: i for i, B in enumerate(targets)}
        observed = [0] * len(targets)
        rng = RngStream(seed)
        for _ in range(n):
            observed[index[sample_transition(kind, A, rng)]] += 1
        expected = [float(p) * n for _, p in table]
        self.assertGreater(stats.chisquare(observed, expected).pvalue, 1e-4)

    def test_uip(self):
        self.check_row(UIP, (0, 2), 9000, 1)
        self.check_row(UIP, (0, 4, 6), 9000, 2)

    def test_bhp(self):
        self.check_row(BHP, (0,), 3000, 3)
        self.check_row(BHP, (0, 2), 9000, 4)

    def test_uip_plus(self):
        self.check_row(UIPP, (0, 6), 9000, 5)


class BallMarginalTests(SimpleTestCase):
    def test_examples(self):
        diagonal = Animal([(0, 0), (1, 1), (2, 2)])
        self.assertEqual(marginal_ball(UIP, [(0, 0)], 0), 1)
        self.assertEqual(marginal_ball(UIP, [(0, 0), (1, 1)], 1),
                         Fraction(1, 3))
        self.assertEqual(marginal_ball(UIP, diagonal, 2), Fraction(1, 9))
        self.assertEqual(marginal_ball(UIPP, [(0, 0), (1, 1)], 1), 1)
        self.assertEqual(marginal_ball(BHP, [(0, 0), (1, 1)], 1),
                         Fraction(2, 3))

    def test_domain(self):
        with self.assertRaises(exceptions.DomainError):
            marginal_ball(UIP, [(0, 0), (1, 1)], 2)
        with self.assertRaises(exceptions.DomainError):
            marginal_ball(UIPP, [(0, 0), (-1, 1)], 1)
        with self.assertRaises(exceptions.DomainError):
            marginal_ball(UIP, [(0, 0), (2, 0)], 0)

    def test_layer_chains_agree_with_the_closed_forms(self):
        for n in range(1, 7):
            for animal in pyramids(hardcode.count_pyramid, n):
                self.assertEqual(
                    marginal_ball(UIP, animal, animal.height),
                    chain_prob(UIP, animal), animal)
            for animal in pyramids(hardcode.count_half, n):
                for kind in (BHP, UIPP):
                    self.assertEqual(
                        marginal_ball(kind, animal, animal.height),
                        chain_prob(kind, animal), (kind, animal))
                self.assertEqual(
                    marginal_ball(hardcode.model_uipm, animal.mirror(),
                                  animal.height),
                    marginal_ball(UIPP, animal, animal.height))

    def test_ball_laws_sum_to_one(self):
        shapes = [a for n in range(1, 7)
                  for a in pyramids(hardcode.count_pyramid, n)]
        half = [a for n in range(1, 7)
                for a in pyramids(hardcode.count_half, n)]
        self.assertEqual(sum(ball_prob(UIP, a, 2) for a in shapes), 1)
        self.assertEqual(sum(ball_prob(UIPP, a, 2) for a in half), 1)
        self.assertEqual(sum(ball_prob(BHP, a, 2) for a in half), 1)
        self.assertEqual(
            sum(ball_prob(hardcode.model_bluered, a, 2) for a in half), 1)

    def test_bhp_prob(self):
        self.assertEqual(bhp_prob([(0, 0)]), Fraction(1, 3))
        self.assertEqual(ball_prob(BHP, [(0, 0)], 3), Fraction(1, 3))
        self.assertEqual(ball_prob(UIP, [(0, 0)], 3), 0)
        with self.assertRaises(exceptions.DomainError):
            bhp_prob([(0, 0), (-1, 1)])


class GeneralMarginalTests(SimpleTestCase):
    def test_boundary_marginals(self):
        diagonal = [(0, 0), (1, 1), (2, 2)]
        self.assertEqual(marginal_general(diagonal, [(2, 2)]),
                         Fraction(1, 9))
        self.assertEqual(marginal_general(diagonal, [(2, 2)]),
                         marginal_ball(UIP, diagonal, 2))
        self.assertEqual(marginal_general([(0, 0), (1, 1)], [(1, 1)]),
                         Fraction(1, 3))

    def test_boundary_marginals_with_mixed_heights(self):
        # D spread over two heights, columns 0, 5, 8 and 12
        C = [(6, 0), (5, 1), (7, 1), (4, 2), (6, 2), (8, 2), (3, 3), (9, 3),
             (2, 4), (10, 4), (1, 5), (3, 5), (9, 5), (11, 5),
             (0, 6), (4, 6), (8, 6), (12, 6), (5, 7)]
        D = [(0, 6), (5, 7), (8, 6), (12, 6)]
        self.assertEqual(marginal_general(C, D),
                         Fraction(4 * 2 * 3, 3 ** 15))

    def test_boundary_marginals_on_a_top_layer(self):
        C = [(0, 0), (-1, 1), (1, 1), (-2, 2), (0, 2), (2, 2),
             (-3, 3), (-1, 3), (1, 3), (3, 3),
             (-4, 4), (-2, 4), (0, 4), (2, 4), (4, 4),
             (-3, 5), (3, 5), (-4, 6), (4, 6)]
        D = [(-4, 6), (4, 6)]
        self.assertEqual(marginal_general(C, D), Fraction(7, 3 ** 17))
        self.assertEqual(marginal_ball(UIP, C, 6), Fraction(7, 3 ** 17))
        with self.assertRaises(exceptions.NotProperBoundary):
            marginal_general(C, [(0, 4), (-4, 6), (4, 6)])

    def test_improper_boundaries(self):
        with self.assertRaises(exceptions.NotProperBoundary):
            marginal_general([(0, 0), (1, 1)], [(0, 0)])
        with self.assertRaises(exceptions.NotProperBoundary):
            marginal_general([(0, 0), (1, 1)], [])
        with self.assertRaises(exceptions.NotProperBoundary):
            marginal_general([(0, 0), (1, 1)], [(3, 1)])

    def test_subset_containment(self):
        self.assertEqual(subset_containment_prob([0, 2], [0]),
                         Fraction(1, 3))
        self.assertEqual(subset_containment_prob([0, 2, 6], [0, 6]),
                         Fraction(5, 9))
        with self.assertRaises(exceptions.DomainError):
            subset_containment_prob([0, 2], [4])

    def test_source_local_limit(self):
        compact = Animal([(-2, 0), (0, 0), (-1, 1)])
        self.assertEqual(source_local_limit_prob(compact), Fraction(1, 9))
        for animal in pyramids(hardcode.count_pyramid, 5):
            self.assertEqual(source_local_limit_prob(animal),
                             chain_prob(UIP, animal))


class LocalEventTests(SimpleTestCase):
    def cherry_from_row(self, A):
        b = A[1]
        table = enumerate_row(UIP, A)
        return (
            table.event_prob(lambda B: b - 1 in B and b + 1 in B),
            table.event_prob(lambda B: b - 1 not in B and b + 1 in B),
            table.event_prob(lambda B: b - 1 in B and b + 1 not in B),
            table.event_prob(lambda B: b - 1 not in B and b + 1 not in B),
        )

    def test_cherry(self):
        self.assertEqual(cherry_probs(2, 2), (
            Fraction(4, 27), Fraction(8, 27), Fraction(8, 27),
            Fraction(7, 27)))
        self.assertEqual(cherry_probs(2, 6), (
            Fraction(8, 45), Fraction(16, 45), Fraction(12, 45),
            Fraction(9, 45)))
        for A in [(0, 2, 4), (0, 4, 8), (0, 2, 8), (0, 6, 8), (-6, 0, 10)]:
            gaps = (A[1] - A[0], A[2] - A[1])
            self.assertEqual(tuple(cherry_probs(*gaps)),
                             self.cherry_from_row(A), A)
        with self.assertRaises(exceptions.DomainError):
            cherry_probs(3, 2)

    def test_extreme_moves(self):
        self.assertEqual(extreme_move_probs([0, 2]),
                         (Fraction(2, 3), Fraction(2, 3), Fraction(4, 9)))
        self.assertEqual(extreme_move_probs([0]).joint, Fraction(1, 3))
        for A in [(0,), (0, 2), (0, 4), (0, 2, 6)]:
            table = enumerate_row(UIP, A)
            up, down = A[-1] + 1, A[0] - 1
            moves = extreme_move_probs(A)
            self.assertEqual(table.event_prob(lambda B: up in B),
                             moves.max_up)
            self.assertEqual(table.event_prob(lambda B: down in B),
                             moves.min_down)
            self.assertEqual(
                table.event_prob(lambda B: up in B and down in B),
                moves.joint)

    def test_martingale_drift(self):
        for A in [(0,), (0, 2), (0, 4), (-2, 2, 4)]:
            A = AdmissibleSet(A)
            table = enumerate_row(UIP, A)
            drift = martingale_drift(A)
            self.assertEqual(table.expectation(lambda B: B.max) - A.max,
                             drift)
            self.assertEqual(
                table.expectation(lambda B: B.min * B.max) - A.min * A.max,
                drift)
            self.assertEqual(
                table.expectation(lambda B: B.max - B.min) - (A.max - A.min),
                2 * drift)

    def test_future_infimum(self):
        self.assertEqual(future_infimum_prob([2], 1), Fraction(1, 2))
        self.assertEqual(future_infimum_prob([2, 4], 0), 1)
        with self.assertRaises(exceptions.DomainError):
            future_infimum_prob([2], 3)

    def test_future_infimum_is_harmonic(self):
        for C in [(0,), (2,), (2, 4), (4, 8)]:
            for b in range(C[0] + 1):
                after = sum(p * future_infimum_prob(B, b)
                            for B, p in enumerate_row(UIPP, C) if B.min >= b)
                self.assertEqual(after, future_infimum_prob(C, b), (C, b))

    def test_pinching(self):
        self.assertEqual(pinching_cdf(2), [Fraction(2, 3), Fraction(7, 9)])
        cdf = pinching_cdf(5)
        self.assertEqual(cdf, sorted(cdf))
        self.assertLess(cdf[-1], 1)
