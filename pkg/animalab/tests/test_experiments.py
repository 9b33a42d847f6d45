from django.test import SimpleTestCase

from fractions import Fraction
import json
import os
import tempfile

from animalab import exceptions, hardcode
from animalab.core import AdmissibleSet, Animal
from animalab.experiments import (
    EXPERIMENTS, ExperimentConfig, Tally, _checkpoints, animal_label,
    experiment, layers_label, mean_row, parse_animal_label, probability_row,
    run_trials)
from animalab.kernels import cherry_probs, pinching_cdf
from animalab.utils import fixture_path, load_json


def run(name, trials=2000, **kwargs):
    return experiment(ExperimentConfig(name=name, trials=trials, **kwargs))


class ConfigTests(SimpleTestCase):
    def test_allocation(self):
        config = ExperimentConfig(name='exit', trials=10, streams=4)
        self.assertEqual(config.allocation(), [3, 3, 2, 2])
        self.assertEqual(
            ExperimentConfig(name='exit', trials=3, streams=4).allocation(),
            [1, 1, 1, 0])

    def test_json(self):
        config = ExperimentConfig(name='cherry', params={'A': [0, 2, 6]})
        self.assertEqual(config.params['A'], (0, 2, 6))
        data = json.loads(json.dumps(config.to_json()))
        self.assertEqual(ExperimentConfig.from_json(data), config)

    def test_param_sets(self):
        config = ExperimentConfig(name='futurinf', params={'C': 4})
        self.assertEqual(config.param_set('C', (2,)), AdmissibleSet([4]))
        self.assertEqual(config.param_set('D', (0, 2)), (0, 2))

    def test_errors(self):
        with self.assertRaises(exceptions.UnknownExperiment):
            ExperimentConfig(name='nope')
        with self.assertRaises(exceptions.DomainError):
            ExperimentConfig(name='exit', trials=0)
        with self.assertRaises(exceptions.DomainError):
            ExperimentConfig(name='exit', radius=-1)
        with self.assertRaises(exceptions.DomainError):
            ExperimentConfig(name='exit', fmt='xml')

    def test_registry(self):
        for name in ('exit', 'width', 'ball', 'cutcolumn', 'martingale',
                     'extreme', 'cherry', 'futurinf', 'sausaging',
                     'general_source', 'local_limit', 'transience',
                     'height', 'undershoot', 'excursion_law'):
            self.assertIn(name, EXPERIMENTS)


class TallyTests(SimpleTestCase):
    def test_merge(self):
        first, second = Tally(), Tally()
        first.trials, second.trials = 2, 3
        first.hit('a')
        second.hit('a', 2)
        second.hit('b')
        first.add('x', 1.0)
        second.add('x', 3.0)
        first.bump('h', 1)
        second.bump('h', 1)
        first.record('T', 4)
        second.record('T', 7)
        second.errors.append('stream 1: gave up')
        total = Tally(json.loads(json.dumps(first.to_json())))
        total.merge(Tally(second.to_json()))
        self.assertEqual(total.trials, 5)
        self.assertEqual(total.counts, {'a': 3, 'b': 1})
        self.assertEqual(total.sums['x'], [2, 4.0, 10.0])
        self.assertEqual(total.hist['h'], {'1': 2})
        self.assertEqual(total.series['T'], [4, 7])
        self.assertEqual(total.errors, ['stream 1: gave up'])


class RowTests(SimpleTestCase):
    def test_probability_row(self):
        row = probability_row('exit', 'hit', 60, 100, Fraction(1, 2))
        self.assertEqual((row.exact_num, row.exact_den), (1, 2))
        self.assertAlmostEqual(row.empirical, 0.6)
        self.assertAlmostEqual(row.stderr, 0.05)
        self.assertAlmostEqual(row.z, 2.0)
        free = probability_row('exit', 'hit', 1, 4)
        self.assertIsNone(free.z)
        self.assertIsNone(free.exact_num)

    def test_mean_row(self):
        row = mean_row('m', 'x', [4, 4.0, 6.0], Fraction(1))
        self.assertAlmostEqual(row.empirical, 1.0)
        self.assertAlmostEqual(row.stderr, (2 / 3 / 4) ** 0.5)
        self.assertAlmostEqual(row.z, 0.0)

    def test_labels(self):
        animal = Animal([(0, 0), (-1, 1), (1, 1), (0, 2)])
        self.assertEqual(animal_label(animal), '0,0;-1,1;1,1;0,2')
        self.assertEqual(parse_animal_label(animal_label(animal)), animal)
        self.assertEqual(layers_label([(0, 2), (-1, 3)]), '0,2|-1,3')


class ExperimentTests(SimpleTestCase):
    def assertCalibrated(self, report, bound=5):
        self.assertTrue(report.rows)
        self.assertLess(report.max_abs_z(), bound, report.to_csv())

    def test_exit(self):
        report = run('exit', params={'x': 3, 'y': 2})
        self.assertEqual(report.row('exit_low').exact_den, 2)
        self.assertCalibrated(report)

    def test_width(self):
        report = run('width', params={'kmax': 4})
        self.assertEqual([row.event for row in report.rows],
                         ['W>=1', 'W>=2', 'W>=3', 'W>=4'])
        self.assertCalibrated(report)

    def test_ball(self):
        report = run('ball', model=hardcode.kernel_uip, radius=1)
        self.assertEqual(len(report.rows), 3)
        self.assertEqual(report.notes['exact_mass_observed'], 1)
        self.assertCalibrated(report)
        report = run('ball', model=hardcode.model_bluered, radius=2,
                     trials=1000)
        self.assertCalibrated(report)

    def test_cutcolumn(self):
        report = run('cutcolumn', radius=1, trials=1000)
        self.assertEqual(report.row('no_red_0').exact_den, 2)
        self.assertCalibrated(report)

    def test_cherry(self):
        report = run('cherry', params={'A': (0, 2, 4)})
        self.assertEqual(report.notes['closed_form'],
                         cherry_probs(2, 2)._asdict())
        self.assertEqual(report.row('both').exact_num, 4)
        self.assertCalibrated(report)

    def test_extreme(self):
        report = run('extreme')
        self.assertEqual(Fraction(report.row('both').exact_num,
                                  report.row('both').exact_den),
                         Fraction(4, 9))
        self.assertCalibrated(report)

    def test_future_infimum(self):
        report = run('futurinf', height=20, params={'C': 2, 'b': 1})
        unbiased = report.row('rao_blackwell')
        self.assertEqual((unbiased.exact_num, unbiased.exact_den), (1, 2))
        self.assertLess(abs(unbiased.z), 5)
        self.assertGreaterEqual(report.row('proxy').empirical,
                                unbiased.empirical)

    def test_martingale(self):
        report = run('martingale', trials=500, height=10)
        self.assertEqual(report.row('centered_spread').exact_num, 0)
        self.assertCalibrated(report)

    def test_undershoot(self):
        report = run('undershoot', trials=200, params={'steps': 200})
        self.assertGreater(report.notes['p_value'], 1e-4)
        self.assertCalibrated(report)

    def test_excursion_law(self):
        report = run('excursion_law', params={'kmax': 4})
        self.assertEqual(report.row('size=1').exact_den, 3)
        self.assertCalibrated(report)

    def test_general_source(self):
        report = run('general_source', trials=1000,
                     params={'D': (0, 2), 'h': 1, 'sizes': 5})
        self.assertCalibrated(report)
        self.assertIn(5, report.notes['tv_uniform_vs_kernel'])

    def test_local_limit(self):
        report = run('local_limit', trials=10000, size=200, radius=1)
        self.assertEqual(report.notes['size'], 200)
        self.assertLess(report.notes['tv_finite'], 0.002)
        # sampling noise on three cells at 10^4 draws
        self.assertLess(abs(report.notes['tv'] - report.notes['tv_finite']),
                        0.03)
        self.assertCalibrated(report)

    def test_transience(self):
        report = run('transience', trials=200, height=1000)
        self.assertGreaterEqual(report.row('min_grew').empirical, 0.9)

    def test_exploratory(self):
        report = run('transience', trials=100, height=20)
        self.assertEqual(report.rows[0].event, 'min_grew')
        report = run('height', trials=200,
                     params={'max_length': 1000, 'hmax': 8})
        self.assertEqual([row.event for row in report.rows],
                         ['H>=1', 'H>=2', 'H>=4', 'H>=8'])

    def test_sausaging(self):
        exact = pinching_cdf(2)
        with tempfile.TemporaryDirectory() as tmp:
            fixture = os.path.join(tmp, 'sausaging.json')
            config = dict(trials=1000, height=5, params={'fixture': fixture})
            report = run('sausaging', calibrate=True, **config)
            self.assertEqual(report.notes['fixture_written'], fixture)
            data = load_json(fixture)
            self.assertTrue(data['calibrated'])
            self.assertEqual(
                data['command'], hardcode.sausaging_calibration % (
                    1000, 5, hardcode.default_seed, hardcode.default_streams))
            self.assertEqual(data['floors'], {'1': '2/3', '2': '7/9'})
            self.assertEqual(set(data['thresholds']), {'1', '2', '3', '5'})
            again = run('sausaging', **config)
            self.assertTrue(all(again.notes['above_fixture'].values()))
        row = report.row('T<=2')
        self.assertEqual(Fraction(row.exact_num, row.exact_den), exact[1])
        self.assertIsNone(report.row('T<=5').exact_num)
        self.assertTrue(report.notes['nondecreasing'])
        self.assertLess(abs(report.row('T<=1').z), 5)

    def test_shipped_fixture(self):
        report = run('sausaging', trials=500, height=2)
        self.assertEqual(report.notes['fixture']['floors'],
                         {'1': '2/3', '2': '7/9'})
        self.assertEqual(set(report.notes['above_fixture']), {'1', '2'})

    def test_shipped_fixture_records_its_config(self):
        fixture = load_json(fixture_path(hardcode.default_sausaging_fixture))
        config = fixture['config']
        self.assertEqual((config['trials'], config['height']), (10000, 10000))
        self.assertEqual(fixture['command'], hardcode.sausaging_calibration % (
            config['trials'], config['height'], config['seed'],
            config['streams']))
        self.assertEqual(set(fixture['thresholds']),
                         {str(h) for h in _checkpoints(config['height'])})
        self.assertTrue({'100', '1000', '10000'} <= set(fixture['thresholds']))
        floor = Fraction(fixture['floors']['2'])
        for h, threshold in fixture['thresholds'].items():
            if int(h) >= 2:
                self.assertGreaterEqual(Fraction(threshold), floor, h)
                self.assertLessEqual(Fraction(threshold), 1, h)


class ReproducibilityTests(SimpleTestCase):
    def test_same_seed_same_report(self):
        first = run('ball', trials=500, radius=2, seed=7)
        second = run('ball', trials=500, radius=2, seed=7)
        self.assertEqual(first.to_csv(), second.to_csv())
        self.assertEqual(first.to_json(), second.to_json())

    def test_streams_are_independent_of_scheduling(self):
        config = ExperimentConfig(name='exit', trials=100, streams=2, seed=3)
        tally = run_trials(config, 1, 50)
        again = run_trials(config, 1, 50)
        self.assertEqual(tally.to_json(), again.to_json())
        self.assertEqual(tally.trials, 50)

    def test_output(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'exit.json')
            report = run('exit', trials=200, fmt=hardcode.report_json,
                         output=path)
            with open(path, encoding='utf-8') as f:
                self.assertEqual(f.read(), report.to_json())
        data = json.loads(report.to_json())
        self.assertEqual(data['experiment'], 'exit')
        self.assertEqual(set(data['rows'][0]), set(hardcode.report_columns))
        self.assertEqual(report.to_csv().splitlines()[0],
                         ','.join(hardcode.report_columns))
