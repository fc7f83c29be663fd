import json
import math
import unittest

import numpy as np

import six

from sparsebound.grid import constant
from sparsebound.grid import unit_domain
from sparsebound.interfaces.exceptions import DegenerateInputException
from sparsebound.interfaces.exceptions import InvalidExperimentException
from sparsebound.interfaces.exceptions import InvalidParametersException
from sparsebound.interfaces.exceptions import InvalidValueException
from sparsebound.interfaces.exceptions import PreconditionException
from sparsebound.measures import bilinear_sphere_measure
from sparsebound.measures import normalize_support
from sparsebound.measures import predicted_decay
from sparsebound.operators import MultiplierProbe
from sparsebound.sparse import SparseCollection
from sparsebound.verify import DecayFit
from sparsebound.verify import ExperimentSetup
from sparsebound.verify import Report
from sparsebound.verify import SPARSE_TRIPLE
from sparsebound.verify import SUITE_NAMES
from sparsebound.verify import WeightVector
from sparsebound.verify import continuity_experiment
from sparsebound.verify import domination_experiment
from sparsebound.verify import duality_experiment
from sparsebound.verify import fourier_decay_experiment
from sparsebound.verify import level_set_experiment
from sparsebound.verify import lorentz_embedding_experiment
from sparsebound.verify import muckenhoupt_constant
from sparsebound.verify import run_suite
from sparsebound.verify import scaling_law_experiment
from sparsebound.verify import sparse_average_experiment
from sparsebound.verify import sparse_average_sweep
from sparsebound.verify import sparse_ratio_experiment
from sparsebound.verify import splitting_experiment
from sparsebound.verify import stopping_experiment
from sparsebound.verify import unit_average_experiment

from tests.helpers import standard_interface_tests as sit


def small_setup(grid_n=32, **kwargs):
    measure, _ = normalize_support(bilinear_sphere_measure(1, 16))
    params = dict(grid_n=grid_n, scale_t=0.125, sup_samples=3,
                  j_range=(-4, -3))
    params.update(kwargs)
    return ExperimentSetup(measure, **params)


class ReportTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_metrics_and_json(self):
        report = Report('probe', True, value=np.float64(1.5),
                        cells=np.arange(3), worst=float('inf'))
        self.assertEqual(report.value, 1.5)
        with self.assertRaises(AttributeError):
            report.missing
        data = json.loads(json.dumps(report.to_json()))
        self.assertEqual(data['name'], 'probe')
        self.assertEqual(data['cells'], [0, 1, 2])
        self.assertEqual(data['worst'], 'inf')
        sit.check_repr(self, report, 'passed=True')

    def test_decay_fit_verdict(self):
        fit = DecayFit('fit', [0.1, 0.05], [1.0, 0.5], 1.0, 0.99, True)
        self.assertTrue(fit.passed)
        self.assertFalse(DecayFit('fit', [0.1, 0.05], [1.0, 0.5], 1.0, 0.99,
                                  False).passed)
        self.assertFalse(DecayFit('fit', [0.1, 0.05], [1.0, 0.5], 1.0, 0.5,
                                  True).passed)


class OperatorExperimentTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def setUp(self):
        self.setup = small_setup()

    def test_unit_average(self):
        report = unit_average_experiment(self.setup)
        self.assertTrue(report.passed, report.to_json())

    def test_duality(self):
        report = duality_experiment(self.setup, trials=2)
        self.assertTrue(report.passed, report.to_json())

    def test_domination(self):
        report = domination_experiment(self.setup, generation=-2)
        self.assertTrue(report.passed, report.to_json())
        self.assertTrue(report.dominated)

    def test_threads_do_not_change_results(self):
        threaded = small_setup(threads=3)
        self.assertEqual(threaded.run_trials(lambda i: i * i, 5),
                         self.setup.run_trials(lambda i: i * i, 5))


class ScalingExperimentTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_normalized_scaling(self):
        setup = small_setup(grid_n=256)
        smooth = dict(width=0.02, center=setup.domain.center())
        f = setup.inputs(1, 'gaussian', **smooth)
        g = setup.inputs(2, 'gaussian', **smooth)
        report = scaling_law_experiment(setup, f, g, ('1/2', '1/2', '1/2'),
                                        [1.0, 2 ** 0.5, 2.0])
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.predicted, -0.5)

    def test_invalid_scaling(self):
        setup = small_setup()
        f = setup.inputs(1, 'gaussian')
        with self.assertRaises(InvalidExperimentException):
            scaling_law_experiment(setup, f, f, (1, 1, 1), [1.0, 1.0])
        with self.assertRaises(InvalidValueException):
            scaling_law_experiment(setup, f, f, (1, 1, 1), [1.0, 2.0],
                                   mode='raw')

    def test_continuity_decays(self):
        setup = small_setup(grid_n=256)
        fit = continuity_experiment(setup, 'single-scale', ('1/2', 0, '1/2'),
                                    [2 ** -4, 2 ** -5, 2 ** -6])
        self.assertIsInstance(fit, DecayFit)
        self.assertGreater(fit.fitted_eta, 0)
        self.assertEqual(fit.abscissae, [2 ** -4, 2 ** -5, 2 ** -6])

    def test_continuity_arguments(self):
        setup = small_setup()
        with self.assertRaises(PreconditionException):
            continuity_experiment(setup, 'single-scale', (1, 1, 1), [0.5])
        with self.assertRaises(InvalidValueException):
            continuity_experiment(setup, 'full', (1, 1, 1), [0.01, 0.02])
        with self.assertRaises(InvalidValueException):
            continuity_experiment(setup, 'single-scale', (1, 1, 1),
                                  [0.01, 0.02], which='third')


class SparseExperimentTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def setUp(self):
        self.setup = small_setup()

    def test_stopping(self):
        report = stopping_experiment(self.setup, SPARSE_TRIPLE, trials=3)
        self.assertTrue(report.passed, report.to_json())
        self.assertLessEqual(report.worst_measure, 0.5)

    def test_sparse_ratio_with_csv(self):
        stream = six.StringIO()
        report = sparse_ratio_experiment(self.setup, SPARSE_TRIPLE, trials=2,
                                         refine=False, csv_stream=stream)
        self.assertTrue(report.passed, report.to_json())
        self.assertTrue(report.sparsity_ok)
        self.assertTrue(math.isfinite(report.max_ratio))
        rows = stream.getvalue().strip().splitlines()
        self.assertEqual(rows[0], 'trial,seed,value')
        self.assertEqual(len(rows), 1 + 2 - report.skipped)

    def test_sparse_ratio_rejects_inadmissible_triples(self):
        with self.assertRaises(InvalidParametersException):
            sparse_ratio_experiment(self.setup, ('1/4', '1/2', '1/3'),
                                    trials=1)
        with self.assertRaises(InvalidParametersException):
            sparse_ratio_experiment(self.setup, (1, 1, 1), trials=1)

    def test_sparse_average(self):
        domain = unit_domain(1)
        family = SparseCollection(domain, 8, [domain], [[True] * 8])
        phi = constant(domain, 8, 3.0)
        report = sparse_average_experiment(family, phi, 1.0, 2.0)
        self.assertAlmostEqual(report.ratio, 1.0)
        self.assertTrue(report.passed)
        with self.assertRaises(PreconditionException):
            sparse_average_experiment(family, phi, 2.0, 2.0)

    def test_sparse_average_sweep(self):
        report = sparse_average_sweep(self.setup, trials=2)
        self.assertTrue(report.passed, report.to_json())
        self.assertLessEqual(len(report.ratios), 2)

    def test_embedding_reports(self):
        lorentz = lorentz_embedding_experiment(self.setup, 1.5, 2.0, trials=2)
        self.assertEqual(lorentz.name, 'lorentz-embedding')
        self.assertEqual(len(lorentz.ratios), 2)
        self.assertTrue(math.isfinite(lorentz.max_ratio))
        levels = level_set_experiment(self.setup, 1.5, trials=2)
        self.assertEqual(levels.name, 'level-set-sum')
        with self.assertRaises(PreconditionException):
            lorentz_embedding_experiment(self.setup, 2.0, 1.5)


class SpectralExperimentTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_fourier_decay_of_circle(self):
        report = fourier_decay_experiment(bilinear_sphere_measure(1, 1024),
                                          radii=(4, 8, 16, 32))
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.predicted, predicted_decay(1))
        self.assertEqual(len(report.envelope), 4)

    def test_splitting_identity_holds(self):
        ys = [2 ** -3, 2 ** -4, 2 ** -5]
        report = splitting_experiment(MultiplierProbe(2.0, 2.0), ys, n=256)
        self.assertEqual(report.name, 'splitting')
        self.assertLess(report.identity_residual, 1e-8)
        self.assertEqual(len(report.norms), 3)
        self.assertTrue(math.isfinite(report.fitted_eta))
        self.assertAlmostEqual(report.predicted,
                               MultiplierProbe(2.0, 2.0).predicted_exponent())


class WeightTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    P_VEC = (4, 4)
    R_VEC = (2, 2, 1.5)

    def test_constant_weights_give_one(self):
        domain = unit_domain(1)
        weights = WeightVector(constant(domain, 16, 2.0),
                               constant(domain, 16, 3.0),
                               self.P_VEC, self.R_VEC)
        self.assertAlmostEqual(weights.p, 2.0)
        self.assertAlmostEqual(weights.r_dual, 3.0)
        self.assertAlmostEqual(muckenhoupt_constant(weights), 1.0)
        self.assertAlmostEqual(muckenhoupt_constant(weights, [domain]), 1.0)

    def test_invalid_weights(self):
        domain = unit_domain(1)
        ones = constant(domain, 16)
        with self.assertRaises(DegenerateInputException):
            WeightVector(constant(domain, 16, 0.0), ones, self.P_VEC,
                         self.R_VEC)
        with self.assertRaises(InvalidValueException):
            WeightVector(ones * -1.0, ones, self.P_VEC, self.R_VEC)
        with self.assertRaises(InvalidParametersException):
            WeightVector(ones, ones, self.P_VEC, (4, 4, 4))
        with self.assertRaises(InvalidParametersException):
            WeightVector(ones, ones, self.P_VEC, (2, 2, 3))


class SuiteTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_suite_names(self):
        self.assertEqual(SUITE_NAMES[-1], 'all')
        self.assertIn('embeddings', SUITE_NAMES)
        with self.assertRaises(InvalidValueException):
            run_suite('everything', small_setup())

    def test_region_suite(self):
        reports = run_suite('regions', small_setup())
        self.assertEqual(len(reports), 1)
        suite = reports[0]
        self.assertTrue(suite.passed, suite.to_json())
        self.assertEqual(suite.to_json()['suite'], 'regions')
        sit.check_repr(self, suite, 'regions')
