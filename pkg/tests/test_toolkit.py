import json
import logging
import os

import numpy as np

from sparsebound.dyadic import DyadicCube
from sparsebound.exponents import ExponentTriple
from sparsebound.factory import FamilyList
from sparsebound.factory import MeasureFamilyFactory
from sparsebound.grid import GridFunction
from sparsebound.interfaces.exceptions import InvalidConfigurationException
from sparsebound.interfaces.exceptions import InvalidParametersException
from sparsebound.interfaces.exceptions import InvalidValueException
from sparsebound.measures import DiscreteMeasure
from sparsebound.measures import NORMALIZED_DIAMETER
from sparsebound.verify import SPARSE_TRIPLE

from tests import helpers
from tests.helpers import ToolkitTestBase
from tests.helpers import standard_interface_tests as sit


SERVICES = ['grid', 'measures', 'operators', 'sparse', 'exponents', 'verify']


def center_value(phi):
    return float(phi.values[(phi.n // 2,) * phi.dim])


class ToolkitConfigTestCase(ToolkitTestBase):

    _multiprocess_can_split_ = True

    def test_services_present(self):
        for service in SERVICES:
            self.assertTrue(self.toolkit.has_service(service),
                            "Toolkit should provide %s" % service)
        self.assertFalse(self.toolkit.has_service('storage.buckets'))

    def test_service_event_patterns(self):
        # pylint:disable=protected-access
        self.assertEqual(self.toolkit.operators._service_event_pattern,
                         "toolkit.operators")
        self.assertEqual(self.toolkit.verify._service_event_pattern,
                         "toolkit.verify")

    def test_config_values(self):
        config = self.toolkit.config
        self.assertEqual(config.sup_samples, 5)
        self.assertEqual(config.j_range, (-4, -2))
        self.assertEqual(config.default_seed, 7)
        self.assertFalse(config.debug_mode)
        sit.check_repr(self, self.toolkit, self.toolkit.FAMILY_ID)

    def test_string_config_values_are_coerced(self):
        clone = self.toolkit.clone(grid_n='16', scale_t='0.25')
        self.assertEqual(clone.config.grid_n, 16)
        self.assertEqual(clone.config.scale_t, 0.25)
        bad = self.toolkit.clone(grid_n='many')
        with self.assertRaises(InvalidConfigurationException):
            bad.config.grid_n
        swapped = self.toolkit.clone(j_min=0, j_max=-3)
        with self.assertRaises(InvalidConfigurationException):
            swapped.config.j_range

    def test_clone_keeps_family(self):
        clone = self.toolkit.clone(default_seed=11)
        self.assertIsInstance(clone, type(self.toolkit))
        self.assertEqual(clone.config.default_seed, 11)
        self.assertEqual(self.toolkit.config.default_seed, 7)
        self.assertEqual(clone.dim, self.toolkit.dim)

    def test_debug_middleware(self):
        debug = self.toolkit.clone(sb_debug='yes')
        self.assertTrue(debug.config.debug_mode)
        with self.assertLogs('sparsebound.base.middleware',
                             level=logging.DEBUG) as cm:
            debug.exponents.decay_thresholds()
        self.assertTrue(any('toolkit.exponents.decay_thresholds' in line
                            for line in cm.output))


class ToolkitMeasureTestCase(ToolkitTestBase):

    _multiprocess_can_split_ = True

    def test_measure_is_normalized(self):
        measure = self.toolkit.measures.build()
        self.assertIsInstance(measure, DiscreteMeasure)
        self.assertIs(measure, self.toolkit.measure)
        self.assertEqual(measure.dim, self.toolkit.dim)
        self.assertLessEqual(measure.support_diam,
                             NORMALIZED_DIAMETER * (1 + 1e-9))
        raw = self.toolkit.measures.build(normalize=False)
        self.assertAlmostEqual(raw.total_mass, measure.total_mass)

    def test_fourier_decay_summary(self):
        slope, r2, envelope = self.toolkit.measures.fourier_decay(
            radii=(4, 8, 16))
        self.assertEqual(len(envelope), 3)
        self.assertTrue(np.isfinite(slope))


class ToolkitGridTestCase(ToolkitTestBase):

    _multiprocess_can_split_ = True

    def test_unit_domain_and_constants(self):
        domain = self.toolkit.grid.unit_domain()
        self.assertIsInstance(domain, DyadicCube)
        self.assertEqual(domain.dim, self.toolkit.dim)
        ones = self.toolkit.grid.constant(2.0, n=8)
        self.assertEqual(ones.values.shape, (8,) * self.toolkit.dim)
        self.assertAlmostEqual(
            self.toolkit.grid.average(ones, domain, 2.0), 2.0)

    def test_random_function_is_seeded(self):
        a = self.toolkit.grid.random_function(3, kind='uniform')
        b = self.toolkit.grid.random_function(3, kind='uniform')
        np.testing.assert_array_equal(a.values, b.values)
        self.assertEqual(a.n, self.toolkit.config.grid_n)

    def test_load_from_text(self):
        phi = self.toolkit.grid.random_function(kind='uniform', n=8)
        again = self.toolkit.grid.load(json.dumps(phi.to_json()))
        self.assertIsInstance(again, GridFunction)
        np.testing.assert_allclose(again.values, phi.values)


class ToolkitOperatorTestCase(ToolkitTestBase):

    _multiprocess_can_split_ = True

    def test_constant_inputs_average_to_mass(self):
        ones = self.toolkit.grid.constant()
        out = self.toolkit.operators.evaluate('single-scale', ones, ones,
                                              0.125)
        self.assertAlmostEqual(center_value(out),
                               self.toolkit.measure.total_mass, places=9)

    def test_unknown_operator_kind(self):
        ones = self.toolkit.grid.constant(n=8)
        with self.assertRaises(InvalidValueException):
            self.toolkit.operators.evaluate('spherical', ones, ones)
        with self.assertRaises(InvalidValueException):
            self.toolkit.operators.adjoint(3, ones, ones)

    def test_refinement_converges(self):
        f, g = helpers.seeded_inputs(self.toolkit.dim,
                                     self.toolkit.config.grid_n, 3,
                                     kinds=('uniform', 'uniform'))
        result = sit.check_refinement_converges(
            self, self.toolkit.operators, f, g, [1e-3, 1e-2, 1e9])
        self.assertGreaterEqual(result.sup_samples, 9)


class ToolkitExponentTestCase(ToolkitTestBase):

    _multiprocess_can_split_ = True

    def test_region_membership(self):
        exponents = self.toolkit.exponents
        self.assertTrue(exponents.contains('ips-bisphere', (1, 1, '3/2'),
                                           dim=2))
        self.assertFalse(exponents.contains('ips-bisphere', (1, 1, 3),
                                            dim=2))

    def test_admissibility(self):
        report = self.toolkit.exponents.admissibility(SPARSE_TRIPLE)
        self.assertTrue(report.theorem_hypotheses)
        bad = self.toolkit.exponents.admissibility(ExponentTriple(1, 1, 1))
        self.assertEqual(bad.failures(), ['r_gt_1'])

    def test_lacunary_region(self):
        reg = self.toolkit.exponents.lacunary_region()
        if self.toolkit.family.lacunary_region is None or \
                self.toolkit.dim < 2:
            self.assertIsNone(reg)
        else:
            self.assertTrue(reg.contains(ExponentTriple(0, 0, 0)))

    def test_decay_thresholds(self):
        thresholds = self.toolkit.exponents.decay_thresholds(2)
        self.assertAlmostEqual(float(thresholds.first), 8.0 / 3)


class ToolkitSparseTestCase(ToolkitTestBase):

    _multiprocess_can_split_ = True

    def setUp(self):
        n = 16
        self.f, self.g, self.h = helpers.seeded_inputs(self.toolkit.dim, n,
                                                       21)

    def test_sparse_family_for_admissible_triple(self):
        family = self.toolkit.sparse.build(self.f, self.g, self.h,
                                           SPARSE_TRIPLE)
        self.assertEqual(family.cubes[0], self.f.domain)
        report = self.toolkit.sparse.verify(family)
        self.assertTrue(report.passed, report.to_json())
        form = self.toolkit.sparse.form(family, self.f, self.g, self.h,
                                        SPARSE_TRIPLE)
        self.assertGreaterEqual(form, 0)

    def test_sparse_refuses_inadmissible_triple(self):
        with self.assertRaises(InvalidParametersException):
            self.toolkit.sparse.build(self.f, self.g, self.h, (1, 1, 1))

    def test_decompose(self):
        split = self.toolkit.sparse.decompose(self.h, 2)
        np.testing.assert_allclose(split.reconstruct().values,
                                   self.h.values, atol=1e-12)


class ToolkitVerifyTestCase(ToolkitTestBase):

    _multiprocess_can_split_ = True

    def test_setup_follows_config(self):
        setup = self.toolkit.verify.setup(grid_n=16)
        self.assertEqual(setup.grid_n, 16)
        self.assertEqual(setup.seed, 7)
        self.assertIs(setup.measure, self.toolkit.measure)

    def test_region_suite(self):
        reports = self.toolkit.verify.run_suite('regions', trials=1)
        self.assertTrue(all(r.passed for r in reports))

    def test_sparse_ratio_at_family_triple(self):
        small = self.toolkit.clone(grid_n=16)
        report = small.verify.sparse_ratio(trials=1)
        self.assertEqual(report.name, 'sparse-ratio')
        self.assertEqual(report.trials, 1)


class ToolkitFamilyTestCase(ToolkitTestBase):

    _multiprocess_can_split_ = True

    def test_config_value_lookup(self):
        # pylint:disable=protected-access
        self.assertEqual(self.toolkit._get_config_value('sup_samples', 99), 5)
        self.assertEqual(
            self.toolkit._get_config_value('no_such_setting', 'fallback'),
            'fallback')

    def test_custom_family_from_fixture(self):
        source = os.path.join(helpers.get_test_fixtures_folder(),
                              'circle_measure.json')
        custom = MeasureFamilyFactory().create_toolkit(
            FamilyList.CUSTOM, {'measure_source': source, 'grid_n': 16})
        self.assertEqual(custom.dim, 1)
        self.assertIsNone(custom.exponents.lacunary_region())

    def test_triangle_family_sparse_ratio(self):
        triangle = MeasureFamilyFactory().create_toolkit(
            FamilyList.TRIANGLE, {'n_nodes': 16, 'grid_n': 16, 'j_min': -3,
                                  'j_max': -2, 'sup_samples': 3})
        x = ExponentTriple(*triangle.family.sparse_triple)
        dominated = triangle.exponents.region('triangle-lac', intersect=True)
        self.assertTrue(dominated.contains(x, 'relative'))
        report = triangle.verify.sparse_ratio(trials=1)
        self.assertEqual(report.name, 'sparse-ratio')
        with self.assertRaises(InvalidParametersException):
            triangle.verify.sparse_ratio(SPARSE_TRIPLE, trials=1)

    @helpers.skipIfNoService(['operators'])
    @helpers.skipIfDimensionUnsupported([1])
    def test_adjoint_pairing_on_the_line(self):
        f, g, h = helpers.seeded_inputs(1, 64, 5)
        lhs = self.toolkit.operators.evaluate('single-scale', f, g,
                                              0.125).inner(h)
        rhs = self.toolkit.operators.adjoint(1, g, h, 0.125).inner(f)
        sit.check_duality(self, lhs, rhs)

    @helpers.skipIfNoService(['exponents'])
    @helpers.skipIfDimensionUnsupported([2])
    def test_planar_lacunary_region(self):
        reg = self.toolkit.exponents.lacunary_region()
        if self.toolkit.family.lacunary_region is None:
            self.assertIsNone(reg)
        else:
            self.assertIn(self.toolkit.family.lacunary_region, repr(reg))
