import unittest

import numpy as np

import six

from sparsebound.dyadic import DyadicCube
from sparsebound.grid import GridFunction
from sparsebound.grid import InterpolationStencil
from sparsebound.grid import RANDOM_KINDS
from sparsebound.grid import constant
from sparsebound.grid import level_set_sum
from sparsebound.grid import level_sets
from sparsebound.grid import lorentz_norm
from sparsebound.grid import lp_average
from sparsebound.grid import random_test_function
from sparsebound.grid import translate_diff
from sparsebound.grid import translate_diff_periodic
from sparsebound.grid import unit_domain
from sparsebound.interfaces.exceptions import InvalidDimensionException
from sparsebound.interfaces.exceptions import InvalidExponentException
from sparsebound.interfaces.exceptions import InvalidValueException
from sparsebound.interfaces.exceptions import PreconditionException
from sparsebound.interfaces.exceptions import ResolutionException

from tests.helpers import standard_interface_tests as sit


def line(values):
    return GridFunction(unit_domain(1), values)


class GridFunctionTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_rejects_bad_shapes(self):
        domain = unit_domain(2)
        with self.assertRaises(InvalidValueException):
            GridFunction(domain, np.zeros((3, 3)))
        with self.assertRaises(InvalidValueException):
            GridFunction(domain, np.zeros((4, 8)))
        with self.assertRaises(InvalidDimensionException):
            GridFunction(domain, np.zeros(8))
        with self.assertRaises(InvalidValueException):
            GridFunction(domain, np.full((2, 2), np.nan))

    def test_nonneg_flag(self):
        with self.assertRaises(PreconditionException):
            GridFunction(unit_domain(1), [1.0, -1.0], nonneg=True)
        self.assertTrue(line([0.0, 2.0]).nonneg)
        self.assertFalse(line([0.0, -2.0]).nonneg)

    def test_values_are_read_only(self):
        f = constant(unit_domain(1), 4, 2.0)
        with self.assertRaises(ValueError):
            f.values[0] = 3.0

    def test_arithmetic_and_integral(self):
        domain = unit_domain(2)
        f = constant(domain, 8, 2.0)
        g = constant(domain, 8, 0.5)
        self.assertAlmostEqual(f.integral(), 2.0)
        self.assertAlmostEqual((f + g).integral(), 2.5)
        self.assertAlmostEqual((f - g).integral(), 1.5)
        self.assertAlmostEqual((3 * f).integral(), 6.0)
        self.assertAlmostEqual(f.inner(g), 1.0)
        self.assertAlmostEqual((-f).abs().integral(), 2.0)
        with self.assertRaises(InvalidValueException):
            f + constant(domain, 4, 1.0)
        with self.assertRaises(InvalidDimensionException):
            f + constant(unit_domain(1), 8, 1.0)

    def test_cube_slices(self):
        f = constant(unit_domain(1), 8)
        right = DyadicCube(1, 1, -1, (1,))
        self.assertEqual(f.cube_slices(right), (slice(4, 8),))
        self.assertEqual(int(f.cube_mask(right).sum()), 4)
        self.assertAlmostEqual(f.restrict(right).integral(), 0.5)

    def test_cube_below_cell_size(self):
        f = constant(unit_domain(1), 8)
        with self.assertRaises(ResolutionException):
            f.cube_slices(DyadicCube(1, 1, -4, (0,)))

    def test_cube_outside_domain(self):
        f = constant(unit_domain(1), 8)
        with self.assertRaises(InvalidValueException):
            f.cube_slices(DyadicCube(1, 1, -1, (2,)))
        with self.assertRaises(InvalidDimensionException):
            f.cube_slices(unit_domain(2))

    def test_shift_moves_by_whole_cells(self):
        values = np.zeros(8)
        values[2] = 1.0
        shifted = line(values).shift([1.0 / 8])
        expected = np.zeros(8)
        expected[3] = 1.0
        np.testing.assert_allclose(shifted.values, expected, atol=1e-12)

    def test_shift_interpolates_half_cells(self):
        values = np.zeros(8)
        values[2] = 1.0
        shifted = line(values).shift([1.0 / 16])
        np.testing.assert_allclose(shifted.values[2:4], [0.5, 0.5],
                                   atol=1e-12)

    def test_evaluate_at_midpoints(self):
        f = random_test_function(unit_domain(2), 8, 3, 'uniform')
        points = f.mesh().reshape(2, -1).T
        np.testing.assert_allclose(f.evaluate(points), f.values.ravel(),
                                   atol=1e-12)
        # zero extension outside the domain
        self.assertEqual(float(f.evaluate([[2.0, 2.0]])[0]), 0.0)

    def test_stencil_scatter_is_transpose_of_gather(self):
        f = random_test_function(unit_domain(2), 8, 5, 'uniform')
        rng = np.random.default_rng(11)
        points = rng.uniform(-0.1, 1.1, size=(40, 2))
        stencil = InterpolationStencil(f, points)
        np.testing.assert_allclose(stencil.gather(f.values),
                                   f.evaluate(points), atol=1e-12)
        c = rng.normal(size=40)
        lhs = np.dot(stencil.gather(f.values), c)
        rhs = np.dot(f.values.ravel(), stencil.scatter(c))
        self.assertAlmostEqual(lhs, rhs, places=10)

    def test_refine_keeps_integral(self):
        f = random_test_function(unit_domain(2), 8, 1, 'uniform')
        fine = f.refine()
        self.assertEqual(fine.n, 16)
        self.assertAlmostEqual(fine.integral(), f.integral())
        with self.assertRaises(InvalidValueException):
            f.refine(3)

    def test_dilate_identity(self):
        f = random_test_function(unit_domain(1), 16, 2, 'uniform')
        np.testing.assert_allclose(f.dilate(1.0).values, f.values,
                                   atol=1e-12)
        with self.assertRaises(InvalidValueException):
            f.dilate(0)

    def test_lp_norm(self):
        f = line([3.0, 0.0, 0.0, 0.0])
        self.assertAlmostEqual(f.lp_norm(1), 0.75)
        self.assertAlmostEqual(f.lp_norm(2), 1.5)
        self.assertAlmostEqual(f.lp_norm(float('inf')), 3.0)
        self.assertEqual(f.lp_norm(1, margin=0.2), 0.0)
        with self.assertRaises(InvalidExponentException):
            f.lp_norm(0)

    def test_block_averages(self):
        f = line([1.0, 3.0, 2.0, 2.0])
        np.testing.assert_allclose(f.block_averages(1), [2.0, 2.0])
        np.testing.assert_allclose(f.block_averages(1, float('inf')),
                                   [3.0, 2.0])
        np.testing.assert_allclose(f.block_averages(0, 2.0),
                                   [np.sqrt(18.0 / 4)])
        with self.assertRaises(ResolutionException):
            f.block_averages(3)

    def test_json_and_csv(self):
        f = random_test_function(unit_domain(2), 4, 9, 'uniform')
        back = GridFunction.from_json(f.to_json())
        self.assertEqual(back.domain, f.domain)
        np.testing.assert_array_equal(back.values, f.values)
        stream = six.StringIO()
        f.to_csv(stream)
        rows = stream.getvalue().strip().splitlines()
        self.assertEqual(rows[0], "i0,i1,x0,x1,value")
        self.assertEqual(len(rows), 17)
        sit.check_repr(self, f, "n=4")


class AverageTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_lp_average_of_constant(self):
        f = constant(unit_domain(2), 8, 3.0)
        cube = DyadicCube(2, 1, -1, (0, 1))
        for t in (0.5, 1.0, 2.0, float('inf')):
            self.assertAlmostEqual(lp_average(f, cube, t), 3.0)
        with self.assertRaises(InvalidExponentException):
            lp_average(f, cube, 0)

    def test_lp_average_increases_with_t(self):
        f = random_test_function(unit_domain(1), 64, 4, 'uniform')
        cube = unit_domain(1)
        values = [lp_average(f, cube, t) for t in (1.0, 2.0, 4.0)]
        self.assertTrue(values[0] <= values[1] <= values[2])

    def test_translate_diff(self):
        f = constant(unit_domain(1), 8)
        diff = translate_diff(f, [1.0 / 8])
        expected = np.zeros(8)
        expected[0] = 1.0
        np.testing.assert_allclose(diff.values, expected, atol=1e-12)
        self.assertFalse(np.any(translate_diff(f, [0.0]).values))
        with self.assertRaises(InvalidDimensionException):
            translate_diff(f, [0.1, 0.1])

    def test_periodic_translate_diff_of_constant_vanishes(self):
        f = constant(unit_domain(1), 16, 2.0)
        np.testing.assert_allclose(
            translate_diff_periodic(f, 0.3).values, 0.0, atol=1e-12)
        with self.assertRaises(InvalidDimensionException):
            translate_diff_periodic(constant(unit_domain(2), 4), 0.1)


class LevelSetTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    VALUES = [0.0, 1.0, 1.5, 2.0, 3.0, 4.5, 0.25, 8.0]

    def test_dyadic_level_sets(self):
        f = line(self.VALUES)
        sets = level_sets(f)
        self.assertEqual(sets.exponents, [-2, 0, 1, 2, 3])
        np.testing.assert_array_equal(np.nonzero(sets.mask(1))[0], [3, 4])
        positive = f.values > 0
        lower = sets.lower_envelope()
        upper = sets.upper_envelope()
        self.assertTrue(np.all(lower[positive] <= f.values[positive]))
        self.assertTrue(np.all(f.values[positive] < upper[positive]))
        self.assertEqual(sets.residual_mass, 0.0)
        self.assertEqual(sets.indicator(3).integral(), 1.0 / 8)

    def test_truncated_level_sets_report_residual(self):
        sets = level_sets(line(self.VALUES), m_min=0)
        self.assertNotIn(-2, sets.exponents)
        self.assertAlmostEqual(sets.residual_mass, 0.25 / 8)

    def test_level_sets_need_nonnegative_input(self):
        with self.assertRaises(PreconditionException):
            level_sets(line([1.0, -1.0]))
        self.assertEqual(len(level_sets(line([0.0, 0.0]))), 0)

    def test_lorentz_norm_of_indicator(self):
        f = line([1.0, 1.0, 0, 0, 0, 0, 0, 0])
        cube = unit_domain(1)
        self.assertAlmostEqual(lorentz_norm(f, cube, 2), 0.5)
        self.assertAlmostEqual(lorentz_norm(f, cube, 1), 0.25)
        # indicators have a single level set, so both sides agree
        self.assertAlmostEqual(level_set_sum(f, cube, 2), 0.5)
        with self.assertRaises(InvalidExponentException):
            lorentz_norm(f, cube, 0.5)

    def test_lorentz_norm_with_r_one_is_the_average(self):
        f = random_test_function(unit_domain(1), 32, 8, 'uniform')
        cube = unit_domain(1)
        self.assertAlmostEqual(lorentz_norm(f, cube, 1),
                               lp_average(f, cube, 1))


class RandomFunctionTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_seeded_inputs_repeat(self):
        domain = unit_domain(2)
        for kind in RANDOM_KINDS:
            a = random_test_function(domain, 16, 42, kind)
            b = random_test_function(domain, 16, 42, kind)
            np.testing.assert_array_equal(a.values, b.values)
            self.assertTrue(a.nonneg)
            self.assertEqual(a.meta['kind'], kind)

    def test_indicator_respects_margin(self):
        f = random_test_function(unit_domain(1), 64, 3,
                                 'indicator-union-of-cubes', margin=0.25)
        self.assertFalse(np.any(f.values[:16]))
        self.assertFalse(np.any(f.values[48:]))
        self.assertTrue(np.any(f.values))

    def test_spike_mass(self):
        f = random_test_function(unit_domain(2), 16, 1, 'spike', mass=2.0)
        self.assertAlmostEqual(f.integral(), 2.0)
        self.assertEqual(int(np.count_nonzero(f.values)), 1)

    def test_unknown_kind(self):
        with self.assertRaises(InvalidValueException):
            random_test_function(unit_domain(1), 16, 1, 'cantor')
        with self.assertRaises(InvalidValueException):
            random_test_function(unit_domain(1), 12, 1, 'uniform')
