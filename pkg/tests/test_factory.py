import unittest

from sparsebound import factory
from sparsebound import interfaces
from sparsebound.factory import MeasureFamilyFactory
from sparsebound.families.bisphere import BilinearSphereFamily
from sparsebound.families.bisphere import BilinearSphereToolkit
from sparsebound.families.triangle import TriangleToolkit
from sparsebound.interfaces.exceptions import UnsupportedDimensionException
from sparsebound.interfaces.toolkit import Toolkit
from sparsebound.measures import DiscreteMeasure

from tests import helpers


class MeasureFamilyFactoryTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_create_toolkit_valid(self):
        # Creating a toolkit with a known name should return
        # a valid implementation
        self.assertIsInstance(MeasureFamilyFactory().create_toolkit(
            factory.FamilyList.TRIANGLE, {}),
            interfaces.Toolkit,
            "create_toolkit did not return a valid toolkit")

    def test_create_toolkit_invalid(self):
        # Creating a toolkit with an invalid name should raise a
        # NotImplementedError
        with self.assertRaises(NotImplementedError):
            MeasureFamilyFactory().create_toolkit("trapezoid", {})

    def test_get_family_class_valid(self):
        self.assertEqual(MeasureFamilyFactory().get_family_class(
            factory.FamilyList.BISPHERE), BilinearSphereToolkit)

    def test_get_family_class_invalid(self):
        self.assertIsNone(MeasureFamilyFactory().get_family_class("sphere2"))

    def test_every_listed_family_is_discovered(self):
        families = MeasureFamilyFactory().list_families()
        for name in (factory.FamilyList.TRIANGLE, factory.FamilyList.BISPHERE,
                     factory.FamilyList.PRODUCT_SPHERE,
                     factory.FamilyList.CUSTOM):
            self.assertIn(name, families)
            self.assertIn('class', families[name])
            self.assertIn('family', families[name])

    def test_create_family(self):
        family = MeasureFamilyFactory().create_family(
            factory.FamilyList.BISPHERE)
        self.assertIsInstance(family, BilinearSphereFamily)
        self.assertEqual(family.id, 'bisphere')
        self.assertEqual(family, BilinearSphereFamily())
        self.assertIn('bisphere', repr(family))

    def test_create_measure_triangle(self):
        measure = MeasureFamilyFactory().create_measure(
            factory.FamilyList.TRIANGLE, 2, 16)
        self.assertIsInstance(measure, DiscreteMeasure)
        self.assertEqual(measure.dim, 2)

    def test_create_measure_unsupported_dimension(self):
        with self.assertRaises(UnsupportedDimensionException):
            MeasureFamilyFactory().create_measure(
                factory.FamilyList.TRIANGLE, 3, 16)
        # the exception also reads as the builtin
        with self.assertRaises(NotImplementedError):
            MeasureFamilyFactory().create_measure(
                factory.FamilyList.PRODUCT_SPHERE, 1, 16)

    def test_create_measure_custom(self):
        source = helpers.get_family_test_data('custom', 'measure_source')
        measure = MeasureFamilyFactory().create_measure(
            factory.FamilyList.CUSTOM, None, source=source)
        self.assertEqual(measure.dim, 1)

    def test_register_family_class_invalid(self):
        # Attempting to register an invalid test class should be ignored
        class DummyClass(object):
            FAMILY_ID = 'triangle'

        family_factory = MeasureFamilyFactory()
        family_factory.register_family_class(DummyClass)
        self.assertTrue(DummyClass not in
                        family_factory.get_all_family_classes())

    def test_register_family_class_double(self):
        # Attempting to register the same id twice should keep the second
        class DummyClass(Toolkit):
            FAMILY_ID = 'triangle'

        family_factory = MeasureFamilyFactory()
        family_factory.list_families()
        family_factory.register_family_class(DummyClass)
        self.assertTrue(DummyClass in
                        family_factory.get_all_family_classes())
        self.assertTrue(TriangleToolkit not in
                        family_factory.get_all_family_classes())

    def test_register_family_class_without_id(self):
        # Attempting to register a class without a FAMILY_ID attribute
        # should be ignored.
        class DummyClass(Toolkit):
            pass

        family_factory = MeasureFamilyFactory()
        family_factory.register_family_class(DummyClass)
        self.assertTrue(DummyClass not in
                        family_factory.get_all_family_classes())
