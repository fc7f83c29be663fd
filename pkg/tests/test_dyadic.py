import itertools
import unittest
from fractions import Fraction

from sparsebound.dyadic import BASE_LATTICE
from sparsebound.dyadic import Box
from sparsebound.dyadic import DyadicCube
from sparsebound.dyadic import cover_region
from sparsebound.dyadic import enlarged_cover
from sparsebound.dyadic import lattice_id_of
from sparsebound.dyadic import residue_of
from sparsebound.dyadic import shifted_lattices
from sparsebound.dyadic import sorted_cubes
from sparsebound.grid import unit_domain
from sparsebound.interfaces.exceptions import InvalidDimensionException
from sparsebound.interfaces.exceptions import InvalidValueException

from tests.helpers import standard_interface_tests as sit


class DyadicCubeTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_children_partition_parent(self):
        for dim in (1, 2, 3):
            sit.check_child_partition(self, unit_domain(dim))
        sit.check_child_partition(self, DyadicCube(2, 1, -2, (1, 3)))

    def test_descendants_count_and_volume(self):
        cube = unit_domain(2)
        cubes = cube.descendants(2)
        self.assertEqual(len(cubes), 16)
        self.assertEqual(sum(c.box().volume for c in cubes), Fraction(1))
        self.assertTrue(all(c.generation == -2 for c in cubes))
        with self.assertRaises(InvalidValueException):
            cube.descendants(-1)

    def test_side_and_bounds(self):
        cube = DyadicCube(2, 1, -1, (1, 0))
        self.assertAlmostEqual(cube.side, 0.5)
        self.assertAlmostEqual(cube.volume, 0.25)
        self.assertEqual(cube.lower(), [0.5, 0.0])
        self.assertEqual(cube.upper(), [1.0, 0.5])
        self.assertEqual(cube.center(), [0.75, 0.25])

    def test_base_lattice_side_is_a_third(self):
        cube = DyadicCube(1, BASE_LATTICE, 0, (2,))
        self.assertEqual(cube.side_units, Fraction(1, 3))
        self.assertEqual(cube.box(), Box([Fraction(2, 3)], [Fraction(1)]))
        self.assertIsNone(cube.residue)

    def test_fundamental_side_scales_coordinates(self):
        cube = DyadicCube(1, 1, -1, (1,), fundamental_side=4.0)
        self.assertEqual(cube.lower(), [2.0])
        self.assertEqual(cube.upper(), [4.0])
        self.assertTrue(cube.contains_point([3.9]))
        self.assertFalse(cube.contains_point([4.0]))

    def test_third_is_concentric(self):
        # residue (1, 0) shifts the first axis by 1/3
        lattice_id = lattice_id_of((1, 0))
        cube = DyadicCube(2, lattice_id, 0, (0, 0))
        self.assertEqual(cube.box(), Box([Fraction(1, 3), 0],
                                         [Fraction(4, 3), 1]))
        third = cube.third()
        self.assertEqual(third.lattice_id, BASE_LATTICE)
        self.assertEqual(third.corner, (2, 1))
        for a, b in zip(third.center(), cube.center()):
            self.assertAlmostEqual(a, b)
        self.assertEqual(third.tripled_box(), cube.box())

    def test_third_rejects_base_cubes(self):
        with self.assertRaises(InvalidValueException):
            DyadicCube(1, BASE_LATTICE, 0, (0,)).third()

    def test_half_is_concentric(self):
        cube = unit_domain(2)
        self.assertEqual(cube.half(), Box([Fraction(1, 4)] * 2,
                                          [Fraction(3, 4)] * 2))

    def test_subcube_enumeration_tiles_tripled_cube(self):
        cube = DyadicCube(2, 1, -1, (1, 1))
        cubes = cube.subcube_enumeration()
        self.assertEqual(len(cubes), 9)
        self.assertEqual(cubes[0].corner, (0, 0))
        self.assertEqual(cubes[4], cube)
        self.assertEqual(sum(c.box().volume for c in cubes),
                         cube.tripled_box().volume)
        self.assertTrue(all(cube.tripled_box().contains_box(c.box())
                            for c in cubes))

    def test_parent_of_shifted_top_cube_is_undefined(self):
        cube = DyadicCube(1, lattice_id_of((1,)), 0, (0,))
        with self.assertRaises(InvalidValueException):
            cube.parent()
        # the unshifted lattice keeps nesting above the top generation
        self.assertEqual(unit_domain(1).parent().generation, 1)

    def test_invalid_cubes(self):
        with self.assertRaises(InvalidDimensionException):
            DyadicCube(0, 1, 0, ())
        with self.assertRaises(InvalidDimensionException):
            DyadicCube(2, 1, 0, (0,))
        with self.assertRaises(InvalidValueException):
            DyadicCube(1, 4, 0, (0,))
        with self.assertRaises(InvalidValueException):
            DyadicCube(1, 1, 0, (0,), fundamental_side=0)

    def test_sort_order_is_coarse_first(self):
        fine = DyadicCube(1, 1, -2, (0,))
        coarse = DyadicCube(1, 1, -1, (1,))
        root = unit_domain(1)
        self.assertEqual(sorted_cubes([fine, coarse, root]),
                         [root, coarse, fine])
        self.assertTrue(coarse < fine)

    def test_json_and_repr(self):
        cube = DyadicCube(2, 5, -3, (4, -1), fundamental_side=2.0,
                          top_generation=1)
        sit.check_json(self, cube, DyadicCube)
        sit.check_repr(self, cube, (4, -1))
        self.assertEqual(len({cube, DyadicCube.from_json(cube.to_json())}), 1)


class ShiftedLatticeTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_residues(self):
        self.assertEqual(residue_of(2, 1), (0, 0))
        self.assertEqual(residue_of(2, 9), (2, 2))
        self.assertEqual(residue_of(2, 4), (1, 0))
        for dim in (1, 2, 3):
            for lattice_id in range(1, 3 ** dim + 1):
                self.assertEqual(lattice_id_of(residue_of(dim, lattice_id)),
                                 lattice_id)
        with self.assertRaises(InvalidValueException):
            residue_of(2, 0)
        with self.assertRaises(InvalidValueException):
            residue_of(1, 4)

    def test_family_size(self):
        for dim in (1, 2, 3):
            self.assertEqual(len(shifted_lattices(dim)), 3 ** dim)
        with self.assertRaises(InvalidDimensionException):
            shifted_lattices(0)

    def test_tripled_base_cubes_are_lattice_cubes(self):
        for dim in (1, 2):
            family = shifted_lattices(dim)
            for generation in (0, -1, -2):
                for corner in itertools.product(range(-2, 5), repeat=dim):
                    base = family.base_cube(generation, corner)
                    cube = family.assign(base)
                    self.assertNotEqual(cube.lattice_id, BASE_LATTICE)
                    self.assertEqual(cube.generation, generation)
                    self.assertEqual(cube.box(), base.tripled_box())
                    self.assertEqual(cube.third(), base)

    def test_exactly_one_lattice_holds_a_tripled_cube(self):
        family = shifted_lattices(2)
        base = family.base_cube(0, (2, 1))
        found = family.lattices_containing(base.tripled_box())
        self.assertEqual(found, [lattice_id_of((1, 0))])
        self.assertEqual(family.lattices_containing(
            Box([0, 0], [1, Fraction(1, 2)])), [])

    def test_assign_checks_lattice_and_generation(self):
        family = shifted_lattices(1)
        with self.assertRaises(InvalidValueException):
            family.assign(unit_domain(1))
        with self.assertRaises(InvalidValueException):
            family.assign(family.base_cube(1, (0,)))

    def test_locate(self):
        family = shifted_lattices(2)
        self.assertEqual(family.locate((0.5, 0.5), BASE_LATTICE, 0).corner,
                         (1, 1))
        cube = family.locate((0.7, 0.2), 1, -1)
        self.assertEqual(cube.corner, (1, 0))
        self.assertTrue(cube.contains_point((0.7, 0.2)))
        with self.assertRaises(InvalidDimensionException):
            family.locate((0.5,), 1, 0)

    def test_repr(self):
        sit.check_repr(self, shifted_lattices(2), "9 lattices")


class CoverTestCase(unittest.TestCase):

    _multiprocess_can_split_ = True

    def test_enlarged_cover_one_dimension(self):
        cube = unit_domain(1)
        left, right = cube.children()
        self.assertEqual(enlarged_cover(cube, 1), [left])
        self.assertEqual(enlarged_cover(cube, 2), [left, right])
        self.assertEqual(enlarged_cover(cube, 3), [right])
        for j in (0, 4):
            with self.assertRaises(InvalidValueException):
                enlarged_cover(cube, j)

    def test_enlarged_cover_contains_target(self):
        cube = DyadicCube(2, 1, -1, (0, 1))
        targets = cube.third().subcube_enumeration()
        for j in range(1, 10):
            cover = enlarged_cover(cube, j)
            self.assertTrue(cover)
            target = targets[j - 1].box()
            covered = sum(c.box().intersect(target).volume for c in cover)
            self.assertEqual(covered, target.volume)

    def test_cover_region_disjoint_box(self):
        cube = unit_domain(2)
        self.assertEqual(cover_region(cube, Box([2, 2], [3, 3])), [])
        # touching the boundary only is a null set
        self.assertEqual(cover_region(cube, Box([1, 0], [2, 1])), [])
