"""
Dyadic cubes, the 3^d shifted lattices and the cube covers used by the
sparse construction.

All geometry is exact. Cube boxes are computed with :class:`fractions.Fraction`
in units of the fundamental sidelength ``F`` and only converted to floats
when a grid needs coordinates.

Two kinds of lattice are used:

* the base lattice ``D'`` (``lattice_id == 0``) holds cubes of sidelength
  ``F * 2**g / 3`` with corners ``k * F * 2**g / 3``;
* the shifted lattices ``D^1 .. D^(3^d)`` hold cubes of sidelength
  ``F * 2**g`` with corners ``m * F * 2**g + rho * F * 2**J / 3``, where
  ``rho`` is a residue vector in ``{0, 1, 2}^d`` and ``J`` is the top
  generation. Below ``J`` every shifted lattice is a genuine nested dyadic
  lattice, and the tripled cubes ``3Q`` of ``D'`` are split between them.
"""
import itertools
import json
import logging
import math
from fractions import Fraction

import six

from .interfaces.exceptions import InvalidDimensionException
from .interfaces.exceptions import InvalidValueException

log = logging.getLogger(__name__)

BASE_LATTICE = 0


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, six.integer_types):
        return Fraction(value)
    if isinstance(value, six.string_types):
        return Fraction(value)
    return Fraction(float(value))


class Box(object):
    """
    A half-open axis-parallel box ``[lower, upper)`` with exact rational
    bounds, expressed in units of a fundamental sidelength.
    """

    def __init__(self, lower, upper, fundamental_side=1.0):
        self.lower = tuple(_as_fraction(v) for v in lower)
        self.upper = tuple(_as_fraction(v) for v in upper)
        if len(self.lower) != len(self.upper):
            raise InvalidDimensionException(
                "Box bounds have different lengths: %s and %s"
                % (len(self.lower), len(self.upper)))
        self.fundamental_side = float(fundamental_side)

    @property
    def dim(self):
        return len(self.lower)

    @property
    def volume(self):
        """
        Exact volume in fundamental units.

        :rtype: :class:`fractions.Fraction`
        """
        vol = Fraction(1)
        for lo, hi in zip(self.lower, self.upper):
            vol *= max(hi - lo, Fraction(0))
        return vol

    def is_empty(self):
        return any(hi <= lo for lo, hi in zip(self.lower, self.upper))

    def intersect(self, other):
        lower = [max(a, b) for a, b in zip(self.lower, other.lower)]
        upper = [min(a, b) for a, b in zip(self.upper, other.upper)]
        return Box(lower, upper, self.fundamental_side)

    def contains_box(self, other):
        return all(a <= b for a, b in zip(self.lower, other.lower)) and \
            all(b <= a for a, b in zip(self.upper, other.upper))

    def contains_point(self, point):
        """
        Membership of a point given in units of the fundamental side.
        """
        pt = [_as_fraction(v) for v in point]
        return all(lo <= x < hi
                   for lo, x, hi in zip(self.lower, pt, self.upper))

    def float_bounds(self):
        """
        Absolute float coordinates of the box as ``(lower, upper)`` lists.
        """
        side = self.fundamental_side
        return ([float(v) * side for v in self.lower],
                [float(v) * side for v in self.upper])

    def __eq__(self, other):
        return (isinstance(other, Box) and self.lower == other.lower and
                self.upper == other.upper)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.lower, self.upper))

    def __repr__(self):
        return "<SB-Box: [%s) - [%s)>" % (
            ", ".join(str(v) for v in self.lower),
            ", ".join(str(v) for v in self.upper))


class DyadicCube(object):
    """
    An immutable cube of a base or shifted dyadic lattice.

    Cubes are identified by integers only: the lattice, the generation and
    the corner index. Two cubes are equal when all of these, together with
    the lattice family parameters, agree.
    """

    def __init__(self, dim, lattice_id, generation, corner,
                 fundamental_side=1.0, top_generation=0):
        if dim < 1:
            raise InvalidDimensionException(
                "A dyadic cube needs d >= 1, got %s" % dim)
        corner = tuple(int(c) for c in corner)
        if len(corner) != dim:
            raise InvalidDimensionException(
                "Corner %s does not have %s entries" % (corner, dim))
        if lattice_id < 0 or lattice_id > 3 ** dim:
            raise InvalidValueException('lattice_id', lattice_id)
        if fundamental_side <= 0:
            raise InvalidValueException('fundamental_side', fundamental_side)
        self._dim = int(dim)
        self._lattice_id = int(lattice_id)
        self._generation = int(generation)
        self._corner = corner
        self._fundamental_side = float(fundamental_side)
        self._top_generation = int(top_generation)

    @property
    def dim(self):
        return self._dim

    @property
    def lattice_id(self):
        return self._lattice_id

    @property
    def generation(self):
        return self._generation

    @property
    def corner(self):
        return self._corner

    @property
    def fundamental_side(self):
        return self._fundamental_side

    @property
    def top_generation(self):
        return self._top_generation

    @property
    def residue(self):
        """
        Residue vector ``rho`` of a shifted lattice, ``None`` for the base
        lattice.
        """
        if self._lattice_id == BASE_LATTICE:
            return None
        return residue_of(self._dim, self._lattice_id)

    @property
    def side_units(self):
        """
        Exact sidelength in units of the fundamental side.
        """
        side = Fraction(2) ** self._generation
        if self._lattice_id == BASE_LATTICE:
            side /= 3
        return side

    @property
    def side(self):
        return float(self.side_units) * self._fundamental_side

    @property
    def volume(self):
        return self.side ** self._dim

    def _shift_units(self):
        if self._lattice_id == BASE_LATTICE:
            return (Fraction(0),) * self._dim
        scale = Fraction(2) ** self._top_generation / 3
        return tuple(rho * scale for rho in self.residue)

    def box(self):
        """
        The half-open box covered by this cube.

        :rtype: :class:`.Box`
        """
        side = self.side_units
        lower = [c * side + s
                 for c, s in zip(self._corner, self._shift_units())]
        upper = [lo + side for lo in lower]
        return Box(lower, upper, self._fundamental_side)

    def lower(self):
        return self.box().float_bounds()[0]

    def upper(self):
        return self.box().float_bounds()[1]

    def center(self):
        lo, hi = self.box().float_bounds()
        return [(a + b) / 2.0 for a, b in zip(lo, hi)]

    def _same_family(self, **overrides):
        params = dict(dim=self._dim, lattice_id=self._lattice_id,
                      generation=self._generation, corner=self._corner,
                      fundamental_side=self._fundamental_side,
                      top_generation=self._top_generation)
        params.update(overrides)
        return DyadicCube(**params)

    def children(self):
        """
        The ``2^d`` cubes of the next finer generation, in
        corner-lexicographic order. They partition this cube exactly.
        """
        kids = []
        for offset in itertools.product((0, 1), repeat=self._dim):
            corner = tuple(2 * c + o for c, o in zip(self._corner, offset))
            kids.append(self._same_family(generation=self._generation - 1,
                                          corner=corner))
        return kids

    def parent(self):
        if (self._lattice_id != BASE_LATTICE and any(self.residue) and
                self._generation + 1 > self._top_generation):
            raise InvalidValueException('generation', self._generation + 1)
        corner = tuple(c // 2 for c in self._corner)
        return self._same_family(generation=self._generation + 1,
                                 corner=corner)

    def descendants(self, depth):
        """
        All cubes ``depth`` generations below this one, corner-lexicographic.
        """
        if depth < 0:
            raise InvalidValueException('depth', depth)
        width = 2 ** depth
        out = []
        for offset in itertools.product(range(width), repeat=self._dim):
            corner = tuple(width * c + o
                           for c, o in zip(self._corner, offset))
            out.append(self._same_family(generation=self._generation - depth,
                                         corner=corner))
        return out

    def contains(self, other):
        """
        Whether ``other`` (a cube or a box) lies inside this cube.
        """
        other_box = other.box() if isinstance(other, DyadicCube) else other
        return self.box().contains_box(other_box)

    def contains_point(self, point):
        return self.box().contains_point(
            [_as_fraction(v) / _as_fraction(self._fundamental_side)
             for v in point])

    def subcube_enumeration(self):
        """
        The ``3^d`` cubes of this cube's sidelength that tile ``3Q``,
        ordered lexicographically by offset vector in ``{-1, 0, 1}^d``.
        """
        cubes = []
        for offset in itertools.product((-1, 0, 1), repeat=self._dim):
            corner = tuple(c + o for c, o in zip(self._corner, offset))
            cubes.append(self._same_family(corner=corner))
        return cubes

    def tripled_box(self):
        side = self.side_units
        lo = self.box().lower
        return Box([v - side for v in lo], [v + 2 * side for v in lo],
                   self._fundamental_side)

    def third(self):
        """
        The concentric base-lattice cube of one third the sidelength.

        For a cube with corner index ``m`` and residue ``rho`` at generation
        ``g`` this is the base cube with index ``3m + rho 2^(J-g) + 1``.
        """
        if self._lattice_id == BASE_LATTICE:
            raise InvalidValueException('lattice_id', self._lattice_id)
        if self._generation > self._top_generation:
            raise InvalidValueException('generation', self._generation)
        factor = 2 ** (self._top_generation - self._generation)
        corner = tuple(3 * m + rho * factor + 1
                       for m, rho in zip(self._corner, self.residue))
        return DyadicCube(self._dim, BASE_LATTICE, self._generation, corner,
                          self._fundamental_side, self._top_generation)

    def half(self):
        """
        The concentric box of half the sidelength.
        """
        box = self.box()
        quarter = self.side_units / 4
        return Box([v + quarter for v in box.lower],
                   [v - quarter for v in box.upper], self._fundamental_side)

    def sort_key(self):
        """
        Generation-major (coarse first), then lattice, then corner.
        """
        return (-self._generation, self._lattice_id, self._corner)

    def to_json(self):
        return {'dim': self._dim, 'lattice_id': self._lattice_id,
                'generation': self._generation, 'corner': list(self._corner),
                'fundamental_side': self._fundamental_side,
                'top_generation': self._top_generation}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, six.string_types):
            data = json.loads(data)
        return cls(data['dim'], data['lattice_id'], data['generation'],
                   data['corner'], data.get('fundamental_side', 1.0),
                   data.get('top_generation', 0))

    def _key(self):
        return (self._dim, self._lattice_id, self._generation, self._corner,
                self._fundamental_side, self._top_generation)

    def __eq__(self, other):
        return isinstance(other, DyadicCube) and self._key() == other._key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "<SB-DyadicCube: lattice %s gen %s corner %s>" % (
            self._lattice_id, self._generation, self._corner)


def residue_of(dim, lattice_id):
    """
    Residue vector of shifted lattice ``lattice_id`` (1-based, residues in
    lexicographic order).
    """
    if lattice_id < 1 or lattice_id > 3 ** dim:
        raise InvalidValueException('lattice_id', lattice_id)
    index = lattice_id - 1
    digits = []
    for _ in range(dim):
        digits.append(index % 3)
        index //= 3
    return tuple(reversed(digits))


def lattice_id_of(residue):
    index = 0
    for rho in residue:
        index = 3 * index + int(rho) % 3
    return index + 1


class LatticeDescriptor(object):

    def __init__(self, lattice_id, residue, shift):
        self.lattice_id = lattice_id
        self.residue = residue
        self.shift = shift

    def __repr__(self):
        return "<SB-LatticeDescriptor: %s rho=%s>" % (self.lattice_id,
                                                      self.residue)


class LatticeFamily(object):
    """
    The ``3^d`` shifted lattices that split the tripled base cubes.
    """

    def __init__(self, dim, fundamental_side=1.0, top_generation=0):
        self.dim = dim
        self.fundamental_side = float(fundamental_side)
        self.top_generation = int(top_generation)
        scale = Fraction(2) ** self.top_generation / 3
        self.lattices = []
        for residue in itertools.product(range(3), repeat=dim):
            self.lattices.append(LatticeDescriptor(
                lattice_id_of(residue), residue,
                tuple(rho * scale for rho in residue)))

    def __len__(self):
        return len(self.lattices)

    def cube(self, lattice_id, generation, corner):
        return DyadicCube(self.dim, lattice_id, generation, corner,
                          self.fundamental_side, self.top_generation)

    def base_cube(self, generation, corner):
        return self.cube(BASE_LATTICE, generation, corner)

    def assign(self, cube):
        """
        Find the shifted-lattice cube equal to ``3P`` for a base cube ``P``.

        :type cube: :class:`.DyadicCube`
        :param cube: A cube of the base lattice ``D'``.

        :rtype: :class:`.DyadicCube`
        :return: The unique cube of some ``D^i`` whose box is ``3P``.
        """
        if cube.lattice_id != BASE_LATTICE:
            raise InvalidValueException('lattice_id', cube.lattice_id)
        if cube.generation > self.top_generation:
            raise InvalidValueException('generation', cube.generation)
        factor = 2 ** (self.top_generation - cube.generation)
        residue = tuple(((k - 1) * factor) % 3 for k in cube.corner)
        corner = []
        for k, rho in zip(cube.corner, residue):
            num = (k - 1) - rho * factor
            assert num % 3 == 0
            corner.append(num // 3)
        return self.cube(lattice_id_of(residue), cube.generation, corner)

    def lattices_containing(self, box):
        """
        Scan every shifted lattice for a cube whose box equals ``box``.

        :rtype: ``list`` of ``int``
        :return: The ids of the lattices holding ``box`` as a cube.
        """
        found = []
        sides = set(hi - lo for lo, hi in zip(box.lower, box.upper))
        if len(sides) != 1:
            return found
        side = sides.pop()
        if side <= 0:
            return found
        generation = int(round(math.log(side, 2)))
        if Fraction(2) ** generation != side:
            return found
        for lattice in self.lattices:
            if generation > self.top_generation and any(lattice.residue):
                continue
            ok = True
            for lo, shift in zip(box.lower, lattice.shift):
                idx = (lo - shift) / side
                if idx.denominator != 1:
                    ok = False
                    break
            if ok:
                found.append(lattice.lattice_id)
        return found

    def locate(self, point, lattice_id, generation):
        """
        The cube of the given lattice and generation containing ``point``,
        given in absolute coordinates.
        """
        if len(point) != self.dim:
            raise InvalidDimensionException(
                "Point %s is not %s-dimensional" % (point, self.dim))
        units = [_as_fraction(v) / _as_fraction(self.fundamental_side)
                 for v in point]
        if lattice_id == BASE_LATTICE:
            side = Fraction(2) ** generation / 3
            shift = (Fraction(0),) * self.dim
        else:
            side = Fraction(2) ** generation
            shift = self.lattices[lattice_id - 1].shift
        corner = [int(math.floor((x - s) / side))
                  for x, s in zip(units, shift)]
        return self.cube(lattice_id, generation, corner)

    def __repr__(self):
        return "<SB-LatticeFamily: d=%s, %s lattices>" % (self.dim,
                                                          len(self.lattices))


def shifted_lattices(dim, fundamental_side=1.0, top_generation=0):
    """
    Build the ``3^d`` shifted lattices for dimension ``dim``.

    :type dim: ``int``
    :param dim: Spatial dimension, at least 1.

    :rtype: :class:`.LatticeFamily`
    """
    if dim is None or dim <= 0:
        raise InvalidDimensionException(
            "Shifted lattices need d >= 1, got %s" % dim)
    family = LatticeFamily(dim, fundamental_side, top_generation)
    log.debug("Built %s shifted lattices for d=%s", len(family), dim)
    return family


def subcube_enumeration(cube):
    return cube.subcube_enumeration()


def cover_region(cube, box):
    """
    Minimal set of children of ``cube`` whose union covers
    ``box`` intersected with the cube. Children meeting the box only on a
    null set are left out, so a box disjoint from the cube gives an empty
    list.
    """
    region = box.intersect(cube.box())
    if region.is_empty():
        return []
    cover = []
    for child in cube.children():
        if child.box().intersect(region).volume > 0:
            cover.append(child)
    return cover


def enlarged_cover(cube, j):
    """
    The children of ``Q`` covering ``((1/3)Q)(j)``.

    :type cube: :class:`.DyadicCube`
    :param cube: A cube of a shifted lattice.

    :type j: ``int``
    :param j: 1-based index into the subcube enumeration of ``third(Q)``.

    :rtype: ``list`` of :class:`.DyadicCube`
    """
    count = 3 ** cube.dim
    if j < 1 or j > count:
        raise InvalidValueException('j', j)
    target = cube.third().subcube_enumeration()[j - 1]
    return cover_region(cube, target.box())


def sorted_cubes(cubes):
    return sorted(cubes, key=lambda c: c.sort_key())
