"""
Exact rational geometry of exponent triples ``(1/p, 1/q, 1/r)``.

Polytopes carry both a vertex and a half-space representation, computed
with :class:`fractions.Fraction` only. Hulls are found by brute force over
point triples, which is ample for the handful of vertices a boundedness
region has.
"""
import csv
import itertools
import json
import logging
from collections import OrderedDict
from fractions import Fraction

import six

from .base.helpers import parse_rational
from .interfaces.exceptions import InvalidDimensionException
from .interfaces.exceptions import InvalidExponentException
from .interfaces.exceptions import InvalidParametersException
from .interfaces.exceptions import InvalidValueException

log = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)
MEMBERSHIP_MODES = ('closed', 'interior', 'relative')


class ExponentTriple(object):
    """
    Reciprocal exponents ``(1/p, 1/q, 1/r)`` as exact rationals. Values
    above one are allowed, they describe quasi-Banach targets.
    """

    def __init__(self, inv_p, inv_q, inv_r):
        coords = tuple(parse_rational(v) for v in (inv_p, inv_q, inv_r))
        if any(c < 0 for c in coords):
            raise InvalidExponentException(
                "Reciprocal exponents must be nonnegative, got %s"
                % (coords,))
        self._coords = coords

    @classmethod
    def from_exponents(cls, p, q, r):
        return cls(*(1 / parse_rational(v) for v in (p, q, r)))

    @property
    def inv_p(self):
        return self._coords[0]

    @property
    def inv_q(self):
        return self._coords[1]

    @property
    def inv_r(self):
        return self._coords[2]

    @staticmethod
    def _exponent(inv):
        return float('inf') if inv == 0 else float(1 / inv)

    @property
    def p(self):
        return self._exponent(self.inv_p)

    @property
    def q(self):
        return self._exponent(self.inv_q)

    @property
    def r(self):
        return self._exponent(self.inv_r)

    @property
    def inv_r_prime(self):
        """
        ``1/r' = 1 - 1/r``; only meaningful for ``r >= 1``.
        """
        if self.inv_r > 1:
            raise InvalidExponentException(
                "r = %s has no dual exponent" % self.r)
        return 1 - self.inv_r

    @property
    def r_prime(self):
        return self._exponent(self.inv_r_prime)

    @property
    def holder_inv(self):
        """
        ``1/p + 1/q``, the reciprocal of the Holder exponent ``pq/(p+q)``.
        """
        return self.inv_p + self.inv_q

    def as_tuple(self):
        return self._coords

    def to_json(self):
        return [[c.numerator, c.denominator] for c in self._coords]

    @classmethod
    def from_json(cls, data):
        if isinstance(data, six.string_types):
            data = json.loads(data)
        return cls(*(Fraction(int(n), int(d)) for n, d in data))

    def __iter__(self):
        return iter(self._coords)

    def __eq__(self, other):
        return (isinstance(other, ExponentTriple) and
                self._coords == other.as_tuple())

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self._coords)

    def __repr__(self):
        return "<SB-ExponentTriple: (%s, %s, %s)>" % self._coords


def _point(value):
    if isinstance(value, ExponentTriple):
        return value.as_tuple()
    coords = tuple(parse_rational(v) for v in value)
    if len(coords) != 3:
        raise InvalidDimensionException(
            "Exponent points have three coordinates, got %s" % (coords,))
    return coords


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), ZERO)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _det3(rows):
    return _dot(rows[0], _cross(rows[1], rows[2]))


def _rank(vectors):
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    for col in range(3):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]),
                     None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col] / rows[rank][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


class Halfspace(object):
    """
    The closed half-space ``a . x <= b``, stored with the first nonzero
    coefficient of ``a`` scaled to magnitude one.
    """

    def __init__(self, a, b):
        a = tuple(parse_rational(v) for v in a)
        b = parse_rational(b)
        lead = next((abs(v) for v in a if v), None)
        if lead is None:
            raise InvalidValueException('halfspace', (a, b))
        self.a = tuple(v / lead for v in a)
        self.b = b / lead

    def slack(self, x):
        return self.b - _dot(self.a, _point(x))

    def contains(self, x, strict=False):
        s = self.slack(x)
        return s > 0 if strict else s >= 0

    def to_json(self):
        return [[v.numerator, v.denominator] for v in self.a + (self.b,)]

    @classmethod
    def from_json(cls, data):
        vals = [Fraction(int(n), int(d)) for n, d in data]
        return cls(vals[:3], vals[3])

    def __eq__(self, other):
        return (isinstance(other, Halfspace) and self.a == other.a and
                self.b == other.b)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return "<SB-Halfspace: %s . x <= %s>" % (self.a, self.b)


def _equalities(normal, b):
    return [Halfspace(normal, b), Halfspace(tuple(-v for v in normal), -b)]


def _supporting(points, normal, anchor):
    """
    The half-space with boundary normal ``normal`` through ``anchor`` that
    holds every point, or ``None`` if the plane cuts the point set.
    """
    b = _dot(normal, anchor)
    values = [_dot(normal, p) for p in points]
    if all(v <= b for v in values):
        return Halfspace(normal, b)
    if all(v >= b for v in values):
        return Halfspace(tuple(-v for v in normal), -b)
    return None


def _facets(points):
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    dim = _rank(diffs)
    found = []
    if dim == 0:
        for axis in range(3):
            unit = tuple(ONE if k == axis else ZERO for k in range(3))
            found.extend(_equalities(unit, base[axis]))
    elif dim == 1:
        direction = next(v for v in diffs if any(v))
        normals = []
        for axis in range(3):
            unit = tuple(ONE if k == axis else ZERO for k in range(3))
            n = _cross(direction, unit)
            if any(n) and (not normals or any(_cross(normals[0], n))):
                normals.append(n)
            if len(normals) == 2:
                break
        for n in normals:
            found.extend(_equalities(n, _dot(n, base)))
        found.append(_supporting(points, direction,
                                 max(points, key=lambda p: _dot(direction, p))))
        found.append(_supporting(points, direction,
                                 min(points, key=lambda p: _dot(direction, p))))
    elif dim == 2:
        normal = next(n for n in (_cross(a, b) for a, b in
                                  itertools.combinations(diffs, 2)) if any(n))
        found.extend(_equalities(normal, _dot(normal, base)))
        for a, b in itertools.combinations(points, 2):
            edge_normal = _cross(normal, _sub(b, a))
            if any(edge_normal):
                hs = _supporting(points, edge_normal, a)
                if hs is not None:
                    found.append(hs)
    else:
        for a, b, c in itertools.combinations(points, 3):
            normal = _cross(_sub(b, a), _sub(c, a))
            if any(normal):
                hs = _supporting(points, normal, a)
                if hs is not None:
                    found.append(hs)
    unique = []
    for hs in found:
        if hs is not None and hs not in unique:
            unique.append(hs)
    return dim, unique


def _enumerate_vertices(halfspaces):
    vertices = []
    for trio in itertools.combinations(halfspaces, 3):
        rows = [hs.a for hs in trio]
        det = _det3(rows)
        if det == 0:
            continue
        rhs = [hs.b for hs in trio]
        point = []
        for col in range(3):
            replaced = [tuple(rhs[i] if k == col else rows[i][k]
                              for k in range(3)) for i in range(3)]
            point.append(_det3(replaced) / det)
        point = tuple(point)
        if point not in vertices and all(hs.slack(point) >= 0
                                         for hs in halfspaces):
            vertices.append(point)
    return vertices


class ExponentPolytope(object):
    """
    A bounded convex set of exponent triples with matching vertex and
    half-space representations.

    :type dimension: ``int``
    :param dimension: Affine dimension; ``-1`` marks the empty set and
                      values below 3 a lower-dimensional hull, which has no
                      interior points.
    """

    def __init__(self, vertices, halfspaces, label='', dimension=3,
                 transcribed=False, named_points=None):
        self.vertices = sorted(_point(v) for v in vertices)
        self.halfspaces = list(halfspaces)
        self.label = label
        self.dimension = dimension
        self.transcribed = transcribed
        self.named_points = OrderedDict(named_points or {})

    @property
    def is_empty(self):
        return not self.vertices

    def implicit_equalities(self):
        """
        The stored half-spaces that are tight at every vertex, i.e. the
        equations of the affine hull.
        """
        return [hs for hs in self.halfspaces
                if all(hs.slack(v) == 0 for v in self.vertices)]

    def contains(self, x, mode='closed'):
        """
        Exact membership. ``interior`` requires strict inequality in every
        stored half-space; ``relative`` does so only in the half-spaces that
        are not implicit equalities, which is interiority inside the affine
        hull.
        """
        if mode not in MEMBERSHIP_MODES:
            raise InvalidValueException('mode', mode)
        if self.is_empty:
            return False
        if mode == 'relative':
            flat = self.implicit_equalities()
            return all(hs.contains(x, hs not in flat)
                       for hs in self.halfspaces)
        strict = mode == 'interior'
        return all(hs.contains(x, strict) for hs in self.halfspaces)

    def has_vertex(self, x):
        return _point(x) in self.vertices

    def centroid(self):
        n = len(self.vertices)
        return tuple(sum((v[k] for v in self.vertices), ZERO) / n
                     for k in range(3))

    def cross_check(self):
        """
        Rebuild the vertices from the half-spaces and compare exactly.
        """
        if self.is_empty:
            return not self.halfspaces or not _enumerate_vertices(
                self.halfspaces)
        inside = all(hs.slack(v) >= 0 for hs in self.halfspaces
                     for v in self.vertices)
        return inside and sorted(_enumerate_vertices(self.halfspaces)) == \
            self.vertices

    def to_json(self):
        data = OrderedDict()
        data['label'] = self.label
        data['dimension'] = self.dimension
        data['transcribed'] = self.transcribed
        data['vertices'] = [[[c.numerator, c.denominator] for c in v]
                            for v in self.vertices]
        data['halfspaces'] = [hs.to_json() for hs in self.halfspaces]
        if self.named_points:
            data['named_points'] = OrderedDict(
                (k, [[c.numerator, c.denominator] for c in v])
                for k, v in self.named_points.items())
        return data

    @classmethod
    def from_json(cls, data):
        if isinstance(data, six.string_types):
            data = json.loads(data)
        vertices = [tuple(Fraction(int(n), int(d)) for n, d in v)
                    for v in data['vertices']]
        halfspaces = [Halfspace.from_json(h) for h in data['halfspaces']]
        return cls(vertices, halfspaces, data.get('label', ''),
                   data.get('dimension', 3), data.get('transcribed', False))

    def to_csv(self, stream):
        """
        Vertex rows ``label, inv_p, inv_q, inv_r`` as floats and rationals.
        """
        writer = csv.writer(stream)
        writer.writerow(['label', 'inv_p', 'inv_q', 'inv_r', 'inv_p_exact',
                         'inv_q_exact', 'inv_r_exact'])
        for v in self.vertices:
            writer.writerow([self.label] + ['%.12g' % float(c) for c in v] +
                            [str(c) for c in v])

    def __repr__(self):
        return "<SB-ExponentPolytope: %s, %s vertices, dim %s>" % (
            self.label, len(self.vertices), self.dimension)


def convex_hull(vertices, label=''):
    """
    Exact hull of rational points.

    :rtype: :class:`.ExponentPolytope`
    """
    points = []
    for v in vertices:
        p = _point(v)
        if p not in points:
            points.append(p)
    if not points:
        raise InvalidValueException('vertices', vertices)
    dim, halfspaces = _facets(points)
    hull = ExponentPolytope(_enumerate_vertices(halfspaces), halfspaces,
                            label, dim)
    log.debug("Hull %s: %s points -> %s vertices, %s facets, dim %s", label,
              len(points), len(hull.vertices), len(halfspaces), dim)
    return hull


def from_halfspaces(halfspaces, label=''):
    """
    Vertex enumeration of a bounded intersection of half-spaces, re-hulled
    so that only supporting facets remain.
    """
    vertices = _enumerate_vertices(list(halfspaces))
    if not vertices:
        return ExponentPolytope([], [], label, -1)
    return convex_hull(vertices, label)


def hull_and_intersect(vertices, extra_halfspaces=(), label=''):
    """
    ``conv(vertices)`` intersected with ``extra_halfspaces``.
    """
    hull = convex_hull(vertices, label)
    if not extra_halfspaces:
        return hull
    return from_halfspaces(hull.halfspaces + list(extra_halfspaces), label)


def r_dominates_halfspaces():
    """
    ``r >= p`` and ``r >= q``, written ``1/r <= 1/p`` and ``1/r <= 1/q``.
    """
    return [Halfspace((-1, 0, 1), 0), Halfspace((0, -1, 1), 0)]


def interpolate(x, y, theta):
    """
    ``(1 - theta) x + theta y`` for ``theta`` in ``[0, 1]``.
    """
    theta = parse_rational(theta)
    if not 0 <= theta <= 1:
        raise InvalidValueException('theta', theta)
    a, b = _point(x), _point(y)
    return ExponentTriple(*((1 - theta) * u + theta * v for u, v in zip(a, b)))


def scaling_exponent(x, dim):
    """
    ``d (1/r - 1/p - 1/q)``, the power of ``t`` in the norm of ``L_t``.
    """
    x = x if isinstance(x, ExponentTriple) else ExponentTriple(*x)
    return dim * (x.inv_r - x.inv_p - x.inv_q)


class UnionRegion(object):
    """
    A finite union of polytopes, stored part by part.
    """

    def __init__(self, parts, label='', transcribed=True):
        self.parts = list(parts)
        self.label = label
        self.transcribed = transcribed

    @property
    def vertices(self):
        out = []
        for part in self.parts:
            out.extend(v for v in part.vertices if v not in out)
        return sorted(out)

    def contains(self, x, mode='closed'):
        return any(part.contains(x, mode) for part in self.parts)

    def has_vertex(self, x):
        return any(part.has_vertex(x) for part in self.parts)

    def cross_check(self):
        return all(part.cross_check() for part in self.parts)

    def to_json(self):
        return OrderedDict([('label', self.label),
                            ('transcribed', self.transcribed),
                            ('parts', [p.to_json() for p in self.parts])])

    def to_csv(self, stream):
        for part in self.parts:
            part.to_csv(stream)

    def __repr__(self):
        return "<SB-UnionRegion: %s, %s parts>" % (self.label, len(self.parts))


class PredicateRegion(object):
    """
    A region given by an exact predicate, together with a polytope inside
    it that is used for sampling.
    """

    def __init__(self, predicate, polytope, label='', transcribed=True):
        self.predicate = predicate
        self.polytope = polytope
        self.label = label
        self.transcribed = transcribed

    @property
    def vertices(self):
        return self.polytope.vertices

    def contains(self, x, mode='closed'):
        if mode not in MEMBERSHIP_MODES:
            raise InvalidValueException('mode', mode)
        x = ExponentTriple(*_point(x))
        if mode == 'relative':
            return (self.predicate(x, True) or
                    self.polytope.contains(x, 'relative'))
        return self.predicate(x, mode == 'interior')

    def has_vertex(self, x):
        return self.polytope.has_vertex(x)

    def cross_check(self):
        return self.polytope.cross_check()

    def to_json(self):
        return OrderedDict([('label', self.label),
                            ('transcribed', self.transcribed),
                            ('predicate', True),
                            ('polytope', self.polytope.to_json())])

    def to_csv(self, stream):
        self.polytope.to_csv(stream)

    def __repr__(self):
        return "<SB-PredicateRegion: %s>" % self.label


def _dominated(x, strict):
    ip, iq, ir = x.as_tuple()
    if strict:
        return ir < ip and ir < iq
    return ir <= ip and ir <= iq


def dominated_part(reg):
    """
    The part of ``reg`` where ``r >= p`` and ``r >= q``.

    Transcribed hulls often meet these half-spaces only in a face, so the
    result may be lower-dimensional; use ``relative`` membership for its
    interior points.
    """
    if isinstance(reg, UnionRegion):
        return UnionRegion([dominated_part(part) for part in reg.parts],
                           reg.label, reg.transcribed)
    if isinstance(reg, PredicateRegion):
        inner = reg.predicate

        def predicate(x, strict):
            return _dominated(x, strict) and inner(x, strict)

        return PredicateRegion(predicate, dominated_part(reg.polytope),
                               reg.label, reg.transcribed)
    part = from_halfspaces(reg.halfspaces + r_dominates_halfspaces(),
                           reg.label)
    part.transcribed = reg.transcribed
    log.debug("Dominated part of %s has dimension %s", reg.label,
              part.dimension)
    return part


def _require_dim(name, dim, minimum=2):
    if dim is None or int(dim) < minimum:
        raise InvalidParametersException(
            "Region %s needs d >= %s, got %s" % (name, minimum, dim))
    return Fraction(int(dim))


def triangle_lacunary(dim):
    """
    The transcribed hull. For ``d = 2`` its only points with ``r >= p, q``
    lie on the diagonal edge, see :func:`dominated_part`.
    """
    d = _require_dim('triangle-lac', dim)
    pts = [(0, 0, 0),
           (d / (2 * (d + 1)), d / (2 * (d + 1)), 1 / (d + 1)),
           (0, 1, 1), (1, 0, 1),
           (d / (d + 1), d / (d + 1), 2 * d / (d + 1)),
           (d / (d + 1), d / (d + 1), 1)]
    region = convex_hull(pts, 'triangle-lac')
    region.transcribed = True
    return region


def triangle_full(dim, m):
    if m is None or int(m) < 2:
        raise InvalidParametersException(
            "Region triangle-full needs an integer m >= 2, got %s" % m)
    d = _require_dim('triangle-full', dim)
    if d < 2 * int(m):
        raise InvalidParametersException(
            "Region triangle-full needs d >= 2m, got d=%s m=%s" % (dim, m))
    m = Fraction(int(m))
    ell = m / (m - 1)
    a = (d - 1) / d
    c = (d * d - d) / (d * d + 1)
    e = (d - 1) / (d * d + 1)
    s = (d - 1) / (ell * d)
    pts = [(0, 0, 0), (a, 0, a), (0, a, a), (a, 0, 1 / d), (0, a, 1 / d),
           (c, 0, e), (0, c, e), (s, s, 2 * s)]
    region = hull_and_intersect(pts, r_dominates_halfspaces(), 'triangle-full')
    region.transcribed = True
    return region


def triangle_l1(dim):
    """
    Triples with ``r = 1`` and ``(1/p, 1/q)`` in the triangle with corners
    ``(0, 1)``, ``(1, 0)`` and ``(d/(d+1), d/(d+1))``.
    """
    d = _require_dim('triangle-l1', dim)
    k = d / (d + 1)
    region = convex_hull([(0, 1, 1), (1, 0, 1), (k, k, 1)], 'triangle-l1')
    region.transcribed = True
    return region


IPS_POINTS = [(1, 0, 1), (0, 1, 1), (1, 1, 1), (1, 1, 2), (0, 0, 0)]


def ips_bisphere(dim=None):
    region = convex_hull(IPS_POINTS, 'ips-bisphere')
    region.transcribed = True
    return region


def jeong_lee_predicate(dim):
    """
    ``0 <= 1/p, 1/q <= 1``, ``1/r >= 1/d`` or ``0 < 1/r <= (d-2)/(d(d-1))``,
    and ``1/r <= 1/p + 1/q < min((2d-1)/d, 1 + d/r)``.
    """
    d = _require_dim('bisphere-lac', dim)
    small = (d - 2) / (d * (d - 1))

    def predicate(x, strict):
        ip, iq, ir = x.as_tuple()
        total = ip + iq
        bound = min((2 * d - 1) / d, 1 + d * ir)
        if strict:
            return (0 < ip < 1 and 0 < iq < 1 and
                    (ir > 1 / d or 0 < ir < small) and ir < total < bound)
        return (ip <= 1 and iq <= 1 and (ir >= 1 / d or 0 < ir <= small) and
                ir <= total < bound)
    return predicate


def bisphere_lacunary(dim):
    """
    The union of the Jeong-Lee predicate region with the IPS hull, which
    also serves as the sampling polytope.
    """
    jeong_lee = jeong_lee_predicate(dim)
    polytope = convex_hull(IPS_POINTS, 'bisphere-lac')
    polytope.transcribed = True

    def predicate(x, strict):
        mode = 'interior' if strict else 'closed'
        return jeong_lee(x, strict) or polytope.contains(x, mode)

    return PredicateRegion(predicate, polytope, 'bisphere-lac')


def bisphere_full(dim):
    if dim is None or int(dim) != 10:
        raise InvalidParametersException(
            "Region bisphere-full is transcribed for d=10 only, got %s" % dim)
    F = Fraction
    upper = convex_hull([(1, F(9, 10), F(9, 10)), (F(9, 10), 1, F(9, 10)),
                         (F(9, 10), 1, F(1, 10)), (1, F(9, 10), F(1, 10)),
                         (1, F(1, 10), F(1, 10)), (F(1, 10), 1, F(1, 10)),
                         (F(1, 10), F(1, 10), F(1, 10)),
                         (F(19, 20), F(19, 20), F(19, 20))], 'bisphere-full')
    lower = convex_hull([(0, 0, 0), (0, 1, 0), (1, 0, 0),
                         (F(8, 9), 1, F(4, 45)), (1, F(8, 9), F(4, 45)),
                         (1, F(4, 45), F(4, 45)), (F(4, 45), 1, F(4, 45)),
                         (F(4, 45), F(4, 45), F(4, 45))], 'bisphere-full')
    return UnionRegion([upper, lower], 'bisphere-full')


def _embedded_planar(points, label):
    """
    Lift ``(1/p, 1/r)`` points to the triples ``(1/p, 0, 1/r)`` and
    ``(0, 1/p, 1/r)`` and take the hull.
    """
    lifted = []
    for x, y in points.values():
        lifted.append((x, 0, y))
        lifted.append((0, x, y))
    region = convex_hull(lifted, label)
    region.transcribed = True
    region.named_points = OrderedDict(points)
    return region


def spherical_single_scale(dim):
    d = _require_dim('spherical-single-scale', dim)
    return _embedded_planar(OrderedDict([
        ('P', (ZERO, ZERO)), ('Q', (ONE, ONE)),
        ('R', (d / (d + 1), 1 / (d + 1)))]), 'spherical-single-scale')


def spherical_max(dim):
    """
    Corner points of the single-scale maximal spherical region, with the
    first coordinate of ``Q`` taken over ``d^2 + d``.
    """
    d = _require_dim('spherical-max', dim)
    return _embedded_planar(OrderedDict([
        ('M', (ZERO, ZERO)), ('N', ((d - 1) / d, (d - 1) / d)),
        ('P', ((d - 1) / d, 1 / d)),
        ('Q', ((d * d - d) / (d * d + d), (d - 1) / (d * d + 1)))]),
        'spherical-max')


def schlag_max(dim):
    d = _require_dim('schlag-max', dim)
    return _embedded_planar(OrderedDict([
        ('M', (ZERO, ZERO)), ('N', ((d - 1) / d, (d - 1) / d)),
        ('P', ((d - 1) / d, 1 / d)),
        ('Q', ((d * d - d) / (d * d + 1), (d - 1) / (d * d + 1)))]),
        'schlag-max')


REGION_BUILDERS = OrderedDict([
    ('triangle-lac', lambda d, m: triangle_lacunary(d)),
    ('triangle-full', lambda d, m: triangle_full(d, m)),
    ('triangle-l1', lambda d, m: triangle_l1(d)),
    ('bisphere-lac', lambda d, m: bisphere_lacunary(d)),
    ('bisphere-full', lambda d, m: bisphere_full(d)),
    ('ips-bisphere', lambda d, m: ips_bisphere(d)),
    ('spherical-single-scale', lambda d, m: spherical_single_scale(d)),
    ('spherical-max', lambda d, m: spherical_max(d)),
    ('schlag-max', lambda d, m: schlag_max(d)),
])
REGION_NAMES = tuple(REGION_BUILDERS)


def region(name, dim, m=None, intersect=False):
    """
    A transcribed boundedness region, as listed.

    :type name: ``str``
    :param name: One of :data:`REGION_NAMES`.

    :type intersect: ``bool``
    :param intersect: Return :func:`dominated_part` of the region instead.

    :raises InvalidParametersException: when the region's hypotheses on
                                        ``d`` or ``m`` fail.
    """
    try:
        builder = REGION_BUILDERS[name]
    except KeyError:
        raise InvalidValueException('region', name)
    reg = builder(dim, m)
    return dominated_part(reg) if intersect else reg


def membership(reg, x, mode='closed'):
    return reg.contains(x, mode)


class AdmissibilityReport(object):
    """
    Which of the exponent relations used by the sparse bounds hold.
    """

    def __init__(self, x, checks):
        self.x = x
        self.checks = OrderedDict(checks)

    @property
    def theorem_hypotheses(self):
        """
        ``r >= p``, ``r >= q`` and ``r > 1``.
        """
        c = self.checks
        return c['r_ge_p'] and c['r_ge_q'] and c['r_gt_1']

    @property
    def passed(self):
        return self.theorem_hypotheses

    def failures(self):
        return [k for k, v in self.checks.items() if not v]

    def to_json(self):
        return OrderedDict([('x', self.x.to_json()),
                            ('checks', self.checks),
                            ('theorem_hypotheses', self.theorem_hypotheses)])

    def __repr__(self):
        return "<SB-AdmissibilityReport: %s %s>" % (
            self.x, 'ok' if self.passed else self.failures())


def admissibility(x):
    """
    :rtype: :class:`.AdmissibilityReport`
    """
    x = x if isinstance(x, ExponentTriple) else ExponentTriple(*x)
    ip, iq, ir = x.as_tuple()
    return AdmissibilityReport(x, [
        ('r_ge_p', ir <= ip),
        ('r_ge_q', ir <= iq),
        ('r_gt_1', ir < 1),
        ('holder', ip + iq >= ir),
        ('improving_factor_2', ip + iq >= 2 * ir),
        ('improving_strict', ip + iq > ir),
    ])


class DecayThresholds(object):
    """
    ``4d/(2d-1)`` and ``4d/(2d-3)``: the integrability thresholds of the
    Fourier transform of the bilinear sphere measure and of its derivatives.
    """

    def __init__(self, dim):
        if dim is None or int(dim) < 1:
            raise InvalidDimensionException(
                "Decay thresholds need d >= 1, got %s" % dim)
        d = Fraction(int(dim))
        self.dim = int(dim)
        self.first = 4 * d / (2 * d - 1)
        self.second = 4 * d / (2 * d - 3) if 2 * d - 3 > 0 else None

    @property
    def first_below_4(self):
        return self.first < 4

    @property
    def second_below_4(self):
        return None if self.second is None else self.second < 4

    @staticmethod
    def splitting_exponent(s, q):
        """
        ``s (1 - q/4) / (1 + s)``, the decay gained by the splitting.
        """
        s = parse_rational(s)
        q = parse_rational(q)
        return s * (1 - q / 4) / (1 + s)

    def to_json(self):
        def enc(v):
            return None if v is None else [v.numerator, v.denominator]
        return OrderedDict([('d', self.dim), ('first', enc(self.first)),
                            ('first_below_4', self.first_below_4),
                            ('second', enc(self.second)),
                            ('second_below_4', self.second_below_4)])

    def __repr__(self):
        return "<SB-DecayThresholds: d=%s %s %s>" % (self.dim, self.first,
                                                     self.second)


def decay_thresholds(dim):
    return DecayThresholds(dim)


def muckenhoupt_homogeneity(p_vec, r_vec):
    """
    Power of ``c`` picked up by the multilinear weight constant when every
    weight is multiplied by ``c``, summed factor by factor.

    :type p_vec: ``list``
    :param p_vec: ``(p_1, p_2)`` with ``1/p = 1/p_1 + 1/p_2``.

    :type r_vec: ``list``
    :param r_vec: ``(r_1, r_2, r_3)``.
    """
    p_vec = [parse_rational(v) for v in p_vec]
    r_vec = [parse_rational(v) for v in r_vec]
    if len(r_vec) != len(p_vec) + 1:
        raise InvalidValueException('r_vec', r_vec)
    inv_p = sum((1 / v for v in p_vec), ZERO)
    p = 1 / inv_p
    inv_r_dual = 1 - 1 / r_vec[-1]
    r_dual = 1 / inv_r_dual
    total = p * inv_p * r_dual / (r_dual - p) * (inv_p - inv_r_dual)
    for p_i, r_i in zip(p_vec, r_vec[:-1]):
        total += r_i / (r_i - p_i) * (1 / r_i - 1 / p_i)
    return total
