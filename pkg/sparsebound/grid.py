"""
Sampled functions on a uniform grid over a dyadic cube, and the scalar
primitives built on them: L^t averages, translations, level sets and
Lorentz norms.

Samples sit at cell midpoints. Off-grid evaluation is multilinear with zero
extension outside the domain cube.
"""
import csv
import json
import logging
import math

import numpy as np

from scipy import ndimage

import six

from .dyadic import DyadicCube
from .interfaces.exceptions import InvalidDimensionException
from .interfaces.exceptions import InvalidExponentException
from .interfaces.exceptions import InvalidValueException
from .interfaces.exceptions import PreconditionException
from .interfaces.exceptions import ResolutionException

log = logging.getLogger(__name__)

RANDOM_KINDS = ('indicator-union-of-cubes', 'smooth-bump-mixture', 'spike',
                'constant', 'uniform', 'gaussian')


def is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


class GridFunction(object):
    """
    An immutable real function sampled on ``n^d`` cells of a dyadic cube.

    :type domain: :class:`.DyadicCube`
    :param domain: The root cube ``Q0`` carrying the grid.

    :type values: array-like
    :param values: Samples of shape ``(n,) * d``.

    :type nonneg: ``bool`` or ``None``
    :param nonneg: When ``True`` the samples are checked to be nonnegative.
                   ``None`` records whatever the samples show.
    """

    def __init__(self, domain, values, nonneg=None, meta=None):
        vals = np.array(values, dtype=float)
        d = domain.dim
        if vals.ndim != d:
            raise InvalidDimensionException(
                "Values of shape %s do not match a %s-dimensional domain"
                % (vals.shape, d))
        n = vals.shape[0]
        if any(s != n for s in vals.shape):
            raise InvalidValueException('shape', vals.shape)
        if not is_power_of_two(n):
            raise InvalidValueException('n', n)
        if not np.all(np.isfinite(vals)):
            raise InvalidValueException('values', 'non-finite sample')
        is_nonneg = bool(np.all(vals >= 0))
        if nonneg and not is_nonneg:
            raise PreconditionException(
                "GridFunction flagged nonnegative has negative samples "
                "(min %s)" % vals.min())
        vals.setflags(write=False)
        self._domain = domain
        self._values = vals
        self._nonneg = is_nonneg if nonneg is None else bool(nonneg)
        self.meta = dict(meta or {})

    @property
    def domain(self):
        return self._domain

    @property
    def values(self):
        return self._values

    @property
    def nonneg(self):
        return self._nonneg

    @property
    def dim(self):
        return self._domain.dim

    @property
    def n(self):
        return self._values.shape[0]

    @property
    def side(self):
        return self._domain.side

    @property
    def cell(self):
        return self._domain.side / self.n

    @property
    def cell_volume(self):
        return self.cell ** self.dim

    @property
    def origin(self):
        return np.array(self._domain.lower(), dtype=float)

    def axes(self):
        """
        Cell-midpoint coordinates along each axis.
        """
        h = self.cell
        return [self.origin[i] + (np.arange(self.n) + 0.5) * h
                for i in range(self.dim)]

    def mesh(self):
        """
        Cell midpoints as an array of shape ``(d,) + (n,) * d``.
        """
        return np.array(np.meshgrid(*self.axes(), indexing='ij'))

    def same_grid(self, other):
        return (isinstance(other, GridFunction) and
                self._domain == other.domain and self.n == other.n)

    def check_same_grid(self, other):
        if self.dim != other.dim:
            raise InvalidDimensionException(
                "Grid functions of dimension %s and %s cannot be combined"
                % (self.dim, other.dim))
        if not self.same_grid(other):
            raise InvalidValueException('grid', (other.domain, other.n))

    def with_values(self, values, nonneg=None, meta=None):
        return GridFunction(self._domain, values, nonneg=nonneg,
                            meta=meta if meta is not None else {})

    def zeros_like(self):
        return self.with_values(np.zeros_like(self._values))

    def _binary(self, other, op):
        if isinstance(other, GridFunction):
            self.check_same_grid(other)
            return self.with_values(op(self._values, other.values))
        return self.with_values(op(self._values, float(other)))

    def __add__(self, other):
        return self._binary(other, np.add)

    def __sub__(self, other):
        return self._binary(other, np.subtract)

    def __mul__(self, other):
        return self._binary(other, np.multiply)

    __rmul__ = __mul__
    __radd__ = __add__

    def __neg__(self):
        return self.with_values(-self._values)

    def abs(self):
        return self.with_values(np.abs(self._values))

    def integral(self):
        return float(self._values.sum() * self.cell_volume)

    def inner(self, other):
        """
        Riemann-sum pairing ``sum f g |cell|``.
        """
        self.check_same_grid(other)
        return float(np.sum(self._values * other.values) * self.cell_volume)

    def shift(self, vector):
        """
        The translate ``x -> f(x - vector)`` by multilinear interpolation.
        """
        return self.with_values(shift_values(self._values, vector, self.cell))

    def evaluate(self, points):
        """
        Multilinear interpolation at arbitrary absolute points.

        :type points: array-like
        :param points: Array of shape ``(m, d)``.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        idx = ((pts - self.origin) / self.cell - 0.5).T
        return ndimage.map_coordinates(self._values, idx, order=1,
                                       mode='grid-constant', cval=0.0,
                                       prefilter=False)

    def cube_slices(self, cube):
        """
        Index slices of the cells lying fully inside ``cube``.

        :raises ResolutionException: if no whole cell fits in the cube.
        :raises InvalidValueException: if the cube is not inside the domain.
        """
        if cube.dim != self.dim:
            raise InvalidDimensionException(
                "Cube of dimension %s on a %s-dimensional grid"
                % (cube.dim, self.dim))
        if not self._domain.contains(cube):
            raise InvalidValueException('cube', cube)
        h = self.cell
        slices = []
        for lo, hi, o in zip(cube.lower(), cube.upper(), self.origin):
            start = int(math.ceil((lo - o) / h - 1e-9))
            stop = int(math.floor((hi - o) / h + 1e-9))
            if stop <= start:
                raise ResolutionException(
                    "Cube %s of side %s is below the grid cell %s"
                    % (cube, cube.side, h))
            slices.append(slice(max(start, 0), min(stop, self.n)))
        return tuple(slices)

    def cube_mask(self, cube):
        mask = np.zeros(self._values.shape, dtype=bool)
        mask[self.cube_slices(cube)] = True
        return mask

    def restrict(self, cube):
        """
        ``f * 1_cube``.
        """
        return self.with_values(np.where(self.cube_mask(cube), self._values,
                                         0.0))

    def interior_mask(self, margin=0.0):
        """
        Cells whose midpoints are at least ``margin`` away from the domain
        boundary.
        """
        mask = np.ones(self._values.shape, dtype=bool)
        lo = self.origin
        hi = lo + self.side
        grids = self.mesh()
        for axis in range(self.dim):
            coords = grids[axis]
            mask &= (coords - lo[axis] >= margin) & (hi[axis] - coords >= margin)
        return mask

    def lp_norm(self, r, margin=0.0):
        """
        Grid ``L^r`` norm over the interior selected by ``margin``.
        """
        if r <= 0:
            raise InvalidExponentException("L^r norm needs r > 0, got %s" % r)
        vals = np.abs(self._values[self.interior_mask(margin)])
        if vals.size == 0:
            return 0.0
        if math.isinf(r):
            return float(vals.max())
        return float((np.sum(vals ** r) * self.cell_volume) ** (1.0 / r))

    def block_averages(self, depth, t=1.0):
        """
        ``L^t`` averages over the ``2^(d depth)`` dyadic blocks of the grid.

        :rtype: ``numpy.ndarray``
        :return: Array of shape ``(2**depth,) * d``.
        """
        return block_lp_averages(self._values, depth, t)

    def refine(self, factor=2):
        """
        Piecewise-constant upsampling by ``factor`` cells per cell.
        """
        if not is_power_of_two(factor):
            raise InvalidValueException('factor', factor)
        vals = self._values
        for axis in range(self.dim):
            vals = np.repeat(vals, factor, axis=axis)
        return GridFunction(self._domain, vals, meta=dict(self.meta))

    def dilate(self, t, center=None):
        """
        The dilate ``x -> f((x - c) / t + c)`` about ``center`` (the domain
        midpoint by default).
        """
        if t <= 0:
            raise InvalidValueException('t', t)
        c = np.asarray(center if center is not None else self._domain.center(),
                       dtype=float)
        pts = self.mesh().reshape(self.dim, -1).T
        src = (pts - c) / t + c
        vals = self.evaluate(src).reshape(self._values.shape)
        return self.with_values(vals)

    def to_json(self):
        return {'dim': self.dim, 'origin': [float(v) for v in self.origin],
                'side': self.side, 'n': self.n,
                'values': self._values.ravel().tolist(),
                'domain': self._domain.to_json()}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, six.string_types):
            data = json.loads(data)
        dim = int(data['dim'])
        n = int(data['n'])
        if 'domain' in data:
            domain = DyadicCube.from_json(data['domain'])
        else:
            side = float(data['side'])
            corner = []
            for o in data.get('origin', [0.0] * dim):
                k = o / side
                if abs(k - round(k)) > 1e-12:
                    raise InvalidValueException('origin', data['origin'])
                corner.append(int(round(k)))
            domain = DyadicCube(dim, 1, 0, corner, fundamental_side=side)
        values = np.asarray(data['values'], dtype=float).reshape((n,) * dim)
        return cls(domain, values)

    def to_csv(self, stream):
        """
        Write ``(index..., coordinate..., value)`` rows for plotting.
        """
        writer = csv.writer(stream)
        writer.writerow(['i%d' % k for k in range(self.dim)] +
                        ['x%d' % k for k in range(self.dim)] + ['value'])
        axes = self.axes()
        for index in np.ndindex(*self._values.shape):
            writer.writerow(list(index) +
                            ['%.12g' % axes[k][i] for k, i in enumerate(index)] +
                            ['%.17g' % self._values[index]])

    def __repr__(self):
        return "<SB-GridFunction: d=%s n=%s on %s>" % (self.dim, self.n,
                                                       self._domain)


def shift_values(values, vector, cell):
    """
    Translate a sample array by ``vector`` (absolute units) so that
    ``out[x] = in[x - vector]``, with linear interpolation and zero fill.
    """
    offset = np.asarray(vector, dtype=float) / cell
    if not np.any(offset):
        return np.array(values, dtype=float)
    return ndimage.shift(values, offset, order=1, mode='grid-constant',
                         cval=0.0, prefilter=False)


def block_lp_averages(values, depth, t=1.0):
    d = values.ndim
    n = values.shape[0]
    blocks = 2 ** depth
    if blocks > n:
        raise ResolutionException(
            "Depth %s is finer than the %s-cell grid" % (depth, n))
    if t <= 0:
        raise InvalidExponentException("L^t average needs t > 0, got %s" % t)
    width = n // blocks
    shape = []
    for _ in range(d):
        shape.extend([blocks, width])
    mag = np.abs(values)
    axes = tuple(range(1, 2 * d, 2))
    if math.isinf(t):
        return mag.reshape(shape).max(axis=axes)
    return (mag.reshape(shape) ** t).mean(axis=axes) ** (1.0 / t)


class InterpolationStencil(object):
    """
    Multilinear interpolation weights of ``m`` points on a grid, usable both
    to gather values and to scatter their exact transpose.
    """

    def __init__(self, grid, points):
        pts = np.asarray(points, dtype=float)
        n = grid.n
        d = grid.dim
        u = (pts - grid.origin) / grid.cell - 0.5
        base = np.floor(u).astype(np.int64)
        frac = u - base
        corners = list(np.ndindex(*(2,) * d))
        self.size = n ** d
        self.indices = np.zeros((pts.shape[0], len(corners)), dtype=np.int64)
        self.weights = np.zeros((pts.shape[0], len(corners)))
        for c, corner in enumerate(corners):
            idx = base + np.asarray(corner)
            w = np.ones(pts.shape[0])
            for axis in range(d):
                w *= frac[:, axis] if corner[axis] else 1.0 - frac[:, axis]
            valid = np.all((idx >= 0) & (idx < n), axis=1)
            clipped = np.clip(idx, 0, n - 1)
            self.indices[:, c] = np.ravel_multi_index(clipped.T, (n,) * d)
            self.weights[:, c] = np.where(valid, w, 0.0)

    def gather(self, values):
        flat = np.asarray(values, dtype=float).ravel()
        return np.sum(flat[self.indices] * self.weights, axis=1)

    def scatter(self, coefficients):
        """
        Transpose of :meth:`gather`: spread ``coefficients`` (one per point)
        back onto the grid.
        """
        w = self.weights * np.asarray(coefficients, dtype=float)[:, None]
        return np.bincount(self.indices.ravel(), weights=w.ravel(),
                           minlength=self.size)


def lp_average(phi, cube, t):
    """
    The normalized average ``((1/|Q|) int_Q |phi|^t)^(1/t)`` as a midpoint
    Riemann sum over the cells inside ``cube``.

    :rtype: ``float``
    """
    if t <= 0:
        raise InvalidExponentException("L^t average needs t > 0, got %s" % t)
    vals = np.abs(phi.values[phi.cube_slices(cube)])
    if math.isinf(t):
        return float(vals.max())
    return float(np.mean(vals ** t) ** (1.0 / t))


def translate_diff(phi, y):
    """
    ``x -> phi(x) - phi(x - y)`` with zero extension outside the domain.
    """
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.size != phi.dim:
        raise InvalidDimensionException(
            "Shift %s does not match dimension %s" % (y, phi.dim))
    if not np.any(y):
        return phi.zeros_like()
    return phi.with_values(phi.values - shift_values(phi.values, y, phi.cell),
                           nonneg=False)


def translate_diff_periodic(phi, y):
    """
    Periodic translation difference computed with a spectral phase; used by
    the multiplier experiments on one-dimensional periodic grids.
    """
    if phi.dim != 1:
        raise InvalidDimensionException(
            "Periodic translation differences are one-dimensional")
    y = float(np.asarray(y, dtype=float).reshape(-1)[0])
    xi = np.fft.rfftfreq(phi.n, d=phi.cell)
    shifted = np.fft.irfft(np.fft.rfft(phi.values) *
                           np.exp(-2j * np.pi * xi * y), n=phi.n)
    return phi.with_values(phi.values - shifted, nonneg=False)


class LevelSetDecomposition(object):
    """
    Dyadic level sets ``E_m = {2^m <= f < 2^(m+1)}`` of a nonnegative
    function, with the mass dropped by range truncation.
    """

    def __init__(self, exponents, sets, source, residual_mass=0.0):
        self.exponents = list(exponents)
        self.sets = list(sets)
        self.source = source
        self.residual_mass = residual_mass

    def __iter__(self):
        return iter(zip(self.exponents, self.sets))

    def __len__(self):
        return len(self.exponents)

    def mask(self, m):
        return self.sets[self.exponents.index(m)]

    def lower_envelope(self):
        total = np.zeros(self.source.values.shape)
        for m, mask in self:
            total += np.where(mask, 2.0 ** m, 0.0)
        return total

    def upper_envelope(self):
        return 2.0 * self.lower_envelope()

    def indicator(self, m):
        return self.source.with_values(self.mask(m).astype(float))


def _dyadic_exponent(vals):
    m = np.floor(np.log2(vals)).astype(np.int64)
    m = np.where(np.power(2.0, m) > vals, m - 1, m)
    m = np.where(np.power(2.0, m + 1) <= vals, m + 1, m)
    return m


def level_sets(f, m_min=None, m_max=None):
    """
    Split ``f >= 0`` into dyadic level sets.

    Values below ``2^m_min`` or at least ``2^(m_max+1)`` are dropped and
    their integral reported as ``residual_mass``.

    :rtype: :class:`.LevelSetDecomposition`
    """
    vals = f.values
    if np.any(vals < 0):
        raise PreconditionException(
            "Level sets need a nonnegative function (min %s)" % vals.min())
    positive = vals > 0
    if not np.any(positive):
        return LevelSetDecomposition([], [], f)
    exps = np.zeros(vals.shape, dtype=np.int64)
    exps[positive] = _dyadic_exponent(vals[positive])
    lo = int(exps[positive].min()) if m_min is None else int(m_min)
    hi = int(exps[positive].max()) if m_max is None else int(m_max)
    kept = positive & (exps >= lo) & (exps <= hi)
    residual = float(vals[positive & ~kept].sum() * f.cell_volume)
    exponents = []
    sets = []
    for m in sorted(set(exps[kept].tolist())):
        exponents.append(m)
        sets.append(kept & (exps == m))
    if residual:
        log.debug("Level sets dropped mass %s outside [2^%s, 2^%s)",
                  residual, lo, hi + 1)
    return LevelSetDecomposition(exponents, sets, f, residual)


def lorentz_norm(f, cube, r):
    """
    ``||f||_{L^(r,1)(Q0, dx/|Q0|)}`` computed exactly from the sorted
    distribution of cell values.
    """
    if r < 1:
        raise InvalidExponentException(
            "Lorentz norm L^(r,1) needs r >= 1, got %s" % r)
    vals = np.sort(np.abs(f.values[f.cube_slices(cube)]).ravel())[::-1]
    count = vals.size
    steps = vals - np.append(vals[1:], 0.0)
    weights = (np.arange(1, count + 1) / float(count)) ** (1.0 / float(r))
    return float(np.sum(weights * steps))


def level_set_sum(f, cube, r):
    """
    ``sum_m 2^m <1_(E_m)>_(Q0, r)``, the left side of the level-set bound.
    """
    total = 0.0
    for m, mask in level_sets(f.restrict(cube)):
        ind = f.with_values(mask.astype(float))
        total += 2.0 ** m * lp_average(ind, cube, r)
    return total


def _random_cube_slices(rng, n, d, margin_cells, max_depth):
    # aligned cubes clear of the margin; finer blocks when a coarse one cannot fit
    depth = int(rng.integers(1, max_depth + 1))
    while True:
        width = n >> depth
        lo = -(-margin_cells // width)
        hi = (n - margin_cells - width) // width
        if hi >= lo or width == 1:
            break
        depth += 1
    if hi < lo:
        lo, hi = 0, n // width - 1
    starts = [int(rng.integers(lo, hi + 1)) * width for _ in range(d)]
    return tuple(slice(s, s + width) for s in starts)


def random_test_function(domain, n, seed, kind='indicator-union-of-cubes',
                         **params):
    """
    Deterministic random inputs for experiments.

    :type kind: ``str``
    :param kind: One of ``indicator-union-of-cubes``, ``smooth-bump-mixture``,
                 ``spike``, ``constant``, ``uniform`` or ``gaussian``.

    Recognised ``params``: ``count``, ``margin`` (fraction of the side kept
    clear at the boundary), ``max_depth``, ``width``, ``mass``, ``value``,
    ``high``, ``center``.
    """
    if kind not in RANDOM_KINDS:
        raise InvalidValueException('kind', kind)
    if not is_power_of_two(n):
        raise InvalidValueException('n', n)
    d = domain.dim
    rng = np.random.default_rng(seed)
    margin = float(params.get('margin', 0.0))
    margin_cells = int(math.ceil(margin * n))
    shape = (n,) * d
    grid = GridFunction(domain, np.zeros(shape))
    if kind == 'indicator-union-of-cubes':
        vals = np.zeros(shape)
        max_depth = int(params.get('max_depth', min(int(math.log(n, 2)), 4)))
        for _ in range(int(params.get('count', 3))):
            vals[_random_cube_slices(rng, n, d, margin_cells, max_depth)] = 1.0
    elif kind == 'smooth-bump-mixture':
        vals = np.zeros(shape)
        mesh = grid.mesh()
        width = float(params.get('width', 0.1)) * domain.side
        lo = np.asarray(domain.lower()) + margin * domain.side + width
        hi = np.asarray(domain.upper()) - margin * domain.side - width
        for _ in range(int(params.get('count', 3))):
            c = rng.uniform(lo, np.maximum(hi, lo))
            amp = rng.uniform(0.5, 1.0)
            rho2 = sum((mesh[k] - c[k]) ** 2 for k in range(d)) / width ** 2
            inside = rho2 < 1.0
            bump = np.zeros(shape)
            bump[inside] = np.exp(-1.0 / (1.0 - rho2[inside]))
            vals += amp * bump
    elif kind == 'spike':
        vals = np.zeros(shape)
        lo_cell = margin_cells
        hi_cell = max(n - margin_cells, lo_cell + 1)
        index = tuple(int(rng.integers(lo_cell, hi_cell)) for _ in range(d))
        vals[index] = float(params.get('mass', 1.0)) / grid.cell_volume
    elif kind == 'constant':
        vals = np.full(shape, float(params.get('value', 1.0)))
    elif kind == 'uniform':
        vals = rng.uniform(0.0, float(params.get('high', 1.0)), size=shape)
    else:
        mesh = grid.mesh()
        width = float(params.get('width', 0.05)) * domain.side
        c = np.asarray(params.get('center', domain.center()), dtype=float)
        rho2 = sum((mesh[k] - c[k]) ** 2 for k in range(d)) / width ** 2
        vals = np.exp(-0.5 * rho2)
    log.debug("Generated %s test function on n=%s with seed %s", kind, n, seed)
    return GridFunction(domain, vals, meta={'kind': kind, 'seed': seed})


def unit_domain(dim, fundamental_side=1.0):
    """
    The cube ``[0, F)^d`` of the unshifted lattice, used as default ``Q0``.
    """
    return DyadicCube(dim, 1, 0, (0,) * dim, fundamental_side=fundamental_side)


def constant(domain, n, value=1.0):
    return GridFunction(domain, np.full((n,) * domain.dim, float(value)))
