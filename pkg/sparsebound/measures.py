"""
Quadrature models of the measures driving the bilinear averages: the
triangle manifold, the sphere of R^(2d) and the product of two spheres.
"""
import json
import logging
import math

import numpy as np

from scipy.spatial.distance import pdist
from scipy.special import j0

import six

from .interfaces.exceptions import InvalidDimensionException
from .interfaces.exceptions import InvalidExperimentException
from .interfaces.exceptions import InvalidValueException
from .interfaces.exceptions import UnsupportedDimensionException

log = logging.getLogger(__name__)

NORMALIZED_DIAMETER = 0.5
# Relative slack that keeps normalize_support idempotent under rounding.
DIAMETER_SLACK = 1e-12

FAMILIES = ('triangle', 'bisphere', 'product-sphere', 'custom')


class DiscreteMeasure(object):
    """
    Nonnegative weights on nodes ``(y, z)`` of ``R^(2d)``.

    :type nodes: array-like
    :param nodes: Array of shape ``(K, 2d)``; the first ``d`` columns are
                  ``y`` and the last ``d`` are ``z``.
    """

    def __init__(self, dim, nodes, weights, family='custom', n_nodes=None,
                 scale=1.0):
        if dim < 1:
            raise InvalidDimensionException(
                "A measure needs d >= 1, got %s" % dim)
        nodes = np.array(nodes, dtype=float).reshape(-1, 2 * dim)
        weights = np.array(weights, dtype=float).reshape(-1)
        if nodes.shape[0] != weights.shape[0]:
            raise InvalidValueException('weights', weights.shape)
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise InvalidValueException('weights', 'negative or non-finite')
        if not np.all(np.isfinite(nodes)):
            raise InvalidValueException('nodes', 'non-finite')
        if family not in FAMILIES:
            raise InvalidValueException('family', family)
        nodes.setflags(write=False)
        weights.setflags(write=False)
        self._dim = int(dim)
        self._nodes = nodes
        self._weights = weights
        self.family = family
        self.n_nodes = n_nodes
        self.scale = float(scale)
        self._diam = None

    @property
    def dim(self):
        return self._dim

    @property
    def nodes(self):
        return self._nodes

    @property
    def weights(self):
        return self._weights

    @property
    def y(self):
        return self._nodes[:, :self._dim]

    @property
    def z(self):
        return self._nodes[:, self._dim:]

    @property
    def total_mass(self):
        return float(self._weights.sum())

    @property
    def support_diam(self):
        """
        Largest pairwise distance between nodes in ``R^(2d)``.
        """
        if self._diam is None:
            if len(self._nodes) < 2:
                self._diam = 0.0
            else:
                self._diam = float(pdist(self._nodes).max())
        return self._diam

    def __len__(self):
        return len(self._weights)

    def scaled(self, factor):
        """
        Nodes multiplied by ``factor``; weights and mass are unchanged.
        """
        return DiscreteMeasure(self._dim, self._nodes * factor, self._weights,
                               self.family, self.n_nodes, self.scale * factor)

    def refined(self):
        """
        The same measure with twice the node count, scaled like this one.
        Custom measures cannot be refined and are returned unchanged.
        """
        if self.family == 'custom' or not self.n_nodes:
            log.debug("Measure %s has no refinement rule", self)
            return self
        dense = build_measure(self.family, self._dim, 2 * self.n_nodes)
        return dense.scaled(self.scale)

    def integrate(self, func):
        """
        Quadrature of ``func(y, z)``, vectorized over nodes.
        """
        return np.sum(self._weights * func(self.y, self.z))

    def to_json(self):
        return {'dim': self._dim, 'family': self.family,
                'nodes': self._nodes.tolist(),
                'weights': self._weights.tolist()}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, six.string_types):
            data = json.loads(data)
        return cls(int(data['dim']), data['nodes'], data['weights'],
                   data.get('family', 'custom'))

    def __repr__(self):
        return "<SB-DiscreteMeasure: %s d=%s (%s nodes)>" % (
            self.family, self._dim, len(self))


def _circle(n, phase=0.0):
    theta = 2 * np.pi * np.arange(n) / n + phase
    return np.cos(theta), np.sin(theta)


def triangle_measure(dim, n_nodes):
    """
    Equilateral triangles ``|y| = |z| = |y - z| = 1`` in the plane: ``y``
    runs over ``n_nodes`` uniform angles and ``z`` is ``y`` rotated by
    ``+pi/3`` or ``-pi/3``, each branch carrying half the mass.
    """
    if dim != 2:
        raise UnsupportedDimensionException('triangle measure', dim, (2,))
    if n_nodes < 8:
        raise InvalidValueException('n_nodes', n_nodes)
    theta = 2 * np.pi * np.arange(n_nodes) / n_nodes
    nodes = []
    for sign in (1.0, -1.0):
        rot = theta + sign * np.pi / 3
        nodes.append(np.column_stack([np.cos(theta), np.sin(theta),
                                      np.cos(rot), np.sin(rot)]))
    weights = np.full(2 * n_nodes, 1.0 / (2 * n_nodes))
    return DiscreteMeasure(2, np.vstack(nodes), weights, 'triangle', n_nodes)


def bilinear_sphere_measure(dim, n_nodes):
    """
    Normalized surface measure of the unit sphere of ``R^(2d)``.

    For ``d = 1`` the nodes are uniform on the circle. For ``d = 2`` they
    follow the Hopf angles ``(cos a w1, sin a w2)``: Gauss-Legendre in ``a``
    weighted by ``sin a cos a`` and ``n_nodes`` uniform angles on each circle.
    """
    if dim == 1:
        if n_nodes < 4:
            raise InvalidValueException('n_nodes', n_nodes)
        c, s = _circle(n_nodes)
        nodes = np.column_stack([c, s])
        weights = np.full(n_nodes, 1.0 / n_nodes)
        return DiscreteMeasure(1, nodes, weights, 'bisphere', n_nodes)
    if dim == 2:
        if n_nodes < 4:
            raise InvalidValueException('n_nodes', n_nodes)
        n_alpha = max(2, n_nodes // 4)
        x, w = np.polynomial.legendre.leggauss(n_alpha)
        alpha = (x + 1.0) * np.pi / 4.0
        w_alpha = w * (np.pi / 4.0) * np.sin(alpha) * np.cos(alpha)
        phi = 2 * np.pi * np.arange(n_nodes) / n_nodes
        a, p1, p2 = np.meshgrid(alpha, phi, phi, indexing='ij')
        nodes = np.column_stack([
            (np.cos(a) * np.cos(p1)).ravel(), (np.cos(a) * np.sin(p1)).ravel(),
            (np.sin(a) * np.cos(p2)).ravel(), (np.sin(a) * np.sin(p2)).ravel()])
        weights = np.broadcast_to(w_alpha[:, None, None], a.shape).ravel()
        weights = weights / weights.sum()
        return DiscreteMeasure(2, nodes, weights, 'bisphere', n_nodes)
    raise UnsupportedDimensionException('bilinear sphere measure', dim, (1, 2))


def product_sphere_measure(dim, n_nodes):
    """
    Tensor product of two uniform circle quadratures, ``|y| = |z| = 1``.
    """
    if dim != 2:
        raise UnsupportedDimensionException('product sphere measure', dim, (2,))
    if n_nodes < 4:
        raise InvalidValueException('n_nodes', n_nodes)
    c, s = _circle(n_nodes)
    yy = np.repeat(np.column_stack([c, s]), n_nodes, axis=0)
    zz = np.tile(np.column_stack([c, s]), (n_nodes, 1))
    weights = np.full(n_nodes * n_nodes, 1.0 / (n_nodes * n_nodes))
    return DiscreteMeasure(2, np.hstack([yy, zz]), weights, 'product-sphere',
                           n_nodes)


def custom_measure(data):
    """
    A measure read from a JSON document, a path to one, or a dict with
    ``dim``, ``nodes`` and ``weights``.
    """
    if isinstance(data, six.string_types) and not data.lstrip().startswith('{'):
        with open(data) as fh:
            data = json.load(fh)
    measure = DiscreteMeasure.from_json(data)
    measure.family = 'custom'
    return measure


_BUILDERS = {
    'triangle': triangle_measure,
    'bisphere': bilinear_sphere_measure,
    'product-sphere': product_sphere_measure,
}


def build_measure(family, dim, n_nodes):
    builder = _BUILDERS.get(family)
    if builder is None:
        raise InvalidValueException('family', family)
    return builder(dim, n_nodes)


def normalize_support(measure):
    """
    Rescale nodes by the smallest factor bringing the support diameter to at
    most 1/2.

    :rtype: ``tuple`` of (:class:`.DiscreteMeasure`, ``float``)
    :return: The normalized measure and the factor applied.
    """
    if len(measure) == 0:
        raise InvalidValueException('measure', 'empty')
    diam = measure.support_diam
    if diam <= NORMALIZED_DIAMETER * (1.0 + DIAMETER_SLACK):
        return measure, 1.0
    factor = NORMALIZED_DIAMETER / diam
    log.debug("Rescaling %s by %s to support diameter 1/2", measure, factor)
    return measure.scaled(factor), factor


def fourier_transform(measure, xi, eta):
    """
    ``mu^(xi, eta) = sum_k w_k exp(-2 pi i (xi . y_k + eta . z_k))``.

    :rtype: ``complex``
    """
    xi = np.asarray(xi, dtype=float).reshape(-1)
    eta = np.asarray(eta, dtype=float).reshape(-1)
    if xi.size != measure.dim or eta.size != measure.dim:
        raise InvalidDimensionException(
            "Frequencies must have %s components" % measure.dim)
    phase = measure.y.dot(xi) + measure.z.dot(eta)
    return complex(np.sum(measure.weights * np.exp(-2j * np.pi * phase)))


def fourier_transform_many(measure, frequencies):
    """
    Vectorized transform at frequencies of shape ``(m, 2d)``.
    """
    freqs = np.atleast_2d(np.asarray(frequencies, dtype=float))
    phase = freqs.dot(measure.nodes.T)
    return np.exp(-2j * np.pi * phase).dot(measure.weights)


def fourier_decay_fit(measure, radii, window=1.0, samples=16, direction=None):
    """
    Least-squares slope of ``log max|mu^|`` against ``log R``.

    The maximum is taken over a window ``[R, R + window]`` along
    ``direction`` so that zeros of oscillatory transforms do not spoil the
    fit.

    :rtype: ``tuple`` of (``float``, ``float``, ``numpy.ndarray``)
    :return: Slope, coefficient of determination and the envelope values.
    """
    radii = np.asarray(radii, dtype=float)
    if radii.size < 2:
        raise InvalidExperimentException("A decay fit needs two radii")
    if direction is None:
        direction = np.zeros(2 * measure.dim)
        direction[0] = 1.0
    direction = np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    envelope = []
    for radius in radii:
        rho = radius + np.linspace(0.0, window, samples)
        values = np.abs(fourier_transform_many(measure,
                                               np.outer(rho, direction)))
        envelope.append(values.max())
    envelope = np.asarray(envelope)
    slope, r2 = log_log_fit(radii, envelope)
    return slope, r2, envelope


def log_log_fit(x, y):
    """
    Slope and ``r^2`` of a least-squares line through ``(log x, log y)``.
    """
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = ly - (slope * lx + intercept)
    total = np.sum((ly - ly.mean()) ** 2)
    r2 = 1.0 - np.sum(residual ** 2) / total if total > 0 else 1.0
    return float(slope), float(r2)


def predicted_decay(dim):
    return -(2.0 * dim - 1.0) / 2.0


def node_residual(measure):
    """
    Largest violation of the defining equations of the measure's family.
    """
    y = measure.y
    z = measure.z
    ny = np.linalg.norm(y, axis=1)
    nz = np.linalg.norm(z, axis=1)
    if measure.family == 'triangle':
        nyz = np.linalg.norm(y - z, axis=1)
        res = np.max(np.abs(np.stack([ny, nz, nyz]) - measure.scale))
    elif measure.family == 'bisphere':
        res = np.max(np.abs(np.sqrt(ny ** 2 + nz ** 2) - measure.scale))
    elif measure.family == 'product-sphere':
        res = np.max(np.abs(np.stack([ny, nz]) - measure.scale))
    else:
        res = 0.0
    return float(res)


def support_radius(measure):
    """
    ``max |y|, |z|`` over nodes, the reach of one unit of scale.
    """
    return float(max(np.linalg.norm(measure.y, axis=1).max(),
                     np.linalg.norm(measure.z, axis=1).max()))


def unit_circle_transform(radius):
    """
    Closed form of the uniform circle measure's transform, ``J0(2 pi R)``.
    """
    return j0(2 * math.pi * np.asarray(radius, dtype=float))
