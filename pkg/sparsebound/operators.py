"""
Bilinear averaging operators evaluated by direct quadrature on a grid.

``L_t(f, g)(x) = sum_k w_k f(x - t y_k) g(x - t z_k)``, with the translates
computed by multilinear interpolation and zero extension. Everything else
(maximal variants, localized and enlarged pieces, adjoints, the linearized
operator and the one-dimensional multiplier form) is built on that sum.
"""
import itertools
import logging
import math

import numpy as np

import tenacity
from tenacity import retry_if_result
from tenacity import stop_after_attempt

from .dyadic import enlarged_cover
from .dyadic import shifted_lattices
from .grid import InterpolationStencil
from .grid import shift_values
from .interfaces.exceptions import InternalGeometryException
from .interfaces.exceptions import InvalidConfigurationException
from .interfaces.exceptions import InvalidDimensionException
from .interfaces.exceptions import InvalidExponentException
from .interfaces.exceptions import InvalidValueException
from .interfaces.exceptions import PreconditionException
from .interfaces.exceptions import UnsupportedDimensionException
from .measures import support_radius

log = logging.getLogger(__name__)

DEFAULT_SUP_SAMPLES = 17
DEFAULT_J_RANGE = (-7, -2)
# Cube sidelength divided by this is the scale of the localized operators.
LOCALIZED_SCALE_DIVISOR = 8
T_FIELD_SLACK = 1e-12


class OperatorConfig(object):
    """
    Parameters shared by the operators.

    :type measure: :class:`.DiscreteMeasure`
    :param measure: The quadrature of ``mu``.

    :type scale_t: ``float``
    :param scale_t: Default scale ``t > 0``.

    :type sup_samples: ``int``
    :param sup_samples: Number of geometric samples of ``s in [t, 2t]``.

    :type j_range: ``tuple`` of ``int``
    :param j_range: Inclusive range of lacunary exponents ``j``.
    """

    def __init__(self, measure, scale_t=1.0, sup_samples=DEFAULT_SUP_SAMPLES,
                 j_range=DEFAULT_J_RANGE):
        if scale_t is None or scale_t <= 0:
            raise InvalidConfigurationException(
                "Operator scale must be positive, got %s" % scale_t)
        if sup_samples is None or int(sup_samples) < 1:
            raise InvalidConfigurationException(
                "At least one sup sample is needed, got %s" % sup_samples)
        j_min, j_max = (int(v) for v in j_range)
        if j_min > j_max:
            raise InvalidValueException('j_range', j_range)
        self.measure = measure
        self.scale_t = float(scale_t)
        self.sup_samples = int(sup_samples)
        self.j_range = (j_min, j_max)

    def copy(self, **overrides):
        params = dict(measure=self.measure, scale_t=self.scale_t,
                      sup_samples=self.sup_samples, j_range=self.j_range)
        params.update(overrides)
        return OperatorConfig(**params)

    def sup_scales(self, t=None):
        """
        Geometric samples ``t 2^(i/(N-1))``. Passing from ``N`` to ``2N - 1``
        samples keeps every previous sample.
        """
        t = self.scale_t if t is None else float(t)
        n = self.sup_samples
        if n == 1:
            return [t]
        return [t * 2.0 ** (float(i) / (n - 1)) for i in range(n)]

    def lacunary_scales(self):
        return [2.0 ** j for j in range(self.j_range[0], self.j_range[1] + 1)]

    def __repr__(self):
        return "<SB-OperatorConfig: t=%s N_s=%s j=%s %s>" % (
            self.scale_t, self.sup_samples, self.j_range, self.measure)


def _check_inputs(f, g, measure):
    if f.dim != measure.dim or g.dim != measure.dim:
        raise InvalidDimensionException(
            "Functions of dimension %s/%s with a %s-dimensional measure"
            % (f.dim, g.dim, measure.dim))
    f.check_same_grid(g)


def _inside(points, lower, upper):
    """
    Half-open box membership for points of shape ``(d, ...)``.
    """
    mask = np.ones(points.shape[1:], dtype=bool)
    for axis in range(points.shape[0]):
        mask &= (points[axis] >= lower[axis]) & (points[axis] < upper[axis])
    return mask


def _base_index(points, generation, fundamental_side):
    side = fundamental_side * 2.0 ** generation / 3.0
    return np.floor(points / side).astype(np.int64)


def _accumulate(f, g, measure, t, f_cut=None, g_cut=None):
    """
    Quadrature sum with optional cutoffs evaluated at the sample points
    ``x - t y`` and ``x - t z``. A cutoff is called with the displacement
    and returns a mask over the grid.
    """
    out = np.zeros(f.values.shape)
    h = f.cell
    for w, y, z in zip(measure.weights, measure.y, measure.z):
        if w == 0:
            continue
        term = shift_values(f.values, t * y, h)
        if f_cut is not None:
            term = term * f_cut(t * y)
        gz = shift_values(g.values, t * z, h)
        if g_cut is not None:
            gz = gz * g_cut(t * z)
        out += w * term * gz
    return out


def scale_average(f, g, cfg, t=None, estimate_error=False):
    """
    ``L_t(f, g)`` on ``f``'s grid.

    :type estimate_error: ``bool``
    :param estimate_error: Also evaluate with the refined quadrature and
                           record the largest difference in
                           ``meta['quadrature_error']``.

    :rtype: :class:`.GridFunction`
    """
    _check_inputs(f, g, cfg.measure)
    t = cfg.scale_t if t is None else float(t)
    if t <= 0:
        raise InvalidValueException('t', t)
    values = _accumulate(f, g, cfg.measure, t)
    meta = {'scale': t}
    if estimate_error:
        dense = _accumulate(f, g, cfg.measure.refined(), t)
        meta['quadrature_error'] = float(np.max(np.abs(dense - values)))
    return f.with_values(values, meta=meta)


def single_scale_maximal(f, g, cfg, t=None, return_argmax=False):
    """
    ``max_s |L_s(f, g)|`` over the sampled ``s in [t, 2t]``. The samples
    for ``N`` and ``2N - 1`` are nested, so along that sequence the output
    never decreases; for other pairs of sample counts it may.

    :type return_argmax: ``bool``
    :param return_argmax: Also return the maximizing ``s / t`` as a grid
                          function with values in ``[1, 2]``.
    """
    _check_inputs(f, g, cfg.measure)
    t = cfg.scale_t if t is None else float(t)
    best = np.full(f.values.shape, -np.inf)
    arg = np.ones(f.values.shape)
    for s in cfg.sup_scales(t):
        val = np.abs(_accumulate(f, g, cfg.measure, s))
        better = val > best
        best = np.where(better, val, best)
        arg = np.where(better, s / t, arg)
    out = f.with_values(best, meta={'scale': t,
                                    'sup_samples': cfg.sup_samples})
    if return_argmax:
        return out, f.with_values(arg)
    return out


class SupRefinement(object):

    def __init__(self, sup_samples, output, change, stable):
        self.sup_samples = sup_samples
        self.output = output
        self.change = change
        self.stable = stable

    def __repr__(self):
        return "<SB-SupRefinement: N_s=%s change=%s stable=%s>" % (
            self.sup_samples, self.change, self.stable)


def refine_until_stable(f, g, cfg, t=None, tol=1e-3, max_rounds=6):
    """
    Refine the sampling of ``[t, 2t]`` along ``N -> 2N - 1`` until the
    single-scale maximal output changes by at most ``tol`` pointwise.
    Each round keeps the previous samples, so the outputs never decrease
    pointwise from round to round. Plain doubling ``N -> 2N`` would not
    keep them and carries no such guarantee.

    :rtype: :class:`.SupRefinement`
    :return: The last refinement; ``stable`` is false if ``max_rounds``
             ran out first.
    """
    state = {'n': max(cfg.sup_samples, 2), 'previous': None}

    def attempt():
        n = state['n']
        out = single_scale_maximal(f, g, cfg.copy(sup_samples=n), t)
        previous = state['previous']
        change = (float('inf') if previous is None else
                  float(np.max(np.abs(out.values - previous.values))))
        state['previous'] = out
        state['n'] = 2 * n - 1
        log.debug("Sup refinement N_s=%s changed by %s", n, change)
        return SupRefinement(n, out, change, change <= tol)

    retrying = tenacity.Retrying(
        stop=stop_after_attempt(max_rounds),
        retry=retry_if_result(lambda result: not result.stable),
        retry_error_callback=lambda state: state.outcome.result())
    return retrying(attempt)


def lacunary_maximal(f, g, cfg):
    """
    ``max_j |L_(2^j)(f, g)|`` over ``cfg.j_range``.
    """
    _check_inputs(f, g, cfg.measure)
    best = np.zeros(f.values.shape)
    for t in cfg.lacunary_scales():
        best = np.maximum(best, np.abs(_accumulate(f, g, cfg.measure, t)))
    return f.with_values(best, meta={'j_range': cfg.j_range})


def full_maximal(f, g, cfg):
    """
    ``max_j L_(*, 2^j)(f, g)``, the sampled full maximal operator.
    """
    _check_inputs(f, g, cfg.measure)
    best = np.zeros(f.values.shape)
    for t in cfg.lacunary_scales():
        best = np.maximum(best, single_scale_maximal(f, g, cfg, t).values)
    return f.with_values(best, meta={'j_range': cfg.j_range,
                                     'sup_samples': cfg.sup_samples})


OPERATOR_KINDS = {
    'single-scale': scale_average,
    'single-scale-maximal': single_scale_maximal,
    'lacunary': lacunary_maximal,
    'full': full_maximal,
}


def operator_by_kind(kind):
    try:
        return OPERATOR_KINDS[kind]
    except KeyError:
        raise InvalidValueException('operator_kind', kind)


def localized_scale(cube, maximal=False):
    divisor = LOCALIZED_SCALE_DIVISOR * (2 if maximal else 1)
    return cube.side / divisor


def _subcube_offsets(dim):
    return [np.asarray(o) for o in itertools.product((-1, 0, 1), repeat=dim)]


def localized_operator(f, g, cube, j, cfg, maximal=False, check_support=True):
    """
    ``L_Q^j(f, g) = L_t(1_((1/3)Q) f, 1_(((1/3)Q)(j)) g)`` with
    ``t = l(Q)/8``, cutoffs applied at the sample points.

    With ``maximal`` the scale is ``l(Q)/16`` and the output is the
    single-scale maximum over ``[t, 2t]``.

    :raises InternalGeometryException: if the output has mass outside ``Q``.
    """
    _check_inputs(f, g, cfg.measure)
    count = 3 ** cube.dim
    if j < 1 or j > count:
        raise InvalidValueException('j', j)
    third = cube.third()
    corner = np.asarray(third.corner).reshape((-1,) + (1,) * f.dim)
    target = corner + _subcube_offsets(f.dim)[j - 1].reshape(corner.shape)
    mesh = f.mesh()
    fund = cube.fundamental_side
    gen = third.generation

    def f_cut(disp):
        idx = _base_index(mesh - disp.reshape(corner.shape), gen, fund)
        return np.all(idx == corner, axis=0)

    def g_cut(disp):
        idx = _base_index(mesh - disp.reshape(corner.shape), gen, fund)
        return np.all(idx == target, axis=0)

    t = localized_scale(cube, maximal)
    if maximal:
        values = np.zeros(f.values.shape)
        for s in cfg.sup_scales(t):
            values = np.maximum(values, np.abs(_accumulate(
                f, g, cfg.measure, s, f_cut, g_cut)))
    else:
        values = _accumulate(f, g, cfg.measure, t, f_cut, g_cut)
    if check_support:
        lower, upper = cube.box().float_bounds()
        outside = ~_inside(mesh, lower, upper)
        if np.any(values[outside] != 0):
            raise InternalGeometryException(
                "Localized operator for %s, j=%s has mass outside the cube"
                % (cube, j))
    return f.with_values(values, meta={'cube': cube.to_json(), 'j': j,
                                       'scale': t})


def localized_family(cfg, j, maximal=False):
    """
    A callable ``(Q, f, g) -> L_Q^j(f, g)`` for the sparse linearization.
    """
    def family(cube, f, g):
        return localized_operator(f, g, cube, j, cfg, maximal=maximal)
    return family


def localized_field(f, g, generation, cfg, lattice_id=None, j=None,
                    maximal=False):
    """
    ``sum_Q L_Q^j(f, g)`` over all cubes ``Q`` of one generation, computed
    in a single pass over the quadrature nodes.

    Restricting to one ``lattice_id`` and one ``j`` gives the field
    ``x -> L^j_(Q(x))(f, g)(x)``. Leaving both open sums every lattice and
    every subcube index, which reproduces ``L_(l(Q)/8)(f, g)`` exactly.
    """
    _check_inputs(f, g, cfg.measure)
    domain = f.domain
    lattices = shifted_lattices(f.dim, domain.fundamental_side,
                                domain.top_generation)
    if generation > lattices.top_generation:
        raise InvalidValueException('generation', generation)
    fund = lattices.fundamental_side
    factor = 2 ** (lattices.top_generation - generation)
    mesh = f.mesh()
    shape = (-1,) + (1,) * f.dim
    powers = np.asarray([3 ** (f.dim - 1 - a) for a in range(f.dim)]).reshape(shape)
    offset = None
    if j is not None:
        if j < 1 or j > 3 ** f.dim:
            raise InvalidValueException('j', j)
        offset = _subcube_offsets(f.dim)[j - 1].reshape(shape)
    if lattice_id is not None and (lattice_id < 1 or lattice_id > len(lattices)):
        raise InvalidValueException('lattice_id', lattice_id)

    side = fund * 2.0 ** generation
    t = side / (LOCALIZED_SCALE_DIVISOR * (2 if maximal else 1))
    scales = cfg.sup_scales(t) if maximal else [t]
    best = np.zeros(f.values.shape)
    for s in scales:
        values = np.zeros(f.values.shape)
        for w, y, z in zip(cfg.measure.weights, cfg.measure.y, cfg.measure.z):
            if w == 0:
                continue
            kp = _base_index(mesh - (s * y).reshape(shape), generation, fund)
            kq = _base_index(mesh - (s * z).reshape(shape), generation, fund)
            diff = kq - kp
            mask = np.all(np.abs(diff) <= 1, axis=0)
            if offset is not None:
                mask &= np.all(diff == offset, axis=0)
            if lattice_id is not None:
                residue = ((kp - 1) * factor) % 3
                mask &= (np.sum(residue * powers, axis=0) + 1) == lattice_id
            term = (shift_values(f.values, s * y, f.cell) *
                    shift_values(g.values, s * z, f.cell))
            values += w * np.where(mask, term, 0.0)
        best = np.maximum(best, np.abs(values)) if maximal else values
    return f.with_values(best, meta={'generation': generation,
                                     'lattice_id': lattice_id, 'j': j})


def lacunary_domination_sum(f, g, generation, cfg):
    """
    ``sum_(i, j) sup_(Q in D^i) |L_Q^j(f, g)|`` at one generation.
    """
    total = np.zeros(f.values.shape)
    for lattice_id in range(1, 3 ** f.dim + 1):
        for j in range(1, 3 ** f.dim + 1):
            field = localized_field(f, g, generation, cfg, lattice_id, j)
            total += np.abs(field.values)
    return f.with_values(total)


def enlarged_operator(f, g, cube, j, cfg):
    """
    ``S_(Q,j)(f, g) = L_t(1_((1/2)Q) f, 1_(Q~(j)) g)`` with ``t = l(Q)/8``,
    where ``Q~(j)`` is the half-size cover of ``((1/3)Q)(j)``.

    :raises PreconditionException: for negative inputs.
    :raises InternalGeometryException: if ``S_(Q,j) >= L_Q^j`` fails.
    """
    _check_inputs(f, g, cfg.measure)
    if not (f.nonneg and g.nonneg):
        raise PreconditionException(
            "Enlarged operators dominate the localized ones only for "
            "nonnegative inputs")
    mesh = f.mesh()
    shape = (-1,) + (1,) * f.dim
    half_lo, half_hi = cube.half().float_bounds()
    cover = [c.box().float_bounds() for c in enlarged_cover(cube, j)]

    def f_cut(disp):
        return _inside(mesh - disp.reshape(shape), half_lo, half_hi)

    def g_cut(disp):
        pts = mesh - disp.reshape(shape)
        mask = np.zeros(f.values.shape, dtype=bool)
        for lo, hi in cover:
            mask |= _inside(pts, lo, hi)
        return mask

    t = localized_scale(cube)
    values = _accumulate(f, g, cfg.measure, t, f_cut, g_cut)
    local = localized_operator(f, g, cube, j, cfg)
    tol = 1e-12 * max(1.0, float(np.max(np.abs(values))))
    if np.any(local.values > values + tol):
        raise InternalGeometryException(
            "Enlarged operator fails to dominate L_Q^j for %s, j=%s"
            % (cube, j))
    return f.with_values(values, meta={'cube': cube.to_json(), 'j': j,
                                       'scale': t})


def adjoint_1(g, h, cfg, t=None):
    """
    ``S^(*,1)(g, h)`` with ``<L_t(f, g), h> = <f, S^(*,1)(g, h)>``, the
    quadrature sum of ``g(x - t(z - y)) h(x + t y)``.
    """
    _check_inputs(g, h, cfg.measure)
    t = cfg.scale_t if t is None else float(t)
    out = np.zeros(g.values.shape)
    cell = g.cell
    for w, y, z in zip(cfg.measure.weights, cfg.measure.y, cfg.measure.z):
        inner = shift_values(g.values, t * z, cell) * h.values
        out += w * shift_values(inner, -t * y, cell)
    return g.with_values(out, meta={'scale': t})


def adjoint_2(f, h, cfg, t=None):
    """
    ``S^(*,2)(f, h)`` with ``<L_t(f, g), h> = <g, S^(*,2)(f, h)>``, the
    quadrature sum of ``f(x - t(y - z)) h(x + t z)``.
    """
    _check_inputs(f, h, cfg.measure)
    t = cfg.scale_t if t is None else float(t)
    out = np.zeros(f.values.shape)
    cell = f.cell
    for w, y, z in zip(cfg.measure.weights, cfg.measure.y, cfg.measure.z):
        inner = shift_values(f.values, t * y, cell) * h.values
        out += w * shift_values(inner, -t * z, cell)
    return f.with_values(out, meta={'scale': t})


def _check_t_field(t_field, f):
    f.check_same_grid(t_field)
    vals = t_field.values
    if np.any(vals < 1.0 - T_FIELD_SLACK) or np.any(vals > 2.0 + T_FIELD_SLACK):
        raise InvalidValueException(
            't_field', "values in [%s, %s]" % (vals.min(), vals.max()))


def _linearized_stencils(grid, t_field, cfg, t):
    points = grid.mesh().reshape(grid.dim, -1).T
    scales = (t * t_field.values).reshape(-1, 1)
    for w, y, z in zip(cfg.measure.weights, cfg.measure.y, cfg.measure.z):
        if w == 0:
            continue
        yield (w, InterpolationStencil(grid, points - scales * y),
               InterpolationStencil(grid, points - scales * z))


def linearized_full(f, g, t_field, cfg, t=None):
    """
    ``T_(t(x))(f, g)(x) = L_(t t(x))(f, g)(x)`` for a field ``t(x)`` with
    values in ``[1, 2]``.
    """
    _check_inputs(f, g, cfg.measure)
    _check_t_field(t_field, f)
    t = cfg.scale_t if t is None else float(t)
    out = np.zeros(f.values.size)
    for w, sy, sz in _linearized_stencils(f, t_field, cfg, t):
        out += w * sy.gather(f.values) * sz.gather(g.values)
    return f.with_values(out.reshape(f.values.shape), meta={'scale': t})


def linearized_adjoint_1(g, h, t_field, cfg, t=None):
    """
    Exact discrete transpose of :func:`linearized_full` in its first slot.
    """
    _check_inputs(g, h, cfg.measure)
    _check_t_field(t_field, g)
    t = cfg.scale_t if t is None else float(t)
    out = np.zeros(g.values.size)
    hv = h.values.ravel()
    for w, sy, sz in _linearized_stencils(g, t_field, cfg, t):
        out += sy.scatter(w * sz.gather(g.values) * hv)
    return g.with_values(out.reshape(g.values.shape), meta={'scale': t})


def frequency_grid(grid):
    """
    Signed DFT frequencies of a one-dimensional grid, in cycles per unit.
    """
    return np.fft.fftfreq(grid.n, d=grid.cell)


def _multiplier_samples(m, grid):
    if callable(m):
        xi = frequency_grid(grid)
        xx, ee = np.meshgrid(xi, xi, indexing='ij')
        return np.asarray(m(xx, ee), dtype=complex)
    samples = np.asarray(m, dtype=complex)
    if samples.ndim == 0:
        return np.full((grid.n, grid.n), complex(samples))
    if samples.shape != (grid.n, grid.n):
        raise InvalidValueException('m', samples.shape)
    return samples


def bilinear_multiplier_apply(m, f, g):
    """
    ``T_m(f, g)(x) = sum f^(xi) g^(eta) m(xi, eta) e^(2 pi i x (xi + eta))``
    on a periodic one-dimensional grid.

    :type m: callable or array-like
    :param m: ``m(xi, eta)`` on the DFT frequency grid, or its samples.

    :rtype: :class:`.GridFunction`
    :return: Real part of the result; the discarded imaginary part is kept
             in ``meta['imag_residual']``.
    """
    if f.dim != 1 or g.dim != 1:
        raise UnsupportedDimensionException('bilinear multiplier', f.dim, (1,))
    f.check_same_grid(g)
    n = f.n
    fh = np.fft.fft(f.values) / n
    gh = np.fft.fft(g.values) / n
    prod = np.outer(fh, gh) * _multiplier_samples(m, f)
    index = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    coeff = (np.bincount(index.ravel(), weights=prod.real.ravel(), minlength=n) +
             1j * np.bincount(index.ravel(), weights=prod.imag.ravel(),
                              minlength=n))
    out = n * np.fft.ifft(coeff)
    return f.with_values(out.real, nonneg=False,
                         meta={'imag_residual': float(np.max(np.abs(out.imag)))})


def smooth_step(u):
    """
    ``C^infinity`` step: 0 for ``u <= 0``, 1 for ``u >= 1``.
    """
    u = np.asarray(u, dtype=float)
    a = np.where(u > 0, np.exp(-1.0 / np.where(u > 0, u, 1.0)), 0.0)
    v = 1.0 - u
    b = np.where(v > 0, np.exp(-1.0 / np.where(v > 0, v, 1.0)), 0.0)
    return a / (a + b)


class MultiplierProbe(object):
    """
    Parameters of the multiplier splitting ``m = m Phi_R + m (1 - Phi_R)``
    with ``R = |y|^(-a)``.

    :type decay_s: ``float``
    :param decay_s: Decay rate ``s`` of ``|m| <~ (1 + |(xi, eta)|)^(-s)``.

    :type lq_exponent: ``float``
    :param lq_exponent: ``q in [1, 4)`` with ``m in L^q``.
    """

    def __init__(self, decay_s, lq_exponent=2.0, cutoff_epsilon=0.25,
                 split_a=None):
        if decay_s <= 0:
            raise InvalidExponentException(
                "Multiplier decay must be positive, got %s" % decay_s)
        if not 1.0 <= lq_exponent < 4.0:
            raise InvalidExponentException(
                "The L^q exponent must lie in [1, 4), got %s" % lq_exponent)
        if not 0 < cutoff_epsilon < 1:
            raise InvalidValueException('cutoff_epsilon', cutoff_epsilon)
        a = 1.0 / (1.0 + decay_s) if split_a is None else float(split_a)
        if not 0 < a < 1:
            raise InvalidValueException('split_a', split_a)
        self.decay_s = float(decay_s)
        self.lq_exponent = float(lq_exponent)
        self.cutoff_epsilon = float(cutoff_epsilon)
        self.split_a = a

    def cutoff(self, xi, radius=1.0):
        """
        ``Phi_R(xi) = Phi(xi / R)`` with
        ``1_[-1+eps, 1-eps] <= Phi <= 1_[-1, 1]``.
        """
        u = (1.0 - np.abs(np.asarray(xi, dtype=float) / radius)) / \
            self.cutoff_epsilon
        return smooth_step(u)

    def radius(self, y):
        return abs(float(y)) ** (-self.split_a)

    def predicted_exponent(self):
        s = self.decay_s
        return s * (1.0 - self.lq_exponent / 4.0) / (1.0 + s)

    def derivative_order(self, dim):
        return int(math.floor(2.0 * dim / (4.0 - self.lq_exponent))) + 1

    def synthetic_multiplier(self, xi, eta):
        """
        ``(1 + xi^2 + eta^2)^(-s/2)``, a multiplier with exact decay ``s``.
        """
        return (1.0 + np.asarray(xi) ** 2 + np.asarray(eta) ** 2) ** \
            (-self.decay_s / 2.0)

    def __repr__(self):
        return "<SB-MultiplierProbe: s=%s q=%s a=%s>" % (
            self.decay_s, self.lq_exponent, self.split_a)


def continuity_split(m, y, probe, f, g):
    """
    Split ``T_m(Delta_y f, g)`` into the low-frequency part ``A`` with
    multiplier ``(1 - e^(-2 pi i y xi)) m Phi_R`` and the high-frequency
    part ``C`` with ``(1 - e^(-2 pi i y xi)) m (1 - Phi_R)``, where
    ``Delta_y f = f - f(. - y)`` and ``R = |y|^(-a)``.

    :rtype: ``tuple`` of :class:`.GridFunction`
    """
    y = float(np.asarray(y, dtype=float).reshape(-1)[0])
    if abs(y) > 1:
        raise PreconditionException(
            "The splitting needs |y| <= 1, got %s" % y)
    if f.dim != 1:
        raise UnsupportedDimensionException('continuity split', f.dim, (1,))
    if y == 0:
        return f.zeros_like(), f.zeros_like()
    samples = _multiplier_samples(m, f)
    xi = frequency_grid(f)[:, None]
    diff = 1.0 - np.exp(-2j * np.pi * y * xi)
    phi = probe.cutoff(xi, probe.radius(y))
    low = bilinear_multiplier_apply(diff * samples * phi, f, g)
    high = bilinear_multiplier_apply(diff * samples * (1.0 - phi), f, g)
    return low, high


def support_margin(measure, t):
    """
    Reach of ``L_t`` beyond the inputs' supports.
    """
    return support_radius(measure) * t


__all__ = ['OperatorConfig', 'MultiplierProbe', 'scale_average',
           'single_scale_maximal', 'lacunary_maximal', 'full_maximal',
           'localized_operator', 'localized_field', 'enlarged_operator',
           'adjoint_1', 'adjoint_2', 'linearized_full', 'linearized_adjoint_1',
           'bilinear_multiplier_apply', 'continuity_split',
           'refine_until_stable']
