"""
Experiment harness.

Each experiment turns one analytic estimate into a measured number and
returns a report with a ``passed`` flag; a negative answer is never raised.
Everything is seeded, and trials are combined in trial order so reports do
not depend on the thread count.
"""
import csv
import logging
import math
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction as F

import numpy as np

from .exponents import ExponentTriple
from .exponents import admissibility
from .exponents import decay_thresholds
from .exponents import region as build_region
from .exponents import scaling_exponent
from .grid import block_lp_averages
from .grid import level_set_sum
from .grid import lorentz_norm
from .grid import lp_average
from .grid import random_test_function
from .grid import translate_diff
from .grid import unit_domain
from .interfaces.exceptions import DegenerateInputException
from .interfaces.exceptions import InvalidExperimentException
from .interfaces.exceptions import InvalidParametersException
from .interfaces.exceptions import InvalidValueException
from .interfaces.exceptions import PreconditionException
from .measures import fourier_decay_fit
from .measures import log_log_fit
from .measures import predicted_decay
from .operators import MultiplierProbe
from .operators import OperatorConfig
from .operators import adjoint_1
from .operators import bilinear_multiplier_apply
from .operators import continuity_split
from .operators import frequency_grid
from .operators import lacunary_domination_sum
from .operators import lacunary_maximal
from .operators import linearized_adjoint_1
from .operators import linearized_full
from .operators import localized_field
from .operators import scale_average
from .operators import single_scale_maximal
from .operators import support_margin
from .sparse import build_sparse_family
from .sparse import choose_C0
from .sparse import cz_decompose
from .sparse import sparse_form
from .sparse import sparse_sum
from .sparse import stopping_family
from .sparse import stopping_measure
from .sparse import verify_sparsity

log = logging.getLogger(__name__)

DEFAULT_SEED = 7
SLOPE_TOLERANCE = 0.1
FIT_R2_MIN = 0.9
REFINEMENT_DELTA_MAX = 0.2
DUALITY_RTOL = 1e-6
MONOTONE_SLACK = 0.05
TRUNCATION_RTOL = 1e-12


def _triple(x):
    return x if isinstance(x, ExponentTriple) else ExponentTriple(*x)


def _r_exponent(inv):
    return float('inf') if inv == 0 else float(1 / inv)


class Report(object):
    """
    Base of the experiment reports: a name, a ``passed`` flag and the
    measured quantities.
    """

    def __init__(self, name, passed, **metrics):
        self.name = name
        self.passed = bool(passed)
        self.metrics = OrderedDict(sorted(metrics.items()))

    def __getattr__(self, item):
        metrics = self.__dict__.get('metrics', {})
        if item in metrics:
            return metrics[item]
        raise AttributeError(item)

    def to_json(self):
        data = OrderedDict([('name', self.name), ('passed', self.passed)])
        for key, value in self.metrics.items():
            data[key] = _jsonable(value)
        return data

    def __repr__(self):
        return "<SB-%s: %s passed=%s>" % (self.__class__.__name__, self.name,
                                          self.passed)


def _jsonable(value):
    if hasattr(value, 'to_json'):
        return value.to_json()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


class DecayFit(Report):
    """
    ``log norm`` against ``log |y|`` with ``|y|`` strictly decreasing.
    """

    def __init__(self, name, abscissae, norms, fitted_eta, r2, monotone,
                 r2_min=FIT_R2_MIN):
        super(DecayFit, self).__init__(
            name, fitted_eta > 0 and r2 >= r2_min and monotone,
            abscissae=list(abscissae), norms=list(norms),
            fitted_eta=fitted_eta, r2=r2, monotone=monotone)


class ExperimentSetup(object):
    """
    Grid, seed and operator parameters shared by the experiments.
    """

    def __init__(self, measure, grid_n=256, seed=DEFAULT_SEED, scale_t=0.125,
                 sup_samples=17, j_range=(-7, -2), threads=1):
        self.measure = measure
        self.dim = measure.dim
        self.grid_n = int(grid_n)
        self.seed = int(seed)
        self.threads = max(1, int(threads))
        self.operator = OperatorConfig(measure, scale_t, sup_samples, j_range)
        self.domain = unit_domain(self.dim)

    def inputs(self, seed, kind='indicator-union-of-cubes', n=None, **params):
        return random_test_function(self.domain, n or self.grid_n, seed, kind,
                                    **params)

    def run_trials(self, func, count):
        if self.threads == 1:
            return [func(i) for i in range(count)]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(func, range(count)))


def _truncated(grid, reference):
    ring = ~grid.interior_mask(grid.cell)
    scale = max(float(np.max(np.abs(reference))), 1e-300)
    return bool(np.any(np.abs(grid.values[ring]) > TRUNCATION_RTOL * scale))


def scaling_law_experiment(setup, f, g, x, t_list, mode='normalized',
                           tolerance=SLOPE_TOLERANCE):
    """
    Fit the power of ``t`` in ``||L_t(f_t, g_t)||_r`` where ``f_t`` is ``f``
    dilated by ``t`` about the domain centre.

    In ``normalized`` mode the norm is divided by ``||f_t||_p ||g_t||_q``
    and the prediction is ``d(1/r - 1/p - 1/q)``; in ``plateau`` mode it is
    not, and the prediction is ``d/r``.

    :raises InvalidExperimentException: for fewer than two scales or when
                                        a dilated input or output reaches
                                        the domain boundary.
    """
    x = _triple(x)
    t_list = sorted(set(float(t) for t in t_list))
    if len(t_list) < 2:
        raise InvalidExperimentException(
            "A scaling fit needs at least two distinct scales")
    if mode not in ('normalized', 'plateau'):
        raise InvalidValueException('mode', mode)
    p, q, r = (_r_exponent(v) for v in x.as_tuple())
    base = setup.operator.scale_t
    values = []
    for t in t_list:
        ft, gt = f.dilate(t), g.dilate(t)
        out = scale_average(ft, gt, setup.operator, base * t)
        for grid in (ft, gt, out):
            if _truncated(grid, grid.values):
                raise InvalidExperimentException(
                    "Support reaches the boundary at t=%s" % t)
        value = out.lp_norm(r)
        if mode == 'normalized':
            value /= ft.lp_norm(p) * gt.lp_norm(q)
        values.append(value)
    slope, r2 = log_log_fit(t_list, values)
    if mode == 'normalized':
        predicted = float(scaling_exponent(x, setup.dim))
    else:
        predicted = setup.dim / r
    log.info("Scaling slope %s against %s (r2 %s)", slope, predicted, r2)
    return Report('scaling', abs(slope - predicted) <= tolerance,
                  slope=slope, predicted=predicted, r2=r2, scales=t_list,
                  norms=values, mode=mode)


OPERATORS = {
    'single-scale': scale_average,
    'single-scale-maximal': single_scale_maximal,
}


def continuity_experiment(setup, operator_kind, x, y_list, which='first',
                          f=None, g=None, r2_min=FIT_R2_MIN):
    """
    ``||L((I - tau_y) f, g)||_r`` (or the second slot, or both) against
    ``|y|``, fitted to ``|y|^eta``.

    :rtype: :class:`.DecayFit`
    """
    try:
        operator = OPERATORS[operator_kind]
    except KeyError:
        raise InvalidValueException('operator_kind', operator_kind)
    if which not in ('first', 'second', 'both'):
        raise InvalidValueException('which', which)
    x = _triple(x)
    t = setup.operator.scale_t
    ys = sorted(set(abs(float(y)) for y in y_list), reverse=True)
    if any(y > t for y in ys):
        raise PreconditionException(
            "Continuity shifts must satisfy |y| <= t = %s" % t)
    margin = support_margin(setup.measure, 2 * t) + t
    f = f if f is not None else setup.inputs(setup.seed, margin=margin)
    g = g if g is not None else setup.inputs(setup.seed + 1, margin=margin)
    r = _r_exponent(x.inv_r)
    abscissae, norms = [], []
    for y in ys:
        shift = np.zeros(setup.dim)
        shift[0] = y
        a = translate_diff(f, shift) if which in ('first', 'both') else f
        b = translate_diff(g, shift) if which in ('second', 'both') else g
        norm = operator(a, b, setup.operator).lp_norm(r)
        if y == 0:
            continue
        abscissae.append(y)
        norms.append(norm)
    if len(abscissae) < 2 or min(norms) <= 0:
        raise InvalidExperimentException(
            "Continuity fit needs two nonzero shifts with nonzero norms")
    eta, r2 = log_log_fit(abscissae, norms)
    monotone = all(a >= b * (1 - MONOTONE_SLACK)
                   for a, b in zip(norms, norms[1:]))
    log.info("Continuity %s/%s: eta %s r2 %s", operator_kind, which, eta, r2)
    return DecayFit('continuity-%s-%s' % (operator_kind, which), abscissae,
                    norms, eta, r2, monotone, r2_min)


def _sparse_trial(setup, x, seed, n):
    p, q = float(1 / x.inv_p), float(1 / x.inv_q)
    r_prime = x.r_prime
    f = setup.inputs(seed, n=n)
    g = setup.inputs(seed + 100003, n=n)
    h = setup.inputs(seed + 200003, 'uniform', n=n)
    if f.integral() == 0 or g.integral() == 0:
        return None
    cfg = setup.operator
    numerator = lacunary_maximal(f, g, cfg).inner(h)
    family = build_sparse_family(f, g, h, setup.domain, p, q, r_prime)
    form = sparse_form(family, f, g, h, p, q, r_prime)
    if form == 0:
        return None
    return numerator / form, verify_sparsity(family).passed


def sparse_ratio_experiment(setup, x, trials=100, region_name=None,
                            refine=True, csv_stream=None,
                            delta_max=REFINEMENT_DELTA_MAX):
    """
    ``<L_lac(f, g), h> / Lambda_S(f, g, h)`` over random indicator ``f, g``
    and uniform ``h``, with ``S`` built by the stopping construction.

    :raises InvalidParametersException: if ``x`` fails ``r >= p, q`` and
                                        ``r > 1``, or lies outside the
                                        relative interior of the part of
                                        ``region_name`` with ``r >= p, q``.
    """
    x = _triple(x)
    report = admissibility(x)
    if not report.theorem_hypotheses:
        raise InvalidParametersException(
            "Exponent triple %s fails %s" % (x, report.failures()))
    if region_name is not None:
        if setup.dim < 2:
            log.warning("No transcribed region %s for d=%s; interior check "
                        "skipped", region_name, setup.dim)
        elif not build_region(region_name, setup.dim,
                              intersect=True).contains(x, 'relative'):
            raise InvalidParametersException(
                "%s is not interior to the part of %s with r >= p, q"
                % (x, region_name))

    def trial(i, n):
        result = _sparse_trial(setup, x, setup.seed + i, n)
        if result is None:
            log.warning("Trial %s skipped: vanishing input or form", i)
        return result

    coarse = setup.run_trials(lambda i: trial(i, setup.grid_n), trials)
    ratios = [(i, c[0]) for i, c in enumerate(coarse) if c is not None]
    sparse_ok = all(c[1] for c in coarse if c is not None)
    if csv_stream is not None:
        writer = csv.writer(csv_stream)
        writer.writerow(['trial', 'seed', 'value'])
        for i, value in ratios:
            writer.writerow([i, setup.seed + i, '%.17g' % value])
    values = [v for _, v in ratios]
    if not values:
        return Report('sparse-ratio', False, trials=trials, skipped=trials)
    maximum = max(values)
    metrics = dict(trials=trials, skipped=trials - len(values),
                   max_ratio=maximum, median_ratio=float(np.median(values)),
                   sparsity_ok=sparse_ok)
    passed = sparse_ok and all(math.isfinite(v) for v in values)
    if refine:
        fine = setup.run_trials(lambda i: trial(i, 2 * setup.grid_n), trials)
        fine_values = [c[0] for c in fine if c is not None]
        fine_max = max(fine_values) if fine_values else float('nan')
        delta = abs(fine_max - maximum) / maximum if maximum else float('inf')
        metrics.update(refined_max_ratio=fine_max, refinement_delta=delta)
        passed = passed and delta < delta_max
    log.info("Sparse ratio over %s trials: max %s", trials, maximum)
    return Report('sparse-ratio', passed, **metrics)


class WeightVector(object):
    """
    Weights ``w_1, w_2`` with exponents ``p = (p_1, p_2)`` and
    ``r = (r_1, r_2, r_3)``.
    """

    def __init__(self, w1, w2, p_vec, r_vec):
        w1.check_same_grid(w2)
        for w in (w1, w2):
            if np.any(w.values < 0):
                raise InvalidValueException('weight', float(w.values.min()))
            if np.any(w.values == 0):
                raise DegenerateInputException(
                    "A weight vanishes on %s cells" % int((w.values == 0).sum()))
        p_vec = [float(v) for v in p_vec]
        r_vec = [float(v) for v in r_vec]
        if len(p_vec) != 2 or len(r_vec) != 3:
            raise InvalidValueException('exponents', (p_vec, r_vec))
        if sum(1.0 / v for v in r_vec) <= 1:
            raise InvalidParametersException(
                "The weight class needs sum 1/r_i > 1, got %s" % r_vec)
        inv_p = sum(1.0 / v for v in p_vec)
        r_dual = r_vec[2] / (r_vec[2] - 1.0) if r_vec[2] > 1 else float('inf')
        if any(r >= p for r, p in zip(r_vec, p_vec)) or r_dual <= 1 / inv_p:
            raise InvalidParametersException(
                "The weight class needs r_i < p_i and r_3' > p")
        self.w1 = w1
        self.w2 = w2
        self.p_vec = p_vec
        self.r_vec = r_vec
        self.p = 1.0 / inv_p
        self.r_dual = r_dual

    def combined(self):
        """
        ``w = prod w_i^(p/p_i)``.
        """
        return (self.w1.values ** (self.p / self.p_vec[0]) *
                self.w2.values ** (self.p / self.p_vec[1]))

    def factors(self):
        """
        ``(values, power, outer exponent)`` for each factor of the constant.
        """
        p, rd = self.p, self.r_dual
        out = [(self.combined(), rd / (rd - p), 1.0 / p - 1.0 / rd)]
        for w, p_i, r_i in zip((self.w1, self.w2), self.p_vec, self.r_vec):
            out.append((w.values, r_i / (r_i - p_i), 1.0 / r_i - 1.0 / p_i))
        return out


def muckenhoupt_constant(weights, cube_family=None):
    """
    Supremum over cubes of
    ``(avg w^(r3'/(r3'-p)))^(1/p - 1/r3') prod (avg w_i^(r_i/(r_i-p_i)))^(1/r_i - 1/p_i)``.

    :type cube_family: ``list`` of :class:`.DyadicCube`
    :param cube_family: Defaults to every dyadic block of the grid.
    """
    grid = weights.w1
    factors = weights.factors()
    if cube_family is None:
        depth_max = int(round(math.log(grid.n, 2)))
        best = 0.0
        for depth in range(depth_max + 1):
            product = np.ones((2 ** depth,) * grid.dim)
            for values, power, outer in factors:
                product *= block_lp_averages(values ** power, depth, 1.0) ** outer
            best = max(best, float(product.max()))
        return best
    best = 0.0
    for cube in cube_family:
        value = 1.0
        for values, power, outer in factors:
            value *= lp_average(grid.with_values(values ** power), cube,
                                1.0) ** outer
        best = max(best, value)
    return best


def _refinement_report(name, ratios, fine_ratios, delta_max):
    maximum = max(ratios)
    fine_max = max(fine_ratios)
    delta = abs(fine_max - maximum) / maximum if maximum else float('inf')
    finite = all(math.isfinite(v) for v in ratios + fine_ratios)
    return Report(name, finite and delta < delta_max, max_ratio=maximum,
                  refined_max_ratio=fine_max, refinement_delta=delta,
                  ratios=ratios)


def lorentz_embedding_experiment(setup, r, p, trials=20, delta_max=REFINEMENT_DELTA_MAX):
    """
    ``||f||_(L^(r,1)) / <f>_(Q0,p)`` for ``p > r`` on smooth random inputs,
    at the setup resolution and one refinement.
    """
    if p <= r:
        raise PreconditionException(
            "The Lorentz embedding needs p > r, got p=%s r=%s" % (p, r))

    def ratio(i, n):
        f = setup.inputs(setup.seed + i, 'smooth-bump-mixture', n=n)
        return lorentz_norm(f, setup.domain, r) / lp_average(f, setup.domain, p)

    coarse = [ratio(i, setup.grid_n) for i in range(trials)]
    fine = [ratio(i, 2 * setup.grid_n) for i in range(trials)]
    return _refinement_report('lorentz-embedding', coarse, fine, delta_max)


def level_set_experiment(setup, r, trials=20, delta_max=REFINEMENT_DELTA_MAX):
    """
    ``sum_m 2^m <1_(E_m)>_(Q0,r) / ||f||_(L^(r,1))`` on smooth random inputs.
    """
    def ratio(i, n):
        f = setup.inputs(setup.seed + i, 'smooth-bump-mixture', n=n)
        return level_set_sum(f, setup.domain, r) / lorentz_norm(
            f, setup.domain, r)

    coarse = [ratio(i, setup.grid_n) for i in range(trials)]
    fine = [ratio(i, 2 * setup.grid_n) for i in range(trials)]
    return _refinement_report('level-set-sum', coarse, fine, delta_max)


def sparse_average_experiment(S, phi, s, t):
    """
    ``sum_(Q in S) |Q| <phi>_(Q,s) / (|Q0| <phi>_(Q0,t))`` for ``s < t``.
    """
    if not 1 <= s < t:
        raise PreconditionException(
            "The sparse Carleson bound needs 1 <= s < t, got s=%s t=%s"
            % (s, t))
    root = S.domain
    denominator = root.volume * lp_average(phi, root, t)
    if denominator == 0:
        return Report('sparse-average', True, ratio=0.0)
    ratio = sparse_sum(S, phi, s) / denominator
    return Report('sparse-average', math.isfinite(ratio), ratio=ratio)


def sparse_average_sweep(setup, s=1.0, t=2.0, trials=50, bound=None):
    """
    :func:`sparse_average_experiment` over sparse families built from random
    indicator triples.
    """
    ratios = []
    for i in range(trials):
        seed = setup.seed + i
        f, g = setup.inputs(seed), setup.inputs(seed + 1)
        h = setup.inputs(seed + 2, 'uniform')
        if min(f.integral(), g.integral()) == 0:
            continue
        family = build_sparse_family(f, g, h, setup.domain, 2.0, 2.0, 2.0)
        phi = setup.inputs(seed + 3, 'uniform')
        ratios.append(sparse_average_experiment(family, phi, s, t).ratio)
    maximum = max(ratios) if ratios else 0.0
    ok = all(math.isfinite(v) for v in ratios)
    if bound is not None:
        ok = ok and maximum <= bound
    return Report('sparse-average-sweep', ok, max_ratio=maximum, ratios=ratios)


def fourier_decay_experiment(measure, radii=(8, 16, 32, 64), window=1.0,
                             slack=0.15):
    """
    Envelope decay of the measure's Fourier transform against
    ``-(2d - 1)/2``.
    """
    slope, r2, envelope = fourier_decay_fit(measure, radii, window)
    predicted = predicted_decay(measure.dim)
    return Report('fourier-decay', slope <= predicted + slack, slope=slope,
                  predicted=predicted, r2=r2, envelope=envelope)


def splitting_experiment(probe, y_list=(2 ** -3, 2 ** -4, 2 ** -5, 2 ** -6,
                                        2 ** -7), n=1024, seed=DEFAULT_SEED,
                         ratio_min=0.8, identity_tol=1e-10):
    """
    Decay in ``|y|`` of ``||A + C||_1`` for the low/high frequency split of
    ``T_m(Delta_y f, g)`` with the probe's synthetic multiplier, against
    ``s(1 - q/4)/(1 + s)``.
    """
    domain = unit_domain(1)
    f = random_test_function(domain, n, seed, 'uniform')
    g = random_test_function(domain, n, seed + 1, 'uniform')
    xi = frequency_grid(f)
    xx, ee = np.meshgrid(xi, xi, indexing='ij')
    m = probe.synthetic_multiplier(xx, ee)
    norms, residual = [], 0.0
    ys = sorted((abs(float(y)) for y in y_list), reverse=True)
    for y in ys:
        low, high = continuity_split(m, y, probe, f, g)
        direct = bilinear_multiplier_apply(
            (1.0 - np.exp(-2j * np.pi * y * xx)) * m, f, g)
        total = low + high
        residual = max(residual, float(np.max(np.abs(total.values -
                                                     direct.values))))
        norms.append(total.lp_norm(1))
    eta, r2 = log_log_fit(ys, norms)
    predicted = probe.predicted_exponent()
    passed = eta >= ratio_min * predicted and residual <= identity_tol
    return Report('splitting', passed, fitted_eta=eta, predicted=predicted,
                  r2=r2, identity_residual=residual, norms=norms)


def domination_experiment(setup, generation=-3, seed=None):
    """
    At one generation, ``L_(l(Q)/8)(f, g)`` equals the sum of the localized
    fields over all lattices and subcube indices, and is dominated by the
    sum of their absolute values.
    """
    seed = setup.seed if seed is None else seed
    f = setup.inputs(seed, margin=0.25)
    g = setup.inputs(seed + 1, margin=0.25)
    side = setup.domain.fundamental_side * 2.0 ** generation
    direct = scale_average(f, g, setup.operator, side / 8.0)
    total = localized_field(f, g, generation, setup.operator)
    bound = lacunary_domination_sum(f, g, generation, setup.operator)
    scale = max(float(np.max(np.abs(direct.values))), 1e-300)
    residual = float(np.max(np.abs(direct.values - total.values))) / scale
    dominated = bool(np.all(np.abs(direct.values) <=
                            bound.values + 1e-12 * scale))
    return Report('domination', residual <= 1e-10 and dominated,
                  identity_residual=residual, dominated=dominated)


def duality_experiment(setup, trials=5, rtol=DUALITY_RTOL):
    """
    ``<L_t(f, g), h> = <f, S^(*,1)(g, h)>`` and the same identity for the
    linearized operator with a random field ``t(x)`` in ``[1, 2]``.
    """
    worst = 0.0
    cfg = setup.operator
    for i in range(trials):
        seed = setup.seed + 3 * i
        f = setup.inputs(seed, 'uniform')
        g = setup.inputs(seed + 1, 'uniform')
        h = setup.inputs(seed + 2, 'uniform')
        field = f.with_values(1.0 + setup.inputs(seed + 3, 'uniform').values)
        pairs = [(scale_average(f, g, cfg).inner(h),
                  f.inner(adjoint_1(g, h, cfg))),
                 (linearized_full(f, g, field, cfg).inner(h),
                  f.inner(linearized_adjoint_1(g, h, field, cfg)))]
        for lhs, rhs in pairs:
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    return Report('duality', worst <= rtol, worst_relative_error=worst)


def unit_average_experiment(setup, tol=1e-6):
    """
    ``L_t(1, 1) = 1`` away from the boundary for a probability measure.
    """
    ones = setup.inputs(setup.seed, 'constant')
    out = scale_average(ones, ones, setup.operator)
    margin = support_margin(setup.measure, setup.operator.scale_t) + ones.cell
    interior = out.values[ones.interior_mask(margin)]
    error = float(np.max(np.abs(interior - setup.measure.total_mass)))
    return Report('unit-average', error <= tol, max_error=error)


def stopping_experiment(setup, x, trials=100):
    """
    ``|E_(Q0)| <= |Q0|/2`` under :func:`choose_C0`, and the CZ residuals.
    """
    x = _triple(x)
    p, q = float(1 / x.inv_p), float(1 / x.inv_q)
    cfg = choose_C0(p, q, x.r_prime)
    worst_measure = 0.0
    worst_mean = 0.0
    good_ok = True
    for i in range(trials):
        seed = setup.seed + i
        f, g = setup.inputs(seed), setup.inputs(seed + 1)
        h = setup.inputs(seed + 2, 'uniform')
        exceptional, _ = stopping_family(f, g, h, setup.domain, cfg)
        worst_measure = max(worst_measure,
                            stopping_measure(exceptional, setup.domain))
        split = cz_decompose(f, setup.domain, max(p, 1.0), cfg)
        scale = max(f.integral(), 1e-300)
        if split.mean_residuals():
            worst_mean = max(worst_mean, max(split.mean_residuals()) / scale)
        good_ok = good_ok and bool(
            np.max(split.good.values) <= split.good_bound * (1 + 1e-12))
    return Report('stopping', worst_measure <= 0.5 and worst_mean <= 1e-12 and
                  good_ok, worst_measure=worst_measure,
                  worst_mean_residual=worst_mean, good_bound_ok=good_ok)


class SuiteReport(object):

    def __init__(self, name, checks):
        self.name = name
        self.checks = list(checks)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json(self):
        return OrderedDict([('suite', self.name), ('passed', self.passed),
                            ('checks', [c.to_json() for c in self.checks])])

    def __repr__(self):
        return "<SB-SuiteReport: %s %s/%s passed>" % (
            self.name, sum(c.passed for c in self.checks), len(self.checks))


DEFAULT_TRIPLES = [ExponentTriple('1/2', '1/2', '1/2'),
                   ExponentTriple('1/3', '1/3', '1/2'),
                   ExponentTriple('1/4', '1/2', '1/2')]
SPARSE_TRIPLE = ExponentTriple('2/3', '2/3', '1/2')


def _suite_scaling(setup, trials):
    smooth = dict(width=0.02, center=setup.domain.center())
    f = setup.inputs(setup.seed, 'gaussian', **smooth)
    g = setup.inputs(setup.seed + 1, 'gaussian', **smooth)
    return [scaling_law_experiment(setup, f, g, x, [1.0, 2 ** 0.5, 2.0])
            for x in DEFAULT_TRIPLES]


def _suite_continuity(setup, trials):
    t = setup.operator.scale_t
    ys = [t * 2.0 ** -k for k in range(1, 5)]
    checks = []
    for kind in ('single-scale', 'single-scale-maximal'):
        for which in ('first', 'second'):
            for offset in range(3):
                sub = ExperimentSetup(setup.measure, setup.grid_n,
                                      setup.seed + 10 * offset, t,
                                      setup.operator.sup_samples,
                                      setup.operator.j_range)
                checks.append(continuity_experiment(
                    sub, kind, DEFAULT_TRIPLES[0], ys, which))
    return checks


def _suite_sparse(setup, trials):
    return [stopping_experiment(setup, SPARSE_TRIPLE, trials),
            sparse_ratio_experiment(setup, SPARSE_TRIPLE, trials)]


def _suite_embeddings(setup, trials):
    return [lorentz_embedding_experiment(setup, 1.5, 2.0, min(trials, 20)),
            level_set_experiment(setup, 1.5, min(trials, 20)),
            sparse_average_sweep(setup, 1.0, 2.0, min(trials, 50))]


def _suite_splitting(setup, trials):
    thresholds = decay_thresholds(2)
    exact = thresholds.first == F(8, 3) and thresholds.second == 8
    return [splitting_experiment(MultiplierProbe(2.0, 2.0), seed=setup.seed),
            Report('decay-thresholds', exact, thresholds=thresholds)]


def _suite_regions(setup, trials):
    full = build_region('triangle-full', 10, 5)
    expected = sorted([(F(0), F(0), F(0)), (F(4, 5), F(1, 10), F(1, 10)),
                       (F(1, 10), F(4, 5), F(1, 10)),
                       (F(81, 101), F(9, 101), F(9, 101)),
                       (F(9, 101), F(81, 101), F(9, 101)),
                       (F(288, 535), F(288, 535), F(288, 535))])
    checks = [Report('triangle-full-vertices', full.vertices == expected,
                     vertices=[[str(c) for c in v] for v in full.vertices])]
    lac = build_region('triangle-lac', 2)
    checks.append(Report('triangle-lac-vertices',
                         lac.has_vertex((F(1, 3), F(1, 3), F(1, 3))) and
                         lac.has_vertex((F(2, 3), F(2, 3), F(4, 3)))))
    for name, dim in (('triangle-lac', 2), ('bisphere-full', 10),
                      ('bisphere-lac', 4), ('schlag-max', 2)):
        checks.append(Report('cross-check-%s' % name,
                             build_region(name, dim).cross_check()))
    return checks


def _suite_operators(setup, trials):
    checks = [unit_average_experiment(setup), duality_experiment(setup)]
    if setup.dim == 1:
        checks.append(domination_experiment(setup))
    if setup.measure.family == 'bisphere':
        checks.append(fourier_decay_experiment(setup.measure))
    return checks


SUITES = OrderedDict([
    ('scaling', _suite_scaling),
    ('continuity', _suite_continuity),
    ('sparse', _suite_sparse),
    ('embeddings', _suite_embeddings),
    ('splitting', _suite_splitting),
    ('regions', _suite_regions),
    ('operators', _suite_operators),
])
SUITE_NAMES = tuple(SUITES) + ('all',)


def run_suite(name, setup, trials=10):
    """
    Run one named suite, or every suite for ``all``.

    :rtype: ``list`` of :class:`.SuiteReport`
    """
    if name == 'all':
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise InvalidValueException('suite', name)
    reports = []
    for suite in names:
        log.info("Running suite %s", suite)
        reports.append(SuiteReport(suite, SUITES[suite](setup, trials)))
    return reports


__all__ = ['DecayFit', 'ExperimentSetup', 'Report',
           'SuiteReport', 'WeightVector', 'continuity_experiment',
           'domination_experiment', 'duality_experiment',
           'fourier_decay_experiment', 'lorentz_embedding_experiment',
           'level_set_experiment', 'sparse_average_experiment', 'sparse_average_sweep',
           'muckenhoupt_constant', 'run_suite', 'scaling_law_experiment',
           'sparse_ratio_experiment', 'splitting_experiment',
           'stopping_experiment', 'unit_average_experiment']
