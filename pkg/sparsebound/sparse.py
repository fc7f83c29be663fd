"""
Sparse domination engine.

Starting from a root cube ``Q0`` the builder finds the maximal subcubes where
one of the normalized averages ``<f>_(Q,p)``, ``<g>_(Q,q)``, ``<h>_(Q,r')``
jumps by more than ``C0`` over its value on ``Q0``, keeps ``Q0`` with the
witness ``Q0 \\ E``, and repeats inside every stopping cube. The same
stopping scan drives the Calderon-Zygmund split and the linearization of the
localized operators.
"""
import json
import logging

import numpy as np

from . import TRACE
from .base.helpers import rle_decode
from .base.helpers import rle_encode
from .dyadic import DyadicCube
from .dyadic import sorted_cubes
from .grid import block_lp_averages
from .grid import lp_average
from .interfaces.exceptions import InvalidExponentException
from .interfaces.exceptions import InvalidValueException
from .interfaces.exceptions import PreconditionException

log = logging.getLogger(__name__)

DEFAULT_GAMMA = 0.5


def _exponent(value, name):
    if value is None or value <= 0:
        raise InvalidExponentException(
            "Exponent %s must be positive, got %s" % (name, value))
    return float(value)


class StoppingConfig(object):
    """
    Stopping threshold ``C0`` together with the exponents ``p``, ``q`` and
    ``r'`` of the three averages it is applied to.
    """

    def __init__(self, C0, p, q, r_prime):
        if C0 is None or C0 <= 1:
            raise InvalidValueException('C0', C0)
        self.C0 = float(C0)
        self.p = _exponent(p, 'p')
        self.q = _exponent(q, 'q')
        self.r_prime = _exponent(r_prime, 'r_prime')

    @property
    def exponents(self):
        return (self.p, self.q, self.r_prime)

    def to_json(self):
        return {'C0': self.C0, 'p': self.p, 'q': self.q,
                'r_prime': self.r_prime}

    def __repr__(self):
        return "<SB-StoppingConfig: C0=%s p=%s q=%s r'=%s>" % (
            self.C0, self.p, self.q, self.r_prime)


def choose_C0(p, q, r_prime):
    """
    ``C0 = 2 max(6^(1/p), 6^(1/q), 6^(1/r'))``, which keeps each of the three
    exceptional sets below ``|Q0|/6``.

    :rtype: :class:`.StoppingConfig`
    """
    exps = [_exponent(v, n) for v, n in ((p, 'p'), (q, 'q'),
                                         (r_prime, 'r_prime'))]
    c0 = 2.0 * max(6.0 ** (1.0 / e) for e in exps)
    return StoppingConfig(c0, *exps)


class AverageTable(object):
    """
    Cached ``L^t`` averages of one grid function over the dyadic blocks of
    its domain. Cubes outside the domain's own lattice fall back to a
    direct average.
    """

    def __init__(self, phi, t):
        self.phi = phi
        self.t = float(t)
        self._levels = {}

    def __call__(self, cube):
        domain = self.phi.domain
        depth = domain.generation - cube.generation
        if (cube.lattice_id != domain.lattice_id or depth < 0 or
                2 ** depth > self.phi.n or not domain.contains(cube)):
            return lp_average(self.phi, cube, self.t)
        if depth not in self._levels:
            self._levels[depth] = block_lp_averages(self.phi.values, depth,
                                                    self.t)
        index = tuple(c - k * 2 ** depth
                      for c, k in zip(cube.corner, domain.corner))
        return float(self._levels[depth][index])


def dyadic_collection(root, grid):
    """
    All dyadic subcubes of ``root`` down to one grid cell, coarse first.

    :rtype: ``list`` of :class:`.DyadicCube`
    """
    cubes = []
    level = [root]
    while level:
        cubes.extend(level)
        if level[0].side <= grid.cell * (1 + 1e-9):
            break
        level = [c for cube in level for c in cube.children()]
    return cubes


def is_cell(cube, grid):
    return cube.side <= grid.cell * (1 + 1e-9)


def union_mask(grid, cubes):
    mask = np.zeros(grid.values.shape, dtype=bool)
    for cube in cubes:
        mask[grid.cube_slices(cube)] = True
    return mask


def _ancestor_in(cube, root, marked):
    current = cube
    while current.generation < root.generation:
        current = current.parent()
        if current in marked:
            return True
    return False


def stopping_family(f, g, h, Q0, cfg, F=None):
    """
    Maximal cubes of ``F`` on which some normalized average exceeds ``C0``
    times its value on ``Q0``, and the cubes of ``F`` left outside them.

    :type F: ``list`` of :class:`.DyadicCube`
    :param F: Dyadic subcubes of ``Q0``, closed under taking parents up to
              ``Q0``. Defaults to every subcube down to the grid cell.

    :rtype: ``tuple``
    :return: ``(E, D0)``, both sorted coarse first. A zero average on
             ``Q0`` gives ``([], F)``.
    """
    cubes = sorted_cubes(F if F is not None else dyadic_collection(Q0, f))
    tables = [AverageTable(phi, t) for phi, t in
              zip((f, g, h), cfg.exponents)]
    base = [table(Q0) for table in tables]
    if min(base) == 0:
        log.warning("Zero average on %s; the stopping family is empty", Q0)
        return [], cubes
    exceptional = []
    marked = set()
    for cube in cubes:
        if cube == Q0 or _ancestor_in(cube, Q0, marked):
            continue
        ratios = [table(cube) / b for table, b in zip(tables, base)]
        if max(ratios) > cfg.C0:
            log.debug("Stopping cube %s with ratios %s", cube, ratios)
            exceptional.append(cube)
            marked.add(cube)
    kept = [c for c in cubes
            if c not in marked and not _ancestor_in(c, Q0, marked)]
    return exceptional, kept


class CZDecomposition(object):
    """
    ``f = good + sum_k bad_pieces[k]`` with each bad piece of mean zero on
    each of its cubes.
    """

    def __init__(self, good, bad_pieces, bad_cubes, source, average=0.0,
                 good_bound=0.0):
        self.good = good
        self.bad_pieces = dict(bad_pieces)
        self.bad_cubes = list(bad_cubes)
        self.source = source
        self.average = average
        self.good_bound = good_bound

    def bad_mask(self):
        return union_mask(self.source, self.bad_cubes)

    def reconstruct(self):
        values = np.array(self.good.values)
        for piece in self.bad_pieces.values():
            values += piece.values
        return self.source.with_values(values)

    def mean_residuals(self):
        """
        ``|int_P beta|`` for every bad cube ``P``, in cube order.
        """
        out = []
        for cube in self.bad_cubes:
            piece = self.bad_pieces[cube.generation]
            out.append(abs(float(piece.values[piece.cube_slices(cube)].sum()))
                       * piece.cell_volume)
        return out

    def __repr__(self):
        return "<SB-CZDecomposition: %s bad cubes over %s generations>" % (
            len(self.bad_cubes), len(self.bad_pieces))


def cz_decompose(f, Q0, p, cfg):
    """
    Calderon-Zygmund split of ``f >= 0`` at height ``2 C0 <f>_(Q0,p)``.

    :raises PreconditionException: if ``f`` takes negative values.
    :raises InvalidExponentException: for ``p < 1``.

    :rtype: :class:`.CZDecomposition`
    """
    if p < 1:
        raise InvalidExponentException(
            "The Calderon-Zygmund split needs p >= 1, got %s" % p)
    if not f.nonneg:
        raise PreconditionException(
            "The Calderon-Zygmund split needs a nonnegative function")
    table = AverageTable(f, p)
    a0 = table(Q0)
    if a0 == 0:
        log.warning("Zero average on %s; nothing to decompose", Q0)
        return CZDecomposition(f, {}, [], f)
    threshold = 2.0 * cfg.C0
    bad = []
    marked = set()
    for cube in dyadic_collection(Q0, f):
        if cube == Q0 or _ancestor_in(cube, Q0, marked):
            continue
        if table(cube) / a0 > threshold:
            bad.append(cube)
            marked.add(cube)
    good = np.array(f.values)
    pieces = {}
    for cube in bad:
        sl = f.cube_slices(cube)
        block = f.values[sl]
        mean = float(block.mean())
        beta = pieces.setdefault(cube.generation, np.zeros(f.values.shape))
        beta[sl] = block - mean
        good[sl] = mean
    bound = 2.0 ** (f.dim / float(p)) * threshold * a0
    log.debug("CZ split of %s: %s bad cubes, good bound %s", Q0, len(bad),
              bound)
    return CZDecomposition(
        f.with_values(good),
        dict((k, f.with_values(v, nonneg=False)) for k, v in pieces.items()),
        bad, f, a0, bound)


class Linearization(object):
    """
    The sets ``H_Q`` and ``B_Q`` of one stopping stage. Operator values
    are stored on their cube only.
    """

    def __init__(self, cubes, grid, h, local_values, h_local, b_local,
                 supremum):
        self.cubes = list(cubes)
        self.grid = grid
        self.h = h
        self._values = local_values
        self._h_local = h_local
        self._b_local = b_local
        self.supremum = supremum

    def _expand(self, cube, local):
        mask = np.zeros(self.grid.values.shape, dtype=bool)
        mask[self.grid.cube_slices(cube)] = local
        return mask

    def h_set(self, cube):
        return self._expand(cube, self._h_local[cube])

    def b_set(self, cube):
        return self._expand(cube, self._b_local[cube])

    @property
    def h_sets(self):
        return dict((c, self.h_set(c)) for c in self.cubes)

    @property
    def b_sets(self):
        return dict((c, self.b_set(c)) for c in self.cubes)

    def h_piece(self, cube):
        return self.h.with_values(np.where(self.b_set(cube), self.h.values,
                                           0.0))

    def sandwich(self):
        """
        ``(sum_Q <L_Q, h_Q>, <sup_Q |L_Q|, h>, 2 sum_Q <L_Q, h_Q>)``.
        """
        cell = self.grid.cell_volume
        lower = 0.0
        for cube in self.cubes:
            sl = self.grid.cube_slices(cube)
            lower += float(np.sum(self._values[cube] * self.h.values[sl] *
                                  self._b_local[cube])) * cell
        middle = float(np.sum(self.supremum * self.h.values)) * cell
        return lower, middle, 2.0 * lower


def linearize(D0, f, g, h, cfg, operator_family):
    """
    ``H_Q = {x in Q : |L_Q(f, g)(x)| >= sup_P |L_P(f, g)(x)| / 2}`` and
    ``B_Q = H_Q`` minus the ``H_P`` of smaller cubes.

    Points where the supremum vanishes belong to every ``H_Q`` and go to
    the smallest cube containing them.

    :type operator_family: callable
    :param operator_family: ``(Q, f, g) -> GridFunction``, supported in
                            ``Q``, for example
                            :func:`sparsebound.operators.localized_family`.

    :rtype: :class:`.Linearization`
    """
    if not D0:
        raise InvalidValueException('D0', D0)
    local = {}
    sup = np.zeros(f.values.shape)
    for cube in D0:
        sl = f.cube_slices(cube)
        values = operator_family(cube, f, g).values[sl]
        local[cube] = values
        sup[sl] = np.maximum(sup[sl], np.abs(values))
    h_local = {}
    b_local = {}
    taken = np.zeros(f.values.shape, dtype=bool)
    for cube in sorted(D0, key=lambda c: (c.generation, c.lattice_id,
                                          c.corner)):
        sl = f.cube_slices(cube)
        h_local[cube] = np.abs(local[cube]) >= 0.5 * sup[sl]
        b_local[cube] = h_local[cube] & ~taken[sl]
        taken[sl] |= b_local[cube]
    return Linearization(sorted_cubes(D0), f, h, local, h_local, b_local, sup)


class SparseCollection(object):
    """
    Cubes with pairwise disjoint witnesses ``F_Q`` of measure at least
    ``gamma |Q|``.
    """

    def __init__(self, domain, n, cubes, witnesses, gamma=DEFAULT_GAMMA,
                 stages=None):
        if len(cubes) != len(witnesses):
            raise InvalidValueException('witnesses', len(witnesses))
        if not 0 < gamma < 1 + 1e-12:
            raise InvalidValueException('gamma', gamma)
        order = sorted(range(len(cubes)), key=lambda i: cubes[i].sort_key())
        self.domain = domain
        self.n = int(n)
        self.cubes = [cubes[i] for i in order]
        self.witnesses = [np.asarray(witnesses[i], dtype=bool) for i in order]
        self.gamma = float(gamma)
        self.stages = list(stages or [])

    def __len__(self):
        return len(self.cubes)

    def __iter__(self):
        return iter(zip(self.cubes, self.witnesses))

    def witness(self, cube):
        return self.witnesses[self.cubes.index(cube)]

    def to_json(self):
        return {'gamma': self.gamma, 'n': self.n,
                'domain': self.domain.to_json(),
                'cubes': [c.to_json() for c in self.cubes],
                'witness_masks': [rle_encode(w) for w in self.witnesses]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            data = json.loads(data)
        return cls(DyadicCube.from_json(data['domain']), data['n'],
                   [DyadicCube.from_json(c) for c in data['cubes']],
                   [rle_decode(w) for w in data['witness_masks']],
                   data['gamma'])

    def __repr__(self):
        return "<SB-SparseCollection: %s cubes, gamma=%s>" % (len(self),
                                                             self.gamma)


def _trace(event, **fields):
    if log.isEnabledFor(TRACE):
        fields['event'] = event
        log.trace(json.dumps(fields, sort_keys=True))


def build_sparse_family(f, g, h, Q0, p, q, r_prime, F=None,
                        operator_family=None, C0=None):
    """
    Recursive stopping construction of a ``1/2``-sparse subfamily of ``F``.

    At each stage the inputs are restricted to the current cube ``P``, the
    stopping cubes ``E_P`` are found, ``P`` enters the family with witness
    ``P \\ E_P`` and every stopping cube starts a new stage. A one-cell cube
    is accepted as a leaf.

    :type operator_family: callable
    :param operator_family: When given, each stage also records the
                            linearization sandwich against
                            ``|P| <f>_(P,p) <g>_(P,q) <h>_(P,r')``.

    :rtype: :class:`.SparseCollection`
    """
    for phi in (f, g, h):
        if not phi.nonneg:
            raise PreconditionException(
                "Sparse families are built for nonnegative inputs")
    cfg = choose_C0(p, q, r_prime)
    if C0 is not None:
        cfg = StoppingConfig(C0, p, q, r_prime)
    allowed = None if F is None else set(F)
    cubes = []
    witnesses = []
    stages = []
    stack = [Q0]
    while stack:
        cube = stack.pop()
        mask = f.cube_mask(cube)
        if is_cell(cube, f):
            cubes.append(cube)
            witnesses.append(mask)
            _trace('leaf', cube=cube.to_json())
            continue
        fp, gp, hp = (phi.restrict(cube) for phi in (f, g, h))
        family = dyadic_collection(cube, f)
        if allowed is not None:
            family = [c for c in family if c in allowed]
        exceptional, kept = stopping_family(fp, gp, hp, cube, cfg, family)
        witness = mask & ~union_mask(f, exceptional)
        cubes.append(cube)
        witnesses.append(witness)
        _trace('stage', cube=cube.to_json(),
               stopping=[c.to_json() for c in exceptional],
               witness_fraction=float(witness.sum()) / max(mask.sum(), 1))
        if operator_family is not None and kept:
            lin = linearize(kept, fp, gp, hp, cfg, operator_family)
            lower, middle, upper = lin.sandwich()
            stages.append({'cube': cube.to_json(), 'lower': lower,
                           'middle': middle, 'upper': upper,
                           'form': cube.volume *
                           lp_average(fp, cube, p) * lp_average(gp, cube, q) *
                           lp_average(hp, cube, r_prime)})
        stack.extend(reversed(exceptional))
    log.info("Sparse family over %s: %s cubes", Q0, len(cubes))
    return SparseCollection(f.domain, f.n, cubes, witnesses, DEFAULT_GAMMA,
                            stages)


def sparse_form(S, f, g, h, p, q, r_prime):
    """
    ``sum_(Q in S) |Q| <f>_(Q,p) <g>_(Q,q) <h>_(Q,r')``, summed in the
    collection's fixed cube order.
    """
    tables = [AverageTable(phi, t) for phi, t in
              zip((f, g, h), (p, q, r_prime))]
    total = 0.0
    for cube in S.cubes:
        term = cube.volume
        for table in tables:
            term *= table(cube)
        total += term
    return total


def sparse_sum(S, phi, s):
    """
    ``sum_(Q in S) |Q| <phi>_(Q,s)``.
    """
    table = AverageTable(phi, s)
    return sum(cube.volume * table(cube) for cube in S.cubes)


class SparsityReport(object):

    def __init__(self, passed, worst_ratio, violating_pair=None,
                 small_witnesses=None):
        self.passed = passed
        self.worst_ratio = worst_ratio
        self.violating_pair = violating_pair
        self.small_witnesses = list(small_witnesses or [])

    def to_json(self):
        pair = self.violating_pair
        return {'passed': self.passed, 'worst_ratio': self.worst_ratio,
                'violating_pair': [c.to_json() for c in pair] if pair else None,
                'small_witnesses': [c.to_json() for c in self.small_witnesses]}

    def __repr__(self):
        return "<SB-SparsityReport: passed=%s worst=%s>" % (self.passed,
                                                           self.worst_ratio)


def verify_sparsity(S, gamma=None):
    """
    Check witness disjointness and ``|F_Q| >= gamma |Q|``.

    :rtype: :class:`.SparsityReport`
    """
    gamma = S.gamma if gamma is None else float(gamma)
    if not S.cubes:
        return SparsityReport(True, float('inf'))
    counts = np.zeros(S.witnesses[0].shape, dtype=np.int64)
    worst = float('inf')
    small = []
    for cube, witness in S:
        counts += witness
        cells = witness.sum()
        ratio = float(cells) / cube.volume * _cell_volume(S)
        worst = min(worst, ratio)
        if ratio < gamma - 1e-12:
            small.append(cube)
    pair = None
    overlap = np.argwhere(counts > 1)
    if overlap.size:
        index = tuple(overlap[0])
        owners = [c for c, w in S if w[index]]
        pair = (owners[0], owners[1])
        log.warning("Witnesses of %s and %s overlap", pair[0], pair[1])
    passed = pair is None and not small
    return SparsityReport(passed, worst, pair, small)


def _cell_volume(S):
    return (S.domain.side / S.n) ** S.domain.dim


def stopping_measure(E, Q0):
    """
    ``|union E| / |Q0|`` for a disjoint stopping family.
    """
    return sum(c.volume for c in E) / Q0.volume
