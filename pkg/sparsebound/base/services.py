"""
Base implementation for services available through a toolkit
"""
import json
import logging

import six

from .middleware import dispatch
from ..exponents import ExponentTriple
from ..exponents import admissibility
from ..exponents import decay_thresholds
from ..exponents import region as build_region
from ..grid import GridFunction
from ..grid import constant
from ..grid import lp_average
from ..grid import random_test_function
from ..grid import unit_domain
from ..interfaces.exceptions import InvalidParametersException
from ..interfaces.exceptions import InvalidValueException
from ..interfaces.services import ExponentService
from ..interfaces.services import GridService
from ..interfaces.services import MeasureService
from ..interfaces.services import OperatorService
from ..interfaces.services import SparseService
from ..interfaces.services import ToolkitService
from ..interfaces.services import VerificationService
from ..measures import fourier_decay_fit
from ..measures import normalize_support
from ..operators import OperatorConfig
from ..operators import adjoint_1
from ..operators import adjoint_2
from ..operators import localized_family
from ..operators import localized_operator
from ..operators import operator_by_kind
from ..operators import refine_until_stable
from ..sparse import build_sparse_family
from ..sparse import choose_C0
from ..sparse import cz_decompose
from ..sparse import sparse_form
from ..sparse import verify_sparsity
from ..verify import ExperimentSetup
from ..verify import run_suite
from ..verify import sparse_ratio_experiment

log = logging.getLogger(__name__)


def _triple(x):
    return x if isinstance(x, ExponentTriple) else ExponentTriple(*x)


def _sparse_exponents(x):
    return x.p, x.q, x.r_prime


class BaseToolkitService(ToolkitService):

    STANDARD_EVENT_PRIORITY = 2500

    def __init__(self, toolkit):
        self._service_event_pattern = "toolkit"
        self._toolkit = toolkit
        # discover and register all middleware
        toolkit.middleware.add(self)

    @property
    def toolkit(self):
        return self._toolkit

    @property
    def events(self):
        return self._toolkit.middleware.events


class BaseGridService(GridService, BaseToolkitService):

    def __init__(self, toolkit):
        super(BaseGridService, self).__init__(toolkit)
        self._service_event_pattern += ".grid"

    @dispatch(event="toolkit.grid.unit_domain",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def unit_domain(self):
        return unit_domain(self.toolkit.dim)

    @dispatch(event="toolkit.grid.constant",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def constant(self, value=1.0, n=None):
        return constant(self.unit_domain(), n or self.toolkit.config.grid_n,
                        value)

    @dispatch(event="toolkit.grid.random_function",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def random_function(self, seed=None, kind='indicator-union-of-cubes',
                        n=None, **params):
        if seed is None:
            seed = self.toolkit.config.default_seed
        return random_test_function(self.unit_domain(),
                                    n or self.toolkit.config.grid_n, seed,
                                    kind, **params)

    @dispatch(event="toolkit.grid.load",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def load(self, source):
        if isinstance(source, six.string_types) and \
                not source.lstrip().startswith('{'):
            log.debug("Reading grid function from %s", source)
            with open(source) as handle:
                source = json.load(handle)
        phi = GridFunction.from_json(source)
        if phi.dim != self.toolkit.dim:
            raise InvalidValueException('dim', phi.dim)
        return phi

    @dispatch(event="toolkit.grid.average",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def average(self, phi, cube, t):
        return lp_average(phi, cube, t)


class BaseMeasureService(MeasureService, BaseToolkitService):

    def __init__(self, toolkit):
        super(BaseMeasureService, self).__init__(toolkit)
        self._service_event_pattern += ".measures"

    @dispatch(event="toolkit.measures.build",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def build(self, dim=None, n_nodes=None, normalize=True):
        if dim is None and n_nodes is None and normalize:
            return self.toolkit.measure
        dim = self.toolkit.dim if dim is None else dim
        measure = self.toolkit.family.build_measure(dim, n_nodes)
        if normalize:
            measure, _ = normalize_support(measure)
        return measure

    @dispatch(event="toolkit.measures.fourier_decay",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def fourier_decay(self, radii=(8, 16, 32, 64), window=1.0):
        return fourier_decay_fit(self.toolkit.measure, radii, window)


class BaseOperatorService(OperatorService, BaseToolkitService):

    def __init__(self, toolkit):
        super(BaseOperatorService, self).__init__(toolkit)
        self._service_event_pattern += ".operators"

    @dispatch(event="toolkit.operators.config",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def config(self, **overrides):
        cfg = self.toolkit.config
        params = dict(measure=self.toolkit.measure, scale_t=cfg.scale_t,
                      sup_samples=cfg.sup_samples, j_range=cfg.j_range)
        params.update(overrides)
        return OperatorConfig(**params)

    @dispatch(event="toolkit.operators.evaluate",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def evaluate(self, kind, f, g, t=None):
        operator = operator_by_kind(kind)
        if kind in ('single-scale', 'single-scale-maximal'):
            return operator(f, g, self.config(), t)
        return operator(f, g, self.config())

    @dispatch(event="toolkit.operators.adjoint",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def adjoint(self, slot, fixed, h, t=None):
        if slot == 1:
            return adjoint_1(fixed, h, self.config(), t)
        if slot == 2:
            return adjoint_2(fixed, h, self.config(), t)
        raise InvalidValueException('slot', slot)

    @dispatch(event="toolkit.operators.localized",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def localized(self, f, g, cube, j, maximal=False):
        return localized_operator(f, g, cube, j, self.config(), maximal)

    @dispatch(event="toolkit.operators.refine_until_stable",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def refine_until_stable(self, f, g, t=None, tol=1e-3):
        return refine_until_stable(f, g, self.config(), t, tol)


class BaseSparseService(SparseService, BaseToolkitService):

    def __init__(self, toolkit):
        super(BaseSparseService, self).__init__(toolkit)
        self._service_event_pattern += ".sparse"

    @dispatch(event="toolkit.sparse.build",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def build(self, f, g, h, x, root=None, record_stages=False):
        x = _triple(x)
        report = admissibility(x)
        if not report.theorem_hypotheses:
            raise InvalidParametersException(
                "Sparse bounds need r >= p, r >= q and r > 1; %s fails %s"
                % (x, ", ".join(report.failures())))
        root = f.domain if root is None else root
        p, q, r_prime = _sparse_exponents(x)
        family = None
        if record_stages:
            operators = self.toolkit.operators.config()
            family = localized_family(operators, operators.j_range[1])
        return build_sparse_family(f, g, h, root, p, q, r_prime,
                                   operator_family=family)

    @dispatch(event="toolkit.sparse.form",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def form(self, collection, f, g, h, x):
        return sparse_form(collection, f, g, h, *_sparse_exponents(_triple(x)))

    @dispatch(event="toolkit.sparse.verify",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def verify(self, collection, gamma=None):
        return verify_sparsity(collection, gamma)

    @dispatch(event="toolkit.sparse.decompose",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def decompose(self, f, p, root=None):
        root = f.domain if root is None else root
        return cz_decompose(f, root, p, choose_C0(p, p, p))


class BaseExponentService(ExponentService, BaseToolkitService):

    def __init__(self, toolkit):
        super(BaseExponentService, self).__init__(toolkit)
        self._service_event_pattern += ".exponents"

    @dispatch(event="toolkit.exponents.region",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def region(self, name, dim=None, m=None, intersect=False):
        return build_region(name, self.toolkit.dim if dim is None else dim,
                            m, intersect)

    @dispatch(event="toolkit.exponents.contains",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def contains(self, name, x, interior=False, dim=None, m=None,
                 intersect=False):
        return self.region(name, dim, m, intersect).contains(
            _triple(x), 'interior' if interior else 'closed')

    @dispatch(event="toolkit.exponents.admissibility",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def admissibility(self, x):
        return admissibility(_triple(x))

    @dispatch(event="toolkit.exponents.lacunary_region",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def lacunary_region(self):
        name = self.toolkit.family.lacunary_region
        dim = self.toolkit.dim
        if name is None or dim < 2:
            log.warning("No transcribed lacunary region for %s in d=%s",
                        self.toolkit.family.id, dim)
            return None
        return build_region(name, dim)

    @dispatch(event="toolkit.exponents.decay_thresholds",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def decay_thresholds(self, dim=None):
        return decay_thresholds(self.toolkit.dim if dim is None else dim)


class BaseVerificationService(VerificationService, BaseToolkitService):

    def __init__(self, toolkit):
        super(BaseVerificationService, self).__init__(toolkit)
        self._service_event_pattern += ".verify"

    @dispatch(event="toolkit.verify.setup",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def setup(self, **overrides):
        cfg = self.toolkit.config
        params = dict(measure=self.toolkit.measure, grid_n=cfg.grid_n,
                      seed=cfg.default_seed, scale_t=cfg.scale_t,
                      sup_samples=cfg.sup_samples, j_range=cfg.j_range,
                      threads=cfg.threads)
        params.update(overrides)
        return ExperimentSetup(**params)

    @dispatch(event="toolkit.verify.run_suite",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def run_suite(self, name, trials=None, seed=None):
        overrides = {} if seed is None else {'seed': seed}
        trials = self.toolkit.config.trials if trials is None else trials
        return run_suite(name, self.setup(**overrides), trials)

    @dispatch(event="toolkit.verify.sparse_ratio",
              priority=BaseToolkitService.STANDARD_EVENT_PRIORITY)
    def sparse_ratio(self, x=None, trials=None, csv_stream=None):
        cfg = self.toolkit.config
        family = self.toolkit.family
        if x is None:
            x = family.sparse_triple
        return sparse_ratio_experiment(
            self.setup(), _triple(x),
            cfg.trials if trials is None else trials, family.lacunary_region,
            csv_stream=csv_stream, delta_max=cfg.refinement_delta_max)
