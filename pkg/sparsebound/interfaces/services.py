"""
Interfaces for services available through a toolkit
"""
from abc import ABCMeta
from abc import abstractmethod
from abc import abstractproperty


class ToolkitService(object):

    """
    Base interface for any service supported by a toolkit. This interface
    has a toolkit property that can be used to access the toolkit associated
    with this service.
    """
    __metaclass__ = ABCMeta

    @abstractproperty
    def toolkit(self):
        """
        Returns the toolkit instance associated with this service.

        :rtype: :class:`.Toolkit`
        :return: a Toolkit object
        """
        pass


class GridService(ToolkitService):

    """
    Test functions sampled on the unit dyadic domain of the toolkit
    dimension.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def unit_domain(self):
        """
        The root cube ``[0, 1)^d`` every grid function of the toolkit lives
        on.

        :rtype: :class:`.DyadicCube`
        """
        pass

    @abstractmethod
    def constant(self, value=1.0, n=None):
        """
        The constant function ``value`` on ``n^d`` cells. ``n`` defaults to
        the configured ``grid_n``.

        :rtype: :class:`.GridFunction`
        """
        pass

    @abstractmethod
    def random_function(self, seed=None, kind='indicator-union-of-cubes',
                        n=None, **params):
        """
        A seeded random test function.

        Example:

        .. code-block:: python

            f = toolkit.grid.random_function(seed=3, kind='spike')

        :type kind: ``str``
        :param kind: One of ``indicator-union-of-cubes``,
                     ``smooth-bump-mixture``, ``spike``, ``constant``,
                     ``uniform`` or ``gaussian``.

        :rtype: :class:`.GridFunction`
        """
        pass

    @abstractmethod
    def load(self, source):
        """
        Read a grid function from a JSON file path, a JSON string or an
        already decoded ``dict``.

        :rtype: :class:`.GridFunction`
        """
        pass

    @abstractmethod
    def average(self, phi, cube, t):
        """
        The normalized average ``(|Q|^-1 int_Q |phi|^t)^(1/t)``.

        :rtype: ``float``
        """
        pass


class MeasureService(ToolkitService):

    __metaclass__ = ABCMeta

    @abstractmethod
    def build(self, dim=None, n_nodes=None, normalize=True):
        """
        Build the family measure. When ``normalize`` is set the nodes are
        rescaled so that the support has diameter at most one half.

        :rtype: :class:`.DiscreteMeasure`
        """
        pass

    @abstractmethod
    def fourier_decay(self, radii=(8, 16, 32, 64), window=1.0):
        """
        Fit the decay of the Fourier transform of the toolkit measure.

        :rtype: ``tuple``
        :return: ``(slope, r2, envelope)``
        """
        pass


class OperatorService(ToolkitService):

    """
    The bilinear averages ``A_t(f, g)`` and their maximal functions.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def config(self, **overrides):
        """
        Operator parameters drawn from the toolkit configuration.

        :rtype: :class:`.OperatorConfig`
        """
        pass

    @abstractmethod
    def evaluate(self, kind, f, g, t=None):
        """
        Evaluate an operator on the grid of ``f``.

        Example:

        .. code-block:: python

            one = toolkit.grid.constant()
            avg = toolkit.operators.evaluate('single-scale', one, one, t=0.25)

        :type kind: ``str``
        :param kind: ``single-scale``, ``single-scale-maximal``,
                     ``lacunary`` or ``full``.

        :type t: ``float``
        :param t: Scale for the single-scale kinds; ignored by the others.

        :rtype: :class:`.GridFunction`
        """
        pass

    @abstractmethod
    def adjoint(self, slot, fixed, h, t=None):
        """
        The adjoint of ``A_t`` in the first (``slot=1``) or second
        (``slot=2``) input. ``fixed`` is the input that is not dualized.

        :rtype: :class:`.GridFunction`
        """
        pass

    @abstractmethod
    def localized(self, f, g, cube, j, maximal=False):
        """
        The operator localized to a dyadic cube at the lacunary scale
        ``2^j``.

        :rtype: :class:`.GridFunction`
        """
        pass

    @abstractmethod
    def refine_until_stable(self, f, g, t=None, tol=1e-3):
        """
        Double the number of scale samples of the single-scale supremum
        until the output changes by less than ``tol``.

        :rtype: :class:`.SupRefinement`
        """
        pass


class SparseService(ToolkitService):

    __metaclass__ = ABCMeta

    @abstractmethod
    def build(self, f, g, h, x, root=None, record_stages=False):
        """
        Construct a sparse family for ``f, g, h`` at the exponent triple
        ``x = (1/p, 1/q, 1/r)``.

        :raises InvalidParametersException: if ``x`` fails ``r >= p``,
                                            ``r >= q`` or ``r > 1``.

        :rtype: :class:`.SparseCollection`
        """
        pass

    @abstractmethod
    def form(self, collection, f, g, h, x):
        """
        The sparse form ``Lambda_S(f, g, h)`` at ``x``.

        :rtype: ``float``
        """
        pass

    @abstractmethod
    def verify(self, collection, gamma=None):
        """
        :rtype: :class:`.SparsityReport`
        """
        pass

    @abstractmethod
    def decompose(self, f, p, root=None):
        """
        Calderon-Zygmund decomposition of ``f`` on ``root``.

        :rtype: :class:`.CZDecomposition`
        """
        pass


class ExponentService(ToolkitService):

    """
    Exact rational regions of exponent triples.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def region(self, name, dim=None, m=None, intersect=False):
        """
        A transcribed region, in the toolkit dimension unless ``dim`` is
        given. With ``intersect`` only its part with ``r >= p, q`` is
        returned.

        :rtype: :class:`.ExponentPolytope`
        """
        pass

    @abstractmethod
    def contains(self, name, x, interior=False, dim=None, m=None,
                 intersect=False):
        """
        :rtype: ``bool``
        :return: Whether the region ``name`` contains the triple ``x``.
        """
        pass

    @abstractmethod
    def admissibility(self, x):
        """
        :rtype: :class:`.AdmissibilityReport`
        """
        pass

    @abstractmethod
    def lacunary_region(self):
        """
        The transcribed region of the lacunary maximal operator of the
        toolkit family, or ``None`` if the family has none in the toolkit
        dimension.
        """
        pass

    @abstractmethod
    def decay_thresholds(self, dim=None):
        """
        :rtype: :class:`.DecayThresholds`
        """
        pass


class VerificationService(ToolkitService):

    """
    Seeded numerical experiments comparing the operators against their
    predicted behaviour. None of the methods raises on a negative outcome;
    they return reports with a ``passed`` flag.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def setup(self, **overrides):
        """
        Experiment parameters drawn from the toolkit configuration.

        :rtype: :class:`.ExperimentSetup`
        """
        pass

    @abstractmethod
    def run_suite(self, name, trials=None, seed=None):
        """
        Run a named suite or ``all``.

        :rtype: ``list`` of :class:`.SuiteReport`
        """
        pass

    @abstractmethod
    def sparse_ratio(self, x=None, trials=None, csv_stream=None):
        """
        The ratio of the lacunary form to the sparse form over seeded
        trials, at the family's default triple unless ``x`` is given.

        :rtype: :class:`.Report`
        """
        pass
