"""
Base implementation of the data objects exposed through a toolkit.
"""
import inspect
import logging

from ..interfaces.exceptions import UnsupportedDimensionException
from ..interfaces.resources import MeasureFamily

log = logging.getLogger(__name__)


class BaseMeasureFamily(MeasureFamily):
    """
    Base implementation of a measure family. Concrete families set the class
    attributes and implement ``_build``.
    """
    FAMILY_ID = None
    SUPPORTED_DIMS = None
    DEFAULT_DIM = None
    DEFAULT_NODES = 64
    LACUNARY_REGION = None
    SPARSE_TRIPLE = ('2/3', '2/3', '1/2')

    @property
    def id(self):
        return self.FAMILY_ID

    @property
    def supported_dims(self):
        return self.SUPPORTED_DIMS

    @property
    def default_dim(self):
        return self.DEFAULT_DIM

    @property
    def lacunary_region(self):
        return self.LACUNARY_REGION

    @property
    def sparse_triple(self):
        return self.SPARSE_TRIPLE

    def default_nodes(self, dim):
        """
        Node count giving a quadrature of moderate size in ``dim``.
        """
        return self.DEFAULT_NODES

    def supports(self, dim):
        return self.SUPPORTED_DIMS is None or dim in self.SUPPORTED_DIMS

    def build_measure(self, dim, n_nodes=None):
        if not self.supports(dim):
            log.debug("Family %s has no measure in d=%s", self.id, dim)
            raise UnsupportedDimensionException(
                "The %s family" % self.id, dim, self.SUPPORTED_DIMS)
        if n_nodes is None:
            n_nodes = self.default_nodes(dim)
        log.info("Building %s measure in d=%s with %s nodes", self.id, dim,
                 n_nodes)
        return self._build(dim, int(n_nodes))

    def _build(self, dim, n_nodes):
        raise NotImplementedError(
            "Family %s does not build measures" % self.id)

    def to_json(self):
        # Get all attributes but filter methods and private/magic ones
        attr = inspect.getmembers(self, lambda a: not (inspect.isroutine(a)))
        return {k: v for (k, v) in attr
                if not k.startswith('_') and not k.isupper()}

    def __eq__(self, other):
        return isinstance(other, MeasureFamily) and self.id == other.id

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return "<SB-{0}: {1}>".format(self.__class__.__name__, self.id)
