import logging

from ...base.resources import BaseMeasureFamily
from ...interfaces.exceptions import InvalidConfigurationException
from ...interfaces.exceptions import UnsupportedDimensionException
from ...measures import custom_measure

log = logging.getLogger(__name__)


class CustomFamily(BaseMeasureFamily):
    """
    A user supplied measure, read from a JSON document with ``dim``,
    ``nodes`` and ``weights``. The document fixes the dimension and the
    node count.

    :type source: ``str`` or ``dict``
    :param source: Path to a JSON file, a JSON string or a decoded dict.
    """
    FAMILY_ID = 'custom'

    def __init__(self, source=None):
        self._source = source
        self._loaded = None

    def _load(self):
        if self._loaded is None:
            if self._source is None:
                raise InvalidConfigurationException(
                    "The custom family needs a measure_source")
            self._loaded = custom_measure(self._source)
            log.info("Loaded custom measure %s", self._loaded)
        return self._loaded

    @property
    def supported_dims(self):
        if self._source is None:
            return None
        return (self._load().dim,)

    @property
    def default_dim(self):
        return None if self._source is None else self._load().dim

    def supports(self, dim):
        return dim is None or self._source is None or dim == self._load().dim

    def default_nodes(self, dim):
        return None

    def build_measure(self, dim=None, n_nodes=None):
        measure = self._load()
        if dim is not None and dim != measure.dim:
            raise UnsupportedDimensionException(
                "The custom measure", dim, (measure.dim,))
        if n_nodes is not None:
            log.debug("Node count %s ignored for a custom measure", n_nodes)
        return measure
