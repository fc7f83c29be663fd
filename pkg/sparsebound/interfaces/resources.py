"""
Interfaces for data objects exposed through a ``toolkit`` or ``service``.
"""
from abc import ABCMeta
from abc import abstractmethod
from abc import abstractproperty


class ToolkitServiceType(object):

    """
    Defines the service types a toolkit may offer.

    Clients can check for the availability of a service with::

        if toolkit.has_service(ToolkitServiceType.VERIFY):
            ...

    """
    GRID = 'grid'
    MEASURES = 'measures'
    OPERATORS = 'operators'
    SPARSE = 'sparse'
    EXPONENTS = 'exponents'
    VERIFY = 'verify'


class Configuration(dict):
    """
    Represents a sparsebound configuration object
    """

    @abstractproperty
    def dim(self):
        """
        The spatial dimension the toolkit works in. Defaults to the family
        default dimension.

        :rtype: ``int``
        """
        pass

    @abstractproperty
    def n_nodes(self):
        """
        Resolution parameter of the measure quadrature.

        :rtype: ``int``
        """
        pass

    @abstractproperty
    def grid_n(self):
        """
        Number of grid cells per axis on the unit domain.

        :rtype: ``int``
        """
        pass

    @abstractproperty
    def sup_samples(self):
        """
        Number of geometric scale samples in ``[t, 2t]`` used for the
        single-scale supremum.

        :rtype: ``int``
        """
        pass

    @abstractproperty
    def j_range(self):
        """
        Inclusive range ``(j_min, j_max)`` of the lacunary scales ``2^j``.

        :rtype: ``tuple`` of ``int``
        """
        pass

    @abstractproperty
    def default_seed(self):
        """
        Seed used by every random construction unless one is given.

        :rtype: ``int``
        """
        pass

    @abstractproperty
    def debug_mode(self):
        """
        A flag indicating whether sparsebound is in debug mode.

        Setting this to ``True`` adds a middleware that logs every service
        call and its result. The flag can be toggled by sending in the
        ``sb_debug`` value via the config dictionary, or setting the
        ``SB_DEBUG`` environment variable.

        :rtype: ``bool``
        :return: Whether debug mode is on.
        """
        pass


class MeasureFamily(object):

    """
    A family of bilinear averaging measures ``mu`` on ``R^(2d)``, such as the
    triangle measure or the surface measure of the unit sphere.

    Every family has a ``FAMILY_ID``, the dimensions it is implemented for,
    and optionally the name of a transcribed exponent region describing the
    lacunary maximal operator of the family.
    """
    __metaclass__ = ABCMeta

    @abstractproperty
    def id(self):
        """
        The family identifier, e.g. ``triangle``.

        :rtype: ``str``
        """
        pass

    @abstractproperty
    def supported_dims(self):
        """
        Dimensions for which a quadrature is implemented. ``None`` means any
        dimension.

        :rtype: ``tuple`` of ``int`` or ``None``
        """
        pass

    @abstractproperty
    def default_dim(self):
        pass

    @abstractproperty
    def lacunary_region(self):
        """
        Name of the transcribed boundedness region of the lacunary maximal
        operator of this family, or ``None`` when none is known.

        :rtype: ``str``
        """
        pass

    @abstractproperty
    def sparse_triple(self):
        """
        Reciprocal exponents ``(1/p, 1/q, 1/r)`` at which sparse ratio
        experiments run by default. They lie in the relative interior of
        the part of :attr:`lacunary_region` with ``r >= p, q``.

        :rtype: ``tuple`` of ``str``
        """
        pass

    @abstractmethod
    def supports(self, dim):
        """
        :rtype: ``bool``
        :return: ``True`` if a measure can be built in dimension ``dim``.
        """
        pass

    @abstractmethod
    def build_measure(self, dim, n_nodes):
        """
        Build the quadrature of the family measure.

        :raises UnsupportedDimensionException: if ``dim`` is not supported.

        :rtype: :class:`.DiscreteMeasure`
        """
        pass
