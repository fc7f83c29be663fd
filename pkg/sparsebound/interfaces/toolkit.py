"""
Abstract interface for a toolkit
"""
from abc import ABCMeta
from abc import abstractmethod
from abc import abstractproperty


class Toolkit(object):
    """
    Base interface for a measure family toolkit. A toolkit binds one measure
    family, one dimension and one configuration, and exposes every
    computation through its services.
    """
    __metaclass__ = ABCMeta

    @abstractmethod
    def __init__(self, config):
        """
        Create a new toolkit instance given a dictionary of configuration
        attributes.

        :type config: :class:`dict`
        :param config: A dictionary object containing toolkit initialization
                       values such as ``dim``, ``n_nodes`` or ``grid_n``.
                       Alternatively, this can be an iterable of key/value
                       pairs.

        :rtype: :class:`.Toolkit`
        :return:  a concrete toolkit instance
        """
        pass

    @abstractproperty
    def config(self):
        """
        Returns the config object associated with this toolkit. This object
        is a subclass of :class:`dict` and will contain the properties
        provided at initialization time. In addition, it exposes the
        experiment defaults such as the grid size and the seed.

        Example:

        .. code-block:: python

            toolkit = factory.create_toolkit(FamilyList.BISPHERE, {'dim': 1})
            print(toolkit.config.grid_n)
            print(toolkit.config.sup_samples)

        :rtype: :class:`.Configuration`
        :return:  An object of class Configuration.
        """
        pass

    @abstractproperty
    def middleware(self):
        """
        Returns the middleware manager associated with this toolkit. Refer to
        pyeventsystem documentation for more information on how the
        middleware manager works.

        :rtype: :class:`.MiddlewareManager`
        :return:  The middleware manager that every service dispatches
                  through.
        """
        pass

    @abstractproperty
    def family(self):
        """
        The measure family this toolkit was created for.

        :rtype: :class:`.MeasureFamily`
        :return: a MeasureFamily object
        """
        pass

    @abstractproperty
    def dim(self):
        """
        The spatial dimension ``d``; inputs live on ``R^d`` and the measure
        on ``R^(2d)``.

        :rtype: ``int``
        """
        pass

    @abstractproperty
    def measure(self):
        """
        The quadrature of the family measure in the configured dimension,
        rescaled to support diameter at most one half. Built on first access.

        :rtype: :class:`.DiscreteMeasure`
        """
        pass

    @abstractmethod
    def has_service(self, service_type):
        """
        Checks whether this toolkit supports a given service.

        Example:

        .. code-block:: python

            if toolkit.has_service(ToolkitServiceType.EXPONENTS):
               print(toolkit.exponents.lacunary_region())

        :type service_type: :class:`.ToolkitServiceType`
        :param service_type: Type of service to check support for.

        :rtype: :class:`bool`
        :return: ``True`` if the service type is supported.
        """
        pass

    @abstractproperty
    def grid(self):
        """
        Provides access to test functions on the dyadic grid.

        :rtype: :class:`.GridService`
        """
        pass

    @abstractproperty
    def measures(self):
        """
        Provides access to measure construction and Fourier decay probes.

        :rtype: :class:`.MeasureService`
        """
        pass

    @abstractproperty
    def operators(self):
        """
        Provides access to the averaging and maximal operators.

        Example:

        .. code-block:: python

            f = toolkit.grid.constant()
            out = toolkit.operators.evaluate('lacunary', f, f)

        :rtype: :class:`.OperatorService`
        """
        pass

    @abstractproperty
    def sparse(self):
        """
        Provides access to the sparse family construction and sparse forms.

        :rtype: :class:`.SparseService`
        """
        pass

    @abstractproperty
    def exponents(self):
        """
        Provides access to exponent regions and admissibility checks.

        :rtype: :class:`.ExponentService`
        """
        pass

    @abstractproperty
    def verify(self):
        """
        Provides access to the numerical experiments and suites.

        :rtype: :class:`.VerificationService`
        """
        pass
