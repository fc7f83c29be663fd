"""Base implementation of a toolkit interface."""
import functools
import logging
import os
from os.path import expanduser
try:
    from configparser import ConfigParser
except ImportError:  # Python 2
    from ConfigParser import SafeConfigParser as ConfigParser

from pyeventsystem.middleware import SimpleMiddlewareManager

import six

from . import helpers as sb_helpers
from .middleware import EventDebugLoggingMiddleware
from .middleware import ExceptionWrappingMiddleware
from ..interfaces import Toolkit
from ..interfaces.exceptions import InvalidConfigurationException
from ..interfaces.exceptions import UnsupportedDimensionException
from ..interfaces.resources import Configuration
from ..measures import normalize_support

log = logging.getLogger(__name__)

DEFAULT_SUP_SAMPLES = 17
DEFAULT_SEED = 7
DEFAULT_GRID_N = 256
DEFAULT_SCALE_T = 0.125
DEFAULT_J_MIN = -7
DEFAULT_J_MAX = -2
DEFAULT_TRIALS = 100
DEFAULT_THREADS = 1
DEFAULT_SLOPE_TOLERANCE = 0.1
DEFAULT_FIT_R2_MIN = 0.9
DEFAULT_REFINEMENT_DELTA_MAX = 0.2
DEFAULT_DUALITY_RTOL = 1e-6

# By default, use two locations for sparsebound configuration
SparseBoundConfigPath = '/etc/sparsebound.ini'
SparseBoundConfigLocations = [SparseBoundConfigPath]
UserConfigPath = os.path.join(expanduser('~'), '.sparsebound')
SparseBoundConfigLocations.append(UserConfigPath)


class BaseConfiguration(Configuration):
    """
    Toolkit settings. Values may arrive as strings from an ini file and are
    coerced by the properties.
    """

    def __init__(self, user_config, family=None):
        self.update(user_config)
        self.family = family

    def _typed(self, key, default, kind):
        value = self.get(key, default)
        if value is None:
            return None
        try:
            return kind(value)
        except (TypeError, ValueError):
            raise InvalidConfigurationException(
                "Config value %s=%r is not a valid %s" % (key, value,
                                                          kind.__name__))

    @property
    def dim(self):
        default = self.family.default_dim if self.family else None
        return self._typed('dim', default, int)

    @property
    def n_nodes(self):
        """
        Quadrature resolution. Defaults to the family default for the
        configured dimension.
        """
        default = None
        if self.family and self.dim is not None:
            default = self.family.default_nodes(self.dim)
        return self._typed('n_nodes', default, int)

    @property
    def grid_n(self):
        return self._typed('grid_n', DEFAULT_GRID_N, int)

    @property
    def scale_t(self):
        return self._typed('scale_t', DEFAULT_SCALE_T, float)

    @property
    def sup_samples(self):
        return self._typed('sup_samples', DEFAULT_SUP_SAMPLES, int)

    @property
    def j_min(self):
        return self._typed('j_min', DEFAULT_J_MIN, int)

    @property
    def j_max(self):
        return self._typed('j_max', DEFAULT_J_MAX, int)

    @property
    def j_range(self):
        """
        ``(j_min, j_max)``.

        :raises InvalidConfigurationException: if ``j_min > j_max``.
        """
        if self.j_min > self.j_max:
            raise InvalidConfigurationException(
                "j_min=%s exceeds j_max=%s" % (self.j_min, self.j_max))
        return (self.j_min, self.j_max)

    @property
    def default_seed(self):
        return self._typed('default_seed', DEFAULT_SEED, int)

    @property
    def trials(self):
        return self._typed('trials', DEFAULT_TRIALS, int)

    @property
    def threads(self):
        return self._typed('threads', DEFAULT_THREADS, int)

    @property
    def slope_tolerance(self):
        return self._typed('slope_tolerance', DEFAULT_SLOPE_TOLERANCE, float)

    @property
    def fit_r2_min(self):
        return self._typed('fit_r2_min', DEFAULT_FIT_R2_MIN, float)

    @property
    def refinement_delta_max(self):
        return self._typed('refinement_delta_max',
                           DEFAULT_REFINEMENT_DELTA_MAX, float)

    @property
    def duality_rtol(self):
        return self._typed('duality_rtol', DEFAULT_DUALITY_RTOL, float)

    @property
    def debug_mode(self):
        """
        A flag indicating whether sparsebound is in debug mode. Setting
        this to True logs every service call with its arguments and result.

        The flag can be toggled by sending in the sb_debug value via
        the config dictionary, or setting the SB_DEBUG environment variable.

        :rtype: ``bool``
        :return: Whether debug mode is on.
        """
        return sb_helpers.parse_bool(
            self.get('sb_debug', sb_helpers.get_env('SB_DEBUG', False)))


class BaseToolkit(Toolkit):
    """
    Base implementation of a toolkit. Concrete family toolkits set
    ``FAMILY_ID`` and ``FAMILY_CLASS`` and create their services.
    """
    FAMILY_ID = None
    FAMILY_CLASS = None

    def __init__(self, config):
        self._config_parser = ConfigParser()
        self._config_parser.read(SparseBoundConfigLocations)
        self._config = BaseConfiguration(config)
        self._merge_file_config()
        self._family = self._build_family()
        self._config.family = self._family
        self._middleware = SimpleMiddlewareManager()
        self.add_required_middleware()
        self._measure = None
        self._grid = None
        self._measures = None
        self._operators = None
        self._sparse = None
        self._exponents = None
        self._verify = None

    def _build_family(self):
        return self.FAMILY_CLASS()

    def _merge_file_config(self):
        # Explicit config wins over ini values
        if self.FAMILY_ID and self._config_parser.has_section(self.FAMILY_ID):
            for key, value in self._config_parser.items(self.FAMILY_ID):
                if key not in self._config:
                    log.debug("Using %s=%s from config file", key, value)
                    self._config[key] = value

    @property
    def config(self):
        return self._config

    @property
    def name(self):
        return str(self.__class__.__name__)

    @property
    def middleware(self):
        return self._middleware

    @property
    def family(self):
        return self._family

    @property
    def dim(self):
        dim = self.config.dim
        if dim is None:
            dim = self.measure.dim
        return dim

    @property
    def measure(self):
        if self._measure is None:
            dim = self.config.dim
            if dim is not None and not self.family.supports(dim):
                raise UnsupportedDimensionException(
                    "The %s family" % self.family.id, dim,
                    self.family.supported_dims)
            raw = self.family.build_measure(dim, self.config.n_nodes)
            self._measure, factor = normalize_support(raw)
            log.debug("Measure %s normalized by %s", self._measure, factor)
        return self._measure

    def add_required_middleware(self):
        """
        Adds common middleware that is essential for sparsebound to
        function. Any other extra middleware can be added through the
        toolkit's middleware manager.
        """
        self.middleware.add(ExceptionWrappingMiddleware())
        if self.config.debug_mode:
            self.middleware.add(EventDebugLoggingMiddleware())

    @property
    def grid(self):
        return self._grid

    @property
    def measures(self):
        return self._measures

    @property
    def operators(self):
        return self._operators

    @property
    def sparse(self):
        return self._sparse

    @property
    def exponents(self):
        return self._exponents

    @property
    def verify(self):
        return self._verify

    def clone(self, **overrides):
        """
        A toolkit of the same family with some config values replaced.
        """
        cloned_config = dict(self.config)
        cloned_config.update(overrides)
        return self.__class__(cloned_config)

    def _deepgetattr(self, obj, attr):
        """Recurses through an attribute chain to get the ultimate value."""
        return functools.reduce(getattr, attr.split('.'), obj)

    def has_service(self, service_type):
        """
        Checks whether this toolkit supports a given service.

        :type service_type: str or :class:``.ToolkitServiceType``
        :param service_type: Type of service to check support for.

        :rtype: bool
        :return: ``True`` if the service type is supported.
        """
        log.info("Checking if toolkit supports %s", service_type)
        try:
            if self._deepgetattr(self, service_type):
                log.info("This toolkit supports %s", service_type)
                return True
        except AttributeError:
            pass  # Undefined service type
        except NotImplementedError:
            pass  # service not implemented
        log.info("This toolkit doesn't support %s", service_type)
        return False

    def _get_config_value(self, key, default_value=None):
        """
        A convenience method to extract a configuration value.

        :type key: str
        :param key: a field to look for in the ``self.config`` field

        :type default_value: anything
        :param default_value: the default value to return if a value for the
                              ``key`` is not available

        :return: a configuration value for the supplied ``key``
        """
        log.debug("Getting config key %s, with supplied default value: %s",
                  key, default_value)
        value = default_value
        if isinstance(self.config, dict) and self.config.get(key):
            value = self.config.get(key, default_value)
        elif hasattr(self.config, key) and getattr(self.config, key):
            value = getattr(self.config, key)
        elif (self.FAMILY_ID and
              self._config_parser.has_option(self.FAMILY_ID, key) and
              self._config_parser.get(self.FAMILY_ID, key)):
            value = self._config_parser.get(self.FAMILY_ID, key)
        if isinstance(value, six.string_types) and not isinstance(
                value, six.text_type):
            return six.u(value)
        return value

    def __repr__(self):
        return "<SB-%s: %s d=%s>" % (self.name, self.FAMILY_ID,
                                     self.config.dim)
