"""
Public interface exports
"""
from .toolkit import Toolkit  # noqa
from .resources import Configuration  # noqa
from .resources import MeasureFamily  # noqa
from .resources import ToolkitServiceType  # noqa
from .exceptions import InvalidConfigurationException  # noqa
from .exceptions import UnsupportedDimensionException  # noqa
