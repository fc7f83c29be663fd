"""
Exports from this family
"""

from .family import CustomFamily  # noqa
from .toolkit import CustomToolkit  # noqa
