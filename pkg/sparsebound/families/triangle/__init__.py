"""
Exports from this family
"""

from .family import TriangleFamily  # noqa
from .toolkit import TriangleToolkit  # noqa
