"""
Exports from this family
"""

from .family import ProductSphereFamily  # noqa
from .toolkit import ProductSphereToolkit  # noqa
