"""
Exports from this family
"""

from .family import BilinearSphereFamily  # noqa
from .toolkit import BilinearSphereToolkit  # noqa
