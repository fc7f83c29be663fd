from ...base.resources import BaseMeasureFamily
from ...measures import product_sphere_measure


class ProductSphereFamily(BaseMeasureFamily):
    """
    Product of two circle measures, ``|y| = |z| = 1``. The bilinear average
    factors into two linear circular averages.
    """
    FAMILY_ID = 'product-sphere'
    SUPPORTED_DIMS = (2,)
    DEFAULT_DIM = 2
    DEFAULT_NODES = 32

    def _build(self, dim, n_nodes):
        return product_sphere_measure(dim, n_nodes)
