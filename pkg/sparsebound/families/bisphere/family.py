from ...base.resources import BaseMeasureFamily
from ...measures import bilinear_sphere_measure


class BilinearSphereFamily(BaseMeasureFamily):
    """
    Normalized surface measure of the unit sphere of ``R^(2d)``.
    """
    FAMILY_ID = 'bisphere'
    SUPPORTED_DIMS = (1, 2)
    DEFAULT_DIM = 1
    LACUNARY_REGION = 'bisphere-lac'
    SPARSE_TRIPLE = ('7/10', '7/10', '3/5')

    def default_nodes(self, dim):
        # d=2 nodes grow like n^3 / 4
        return 128 if dim == 1 else 16

    def _build(self, dim, n_nodes):
        return bilinear_sphere_measure(dim, n_nodes)
