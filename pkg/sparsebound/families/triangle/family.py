from ...base.resources import BaseMeasureFamily
from ...measures import triangle_measure


class TriangleFamily(BaseMeasureFamily):
    """
    Pairs ``(y, z)`` forming a unit equilateral triangle with the origin.
    Only the plane carries such triangles with a one-parameter quadrature.
    """
    FAMILY_ID = 'triangle'
    SUPPORTED_DIMS = (2,)
    DEFAULT_DIM = 2
    DEFAULT_NODES = 64
    LACUNARY_REGION = 'triangle-lac'
    # the planar hull meets r >= p, q only on its diagonal edge
    SPARSE_TRIPLE = ('1/4', '1/4', '1/4')

    def _build(self, dim, n_nodes):
        return triangle_measure(dim, n_nodes)
