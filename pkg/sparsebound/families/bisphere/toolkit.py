import logging

from .family import BilinearSphereFamily
from ...base import BaseToolkit
from ...base.services import BaseExponentService
from ...base.services import BaseGridService
from ...base.services import BaseMeasureService
from ...base.services import BaseOperatorService
from ...base.services import BaseSparseService
from ...base.services import BaseVerificationService

log = logging.getLogger(__name__)


class BilinearSphereToolkit(BaseToolkit):
    '''Bilinear spherical average toolkit'''
    FAMILY_ID = 'bisphere'
    FAMILY_CLASS = BilinearSphereFamily

    def __init__(self, config):
        super(BilinearSphereToolkit, self).__init__(config)
        if self.config.dim == 1:
            log.debug("No transcribed region exists for the bilinear sphere "
                      "in d=1; sparse checks run without an interior test")

        # Initialize toolkit services
        self._grid = BaseGridService(self)
        self._measures = BaseMeasureService(self)
        self._operators = BaseOperatorService(self)
        self._sparse = BaseSparseService(self)
        self._exponents = BaseExponentService(self)
        self._verify = BaseVerificationService(self)
