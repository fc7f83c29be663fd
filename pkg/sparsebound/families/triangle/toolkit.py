import logging

from .family import TriangleFamily
from ...base import BaseToolkit
from ...base.services import BaseExponentService
from ...base.services import BaseGridService
from ...base.services import BaseMeasureService
from ...base.services import BaseOperatorService
from ...base.services import BaseSparseService
from ...base.services import BaseVerificationService

log = logging.getLogger(__name__)


class TriangleToolkit(BaseToolkit):
    '''Triangle averaging toolkit'''
    FAMILY_ID = 'triangle'
    FAMILY_CLASS = TriangleFamily

    def __init__(self, config):
        super(TriangleToolkit, self).__init__(config)

        # Initialize toolkit services
        self._grid = BaseGridService(self)
        self._measures = BaseMeasureService(self)
        self._operators = BaseOperatorService(self)
        self._sparse = BaseSparseService(self)
        self._exponents = BaseExponentService(self)
        self._verify = BaseVerificationService(self)
