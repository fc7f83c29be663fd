from .family import CustomFamily
from ...base import BaseToolkit
from ...base.services import BaseExponentService
from ...base.services import BaseGridService
from ...base.services import BaseMeasureService
from ...base.services import BaseOperatorService
from ...base.services import BaseSparseService
from ...base.services import BaseVerificationService


class CustomToolkit(BaseToolkit):
    '''Toolkit over a measure read from JSON'''
    FAMILY_ID = 'custom'
    FAMILY_CLASS = CustomFamily

    def __init__(self, config):
        super(CustomToolkit, self).__init__(config)

        # Initialize toolkit services
        self._grid = BaseGridService(self)
        self._measures = BaseMeasureService(self)
        self._operators = BaseOperatorService(self)
        self._sparse = BaseSparseService(self)
        self._exponents = BaseExponentService(self)
        self._verify = BaseVerificationService(self)

    def _build_family(self):
        return self.FAMILY_CLASS(self._get_config_value('measure_source'))
