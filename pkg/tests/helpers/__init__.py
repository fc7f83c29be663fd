import functools
import os
import unittest

from sparsebound.base import helpers as sb_helpers
from sparsebound.factory import MeasureFamilyFactory
from sparsebound.grid import random_test_function
from sparsebound.grid import unit_domain


def parse_bool(val):
    if val:
        return str(val).upper() in ['TRUE', 'YES']
    else:
        return False


def skipIfNoService(services):
    """
    A decorator for skipping tests if the toolkit
    does not implement a given service.
    """
    def wrap(func):
        """
        The actual wrapper
        """
        @functools.wraps(func)
        def wrapper(self, *args, **kwargs):
            toolkit = getattr(self, 'toolkit')
            if toolkit:
                for service in services:
                    if not toolkit.has_service(service):
                        self.skipTest("Skipping test because '%s' service is"
                                      " not implemented" % (service,))
            func(self, *args, **kwargs)
        return wrapper
    return wrap


def skipIfDimensionUnsupported(dims):
    """
    A decorator for skipping tests unless the toolkit works in one of the
    given dimensions.
    """
    def wrap(func):
        @functools.wraps(func)
        def wrapper(self, *args, **kwargs):
            dim = self.toolkit.dim
            if dim not in dims:
                self.skipTest("Skipping test because d=%s is not one of %s"
                              % (dim, dims))
            func(self, *args, **kwargs)
        return wrapper
    return wrap


TEST_DATA_CONFIG = {
    'triangle': {'dim': 2, 'n_nodes': 32, 'grid_n': 32},
    'bisphere': {'dim': 1, 'n_nodes': 64, 'grid_n': 128},
    'product-sphere': {'dim': 2, 'n_nodes': 16, 'grid_n': 32},
    'custom': {'grid_n': 64,
               'measure_source': os.path.join(
                   os.path.dirname(__file__), '../fixtures/circle_measure.json')},
}


def get_family_test_data(family_id, key=None):
    data = TEST_DATA_CONFIG.get(family_id, {})
    return dict(data) if key is None else data.get(key)


def get_test_fixtures_folder():
    return os.path.join(os.path.dirname(__file__), '../fixtures/')


def seeded_inputs(dim, n, seed, kinds=('indicator-union-of-cubes',
                                       'indicator-union-of-cubes',
                                       'uniform')):
    """
    One random grid function per entry of ``kinds`` on the unit domain,
    seeded ``seed, seed + 1, ...``.
    """
    domain = unit_domain(dim)
    return [random_test_function(domain, n, seed + i, kind)
            for i, kind in enumerate(kinds)]


class ToolkitTestBase(unittest.TestCase):

    _toolkit = None

    def tearDown(self):
        self._toolkit = None

    def create_toolkit_instance(self):
        family = sb_helpers.get_env("SB_TEST_FAMILY", "bisphere")
        factory = MeasureFamilyFactory()
        toolkit_class = factory.get_family_class(family)
        config = get_family_test_data(family)
        config['sup_samples'] = 5
        config['j_min'] = -4
        config['j_max'] = -2
        return toolkit_class(config)

    @property
    def toolkit(self):
        if not self._toolkit:
            self._toolkit = self.create_toolkit_instance()
        return self._toolkit
