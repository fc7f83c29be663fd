import importlib
import inspect
import logging
import pkgutil
from collections import defaultdict

from sparsebound import families
from sparsebound.interfaces import MeasureFamily
from sparsebound.interfaces import Toolkit


log = logging.getLogger(__name__)


class FamilyList(object):
    TRIANGLE = 'triangle'
    BISPHERE = 'bisphere'
    PRODUCT_SPHERE = 'product-sphere'
    CUSTOM = 'custom'


class MeasureFamilyFactory(object):

    """
    Get info and handle on the available measure family toolkits.
    """

    def __init__(self):
        self.family_list = defaultdict(dict)
        log.debug("Families List: %s", self.family_list)

    def register_family_class(self, cls):
        """
        Registers a toolkit or a measure family class with the factory. The
        class must inherit from sparsebound.interfaces.Toolkit or
        sparsebound.interfaces.MeasureFamily and also have a class attribute
        named FAMILY_ID.

        The FAMILY_ID is a user friendly name for the family, such as
        'bisphere'. The FAMILY_ID must also be included in the
        sparsebound.factory.FamilyList.

        :type  cls: class
        :param cls: A class implementing the Toolkit or the MeasureFamily
                    interface.
        """
        if not isinstance(cls, type):
            return
        if issubclass(cls, Toolkit):
            slot = 'class'
        elif issubclass(cls, MeasureFamily):
            slot = 'family'
        else:
            log.debug("Class: %s does not implement the Toolkit"
                      " interface. Ignoring...", cls)
            return
        family_id = getattr(cls, "FAMILY_ID", None)
        if not family_id:
            log.debug("Class: %s does not define FAMILY_ID. Ignoring...", cls)
            return
        if self.family_list.get(family_id, {}).get(slot) not in (None, cls):
            log.warning("Family with id: %s is already registered. "
                        "Overriding with class: %s", family_id, cls)
        self.family_list[family_id][slot] = cls

    def discover_families(self):
        """
        Discover all available families within the
        ``sparsebound.families`` package.
        Note that this methods does not guard against a failed import.
        """
        for _, modname, _ in pkgutil.iter_modules(families.__path__):
            log.debug("Importing family: %s", modname)
            try:
                self._import_family(modname)
            except Exception as e:
                log.debug("Could not import family: %s", e)

    def _import_family(self, module_name):
        """
        Imports and registers families from the given module name.
        Raises an ImportError if the import does not succeed.
        """
        log.debug("Importing families from %s", module_name)
        module = importlib.import_module(
            "{0}.{1}".format(families.__name__, module_name))
        classes = inspect.getmembers(module, inspect.isclass)
        for _, cls in classes:
            log.debug("Registering the family: %s", cls)
            self.register_family_class(cls)

    def list_families(self):
        """
        Get a list of available families.

        It uses a simple automatic discovery system by iterating through all
        submodules in sparsebound.families.

        :rtype: dict
        :return: A dict of available families and their implementations in
                 the following format::
                 {'triangle': {'class': TriangleToolkit,
                               'family': TriangleFamily},
                  'bisphere': {'class': BilinearSphereToolkit,
                               'family': BilinearSphereFamily}
                 }
        """
        if not self.family_list:
            self.discover_families()
        log.debug("List of available families: %s", self.family_list)
        return self.family_list

    def get_family_class(self, name):
        """
        Return the toolkit class for the requested family.

        :rtype: toolkit class or ``None``
        :return: A class corresponding to the requested family or ``None``
                 if the family was not found.
        """
        log.debug("Returning a class for the %s family", name)
        impl = self.list_families().get(name)
        if impl and impl.get('class'):
            return impl['class']
        log.debug("Family with the name: %s not found", name)
        return None

    def create_toolkit(self, name, config):
        """
        Searches all available families for a Toolkit with the given name,
        and instantiates it based on the given config dictionary.

        Example:

        .. code-block:: python

            factory = MeasureFamilyFactory()
            toolkit = factory.create_toolkit(FamilyList.BISPHERE,
                                             {'dim': 1, 'grid_n': 512})

        :type name: str
        :param name: Family name: one of ``triangle``, ``bisphere``,
                     ``product-sphere``, ``custom``.

        :type config: :class:`dict`
        :param config: A dictionary of toolkit settings, e.g. ``dim``,
                       ``n_nodes``, ``grid_n``. The ``custom`` family also
                       needs ``measure_source``.

        :return:  a concrete toolkit instance
        :rtype: ``object`` of :class:`.Toolkit`
        """
        log.info("Creating '%s' toolkit", name)
        toolkit_class = self.get_family_class(name)
        if toolkit_class is None:
            log.error("A family with the name %s could not be found", name)
            raise NotImplementedError(
                'A family with name {0} could not be'
                ' found'.format(name))
        log.debug("Created '%s' toolkit", name)
        return toolkit_class(config)

    def create_family(self, name, *args, **kwargs):
        """
        Instantiate the measure family with the given name.

        :rtype: :class:`.MeasureFamily`
        """
        impl = self.list_families().get(name) or {}
        family_class = impl.get('family')
        if family_class is None:
            raise NotImplementedError(
                'A family with name {0} could not be found'.format(name))
        return family_class(*args, **kwargs)

    def create_measure(self, name, dim, n_nodes=None, source=None):
        """
        Build the quadrature of a family measure directly, without a
        toolkit. ``source`` is only used by the ``custom`` family.

        :rtype: :class:`.DiscreteMeasure`
        """
        if name == FamilyList.CUSTOM:
            family = self.create_family(name, source)
        else:
            family = self.create_family(name)
        return family.build_measure(dim, n_nodes)

    def get_all_family_classes(self):
        """
        Returns a list of toolkit classes for all available families.

        :rtype: ``list``
        """
        all_families = [impl['class'] for impl in self.list_families().values()
                        if impl.get('class')]
        log.info("List of family classes: %s", all_families)
        return all_families
