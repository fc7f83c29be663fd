"""
Exceptions raised by the toolkit
"""


class SparseBoundBaseException(Exception):
    """
    Base class for all sparsebound exceptions
    """
    pass


class InvalidConfigurationException(SparseBoundBaseException):
    """
    Marker interface for invalid toolkit configurations.
    Thrown when a combination of configuration values, for example a
    ``j_min`` larger than ``j_max``, results in an illegal state.
    """
    pass


class InvalidDimensionException(SparseBoundBaseException):
    """
    Marker interface for a nonpositive or mismatched spatial dimension.
    Raised when cubes, grid functions and measures of different dimensions
    are combined, or when a dimension below one is requested.
    """
    pass


class UnsupportedDimensionException(SparseBoundBaseException,
                                    NotImplementedError):
    """
    Marker interface for a dimension that a measure family or an operator
    does not implement. It is also a ``NotImplementedError`` so that callers
    probing for support can catch the builtin.
    """

    def __init__(self, what, dim, supported):
        super(UnsupportedDimensionException, self).__init__(
            "%s is not implemented for d=%s. Supported dimensions: %s" %
            (what, dim, ", ".join(str(s) for s in supported)))
        self.dim = dim
        self.supported = tuple(supported)


class ResolutionException(SparseBoundBaseException):
    """
    Marker interface for a cube that is finer than the grid it is applied to.
    A grid function with ``n`` cells per axis resolves only cubes whose
    sidelength is a multiple of the cell size.
    """
    pass


class InvalidExponentException(SparseBoundBaseException):
    """
    Marker interface for an exponent outside the range an average or norm
    accepts, such as ``t <= 0`` for an L^t average or ``r < 1`` for a
    Lorentz norm.
    """

    def __init__(self, msg):
        super(InvalidExponentException, self).__init__(msg)


class PreconditionException(SparseBoundBaseException):
    """
    Marker interface for inputs violating a documented precondition, for
    example a negative value in a function that must be nonnegative.
    """
    pass


class InvalidParametersException(SparseBoundBaseException):
    """
    Marker interface for parameters failing the hypotheses of a transcribed
    result, for example ``d < 2m`` for the full triangle region or an
    exponent triple without ``r >= p, q`` and ``r > 1``.
    """
    pass


class InvalidExperimentException(SparseBoundBaseException):
    """
    Marker interface for an experiment that cannot produce a meaningful
    measurement, such as a fit over a single abscissa or inputs whose
    support escapes the grid.
    """
    pass


class InternalGeometryException(SparseBoundBaseException):
    """
    Marker interface for a violated geometric invariant inside the library,
    for example a localized operator with mass outside its cube.
    """
    pass


class InvalidValueException(SparseBoundBaseException):
    """
    Marker interface for any attempt to pass an unrecognised value, for
    example an unknown region name or a negative scale.
    """
    def __init__(self, param, value):
        super(InvalidValueException, self).__init__(
            "Param %s has been given an unrecognised value %s" %
            (param, value))
        self.param = param
        self.value = value


class DegenerateInputException(SparseBoundBaseException):
    """
    Marker interface for inputs that leave a construction undefined, such
    as a Muckenhoupt weight vanishing on part of the grid.
    """
    pass
