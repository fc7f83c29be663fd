import hashlib
import logging
import os
import re
import sys
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

import six

from ..interfaces.exceptions import InvalidValueException

log = logging.getLogger(__name__)


def get_env(varname, default_value=None):
    """
    Return the value of the environment variable or default_value.

    String values are returned as text on both py2 and py3.

    :type varname: ``str``
    :param varname: Name of the environment variable for which to check.

    :param default_value: Return this value is the env var is not found.
                          Defaults to ``None``.
    """
    value = os.environ.get(varname, default_value)
    if isinstance(value, six.string_types) and not isinstance(
            value, six.text_type):
        return six.u(value)
    return value


def parse_bool(value):
    """
    Interpret config and environment flags: ``True``, ``"true"``, ``"yes"``
    and ``"1"`` are true, everything else is false.
    """
    if isinstance(value, bool):
        return value
    if value:
        return str(value).strip().upper() in ('TRUE', 'YES', '1', 'ON')
    return False


def parse_rational(value):
    """
    Parse ``"3/4"``, ``"0.25"``, ``3`` or a :class:`fractions.Fraction`
    into an exact ``Fraction``.

    :raises InvalidValueException: for anything else.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, six.integer_types):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10 ** 12)
    if isinstance(value, six.string_types):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InvalidValueException('rational', value)


def rle_encode(mask):
    """
    Run-length encode a boolean array in C order.

    :rtype: ``dict``
    :return: ``{'shape': [...], 'start': bool, 'runs': [...]}`` where runs
             alternate starting with the value ``start``.
    """
    flat = np.asarray(mask, dtype=bool).ravel()
    if flat.size == 0:
        return {'shape': list(np.shape(mask)), 'start': False, 'runs': []}
    edges = np.flatnonzero(flat[1:] != flat[:-1]) + 1
    bounds = np.concatenate(([0], edges, [flat.size]))
    return {'shape': list(np.shape(mask)), 'start': bool(flat[0]),
            'runs': np.diff(bounds).astype(int).tolist()}


def rle_decode(data):
    shape = tuple(int(s) for s in data['shape'])
    runs = [int(r) for r in data['runs']]
    if sum(runs) != int(np.prod(shape)):
        raise InvalidValueException('runs', sum(runs))
    values = np.zeros(len(runs), dtype=bool)
    values[0 if data['start'] else 1::2] = True
    return np.repeat(values, runs).reshape(shape)


def sha256_file(path, block_size=65536):
    digest = hashlib.sha256()
    with open(path, 'rb') as handle:
        for block in iter(lambda: handle.read(block_size), b''):
            digest.update(block)
    return digest.hexdigest()


@contextmanager
def cleanup_action(cleanup_func):
    """
    Context manager to carry out a given cleanup action after a set of
    tasks, or when an exception occurs. Errors raised by the cleanup are
    logged and ignored, and the original traceback is preserved.

    Usage:
        with cleanup_action(lambda: handle.close()):
            write_rows(handle)
    """
    try:
        yield
    except Exception:
        ex_class, ex_val, ex_traceback = sys.exc_info()
        try:
            cleanup_func()
        except Exception:
            log.exception("Error during exception cleanup: ")
        six.reraise(ex_class, ex_val, ex_traceback)
    try:
        cleanup_func()
    except Exception:
        log.exception("Error during exception cleanup: ")


NON_ALPHA_NUM = re.compile(r"[^A-Za-z0-9]+")


def to_run_name(value, replace_with="-"):
    """
    Converts a label such as an experiment or region name into a string
    safe for file names by replacing non-alphanumeric runs.
    """
    val = re.sub(NON_ALPHA_NUM, replace_with, value)
    return val.strip("-")
