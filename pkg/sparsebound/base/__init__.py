"""
Public interface exports
"""
from .toolkit import BaseToolkit  # noqa
