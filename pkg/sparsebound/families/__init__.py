"""
Measure families known to the toolkit factory. Every subpackage exports a
toolkit class with a ``FAMILY_ID`` and the measure family it is built on.
"""
