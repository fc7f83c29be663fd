"""
Test suite for sparsebound.

The toolkit tests run against the family named by the ``SB_TEST_FAMILY``
environment variable (``bisphere`` by default); the module tests are
family independent.
"""
