"""
SparseBound computes sparse bounds for bilinear maximal averages over
discretized measures and checks them against the known exponent regions.
"""

import ast
import os
import re

from setuptools import find_packages, setup

# Cannot use "from sparsebound import get_version" because that would try to
# import numpy and six which may not be installed yet.
reg = re.compile(r'__version__\s*=\s*(.+)')
with open(os.path.join('sparsebound', '__init__.py')) as f:
    for line in f:
        m = reg.match(line)
        if m:
            version = ast.literal_eval(m.group(1))
            break

REQS_BASE = [
    'six>=1.11',
    'tenacity>=6.0',
    'pyeventsystem<2',
    'numpy>=1.21',
    'scipy>=1.7'
]
REQS_DEV = [
    'tox>=4.0.0',
    'pytest',
    'pytest-xdist',
    'coverage',
    'sphinx>=1.3.1',
    'flake8>=3.3.0',
    'flake8-import-order>=0.12'
]

setup(
    name='sparsebound',
    version=version,
    description='Sparse bounds for bilinear maximal averages on dyadic grids.',
    long_description=__doc__,
    author='SparseBound developers',
    install_requires=REQS_BASE,
    extras_require={
        'dev': REQS_DEV
    },
    packages=find_packages(exclude=['tests', 'tests.*']),
    entry_points={
        'console_scripts': ['sparsebound=sparsebound.cli:main']
    },
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: Implementation :: CPython'],
    test_suite="tests"
)
