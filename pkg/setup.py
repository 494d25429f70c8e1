#!/usr/bin/python3

# slpbench: Random access into grammar-compressed strings, with oracles
# Copyright (C) 2026 slpbench developers
#
# This file is part of `slpbench`.
#
# `slpbench` is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version.
#
# `slpbench` is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR
# A PARTICULAR PURPOSE.  See the GNU Lesser General Public License for more
# details.
#
# You should have received a copy of the GNU Lesser General Public License along
# with `slpbench`.  If not, see <http://www.gnu.org/licenses/>.

"""
Install `slpbench`.
"""

import sys
if sys.version_info < (3, 8):
    sys.exit('ERROR: slpbench requires Python 3.8 or newer')

import os
from os import path
import shutil
import subprocess
from setuptools import setup, Command


TREE = path.dirname(path.abspath(__file__))


def run_under_same_interpreter(opname, args):
    print('\n** running: {}...'.format(' '.join(args)), file=sys.stderr)
    cmd = [sys.executable] + args
    print('check_call:', cmd, file=sys.stderr)
    subprocess.check_call(cmd)
    print('** PASSED: {}\n'.format(opname), file=sys.stderr)


def run_pyflakes3():
    if shutil.which('pyflakes3') is None and shutil.which('pyflakes') is None:
        print('ERROR: pyflakes is not installed', file=sys.stderr)
        print('Consider running `setup.py test --skip-flakes`', file=sys.stderr)
        sys.exit(3)
    names = [
        'slpbench',
        'setup.py',
        'slpbench-cli',
        'benchmark-probe-access.py',
    ]
    args = ['-m', 'pyflakes'] + [path.join(TREE, name) for name in names]
    run_under_same_interpreter('flakes', args)


def run_sphinx_doctest():
    doc = path.join(TREE, 'doc')
    doctest = path.join(TREE, 'doc', '_build', 'doctest')
    args = ['-m', 'sphinx', '-EW', '-b', 'doctest', doc, doctest]
    run_under_same_interpreter('sphinx', args)


class Test(Command):
    description = 'run unit tests and doctests'

    user_options = [
        ('skip-all', None, 'skip all tests'),
        ('skip-flakes', None, 'do not run pyflakes static checks'),
        ('skip-sphinx', None, 'do not run Sphinx doctests'),
        ('skip-slow', None, 'skip the exhaustive oracle tests'),
    ]

    def initialize_options(self):
        self.skip_all = 0
        self.skip_sphinx = 0
        self.skip_flakes = 0
        self.skip_slow = 0

    def finalize_options(self):
        pass

    def run(self):
        if self.skip_all:
            sys.exit(0)
        if self.skip_slow:
            os.environ['SKIP_SLPBENCH_SLOW_TESTS'] = 'true'
        if not self.skip_flakes:
            run_pyflakes3()
        from slpbench.tests.run import run_tests
        if not run_tests():
            sys.exit(2)
        if not self.skip_sphinx:
            run_sphinx_doctest()


def read_version():
    with open(path.join(TREE, 'slpbench', '__init__.py'), 'r') as fp:
        for line in fp:
            if line.startswith('__version__'):
                return line.split("'")[1]
    raise RuntimeError('no __version__ in slpbench/__init__.py')


setup(
    name='slpbench',
    description='Random access into grammar-compressed strings, with oracles',
    version=read_version(),
    license='LGPLv3+',
    packages=[
        'slpbench',
        'slpbench.tests',
    ],
    package_data={'slpbench': ['data/slpbench.ini']},
    scripts=['slpbench-cli'],
    python_requires='>=3.8',
    install_requires=[
        'bitarray>=2.3',
        'dbase32',
        'networkx',
        'numpy',
    ],
    extras_require={
        'test': ['hypothesis', 'pyflakes'],
        'doc': ['sphinx'],
    },
    cmdclass={'test': Test},
)
