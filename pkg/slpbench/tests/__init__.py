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
Unit tests for `slpbench` package.
"""

from unittest import TestCase
import logging
import os
from os import path
import shutil
import tempfile

import slpbench


class TempDir(object):
    def __init__(self):
        self.dir = tempfile.mkdtemp(prefix='unittest.')

    def __del__(self):
        self.rmtree()

    def rmtree(self):
        if self.dir is not None:
            shutil.rmtree(self.dir)
            self.dir = None

    def join(self, *parts):
        return path.join(self.dir, *parts)

    def makedirs(self, *parts):
        d = self.join(*parts)
        if not path.exists(d):
            os.makedirs(d)
        assert path.isdir(d), d
        return d

    def write(self, data, *parts):
        self.makedirs(*parts[:-1])
        f = self.join(*parts)
        with open(f, 'xb') as fp:
            fp.write(data)
        return f

    def read(self, *parts):
        with open(self.join(*parts), 'rb') as fp:
            return fp.read()


class TestConstants(TestCase):
    def test_version(self):
        self.assertIsInstance(slpbench.__version__, str)
        (year, month, rev) = slpbench.__version__.split('.')
        y = int(year)
        self.assertTrue(y >= 26)
        self.assertEqual(str(y), year)
        m = int(month)
        self.assertTrue(1 <= m <= 12)
        self.assertEqual('{:02d}'.format(m), month)
        r = int(rev)
        self.assertTrue(r >= 0)
        self.assertEqual(str(r), rev)

    def test_SLPBENCH_INI(self):
        self.assertTrue(path.isfile(slpbench.SLPBENCH_INI))
        self.assertEqual(path.basename(slpbench.SLPBENCH_INI), 'slpbench.ini')

    def test_DEFAULT_CONFIG(self):
        self.assertIsInstance(slpbench.DEFAULT_CONFIG, tuple)
        keys = [key for (key, value) in slpbench.DEFAULT_CONFIG]
        self.assertEqual(keys,
            ['cap', 'word_size', 'seed', 'loglevel', 'auto_pad', 'output']
        )
        self.assertEqual(dict(slpbench.DEFAULT_CONFIG)['cap'], 2 ** 24)


class TestFunctions(TestCase):
    def test_build_config(self):
        config = slpbench.build_config()
        self.assertEqual(config, dict(slpbench.DEFAULT_CONFIG))
        self.assertIsNot(slpbench.build_config(), config)
        self.assertEqual(slpbench.build_config(None), config)
        self.assertEqual(slpbench.build_config({}), config)

        config = slpbench.build_config({'seed': 17, 'word_size': 8})
        self.assertEqual(config['seed'], 17)
        self.assertEqual(config['word_size'], 8)
        self.assertEqual(config['cap'], 2 ** 24)

        # Unknown keys:
        with self.assertRaises(ValueError) as cm:
            slpbench.build_config({'bind_address': '::1'})
        self.assertEqual(str(cm.exception), "unknown config key: 'bind_address'")

        # Wrong types:
        with self.assertRaises(TypeError) as cm:
            slpbench.build_config({'cap': '1024'})
        self.assertEqual(str(cm.exception),
            "config['cap'] must be a <class 'int'>; got a <class 'str'>: '1024'"
        )
        with self.assertRaises(TypeError) as cm:
            slpbench.build_config({'seed': True})
        self.assertEqual(str(cm.exception),
            "config['seed'] must be a <class 'int'>; got a <class 'bool'>: True"
        )
        with self.assertRaises(TypeError) as cm:
            slpbench.build_config({'auto_pad': 1})
        self.assertEqual(str(cm.exception),
            "config['auto_pad'] must be a <class 'bool'>; got a <class 'int'>: 1"
        )
        with self.assertRaises(TypeError) as cm:
            slpbench.build_config({'word_size': 'log2n'})
        self.assertEqual(str(cm.exception),
            "config['word_size'] must be a <class 'int'>; got a <class 'str'>: 'log2n'"
        )

        # Bad values:
        with self.assertRaises(ValueError) as cm:
            slpbench.build_config({'cap': 0})
        self.assertEqual(str(cm.exception), "invalid config['cap']: 0")
        with self.assertRaises(ValueError) as cm:
            slpbench.build_config({'word_size': 0})
        self.assertEqual(str(cm.exception), "invalid config['word_size']: 0")
        with self.assertRaises(ValueError) as cm:
            slpbench.build_config({'loglevel': 'verbose'})
        self.assertEqual(str(cm.exception), "invalid config['loglevel']: 'verbose'")
        with self.assertRaises(ValueError) as cm:
            slpbench.build_config({'output': 'xml'})
        self.assertEqual(str(cm.exception), "invalid config['output']: 'xml'")

    def test_read_ini(self):
        self.assertEqual(
            slpbench.build_config(slpbench.read_ini(slpbench.SLPBENCH_INI)),
            slpbench.build_config()
        )
        tmp = TempDir()
        filename = tmp.write(
            b'[slpbench]\ncap = 100 ; small\nword_size = 8\nauto_pad = no\n',
            'my.ini'
        )
        self.assertEqual(slpbench.read_ini(filename),
            {'cap': 100, 'word_size': 8, 'auto_pad': False}
        )
        filename = tmp.write(b'[other]\ncap = 100\n', 'other.ini')
        self.assertEqual(slpbench.read_ini(filename), {})
        with self.assertRaises(FileNotFoundError):
            slpbench.read_ini(tmp.join('nope.ini'))

    def test_configure_logging(self):
        with self.assertRaises(ValueError) as cm:
            slpbench.configure_logging('trace')
        self.assertEqual(str(cm.exception), "invalid loglevel: 'trace'")
        root = logging.getLogger()
        handlers = list(root.handlers)
        level = root.level
        try:
            slpbench.configure_logging('error')
        finally:
            root.handlers[:] = handlers
            root.setLevel(level)
