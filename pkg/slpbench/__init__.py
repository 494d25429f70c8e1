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
`slpbench` - random access into grammar-compressed strings, with oracles.
"""

import logging
import sys
from configparser import ConfigParser
from os import path


__version__ = '26.10.0'

SLPBENCH_INI = path.join(
    path.dirname(path.abspath(__file__)), 'data', 'slpbench.ini'
)
assert path.isfile(SLPBENCH_INI)

# Allowed values for `loglevel`:
LOGLEVELS = ('debug', 'info', 'warning', 'error')

# Allowed values for `output`:
OUTPUTS = ('csv', 'json')

DEFAULT_CONFIG = (
    ('cap', 2 ** 24),
    ('word_size', 'log2L'),
    ('seed', 0),
    ('loglevel', 'warning'),
    ('auto_pad', True),
    ('output', 'csv'),
)


def _check_type(config, key, kind):
    value = config[key]
    if type(value) is not kind:
        raise TypeError(
            "config[{!r}] must be a {!r}; got a {!r}: {!r}".format(
                key, kind, type(value), value)
        )
    return value


def build_config(overrides=None):
    """
    Return the default config updated with *overrides*, validated.

    >>> build_config({'seed': 7})['seed']
    7
    >>> build_config({'loglevel': 'chatty'})
    Traceback (most recent call last):
      ...
    ValueError: invalid config['loglevel']: 'chatty'
    """
    config = dict(DEFAULT_CONFIG)
    if overrides:
        for key in overrides:
            if key not in config:
                raise ValueError('unknown config key: {!r}'.format(key))
        config.update(overrides)
    if _check_type(config, 'cap', int) < 1:
        raise ValueError("invalid config['cap']: {!r}".format(config['cap']))
    word_size = config['word_size']
    if word_size != 'log2L':
        if _check_type(config, 'word_size', int) < 1:
            raise ValueError(
                "invalid config['word_size']: {!r}".format(word_size)
            )
    _check_type(config, 'seed', int)
    if config['loglevel'] not in LOGLEVELS:
        raise ValueError(
            "invalid config['loglevel']: {!r}".format(config['loglevel'])
        )
    _check_type(config, 'auto_pad', bool)
    if config['output'] not in OUTPUTS:
        raise ValueError(
            "invalid config['output']: {!r}".format(config['output'])
        )
    return config


def read_ini(filename):
    """
    Read the ``[slpbench]`` section of *filename* as a dict of overrides.

    >>> build_config(read_ini(SLPBENCH_INI)) == build_config()
    True
    """
    parser = ConfigParser(inline_comment_prefixes=(';',))
    with open(filename, 'r') as fp:
        parser.read_file(fp)
    if not parser.has_section('slpbench'):
        return {}
    section = parser['slpbench']
    overrides = {}
    for key in section:
        if key in ('cap', 'seed'):
            overrides[key] = section.getint(key)
        elif key == 'auto_pad':
            overrides[key] = section.getboolean(key)
        elif key == 'word_size' and section[key] != 'log2L':
            overrides[key] = section.getint(key)
        else:
            overrides[key] = section[key]
    return overrides


def configure_logging(level='warning'):
    if level not in LOGLEVELS:
        raise ValueError('invalid loglevel: {!r}'.format(level))
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level.upper()),
        format='%(levelname)s %(name)s: %(message)s',
    )
