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
Seeded random instances and `InstanceTestCase`.

Every generator takes a `random.Random` so that a seed fixes its output for a
given release of `slpbench` (not across releases).
"""

from unittest import TestCase
import os
import random

from .slp import Slp, Terminal, Pair
from .hard import set_from_index, blocked_from_index
from .rangegrid import PointSet, all_edges


def make_rng(seed):
    if not isinstance(seed, int):
        raise TypeError(
            'seed must be a {!r}; got a {!r}: {!r}'.format(int, type(seed), seed)
        )
    return random.Random(seed)


def random_subset(rng, universe):
    """
    Pick each element of ``{1..universe}`` independently with probability 1/2.
    """
    return set_from_index(rng.getrandbits(universe) if universe else 0, universe)


def random_blocked_set(rng, B, N):
    return blocked_from_index(rng.randrange(B ** N), B, N)


def random_points(rng, W, H, P):
    return PointSet(W, H,
        [(rng.randint(1, W), rng.randint(1, H)) for _ in range(P)]
    )


def random_slp(rng, n):
    """
    Return a valid grammar of *n* rules whose last rule is a pair (``n >= 3``).

    Rules 1 and 2 are the terminals 0 and 1, every later rule pairs two
    earlier symbols chosen uniformly.
    """
    if n < 3:
        raise ValueError('need n >= 3; got {!r}'.format(n))
    rules = [Terminal(0), Terminal(1)]
    for i in range(3, n + 1):
        rules.append(Pair(rng.randint(1, i - 1), rng.randint(1, i - 1)))
    return Slp(rules)


def random_deletions(rng, H, B, D, p=0.25):
    return [e for e in all_edges(H, B, D) if rng.random() < p]


class InstanceTestCase(TestCase):
    """
    Gives each test a fresh seeded `rng`.

    Set ``SKIP_SLPBENCH_SLOW_TESTS=true`` to skip the tests marked ``slow``.
    """

    seed = 0
    slow = False

    def setUp(self):
        if self.slow and os.environ.get('SKIP_SLPBENCH_SLOW_TESTS') == 'true':
            self.skipTest('SKIP_SLPBENCH_SLOW_TESTS=true')
        self.rng = make_rng(self.seed)
