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
Benchmark wall-clock time of grammar access, descent and read-all queries.
"""

import time

from slpbench.hard import BlockedInstance, build_blsd_grammar
from slpbench.misc import make_rng, random_subset
from slpbench.probe import pack_grammar, build_descent, probe_read_all, probe_descent
from slpbench.slp import access, derived_length


count = 1000
(B, N) = (6, 6)
rng = make_rng(0)
slp = build_blsd_grammar(BlockedInstance(B, N, random_subset(rng, B * N)))
L = derived_length(slp)
w = (L - 1).bit_length()
packed = pack_grammar(slp, w)
descent = build_descent(slp, w)
indices = [rng.randrange(L) for i in range(count)]

for (name, query) in [
        ('access', lambda i: access(slp, i)),
        ('descent', lambda i: probe_descent(descent, i)),
        ('read-all', lambda i: probe_read_all(packed, i)),
    ]:
    start = time.monotonic()
    for i in indices:
        query(i)
    elapsed = time.monotonic() - start
    print('{:>8}: {:.1f} us/query'.format(name, elapsed / count * 10 ** 6))
print('n={} L={} w={}'.format(len(slp), L, w))
