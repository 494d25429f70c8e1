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
Hard grammars built from set disjointness instances.

Characters of the derived strings are addressed "by sets".  For plain set
disjointness a set ``X`` of ``{1..m}`` is identified with its characteristic
vector, element 1 least significant:

>>> [set_index(X, 3) for X in [set(), {1}, {2}, {1, 2}, {3}]]
[0, 1, 2, 3, 4]

For blocked sets the universe ``{1..B*N}`` is cut into ``N`` blocks of ``B``
elements and a blocked set picks exactly one element per block, block 1
least significant:

>>> [blocked_index(X, 3, 2) for X in [{1, 4}, {2, 4}, {3, 4}, {1, 5}]]
[0, 1, 2, 3]

The grammars then carry a ``1`` exactly at the indices of the sets disjoint
from ``Y``:

>>> from slpbench.slp import expand
>>> expand(build_sd_grammar(SetInstance(4, {1, 3}))).to01()
'1010000010100000'
>>> expand(build_blsd_grammar(BlockedInstance(3, 3, {1, 3, 5, 9}))).to01()
'010000010010000010000000000'
"""

import logging
from functools import reduce

import numpy as np
from bitarray import bitarray

from .slp import Slp, SlpBuilder, trim


log = logging.getLogger(__name__)


class ElementOutOfUniverse(ValueError):
    def __init__(self, element, universe):
        self.element = element
        self.universe = universe
        super().__init__(
            'element {!r} not in universe 1..{}'.format(element, universe)
        )


class NotBlocked(ValueError):
    def __init__(self, block, count):
        self.block = block
        self.count = count
        super().__init__(
            'block {} holds {} elements (must hold exactly 1)'.format(
                block, count)
        )


def check_subset(X, universe):
    for e in X:
        if type(e) is not int or not (1 <= e <= universe):
            raise ElementOutOfUniverse(e, universe)
    return frozenset(X)


def _check_positive(name, value):
    if not isinstance(value, int):
        raise TypeError(
            '{} must be a {!r}; got a {!r}: {!r}'.format(
                name, int, type(value), value)
        )
    if value < 1:
        raise ValueError('{} must be >= 1; got {!r}'.format(name, value))
    return value


class SetInstance:
    """
    A set disjointness instance: ``Y`` inside the universe ``{1..m}``.
    """

    __slots__ = ('m', 'Y')

    def __init__(self, m, Y):
        self.m = _check_positive('m', m)
        self.Y = check_subset(Y, m)

    def __repr__(self):
        return '{}({!r}, {!r})'.format(
            self.__class__.__name__, self.m, sorted(self.Y))


class BlockedInstance:
    """
    A blocked disjointness instance over ``N`` blocks of ``B`` elements.
    """

    __slots__ = ('B', 'N', 'Y', 'X')

    def __init__(self, B, N, Y, X=None):
        self.B = _check_positive('B', B)
        self.N = _check_positive('N', N)
        self.Y = check_subset(Y, B * N)
        if X is not None:
            blocked_index(X, B, N)
            X = frozenset(X)
        self.X = X

    def __repr__(self):
        return '{}({!r}, {!r}, {!r})'.format(
            self.__class__.__name__, self.B, self.N, sorted(self.Y))

    def block(self, i):
        return range(self.B * (i - 1) + 1, self.B * i + 1)


def disjoint(X, Y):
    """
    >>> disjoint({2, 4}, {1, 3})
    True
    >>> disjoint({1}, {1})
    False
    """
    return not (set(X) & set(Y))


########################
# Set <-> index codecs:

def set_index(X, m):
    X = check_subset(X, m)
    return sum(1 << (e - 1) for e in X)


def set_from_index(index, m):
    """
    >>> sorted(set_from_index(5, 3))
    [1, 3]
    """
    if not (0 <= index < 2 ** m):
        raise ValueError('index {!r} out of range for m={}'.format(index, m))
    return frozenset(e for e in range(1, m + 1) if index >> (e - 1) & 1)


def blocked_digits(X, B, N):
    """
    Return ``(a_1, ..., a_N)`` where ``a_i`` is the offset of X's element in
    block ``i``.
    """
    X = check_subset(X, B * N)
    counts = [0] * N
    digits = [0] * N
    for e in X:
        i = (e - 1) // B
        counts[i] += 1
        digits[i] = (e - 1) % B
    for (i, count) in enumerate(counts, start=1):
        if count != 1:
            raise NotBlocked(i, count)
    return tuple(digits)


def blocked_index(X, B, N):
    """
    >>> blocked_index({2, 4, 8}, 3, 3)
    10
    """
    return sum(a * B ** i for (i, a) in enumerate(blocked_digits(X, B, N)))


def blocked_from_index(index, B, N):
    """
    >>> sorted(blocked_from_index(10, 3, 3))
    [2, 4, 8]
    """
    if not (0 <= index < B ** N):
        raise ValueError(
            'index {!r} out of range for B={}, N={}'.format(index, B, N)
        )
    X = set()
    for i in range(N):
        (index, a) = divmod(index, B)
        X.add(B * i + a + 1)
    return frozenset(X)


def blocked_sets(B, N):
    """
    Yield every blocked set in index order.
    """
    for index in range(B ** N):
        yield blocked_from_index(index, B, N)


########################
# Grammar builders:

def build_sd_grammar(inst):
    """
    Return the ``2m + 1`` rule grammar deriving ``s_Y`` of length ``2**m``.

    The zero strings ``0, 0^2, ..., 0^(2^(m-1))`` come first, then ``g_0 = 1``
    and ``g_i = g_{i-1} g_{i-1}`` or ``g_{i-1} 0^(2^(i-1))`` when ``i`` is in
    ``Y``.
    """
    b = SlpBuilder()
    zeros = [b.terminal(0)]
    while len(zeros) < inst.m:
        zeros.append(b.pair(zeros[-1], zeros[-1]))
    g = b.terminal(1)
    for i in range(1, inst.m + 1):
        if i in inst.Y:
            g = b.pair(g, zeros[i - 1])
        else:
            g = b.pair(g, g)
    slp = b.build()
    assert len(slp) == 2 * inst.m + 1
    log.debug('SD grammar m=%d |Y|=%d: %d rules', inst.m, len(inst.Y), len(slp))
    return slp


def repeat(b, symbol, count):
    """
    Concatenate *count* copies of *symbol* by doubling, O(log count) rules.
    """
    parts = []
    power = symbol
    while True:
        if count & 1:
            parts.append(power)
        count >>= 1
        if not count:
            break
        power = b.pair(power, power)
    return b.concat(parts)


def build_blsd_grammar(inst, compact_zeros=False):
    """
    Return a grammar of at most ``2BN + 1`` rules deriving ``s_Y``.

    Each ``g_i`` is the balanced concatenation of ``B`` symbols, ``g_{i-1}``
    where the element of block ``i`` is outside ``Y`` and ``0^(B^(i-1))``
    where it is inside.  With *compact_zeros* the zero strings are built by
    doubling, using O(N log B) rules instead of ``B*N``.
    """
    (B, N) = (inst.B, inst.N)
    b = SlpBuilder()
    zeros = [b.terminal(0)]
    while len(zeros) < N:
        if compact_zeros:
            zeros.append(repeat(b, zeros[-1], B))
        else:
            zeros.append(b.concat([zeros[-1]] * B))
    g = b.terminal(1)
    for i in range(1, N + 1):
        g = b.concat([
            zeros[i - 1] if e in inst.Y else g
            for e in inst.block(i)
        ])
    slp = b.build()
    if g != slp.start:
        # Only happens for B == 1, where no concatenation is emitted.
        slp = trim(Slp(slp.rules[:g]))
    log.debug('BLSD grammar B=%d N=%d |Y|=%d: %d rules',
        B, N, len(inst.Y), len(slp)
    )
    return slp


########################
# Replacement and tensor-product oracles:

def h_block(Y, B, i):
    """
    Return ``h_i``: bit ``j - 1`` is 1 iff element ``B(i-1) + j`` is not in Y.

    >>> h_block({1, 3, 5, 9}, 3, 1).to01()
    '010'
    """
    return bitarray([int(B * (i - 1) + j not in Y) for j in range(1, B + 1)])


def substitute(s, zero_image, one_image):
    """
    Replace every 0 of *s* with *zero_image* and every 1 with *one_image*.
    """
    out = bitarray()
    for bit in s:
        out += (one_image if bit else zero_image)
    return out


def blsd_by_replacement(Y, B, N):
    """
    Derive ``s_Y`` by the replacement rules ``0 -> 0^B`` and ``1 -> h_i``.

    Blocks are applied from ``N`` down to 1, so block 1 ends up least
    significant, agreeing with `blocked_index()`.
    """
    s = bitarray('1')
    zero = bitarray('0') * B
    for i in range(N, 0, -1):
        s = substitute(s, zero, h_block(Y, B, i))
    return s


def block_matrix(B):
    """
    Return the ``B x 2**B`` disjointness matrix of one block.

    Row ``j`` is an element, column ``c`` a subset (as a characteristic
    vector); the entry is 1 iff the element is not in the subset:

    >>> block_matrix(3)
    array([[1, 0, 1, 0, 1, 0, 1, 0],
           [1, 1, 0, 0, 1, 1, 0, 0],
           [1, 1, 1, 1, 0, 0, 0, 0]], dtype=uint8)
    """
    columns = np.arange(2 ** B)
    rows = np.arange(B).reshape(B, 1)
    return (1 - ((columns >> rows) & 1)).astype(np.uint8)


def _kron_string(vectors):
    # vectors are given block 1 first; block 1 must be least significant.
    product = reduce(np.kron, reversed(vectors), np.ones(1, dtype=np.uint8))
    return bitarray(product.tolist())


def tensor_string(Y, B, N):
    """
    Return ``s_Y`` as the Kronecker product of per-block matrix columns.

    >>> tensor_string({1, 3, 5, 9}, 3, 3).to01()
    '010000010010000010000000000'
    """
    matrix = block_matrix(B)
    vectors = []
    for i in range(1, N + 1):
        column = sum(1 << (e - B * (i - 1) - 1)
            for e in range(B * (i - 1) + 1, B * i + 1) if e in Y
        )
        vectors.append(matrix[:, column])
    return _kron_string(vectors)


def sd_tensor_string(Y, m):
    """
    Return the set disjointness ``s_Y`` as an ``m``-fold Kronecker product.

    >>> sd_tensor_string({1, 3}, 4).to01()
    '1010000010100000'
    """
    matrix = np.array([[1, 1], [1, 0]], dtype=np.uint8)
    return _kron_string(
        [matrix[:, int(i in Y)] for i in range(1, m + 1)]
    )
