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
Burrows-Wheeler transform, run-length coding, and the BWT-compressible hard
string.

The transform appends the sentinel ``$`` (smaller than ``0`` and ``1``),
sorts all rotations and keeps the last column:

>>> bwt('010110')
'01$1100'
>>> ibwt('01$1100').to01()
'010110'
>>> runs('01$1100')
3
"""

import json
import logging
from collections import namedtuple
from itertools import groupby

import numpy as np
from bitarray import bitarray

from .hard import blocked_digits, h_block, substitute
from .slp import SlpBuilder, CapExceeded, DEFAULT_CAP


log = logging.getLogger(__name__)

SENTINEL = '$'

# Symbol codes for the rotation sort; '$' sorts first.
CODES = {SENTINEL: 0, '0': 1, '1': 2}

# `rle_bits()` never exceeds runs * (ceil(log2 L) + 1) + ceil(log2 L) + RLE_SLACK
# where L is the length of the transformed text (sentinel included).
RLE_SLACK = 0

# Runs bound constant of the hard string: runs(bwt(s')) <= RUNS_FACTOR * B * N.
RUNS_FACTOR = 512

RunLengthCode = namedtuple('RunLengthCode', 'sentinel_position runs total_length')


class MalformedBwt(ValueError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__('malformed BWT text: {}'.format(reason))


class MalformedCode(ValueError):
    def __init__(self, reason):
        self.reason = reason
        super().__init__('malformed run-length code: {}'.format(reason))


def as01(s):
    """
    Return *s* (a `bitarray` or a string of ``0``/``1``) as a ``str``.
    """
    if isinstance(s, bitarray):
        return s.to01()
    s = str(s)
    if s.strip('01'):
        raise ValueError('not a binary string: {!r}'.format(s))
    return s


def check_bwt_text(t):
    if not isinstance(t, str):
        raise TypeError(
            'BWT text must be a {!r}; got a {!r}: {!r}'.format(str, type(t), t)
        )
    if t.strip('01$'):
        raise MalformedBwt('symbols outside {0, 1, $}')
    count = t.count(SENTINEL)
    if count != 1:
        raise MalformedBwt('{} sentinels (need exactly 1)'.format(count))
    return t


########################
# Transform and inverse:

def bwt_naive(s):
    """
    Transform by explicitly sorting every rotation of ``s + '$'``.

    >>> bwt_naive('0')
    '0$'
    """
    text = as01(s) + SENTINEL
    rotations = sorted(text[k:] + text[:k] for k in range(len(text)))
    return ''.join(r[-1] for r in rotations)


def rotation_order(codes):
    """
    Return the start positions of the sorted cyclic rotations of *codes*.

    Prefix doubling: after the round with offset ``k`` every rotation is
    ranked by its first ``2k`` symbols.  The unique sentinel makes all ranks
    distinct once ``2k`` reaches the length.
    """
    n = len(codes)
    rank = np.asarray(codes, dtype=np.int64)
    k = 1
    while True:
        second = np.roll(rank, -k)
        order = np.lexsort((second, rank))
        (first_sorted, second_sorted) = (rank[order], second[order])
        change = np.ones(n, dtype=bool)
        change[1:] = (
            (first_sorted[1:] != first_sorted[:-1])
            | (second_sorted[1:] != second_sorted[:-1])
        )
        classes = np.cumsum(change) - 1
        rank = np.empty(n, dtype=np.int64)
        rank[order] = classes
        if classes[-1] == n - 1 or k >= n:
            return order
        k *= 2


def bwt(s):
    """
    Return the BWT of the binary string *s* as a ``str`` over ``{0, 1, $}``.
    """
    text = as01(s) + SENTINEL
    n = len(text)
    order = rotation_order([CODES[c] for c in text])
    symbols = np.array(list(text))
    return ''.join(symbols[(order - 1) % n])


def ibwt(t):
    """
    Invert the transform by walking the LF mapping from the ``$`` row.
    """
    check_bwt_text(t)
    n = len(t)
    seen = {SENTINEL: 0, '0': 0, '1': 0}
    occ = []
    for c in t:
        occ.append(seen[c])
        seen[c] += 1
    first = {SENTINEL: 0, '0': 1, '1': 1 + seen['0']}
    out = []
    row = 0
    for _ in range(n - 1):
        c = t[row]
        if c == SENTINEL:
            raise MalformedBwt('LF mapping reaches the sentinel early')
        out.append(c)
        row = first[c] + occ[row]
    if t[row] != SENTINEL:
        raise MalformedBwt('LF mapping does not close on the sentinel')
    return bitarray(''.join(reversed(out)))


def runs(t):
    """
    Count the maximal blocks of equal bits, ignoring the sentinel.

    >>> (runs('0000'), runs('0101'), runs('$'))
    (1, 4, 0)
    """
    if isinstance(t, bitarray):
        t = t.to01()
    return sum(1 for _ in groupby(t.replace(SENTINEL, '')))


########################
# Run-length coding:

def rle_encode(t):
    """
    >>> rle_encode('01$1100')
    RunLengthCode(sentinel_position=2, runs=((0, 1), (1, 3), (0, 2)), total_length=7)
    """
    check_bwt_text(t)
    bits = t.replace(SENTINEL, '')
    code = tuple(
        (int(bit), sum(1 for _ in group)) for (bit, group) in groupby(bits)
    )
    return RunLengthCode(t.index(SENTINEL), code, len(t))


def check_code(code):
    (position, code_runs, total) = code
    for value in [position] + [v for run in code_runs for v in run]:
        if type(value) is not int:
            raise MalformedCode('expected an integer; got {!r}'.format(value))
    if not (0 <= position < total):
        raise MalformedCode('sentinel position {!r} outside 0..{}'.format(
            position, total - 1)
        )
    previous = None
    for (bit, length) in code_runs:
        if bit not in (0, 1):
            raise MalformedCode('run bit must be 0 or 1; got {!r}'.format(bit))
        if length < 1:
            raise MalformedCode('run length must be >= 1; got {!r}'.format(length))
        if bit == previous:
            raise MalformedCode('adjacent runs share bit {}'.format(bit))
        previous = bit
    if sum(length for (bit, length) in code_runs) + 1 != total:
        raise MalformedCode('run lengths do not add up to {}'.format(total - 1))
    return code


def rle_decode(code):
    check_code(code)
    bits = ''.join(str(bit) * length for (bit, length) in code.runs)
    p = code.sentinel_position
    return bits[:p] + SENTINEL + bits[p:]


def rle_bits(code):
    """
    Encoded size in bits: a bit and a length per run, plus the ``$`` position.

    Lengths and the position take ``ceil(log2(L))`` bits each, ``L`` being the
    transformed length.
    """
    width = (code.total_length - 1).bit_length()
    return len(code.runs) * (1 + width) + width


def encode_rle_json(code):
    """
    >>> encode_rle_json(rle_encode('01$1100'))
    '{"runs": [[0, 1], [1, 3], [0, 2]], "sentinel_position": 2}'
    """
    return json.dumps({
        'sentinel_position': code.sentinel_position,
        'runs': [list(run) for run in code.runs],
    }, sort_keys=True)


def decode_rle_json(text):
    try:
        obj = json.loads(text)
        position = obj['sentinel_position']
        code_runs = tuple((bit, length) for (bit, length) in obj['runs'])
        total = sum(length for (bit, length) in code_runs) + 1
    except (ValueError, KeyError, TypeError) as e:
        raise MalformedCode('bad JSON: {}'.format(e))
    return check_code(RunLengthCode(position, code_runs, total))


########################
# The BWT-compressible hard string:

def h_prime(h):
    """
    Replace every 0 of *h* with ``1011`` and every 1 with ``1101``.

    >>> h_prime(bitarray('01')).to01()
    '10111101'
    """
    return substitute(bitarray(as01(h)), bitarray('1011'), bitarray('1101'))


def build_bwt_hard(Y, B, N, cap=DEFAULT_CAP):
    """
    Return ``s'_Y`` of length ``(4B)**N``.

    Starting from ``1``, each step replaces ``0`` with ``0^(4B)`` and ``1``
    with ``h'_i``; blocks are applied from ``N`` down to 1 so that block 1
    is the least significant base-``4B`` digit.

    >>> build_bwt_hard(set(), 1, 1).to01()
    '1101'
    """
    total = (4 * B) ** N
    if total > cap:
        raise CapExceeded(total, cap)
    s = bitarray('1')
    zero = bitarray('0') * (4 * B)
    for i in range(N, 0, -1):
        s = substitute(s, zero, h_prime(h_block(Y, B, i)))
    assert len(s) == total
    return s


def sigma_digits(X, B, N):
    """
    Return the base-``4B`` digits ``4a_i + 2``, block 1 first.

    Each digit is a one-based offset inside a ``4B`` chunk: it lands on the
    second symbol of the ``1011``/``1101`` pattern for element ``a_i``.

    >>> sigma_digits({2, 4, 7}, 3, 3)
    (6, 2, 2)
    """
    return tuple(4 * a + 2 for a in blocked_digits(X, B, N))


def sigma(X, B, N):
    """
    Return the zero-based position of blocked set *X* in ``s'_Y``.

    >>> sigma({1}, 1, 1)
    1
    >>> sigma({2, 4, 7}, 3, 3)
    161
    """
    base = 4 * B
    return sum(
        (digit - 1) * base ** k
        for (k, digit) in enumerate(sigma_digits(X, B, N))
    )


def bwt_hard_grammar(Y, B, N):
    """
    Return a grammar deriving ``s'_Y``, one level per block.
    """
    b = SlpBuilder()
    zeros = [b.terminal(0)]
    while len(zeros) < N:
        zeros.append(b.concat([zeros[-1]] * (4 * B)))
    g = b.terminal(1)
    for i in range(1, N + 1):
        chunk = h_prime(h_block(Y, B, i))
        g = b.concat([g if bit else zeros[i - 1] for bit in chunk])
    log.debug('BWT hard grammar B=%d N=%d: %d rules', B, N, len(b))
    return b.build()
