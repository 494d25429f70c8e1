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
LZ77 and LZ78 parses of binary strings, and their comparison with grammars.

The LZ77 variant is greedy leftmost-longest with self-overlapping copies and
no trailing literal per factor:

>>> lz77_parse('0000').factors
(Literal(bit=0), Copy(source_start=0, length=3))
>>> len(lz77_parse('010110').factors)
4
"""

import logging
from collections import namedtuple

from bitarray import bitarray
from bitarray.util import zeros

from .slp import DEFAULT_CAP, expand


log = logging.getLogger(__name__)

LZ77_VARIANT = 'greedy-self-referential'

Literal = namedtuple('Literal', 'bit')
Copy = namedtuple('Copy', 'source_start length')
Lz77Parse = namedtuple('Lz77Parse', 'factors length')
Lz78Parse = namedtuple('Lz78Parse', 'phrases length')
LzReport = namedtuple('LzReport',
    'grammar_size lz77_factors lz78_phrases string_length variant'
)


def _as_list(s):
    if isinstance(s, bitarray):
        return s.tolist()
    return [int(c) for c in s]


def z_array(seq):
    """
    Return ``z`` where ``z[k]`` is the longest common prefix of ``seq`` and
    ``seq[k:]`` (``z[0] = len(seq)``).

    >>> z_array('aabxaab')
    [7, 1, 0, 0, 3, 1, 0]
    """
    n = len(seq)
    z = [0] * n
    if n:
        z[0] = n
    (left, right) = (0, 0)
    for k in range(1, n):
        if k < right:
            z[k] = min(right - k, z[k - left])
        while k + z[k] < n and seq[z[k]] == seq[k + z[k]]:
            z[k] += 1
        if k + z[k] > right:
            (left, right) = (k, k + z[k])
    return z


def longest_previous_match(bits, p):
    """
    Return ``(q, length)``: the leftmost ``q < p`` maximizing the common
    prefix of ``bits[q:]`` and ``bits[p:]``.
    """
    # None separates the pattern from the text; it never equals a bit.
    z = z_array(bits[p:] + [None] + bits)
    offset = len(bits) - p + 1
    (best_q, best) = (0, 0)
    for q in range(p):
        if z[offset + q] > best:
            (best_q, best) = (q, z[offset + q])
    return (best_q, best)


class _SuffixAutomaton:
    """
    Suffix automaton of a growing bit list.

    ``first[s]`` is the end index of the first occurrence of the strings of
    state ``s``.
    """

    __slots__ = ('next', 'link', 'length', 'first', 'last')

    def __init__(self):
        self.next = [{}]
        self.link = [-1]
        self.length = [0]
        self.first = [-1]
        self.last = 0

    def _new_state(self, length, first, link=-1, trans=None):
        self.next.append({} if trans is None else dict(trans))
        self.link.append(link)
        self.length.append(length)
        self.first.append(first)
        return len(self.length) - 1

    def extend(self, bit):
        """
        Append *bit*; return ``(state, clone)`` if a state was split, else
        ``None``.
        """
        size = self.length[self.last] + 1
        cur = self._new_state(size, size - 1)
        s = self.last
        while s != -1 and bit not in self.next[s]:
            self.next[s][bit] = cur
            s = self.link[s]
        self.last = cur
        if s == -1:
            self.link[cur] = 0
            return None
        q = self.next[s][bit]
        if self.length[s] + 1 == self.length[q]:
            self.link[cur] = q
            return None
        clone = self._new_state(self.length[s] + 1, self.first[q],
            self.link[q], self.next[q]
        )
        while s != -1 and self.next[s].get(bit) == q:
            self.next[s][bit] = clone
            s = self.link[s]
        self.link[q] = clone
        self.link[cur] = clone
        return (q, clone)


def lz77_parse(s):
    """
    Greedy parse in one pass over *s*.

    The automaton holds the prefix ending just before the next bit to match,
    so every match found starts before the factor.
    """
    bits = _as_list(s)
    n = len(bits)
    sam = _SuffixAutomaton()
    factors = []
    p = 0
    while p < n:
        (state, length) = (0, 0)
        while p + length < n:
            following = sam.next[state].get(bits[p + length])
            if following is None:
                break
            (state, length) = (following, length + 1)
            split = sam.extend(bits[p + length - 1])
            if split and split[0] == state and length <= sam.length[split[1]]:
                state = split[1]
        if length == 0:
            factors.append(Literal(bits[p]))
            sam.extend(bits[p])
            p += 1
        else:
            factors.append(Copy(sam.first[state] - length + 1, length))
            p += length
    return Lz77Parse(tuple(factors), n)


def lz77_decode(parse):
    """
    >>> lz77_decode(lz77_parse('010110')).to01()
    '010110'
    """
    out = []
    for factor in parse.factors:
        if isinstance(factor, Literal):
            out.append(factor.bit)
        else:
            if not (0 <= factor.source_start < len(out)):
                raise ValueError('copy source outside decoded text: {!r}'.format(
                    factor)
                )
            # Element by element so that self-overlapping copies work.
            for k in range(factor.length):
                out.append(out[factor.source_start + k])
    if len(out) != parse.length:
        raise ValueError('decoded {} bits, expected {}'.format(
            len(out), parse.length)
        )
    return bitarray(out)


def lz78_parse(s):
    """
    Return the LZ78 phrases as ``(previous_phrase_index, extension_bit)``.

    Phrase 0 is the empty phrase.  A trailing partial phrase is emitted as
    ``(index, None)``:

    >>> lz78_parse('0' * 10).phrases
    ((0, 0), (1, 0), (2, 0), (3, 0))
    >>> lz78_parse('0' * 5).phrases
    ((0, 0), (1, 0), (2, None))
    """
    trie = {}
    phrases = []
    node = 0
    bits = _as_list(s)
    for bit in bits:
        child = trie.get((node, bit))
        if child is None:
            phrases.append((node, bit))
            trie[(node, bit)] = len(phrases)
            node = 0
        else:
            node = child
    if node:
        phrases.append((node, None))
    return Lz78Parse(tuple(phrases), len(bits))


def lz78_decode(parse):
    table = [bitarray()]
    out = bitarray()
    for (previous, bit) in parse.phrases:
        phrase = table[previous].copy()
        if bit is not None:
            phrase.append(bit)
            table.append(phrase)
        out += phrase
    if len(out) != parse.length:
        raise ValueError('decoded {} bits, expected {}'.format(
            len(out), parse.length)
        )
    return out


def lz78_unary_bracket(n):
    """
    Parse ``0^n`` and check the phrase count against its closed form.

    Returns ``(phrases, ok)``.  With ``q`` complete phrases (the trailing
    partial phrase excluded), *ok* is ``q(q+1)/2 <= n < (q+1)(q+2)/2 + q``.

    >>> lz78_unary_bracket(10)
    (4, True)
    >>> lz78_unary_bracket(12)
    (5, True)
    """
    phrases = lz78_parse(zeros(n)).phrases
    q = sum(1 for (previous, bit) in phrases if bit is not None)
    ok = q * (q + 1) // 2 <= n < (q + 1) * (q + 2) // 2 + q
    return (len(phrases), ok)


def lz_report(slp, cap=DEFAULT_CAP):
    """
    Compare the rule count of *slp* with the LZ parse sizes of its string.

    >>> from slpbench.slp import Slp, Terminal, Pair
    >>> lz_report(Slp([Terminal(0), Pair(1, 1), Pair(2, 2)]))
    LzReport(grammar_size=3, lz77_factors=2, lz78_phrases=3, string_length=4, variant='greedy-self-referential')
    """
    s = expand(slp, cap)
    report = LzReport(
        len(slp),
        len(lz77_parse(s).factors),
        len(lz78_parse(s).phrases),
        len(s),
        LZ77_VARIANT,
    )
    log.debug('%r', report)
    assert report.lz77_factors <= report.grammar_size
    return report
