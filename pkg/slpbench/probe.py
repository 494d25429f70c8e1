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
Cell-probe accounting for grammar random access.

A `CellMemory` is an array of ``w``-bit cells that can only be read through a
`ProbeSession`, which counts every read.  Two structures are built on it:

* `PackedStore` holds every rule in ``1 + 2*ceil(log2 n)`` bits; a query
  reads all of it.
* `DescentStore` holds one fixed-width record per symbol; a query reads the
  records on the derivation path of the position.

For example, the 9 rule grammar of ``1010000010100000`` with 4-bit cells:

>>> from slpbench.hard import SetInstance, build_sd_grammar
>>> store = pack_grammar(build_sd_grammar(SetInstance(4, {1, 3})), 4)
>>> (store.bits_per_rule, store.total_bits, len(store.memory))
(9, 81, 21)
>>> probe_read_all(store, 2)
(1, 21)
"""

import logging
from collections import namedtuple
from math import ceil

from bitarray import bitarray
from bitarray.util import int2ba, ba2int, zeros

from .slp import Slp, Terminal, Pair, OutOfRange, access, depth, lengths, validate
from .hard import (
    SetInstance, BlockedInstance, build_sd_grammar, build_blsd_grammar
)
from .rangegrid import compile_answer_grammar
from .bwt import bwt_hard_grammar
from .misc import make_rng, random_subset, random_points


log = logging.getLogger(__name__)

FAMILIES = ('sd', 'blsd', 'rc', 'bwt-hard')
STRUCTURES = ('read-all', 'descent', 'hybrid')
REPORT_COLUMNS = (
    'family', 'params', 'n', 'L', 'w', 'structure', 'worst_probes', 'mean_probes'
)

BenchRow = namedtuple('BenchRow', REPORT_COLUMNS)
DescentRecord = namedtuple('DescentRecord', 'tag j k left_length')


class UnknownFamily(ValueError):
    def __init__(self, family):
        self.family = family
        super().__init__(
            'unknown family {!r}; expected one of {!r}'.format(family, FAMILIES)
        )


def _check_word_size(w):
    if not isinstance(w, int):
        raise TypeError(
            'w must be a {!r}; got a {!r}: {!r}'.format(int, type(w), w)
        )
    if w < 1:
        raise ValueError('w must be >= 1; got {!r}'.format(w))
    return w


def index_width(n):
    """
    Bits for one symbol reference, ``ceil(log2 n)`` but at least 1.

    >>> [index_width(n) for n in (1, 2, 3, 9, 16, 17)]
    [1, 1, 2, 4, 4, 5]
    """
    return max(1, (n - 1).bit_length())


def log2_word(L):
    """
    The default word size ``ceil(log2 L)``, at least 1.
    """
    return max(1, (L - 1).bit_length())


########################
# Cell memory:

class CellMemory:
    """
    Fixed array of *w*-bit cells, written once at construction.
    """

    __slots__ = ('w', '_bits')

    def __init__(self, bits, w):
        _check_word_size(w)
        self.w = w
        padded = bitarray(bits)
        padded.extend(zeros(-len(padded) % w))
        self._bits = padded

    def __repr__(self):
        return '{}(<{} cells>, w={!r})'.format(
            self.__class__.__name__, len(self), self.w
        )

    def __len__(self):
        return len(self._bits) // self.w

    def session(self):
        return ProbeSession(self)


class ProbeSession:
    """
    A private read counter over a `CellMemory`; one per query.
    """

    __slots__ = ('_memory', 'count')

    def __init__(self, memory):
        self._memory = memory
        self.count = 0

    def probe(self, index):
        memory = self._memory
        if not (0 <= index < len(memory)):
            raise IndexError('cell {!r} outside 0..{}'.format(index, len(memory) - 1))
        self.count += 1
        start = index * memory.w
        return ba2int(memory._bits[start:start + memory.w], signed=False)

    def read_bits(self, first, count):
        """
        Probe cells ``first .. first + count - 1`` and return their bits.
        """
        w = self._memory.w
        out = bitarray()
        for index in range(first, first + count):
            out += int2ba(self.probe(index), length=w)
        return out


########################
# Read-everything structure:

class PackedStore:
    __slots__ = ('memory', 'n', 'L', 'bits_per_rule')

    def __init__(self, memory, n, L, bits_per_rule):
        self.memory = memory
        self.n = n
        self.L = L
        self.bits_per_rule = bits_per_rule

    def __repr__(self):
        return '{}(n={!r}, L={!r}, w={!r})'.format(
            self.__class__.__name__, self.n, self.L, self.memory.w
        )

    @property
    def total_bits(self):
        return self.n * self.bits_per_rule


def _encode_rule(rule, width):
    if isinstance(rule, Terminal):
        return int2ba(0, 1) + int2ba(rule.bit, width) + zeros(width)
    return int2ba(1, 1) + int2ba(rule.left - 1, width) + int2ba(rule.right - 1, width)


def _decode_rule(bits, width):
    value = ba2int(bits[1:1 + width], signed=False)
    if bits[0] == 0:
        return Terminal(value)
    return Pair(value + 1, ba2int(bits[1 + width:1 + 2 * width], signed=False) + 1)


def pack_grammar(slp, w):
    """
    Write every rule of *slp* as ``tag | j | k`` in consecutive bits.
    """
    _check_word_size(w)
    report = validate(slp)
    width = index_width(report.n)
    bits = bitarray()
    for rule in slp.rules:
        bits += _encode_rule(rule, width)
    store = PackedStore(CellMemory(bits, w), report.n, report.lengths[-1], 1 + 2 * width)
    assert len(store.memory) == ceil(store.total_bits / w)
    return store


def _read_rules(store, session):
    bits = session.read_bits(0, len(store.memory))
    size = store.bits_per_rule
    width = (size - 1) // 2
    return Slp(
        _decode_rule(bits[k * size:(k + 1) * size], width)
        for k in range(store.n)
    )


def unpack_grammar(store):
    """
    Decode the rules back out of *store*.
    """
    return _read_rules(store, store.memory.session())


def probe_read_all(store, index):
    """
    Return ``(bit, probes)``: read the whole grammar, then answer for free.
    """
    if not (0 <= index < store.L):
        raise OutOfRange(index, store.L)
    session = store.memory.session()
    slp = _read_rules(store, session)
    return (access(slp, index), session.count)


########################
# Descent structure:

class DescentStore:
    __slots__ = (
        'memory', 'n', 'L', 'index_width', 'length_width',
        'cells_per_symbol', 'depth', 'mean_path',
    )

    def __init__(self, memory, n, L, index_width, length_width,
            cells_per_symbol, depth, mean_path):
        self.memory = memory
        self.n = n
        self.L = L
        self.index_width = index_width
        self.length_width = length_width
        self.cells_per_symbol = cells_per_symbol
        self.depth = depth
        self.mean_path = mean_path

    def __repr__(self):
        return '{}(n={!r}, L={!r}, w={!r})'.format(
            self.__class__.__name__, self.n, self.L, self.memory.w
        )

    @property
    def record_bits(self):
        return 1 + 2 * self.index_width + self.length_width


def mean_path_length(slp):
    """
    Average number of symbols on the derivation path, over all positions.

    >>> from slpbench.slp import Slp, Terminal, Pair
    >>> mean_path_length(Slp([Terminal(0), Terminal(1), Pair(1, 2), Pair(3, 1)]))
    2.6666666666666665
    """
    table = lengths(slp)
    total = []
    for (i, rule) in enumerate(slp.rules):
        if isinstance(rule, Terminal):
            total.append(1)
        else:
            total.append(table[i] + total[rule.left - 1] + total[rule.right - 1])
    return total[-1] / table[-1]


def build_descent(slp, w):
    """
    Write one ``(tag, j, k, left_length)`` record per symbol, each record
    starting on a cell boundary.
    """
    _check_word_size(w)
    report = validate(slp)
    (n, table) = (report.n, report.lengths)
    iw = index_width(n)
    lw = max(table).bit_length()
    record_bits = 1 + 2 * iw + lw
    cps = ceil(record_bits / w)
    bits = bitarray()
    for rule in slp.rules:
        record = _encode_rule(rule, iw)
        if isinstance(rule, Pair):
            record += int2ba(table[rule.left - 1], lw)
        else:
            record += zeros(lw)
        record.extend(zeros(cps * w - record_bits))
        bits += record
    store = DescentStore(
        CellMemory(bits, w), n, table[-1], iw, lw, cps, depth(slp),
        mean_path_length(slp),
    )
    assert len(store.memory) == n * cps
    return store


def _read_record(store, session, symbol):
    bits = session.read_bits((symbol - 1) * store.cells_per_symbol,
        store.cells_per_symbol
    )
    iw = store.index_width
    rule = _decode_rule(bits, iw)
    start = 1 + 2 * iw
    left_length = ba2int(bits[start:start + store.length_width], signed=False)
    if isinstance(rule, Terminal):
        return DescentRecord(0, rule.bit, 0, left_length)
    return DescentRecord(1, rule.left, rule.right, left_length)


def probe_descent(store, index):
    """
    Return ``(bit, probes)`` by walking the records from the start symbol.
    """
    if not (0 <= index < store.L):
        raise OutOfRange(index, store.L)
    session = store.memory.session()
    record = _read_record(store, session, store.n)
    while record.tag:
        if index < record.left_length:
            symbol = record.j
        else:
            index -= record.left_length
            symbol = record.k
        record = _read_record(store, session, symbol)
    return (record.j, session.count)


########################
# Worst case and the hybrid:

def worst_probes(store):
    """
    Exact worst-case probe count of a query against *store*.
    """
    if isinstance(store, PackedStore):
        return len(store.memory)
    if isinstance(store, DescentStore):
        return (store.depth + 1) * store.cells_per_symbol
    raise TypeError('not a probe store: {!r}'.format(store))


def mean_probes(store):
    if isinstance(store, PackedStore):
        return float(len(store.memory))
    if isinstance(store, DescentStore):
        return store.mean_path * store.cells_per_symbol
    raise TypeError('not a probe store: {!r}'.format(store))


def cheaper(packed, descent):
    """
    Return ``(name, store)`` for the store with the smaller worst case; ties
    go to read-all.
    """
    if worst_probes(descent) < worst_probes(packed):
        choice = ('descent', descent)
    else:
        choice = ('read-all', packed)
    log.debug('n=%d w=%d: read-all %d, descent %d, chose %s',
        packed.n, packed.memory.w, worst_probes(packed), worst_probes(descent),
        choice[0]
    )
    return choice


def choose_store(slp, w):
    return cheaper(pack_grammar(slp, w), build_descent(slp, w))


def hybrid_access(slp, w, index):
    """
    Return ``(bit, probes, structure)`` using the cheaper structure.
    """
    (name, store) = choose_store(slp, w)
    if name == 'descent':
        (bit, probes) = probe_descent(store, index)
    else:
        (bit, probes) = probe_read_all(store, index)
    return (bit, probes, name)


########################
# Benchmark sweeps:

def parse_range(text):
    """
    Parse an inclusive ``LO..HI`` range.

    >>> list(parse_range('2..5'))
    [2, 3, 4, 5]
    >>> list(parse_range('3'))
    [3]
    """
    (lo, sep, hi) = text.partition('..')
    try:
        (lo, hi) = (int(lo), int(hi if sep else lo))
    except ValueError:
        raise ValueError('invalid range: {!r}'.format(text))
    return range(lo, hi + 1)


def family_instances(family, params, rng):
    """
    Yield ``(label, slp)`` for each parameter *k* of *family*.

    ``sd`` uses ``m = k``; ``blsd`` and ``bwt-hard`` use ``B = N = k``; ``rc``
    compiles ``2k`` random points on a ``2^k x 2^k`` grid.  ``Y`` is random.
    """
    if family not in FAMILIES:
        raise UnknownFamily(family)
    for k in params:
        if family == 'sd':
            inst = SetInstance(k, random_subset(rng, k))
            yield ('m={}'.format(k), build_sd_grammar(inst))
        elif family == 'blsd':
            inst = BlockedInstance(k, k, random_subset(rng, k * k))
            yield ('B={0} N={0}'.format(k), build_blsd_grammar(inst))
        elif family == 'rc':
            ps = random_points(rng, 2 ** k, 2 ** k, 2 * k)
            yield ('W={0} H={0} P={1}'.format(2 ** k, 2 * k),
                compile_answer_grammar(ps)
            )
        else:
            Y = random_subset(rng, k * k)
            yield ('B={0} N={0}'.format(k), bwt_hard_grammar(Y, k, k))


def bench_sweep(family, params, w=None, seed=0, structures=STRUCTURES):
    """
    Return one `BenchRow` per instance and structure.

    *w* is a fixed word size, or None for ``ceil(log2 L)`` per instance.
    The hybrid row is labeled with the structure it chose, since it combines
    read-all with descent (not an O(log L) access structure).
    """
    for s in structures:
        if s not in STRUCTURES:
            raise ValueError('invalid structure: {!r}'.format(s))
    rows = []
    for (label, slp) in family_instances(family, params, make_rng(seed)):
        L = lengths(slp)[-1]
        ww = log2_word(L) if w is None else w
        stores = {
            'read-all': pack_grammar(slp, ww),
            'descent': build_descent(slp, ww),
        }
        (chosen, _) = cheaper(stores['read-all'], stores['descent'])
        for s in structures:
            store = stores[chosen if s == 'hybrid' else s]
            name = 'hybrid:' + chosen if s == 'hybrid' else s
            rows.append(BenchRow(family, label, len(slp), L, ww, name,
                worst_probes(store), round(mean_probes(store), 3)
            ))
        log.info('%s %s: n=%d L=%d w=%d', family, label, len(slp), L, ww)
    return rows
