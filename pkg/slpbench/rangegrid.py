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
Dominance counting, the answer-string grammar compiler, and the butterfly
reachability reduction.

A query ``(x, y)`` counts the points of a `PointSet` inside the dominance
rectangle ``[1, x] x [1, y]``.  The answer string lists the parities of all
``W * H`` queries row by row, and `compile_answer_grammar()` derives it with a
grammar whose size grows with the number of points rather than the grid:

>>> ps = PointSet(4, 4, [(2, 2), (4, 3)])
>>> answer_oracle(ps).to01()
'0000011101100110'
>>> from slpbench.slp import expand
>>> expand(compile_answer_grammar(ps)).to01()
'0000011101100110'
"""

import csv
import logging
from collections import namedtuple
from itertools import product

import networkx as nx
import numpy as np
from bitarray import bitarray

from .slp import Slp, SlpBuilder, CapExceeded, DEFAULT_CAP, access, trim


log = logging.getLogger(__name__)

# Fixed additive slack in `rule_bound()`: the two terminal symbols.
RULE_BOUND_SLACK = 2

Rect = namedtuple('Rect', 'x1 x2 y1 y2')
EdgeId = namedtuple('EdgeId', 'h i before digit')


class OutOfGrid(ValueError):
    def __init__(self, x, y, W, H):
        self.x = x
        self.y = y
        super().__init__(
            '({!r}, {!r}) outside the {}x{} grid'.format(x, y, W, H)
        )


class WidthNotPowerOfTwo(ValueError):
    def __init__(self, W):
        self.W = W
        super().__init__('width {!r} is not a power of two'.format(W))


class UnknownEdge(ValueError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__('no such butterfly edge: {!r}'.format(edge))


class BadLayer(ValueError):
    def __init__(self, vertex, layer):
        self.vertex = vertex
        self.layer = layer
        super().__init__(
            'vertex {!r} is not in layer {}'.format(vertex, layer)
        )


class PointSet:
    """
    A multiset of points on the ``W x H`` grid, coordinates one-based.
    """

    __slots__ = ('W', 'H', 'points')

    def __init__(self, W, H, points=()):
        if W < 1 or H < 1:
            raise ValueError('grid must be at least 1x1; got {}x{}'.format(W, H))
        self.W = W
        self.H = H
        points = tuple((int(x), int(y)) for (x, y) in points)
        for (x, y) in points:
            if not (1 <= x <= W and 1 <= y <= H):
                raise OutOfGrid(x, y, W, H)
        self.points = points

    def __repr__(self):
        return '{}({!r}, {!r}, {!r})'.format(
            self.__class__.__name__, self.W, self.H, list(self.points))

    def __len__(self):
        return len(self.points)

    def padded(self, W):
        return PointSet(W, self.H, self.points)


def dominance_count(ps, x, y):
    """
    Count the points with ``px <= x`` and ``py <= y``, with multiplicity.

    >>> dominance_count(PointSet(4, 4, [(2, 2), (4, 3), (2, 2)]), 3, 3)
    2
    """
    if not (1 <= x <= ps.W and 1 <= y <= ps.H):
        raise OutOfGrid(x, y, ps.W, ps.H)
    return sum(1 for (px, py) in ps.points if px <= x and py <= y)


def answer_index(x, y, W):
    """
    >>> answer_index(1, 2, 4)
    4
    """
    return (y - 1) * W + (x - 1)


def answer_oracle(ps, cap=DEFAULT_CAP):
    """
    Return the answer string, computed from 2D prefix sums.
    """
    total = ps.W * ps.H
    if total > cap:
        raise CapExceeded(total, cap)
    grid = np.zeros((ps.H, ps.W), dtype=np.int64)
    if ps.points:
        xs = np.array([x - 1 for (x, y) in ps.points])
        ys = np.array([y - 1 for (x, y) in ps.points])
        np.add.at(grid, (ys, xs), 1)
    parity = grid.cumsum(axis=0).cumsum(axis=1) % 2
    return bitarray(parity.reshape(-1).tolist())


def pad_width(W):
    """
    >>> [pad_width(W) for W in (1, 2, 3, 5, 64)]
    [1, 2, 4, 8, 64]
    """
    return 1 << (W - 1).bit_length()


def is_power_of_two(W):
    return W >= 1 and W & (W - 1) == 0


def rule_bound(W, H, P):
    """
    Upper bound on the rules emitted by `compile_answer_grammar()` for a
    power-of-two width *W*, *H* rows and *P* points.
    """
    logw = (W - 1).bit_length()
    logh = (H - 1).bit_length()
    return 4 * W + 2 * P * logw + 2 * (H - 1) + 2 * logh + RULE_BOUND_SLACK


class _SweepTree:
    """
    Range tree over the columns whose nodes are grammar symbols.

    Node ``k`` (heap order, root 1) holds a ``(symbol, negation)`` pair.
    Leaves are ``W .. 2W - 1``.  A node in *pending* has been complemented
    as a whole while its children still hold the uncomplemented pairs.
    """

    __slots__ = ('b', 'W', 'height', 'nodes', 'negations', 'pending')

    def __init__(self, b, W):
        self.b = b
        self.W = W
        self.height = W.bit_length() - 1
        zero = b.terminal(0)
        one = b.terminal(1)
        self.negations = {zero: one, one: zero}
        self.nodes = {}
        self.pending = set()
        level = (zero, one)
        span = W
        while span >= 1:
            for node in range(span, 2 * span):
                self.nodes[node] = level
            span //= 2
            if span:
                level = self._make(level, level)

    def _make(self, left, right):
        # Negation first, so a row root is always the newest rule.
        neg = self.b.pair(left[1], right[1])
        sym = self.b.pair(left[0], right[0])
        self.negations[sym] = neg
        self.negations[neg] = sym
        return (sym, neg)

    def _complement(self, node):
        (sym, neg) = self.nodes[node]
        self.nodes[node] = (neg, sym)
        if node < self.W:
            self.pending ^= {node}

    def flip_suffix(self, column):
        """
        Complement the bits of columns ``column..W`` (one-based).
        """
        leaf = self.W + column - 1
        for shift in range(self.height, 0, -1):
            node = leaf >> shift
            if node in self.pending:
                self.pending.discard(node)
                self._complement(2 * node)
                self._complement(2 * node + 1)
        self._complement(leaf)
        node = leaf
        while node > 1:
            if node % 2 == 0:
                self._complement(node + 1)
            parent = node // 2
            self.nodes[parent] = self._make(
                self.nodes[2 * parent], self.nodes[2 * parent + 1]
            )
            node = parent

    @property
    def root(self):
        return self.nodes[1][0]


def compile_answer_grammar(ps, auto_pad=True, with_negations=False,
        with_roots=False):
    """
    Compile the answer string of *ps* into a grammar.

    Rows are swept from ``y = 1`` upward.  Each point flips the suffix of its
    row starting at its column, which rebuilds one leaf-to-root path (a new
    symbol and a new negation per internal node) and swaps the right
    siblings along the path to their existing negations.  A row without
    points reuses the previous row's root.

    The width must be a power of two; with *auto_pad* the grid is widened
    with empty columns.  With *with_negations*, return ``(slp, negations)``
    where *negations* maps every tree symbol to its complement symbol.  With
    *with_roots*, also return the root symbol of each row, bottom row first;
    both extras follow *slp* in that order.
    """
    W = ps.W
    if not is_power_of_two(W):
        if not auto_pad:
            raise WidthNotPowerOfTwo(W)
        W = pad_width(W)
        log.info('padded width %d to %d', ps.W, W)
    rows = [[] for y in range(ps.H)]
    for (x, y) in ps.points:
        rows[y - 1].append(x)
    b = SlpBuilder()
    tree = _SweepTree(b, W)
    roots = []
    for columns in rows:
        for x in columns:
            tree.flip_suffix(x)
        roots.append(tree.root)
    start = b.concat(roots)
    negations = tree.negations
    slp = b.build()
    if start != slp.start:
        (slp, remap) = trim(Slp(slp.rules[:start]), with_map=True)
        roots = [remap[r] for r in roots]
        negations = dict(
            (remap[s], remap[n]) for (s, n) in negations.items()
            if s in remap and n in remap
        )
    assert len(slp) <= rule_bound(W, ps.H, len(ps.points))
    log.debug('answer grammar %dx%d, %d points: %d rules',
        W, ps.H, len(ps.points), len(slp)
    )
    extras = ()
    if with_negations:
        extras += (negations,)
    if with_roots:
        extras += (roots,)
    if extras:
        return (slp,) + extras
    return slp


def grammar_query(slp, W, x, y):
    """
    Answer the dominance-parity query ``(x, y)`` with one grammar access.
    """
    return access(slp, answer_index(x, y, W))


########################
# Points CSV:

def read_points(fp):
    """
    Read ``x,y`` lines (one-based), skipping an optional header.
    """
    points = []
    for (lineno, row) in enumerate(csv.reader(fp), start=1):
        if not row or not ''.join(row).strip():
            continue
        if lineno == 1 and not row[0].strip().isdigit():
            continue
        if len(row) != 2:
            raise ValueError('line {}: expected x,y; got {!r}'.format(lineno, row))
        points.append((int(row[0]), int(row[1])))
    return points


def write_points(ps, fp):
    writer = csv.writer(fp, lineterminator='\n')
    writer.writerow(['x', 'y'])
    writer.writerows(ps.points)


########################
# Unbalanced butterfly graphs:

def vertex(h, b, a):
    """
    Return the node key of label ``(h, b, a)``; layer 0 is merged across h.
    """
    if b == 0:
        return (None, 0, tuple(a))
    return (h, b, tuple(a))


def all_edges(H, B, D):
    """
    Yield every possible edge id.  Edge ``(h, i, before, digit)`` leads from
    layer ``i - 1`` to layer ``i`` and rewrites digit ``i`` of *before*.
    """
    for h in range(H):
        for i in range(1, D + 1):
            for before in product(range(B), repeat=D):
                for digit in range(B):
                    yield EdgeId(h, i, before, digit)


def edge_endpoints(edge):
    (h, i, before, digit) = edge
    after = before[:i - 1] + (digit,) + before[i:]
    return (vertex(h, i - 1, before), vertex(h, i, after))


class ButterflyGraph:
    """
    ``H`` butterfly networks of degree ``B`` and depth ``D`` sharing layer 0.

    Digits are zero-based.  ``N = D * B**D`` and the full graph has
    ``H * N * B`` edges.
    """

    __slots__ = ('H', 'B', 'D', 'present', 'graph')

    def __init__(self, H, B, D, present):
        self.H = H
        self.B = B
        self.D = D
        self.present = frozenset(present)
        g = nx.DiGraph()
        for a in product(range(B), repeat=D):
            g.add_node(vertex(None, 0, a))
            for h in range(H):
                for b in range(1, D + 1):
                    g.add_node(vertex(h, b, a))
        for edge in self.present:
            (u, v) = edge_endpoints(edge)
            g.add_edge(u, v, edge=edge)
        self.graph = g

    def __repr__(self):
        return '{}(H={!r}, B={!r}, D={!r}, edges={})'.format(
            self.__class__.__name__, self.H, self.B, self.D, len(self.present))

    @property
    def N(self):
        return self.D * self.B ** self.D

    def layer(self, b):
        return [node for node in self.graph if node[1] == b]


def build_butterfly(H, B, D, deleted=()):
    """
    Build the graph with every edge except those in *deleted*.

    >>> g = build_butterfly(1, 2, 2)
    >>> (len(g.layer(0)), len(g.layer(1)), g.graph.number_of_edges())
    (4, 4, 16)
    """
    if H < 1 or B < 1 or D < 1:
        raise ValueError('H, B, D must be >= 1; got {!r}'.format((H, B, D)))
    full = set(all_edges(H, B, D))
    deleted = set(
        EdgeId(h, i, tuple(before), digit) for (h, i, before, digit) in deleted
    )
    for edge in deleted:
        if edge not in full:
            raise UnknownEdge(edge)
    return ButterflyGraph(H, B, D, full - deleted)


def unique_path(g, u, v):
    """
    Return the edge ids of the only route from layer-0 *u* to last-layer *v*.
    """
    (h, current, target) = (v[0], list(u[2]), v[2])
    edges = []
    for i in range(1, g.D + 1):
        edges.append(EdgeId(h, i, tuple(current), target[i - 1]))
        current[i - 1] = target[i - 1]
    return edges


def _check_endpoints(g, u, v):
    if len(u) != 3 or u[1] != 0 or len(u[2]) != g.D:
        raise BadLayer(u, 0)
    if len(v) != 3 or v[1] != g.D or len(v[2]) != g.D or not (0 <= v[0] < g.H):
        raise BadLayer(v, g.D)


def reach_oracle(g, u, v):
    """
    Breadth-first reachability from layer-0 label *u* to last-layer label *v*.

    Labels are ``(h, b, digits)`` tuples; *u*'s ``h`` is ignored.
    """
    _check_endpoints(g, u, v)
    return nx.has_path(g.graph, vertex(u[0], 0, u[2]), vertex(v[0], g.D, v[2]))


def x_coordinate(B, a):
    """
    Column of layer-0 label *a*: digits reversed, ``a_D`` most significant.

    >>> x_coordinate(2, (1, 0))
    2
    """
    return 1 + sum(d * B ** k for (k, d) in enumerate(a))


def y_coordinate(B, h, a):
    """
    Row of last-layer label ``(h, a)``: ``(h, a_1, ..., a_D)`` lexicographic.

    >>> y_coordinate(2, 1, (1, 0))
    7
    """
    value = h
    for d in a:
        value = value * B + d
    return 1 + value


class RectangleSet:
    """
    Edge rectangles on the ``P x Q`` grid and their corner point sets.
    """

    __slots__ = ('H', 'B', 'D', 'P', 'Q', 'rects', 'plus', 'minus')

    def __init__(self, g, rects):
        self.H = g.H
        self.B = g.B
        self.D = g.D
        self.P = g.B ** g.D
        self.Q = g.H * g.B ** g.D
        self.rects = tuple(rects)
        (plus, minus) = ([], [])
        for r in self.rects:
            plus.append((r.x1, r.y1))
            minus.append((r.x2 + 1, r.y1))
            minus.append((r.x1, r.y2 + 1))
            plus.append((r.x2 + 1, r.y2 + 1))
        self.plus = PointSet(self.P + 1, self.Q + 1, plus)
        self.minus = PointSet(self.P + 1, self.Q + 1, minus)

    def __len__(self):
        return len(self.rects)

    def stab_count(self, x, y):
        return dominance_count(self.plus, x, y) - dominance_count(self.minus, x, y)


def edge_rectangle(g, edge):
    (h, i, before, digit) = edge
    (B, D) = (g.B, g.D)
    low = sum(before[k] * B ** k for k in range(i - 1, D))
    x1 = 1 + low
    x2 = low + B ** (i - 1)
    prefix = h
    for d in before[:i - 1] + (digit,):
        prefix = prefix * B + d
    span = B ** (D - i)
    y1 = 1 + prefix * span
    y2 = (prefix + 1) * span
    return Rect(x1, x2, y1, y2)


def edges_to_rectangles(g):
    """
    Map every present edge to the rectangle of (source, sink) pairs it serves.
    """
    return RectangleSet(g, [edge_rectangle(g, e) for e in sorted(g.present)])


def reach_via_counting(rects, u, v):
    """
    Decide reachability by counting the rectangles stabbing ``(x(u), y(v))``.
    """
    if len(u) != 3 or u[1] != 0 or len(u[2]) != rects.D:
        raise BadLayer(u, 0)
    if len(v) != 3 or v[1] != rects.D or len(v[2]) != rects.D:
        raise BadLayer(v, rects.D)
    x = x_coordinate(rects.B, u[2])
    y = y_coordinate(rects.B, v[0], v[2])
    return rects.stab_count(x, y) == rects.D
