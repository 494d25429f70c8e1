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
Straight-line programs: validation, the SLPv1 codec, expansion and access.

An SLP is an ordered list of rules defining symbols ``1..n``.  Each rule is
either a `Terminal` bit or a `Pair` of two earlier symbols, and the start
symbol is always the last rule.  For example:

>>> slp = Slp([Terminal(1), Terminal(0), Pair(1, 2), Pair(3, 3)])
>>> expand(slp).to01()
'1010'
>>> access(slp, 2)
1
>>> lengths(slp)
(1, 1, 2, 4)

Indices into the derived string are zero-based.
"""

import logging
from collections import namedtuple
from hashlib import sha1

from bitarray import bitarray
from dbase32 import db32enc


log = logging.getLogger(__name__)

# Default materialization cap, in bits:
DEFAULT_CAP = 2 ** 24

# Symbols whose expansion is at most this long get memoized by `expand()`:
EXPAND_MEMO_BITS = 4096

MAGIC = 'SLPv1'

Terminal = namedtuple('Terminal', 'bit')
Pair = namedtuple('Pair', 'left right')
ValidationReport = namedtuple('ValidationReport', 'n lengths violations')


class ForwardReference(ValueError):
    def __init__(self, index, ref):
        self.index = index
        self.ref = ref
        super().__init__(
            'rule {} references symbol {} (must be < {})'.format(
                index, ref, index)
        )


class EmptyGrammar(ValueError):
    def __init__(self):
        super().__init__('grammar has no rules')


class BadRule(ValueError):
    def __init__(self, index, rule):
        self.index = index
        self.rule = rule
        super().__init__('rule {} is malformed: {!r}'.format(index, rule))


class CapExceeded(ValueError):
    def __init__(self, length, cap):
        self.length = length
        self.cap = cap
        super().__init__(
            'derived length {} exceeds cap {}'.format(length, cap)
        )


class OutOfRange(ValueError):
    def __init__(self, index, length):
        self.index = index
        self.length = length
        super().__init__(
            'index {} out of range for length {}'.format(index, length)
        )


class ParseError(ValueError):
    def __init__(self, lineno, reason):
        self.lineno = lineno
        self.reason = reason
        super().__init__('line {}: {}'.format(lineno, reason))


class Slp:
    """
    An immutable rule list.  Rule ``i`` (one-based) is ``slp.rules[i - 1]``.

    Derived lengths are computed once, on construction, when the rules are
    well formed.
    """

    __slots__ = ('rules', '_lengths')

    def __init__(self, rules):
        self.rules = tuple(rules)
        self._lengths = (None if check_rules(self.rules)
            else _compute_lengths(self.rules)
        )

    def __repr__(self):
        return '{}({!r})'.format(self.__class__.__name__, list(self.rules))

    def __len__(self):
        return len(self.rules)

    def __eq__(self, other):
        if not isinstance(other, Slp):
            return NotImplemented
        return self.rules == other.rules

    def __hash__(self):
        return hash(self.rules)

    @property
    def start(self):
        return len(self.rules)

    def rule(self, i):
        return self.rules[i - 1]

    def subgrammar(self, i):
        """
        Return the grammar of symbol *i* (rules 1..i, start symbol i).
        """
        if not (1 <= i <= len(self.rules)):
            raise IndexError('no symbol {!r}'.format(i))
        return Slp(self.rules[:i])


class SlpBuilder:
    """
    Append-only rule list; every method returns the index of the new symbol.

    >>> b = SlpBuilder()
    >>> one = b.terminal(1)
    >>> b.concat([one, one, one])
    3
    >>> expand(b.build()).to01()
    '111'
    """

    __slots__ = ('rules',)

    def __init__(self):
        self.rules = []

    def __len__(self):
        return len(self.rules)

    def terminal(self, bit):
        if bit not in (0, 1):
            raise ValueError('terminal bit must be 0 or 1; got {!r}'.format(bit))
        self.rules.append(Terminal(bit))
        return len(self.rules)

    def pair(self, left, right):
        n = len(self.rules)
        for ref in (left, right):
            if not (1 <= ref <= n):
                raise ForwardReference(n + 1, ref)
        self.rules.append(Pair(left, right))
        return len(self.rules)

    def concat(self, symbols):
        """
        Balanced binary fold of *symbols*, adding exactly ``len - 1`` rules.
        """
        level = list(symbols)
        if not level:
            raise ValueError('cannot concatenate zero symbols')
        while len(level) > 1:
            folded = [
                self.pair(level[k], level[k + 1])
                for k in range(0, len(level) - 1, 2)
            ]
            if len(level) % 2:
                folded.append(level[-1])
            level = folded
        return level[0]

    def build(self):
        return Slp(self.rules)


def check_rules(rules):
    """
    Return a list of violations (exception instances) found in *rules*.
    """
    if len(rules) == 0:
        return [EmptyGrammar()]
    violations = []
    for (i, rule) in enumerate(rules, start=1):
        if isinstance(rule, Terminal):
            if rule.bit not in (0, 1) or type(rule.bit) is not int:
                violations.append(BadRule(i, rule))
        elif isinstance(rule, Pair):
            for ref in rule:
                if type(ref) is not int or ref < 1:
                    violations.append(BadRule(i, rule))
                    break
                if ref >= i:
                    violations.append(ForwardReference(i, ref))
                    break
        else:
            violations.append(BadRule(i, rule))
    return violations


def _compute_lengths(rules):
    table = []
    for rule in rules:
        if isinstance(rule, Terminal):
            table.append(1)
        else:
            table.append(table[rule.left - 1] + table[rule.right - 1])
    return tuple(table)


def validate(slp, strict=True):
    """
    Validate *slp*, returning a `ValidationReport`.

    With *strict* (the default) the first violation is raised instead of
    being reported:

    >>> validate(Slp([Pair(1, 1)]))
    Traceback (most recent call last):
      ...
    slpbench.slp.ForwardReference: rule 1 references symbol 1 (must be < 1)
    >>> validate(Slp([]), strict=False).violations
    [EmptyGrammar('grammar has no rules')]
    """
    violations = check_rules(slp.rules)
    if violations:
        if strict:
            raise violations[0]
        return ValidationReport(len(slp.rules), None, violations)
    table = lengths(slp)
    n = len(slp.rules)
    assert table[-1] <= 2 ** n
    return ValidationReport(n, table, [])


def lengths(slp):
    """
    Return the exact derived length of every symbol, as a tuple.
    """
    if slp._lengths is None:
        raise check_rules(slp.rules)[0]
    return slp._lengths


def derived_length(slp):
    return lengths(slp)[-1]


def expand(slp, cap=DEFAULT_CAP):
    """
    Return the derived string as a `bitarray`.

    Raises `CapExceeded` when the derived length is above *cap*.
    """
    table = lengths(slp)
    total = table[-1]
    if total > cap:
        raise CapExceeded(total, cap)
    memo = {}
    for (i, rule) in enumerate(slp.rules, start=1):
        if table[i - 1] > EXPAND_MEMO_BITS:
            continue
        if isinstance(rule, Terminal):
            memo[i] = bitarray([rule.bit])
        else:
            memo[i] = memo[rule.left] + memo[rule.right]
    out = bitarray()
    stack = [slp.start]
    while stack:
        i = stack.pop()
        if i in memo:
            out += memo[i]
        else:
            rule = slp.rule(i)
            stack.append(rule.right)
            stack.append(rule.left)
    assert len(out) == total
    return out


def access_path(slp, index):
    """
    Return the symbols visited when descending to position *index*.

    The descent goes left when *index* is below the left child's length,
    otherwise it subtracts that length and goes right.
    """
    table = lengths(slp)
    if not (0 <= index < table[-1]):
        raise OutOfRange(index, table[-1])
    i = slp.start
    path = [i]
    rule = slp.rule(i)
    while isinstance(rule, Pair):
        left = table[rule.left - 1]
        if index < left:
            i = rule.left
        else:
            index -= left
            i = rule.right
        path.append(i)
        rule = slp.rule(i)
    return path


def access(slp, index):
    """
    Return the bit at zero-based position *index* without expanding.
    """
    return slp.rule(access_path(slp, index)[-1]).bit


def depth(slp):
    """
    Return the number of edges on the longest start-to-terminal path.

    >>> depth(Slp([Terminal(0), Pair(1, 1), Pair(2, 2)]))
    2
    """
    validate(slp)
    table = []
    for rule in slp.rules:
        if isinstance(rule, Terminal):
            table.append(0)
        else:
            table.append(1 + max(table[rule.left - 1], table[rule.right - 1]))
    return table[-1]


def trim(slp, with_map=False):
    """
    Drop rules unreachable from the start symbol, renumbering the survivors.

    With *with_map*, return ``(slp, remap)`` where *remap* maps old symbol
    indices to new ones.
    """
    validate(slp)
    live = {slp.start}
    for i in range(slp.start, 0, -1):
        rule = slp.rule(i)
        if i in live and isinstance(rule, Pair):
            live.update(rule)
    remap = {}
    rules = []
    for i in sorted(live):
        rule = slp.rule(i)
        if isinstance(rule, Pair):
            rule = Pair(remap[rule.left], remap[rule.right])
        rules.append(rule)
        remap[i] = len(rules)
    if len(rules) < len(slp.rules):
        log.debug('trimmed %d unreachable rules', len(slp.rules) - len(rules))
    if with_map:
        return (Slp(rules), remap)
    return Slp(rules)


########################
# SLPv1 text format:

def encode_slp(slp):
    """
    Serialize *slp* in the SLPv1 text format.

    >>> print(encode_slp(Slp([Terminal(1), Pair(1, 1)])), end='')
    SLPv1 2
    1 T 1
    2 N 1 1
    """
    validate(slp)
    lines = ['{} {}'.format(MAGIC, len(slp.rules))]
    for (i, rule) in enumerate(slp.rules, start=1):
        if isinstance(rule, Terminal):
            lines.append('{} T {}'.format(i, rule.bit))
        else:
            lines.append('{} N {} {}'.format(i, rule.left, rule.right))
    return '\n'.join(lines) + '\n'


def _parse_int(token, lineno):
    if not token.isdigit():
        raise ParseError(lineno, 'not a decimal integer: {!r}'.format(token))
    return int(token)


def decode_slp(text):
    """
    Parse SLPv1 *text*, raising `ParseError` with the offending line number.
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError(1, 'missing header')
    header = lines[0].split()
    if len(header) != 2 or header[0] != MAGIC:
        raise ParseError(1, 'bad header: {!r}'.format(lines[0]))
    n = _parse_int(header[1], 1)
    if len(lines) - 1 != n:
        raise ParseError(len(lines),
            'header declares {} rules, found {}'.format(n, len(lines) - 1)
        )
    rules = []
    for (lineno, line) in enumerate(lines[1:], start=2):
        parts = line.split()
        expected = len(rules) + 1
        if len(parts) < 3:
            raise ParseError(lineno, 'truncated rule: {!r}'.format(line))
        i = _parse_int(parts[0], lineno)
        if i != expected:
            raise ParseError(lineno,
                'rule index {} out of order (expected {})'.format(i, expected)
            )
        kind = parts[1]
        if kind == 'T' and len(parts) == 3:
            bit = _parse_int(parts[2], lineno)
            if bit not in (0, 1):
                raise ParseError(lineno, 'terminal must be 0 or 1')
            rules.append(Terminal(bit))
        elif kind == 'N' and len(parts) == 4:
            (j, k) = (_parse_int(parts[2], lineno), _parse_int(parts[3], lineno))
            if not (1 <= j < i and 1 <= k < i):
                raise ParseError(lineno,
                    'rule {} must reference earlier symbols'.format(i)
                )
            rules.append(Pair(j, k))
        else:
            raise ParseError(lineno, 'bad rule: {!r}'.format(line))
    if not rules:
        raise ParseError(1, 'grammar has no rules')
    return Slp(rules)


def fingerprint(slp):
    """
    Return a stable Dbase32 ID for *slp*, derived from its SLPv1 text.

    >>> len(fingerprint(Slp([Terminal(0)])))
    24
    """
    digest = sha1(encode_slp(slp).encode('utf-8')).digest()
    return db32enc(digest[:15])
