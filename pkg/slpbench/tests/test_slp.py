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
Unit tests for the `slpbench.slp` module.
"""

from unittest import TestCase

from bitarray import bitarray
from dbase32 import isdb32
from hypothesis import given, settings, strategies as st

from slpbench import slp
from slpbench.slp import Slp, SlpBuilder, Terminal, Pair
from slpbench.hard import (
    SetInstance, BlockedInstance, build_sd_grammar, build_blsd_grammar
)
from slpbench.misc import InstanceTestCase, random_slp


SD_1_3 = '1010000010100000'
BLSD_1_3_5_9 = '010000010010000010000000000'


def sd_example():
    return build_sd_grammar(SetInstance(4, {1, 3}))


def chain(k):
    return Slp([Terminal(0)] + [Pair(i - 1, i - 1) for i in range(2, k + 1)])


@st.composite
def grammars(draw, max_rules=12):
    n = draw(st.integers(min_value=1, max_value=max_rules))
    rules = [Terminal(draw(st.integers(0, 1)))]
    for i in range(2, n + 1):
        if draw(st.booleans()):
            rules.append(Terminal(draw(st.integers(0, 1))))
        else:
            rules.append(Pair(
                draw(st.integers(1, i - 1)), draw(st.integers(1, i - 1))
            ))
    return Slp(rules)


def recursive_expand(g, i=None):
    rule = g.rule(g.start if i is None else i)
    if isinstance(rule, Terminal):
        return str(rule.bit)
    return recursive_expand(g, rule.left) + recursive_expand(g, rule.right)


def recursive_depth(g, i=None):
    rule = g.rule(g.start if i is None else i)
    if isinstance(rule, Terminal):
        return 0
    return 1 + max(recursive_depth(g, rule.left), recursive_depth(g, rule.right))


class TestExceptions(TestCase):
    def test_ForwardReference(self):
        e = slp.ForwardReference(3, 5)
        self.assertIsInstance(e, ValueError)
        self.assertEqual((e.index, e.ref), (3, 5))
        self.assertEqual(str(e), 'rule 3 references symbol 5 (must be < 3)')

    def test_EmptyGrammar(self):
        e = slp.EmptyGrammar()
        self.assertIsInstance(e, ValueError)
        self.assertEqual(str(e), 'grammar has no rules')

    def test_CapExceeded(self):
        e = slp.CapExceeded(16, 15)
        self.assertEqual((e.length, e.cap), (16, 15))
        self.assertEqual(str(e), 'derived length 16 exceeds cap 15')

    def test_OutOfRange(self):
        e = slp.OutOfRange(16, 16)
        self.assertEqual((e.index, e.length), (16, 16))
        self.assertEqual(str(e), 'index 16 out of range for length 16')

    def test_ParseError(self):
        e = slp.ParseError(3, 'bad rule')
        self.assertEqual((e.lineno, e.reason), (3, 'bad rule'))
        self.assertEqual(str(e), 'line 3: bad rule')


class TestSlp(TestCase):
    def test_init(self):
        g = Slp([Terminal(1), Pair(1, 1)])
        self.assertEqual(g.rules, (Terminal(1), Pair(1, 1)))
        self.assertEqual(len(g), 2)
        self.assertEqual(g.start, 2)
        self.assertEqual(g.rule(1), Terminal(1))
        self.assertEqual(g.rule(2), Pair(1, 1))
        self.assertEqual(repr(g),
            'Slp([Terminal(bit=1), Pair(left=1, right=1)])'
        )
        # Lengths are fixed at construction; queries only read them:
        self.assertEqual(g._lengths, (1, 2))
        table = slp.lengths(g)
        self.assertEqual(slp.access(g, 1), 1)
        self.assertEqual(slp.expand(g).to01(), '11')
        self.assertIs(slp.lengths(g), table)
        self.assertIs(g._lengths, table)

        bad = Slp([Terminal(0), Pair(2, 1)])
        self.assertIsNone(bad._lengths)
        for i in range(2):
            with self.assertRaises(slp.ForwardReference):
                slp.lengths(bad)
            self.assertIsNone(bad._lengths)

    def test_eq(self):
        self.assertEqual(Slp([Terminal(0)]), Slp([Terminal(0)]))
        self.assertNotEqual(Slp([Terminal(0)]), Slp([Terminal(1)]))
        self.assertNotEqual(Slp([Terminal(0)]), [Terminal(0)])
        self.assertEqual(hash(Slp([Terminal(0)])), hash(Slp([Terminal(0)])))
        self.assertEqual(len({sd_example(), sd_example()}), 1)

    def test_subgrammar(self):
        g = sd_example()
        sub = g.subgrammar(5)
        self.assertEqual(len(sub), 5)
        self.assertEqual(sub.start, 5)
        with self.assertRaises(IndexError):
            g.subgrammar(0)
        with self.assertRaises(IndexError):
            g.subgrammar(10)


class TestSlpBuilder(TestCase):
    def test_terminal(self):
        b = SlpBuilder()
        self.assertEqual(b.terminal(0), 1)
        self.assertEqual(b.terminal(1), 2)
        self.assertEqual(len(b), 2)
        with self.assertRaises(ValueError) as cm:
            b.terminal(2)
        self.assertEqual(str(cm.exception), 'terminal bit must be 0 or 1; got 2')

    def test_pair(self):
        b = SlpBuilder()
        one = b.terminal(1)
        self.assertEqual(b.pair(one, one), 2)
        with self.assertRaises(slp.ForwardReference) as cm:
            b.pair(1, 3)
        self.assertEqual((cm.exception.index, cm.exception.ref), (3, 3))
        self.assertEqual(len(b), 2)

    def test_concat(self):
        for count in range(1, 20):
            b = SlpBuilder()
            zero = b.terminal(0)
            one = b.terminal(1)
            symbols = [(zero, one)[k % 2] for k in range(count)]
            start = b.concat(symbols)
            self.assertEqual(len(b), 2 + count - 1)
            g = Slp(b.rules[:start])
            self.assertEqual(slp.expand(g).to01(),
                ''.join('01'[k % 2] for k in range(count))
            )
        # Balanced: depth is ceil(log2(count)).
        b = SlpBuilder()
        b.concat([b.terminal(1)] * 1000)
        self.assertEqual(slp.depth(b.build()), 10)
        with self.assertRaises(ValueError):
            SlpBuilder().concat([])


class TestFunctions(TestCase):
    def test_check_rules(self):
        self.assertEqual(slp.check_rules(sd_example().rules), [])
        (e,) = slp.check_rules([])
        self.assertIsInstance(e, slp.EmptyGrammar)
        violations = slp.check_rules([Terminal(2), Pair(1, 2), Pair(0, 1), 'x'])
        self.assertEqual([type(v) for v in violations],
            [slp.BadRule, slp.ForwardReference, slp.BadRule, slp.BadRule]
        )

    def test_validate(self):
        report = slp.validate(sd_example())
        self.assertEqual(report.n, 9)
        self.assertEqual(report.lengths[-1], 16)
        self.assertEqual(report.violations, [])

        with self.assertRaises(slp.ForwardReference) as cm:
            slp.validate(Slp([Pair(1, 1)]))
        self.assertEqual((cm.exception.index, cm.exception.ref), (1, 1))
        with self.assertRaises(slp.EmptyGrammar):
            slp.validate(Slp([]))

        report = slp.validate(Slp([Terminal(0), Pair(1, 3)]), strict=False)
        self.assertEqual(report.n, 2)
        self.assertIsNone(report.lengths)
        self.assertEqual(len(report.violations), 1)
        self.assertIsInstance(report.violations[0], slp.ForwardReference)

    def test_lengths(self):
        self.assertEqual(slp.lengths(Slp([Terminal(0)])), (1,))
        self.assertEqual(slp.lengths(sd_example())[-1], 16)
        g = build_blsd_grammar(BlockedInstance(3, 3, {1, 3, 5, 9}))
        self.assertEqual(slp.lengths(g)[-1], 27)
        self.assertEqual(slp.derived_length(g), 27)
        # Exact beyond machine words:
        self.assertEqual(slp.derived_length(chain(101)), 2 ** 100)
        with self.assertRaises(slp.ForwardReference):
            slp.lengths(Slp([Terminal(0), Pair(2, 1)]))

    def test_expand(self):
        self.assertEqual(slp.expand(sd_example()).to01(), SD_1_3)
        g = build_blsd_grammar(BlockedInstance(3, 3, {1, 3, 5, 9}))
        self.assertEqual(slp.expand(g).to01(), BLSD_1_3_5_9)
        self.assertEqual(slp.expand(Slp([Terminal(1)])), bitarray('1'))
        with self.assertRaises(slp.CapExceeded) as cm:
            slp.expand(sd_example(), cap=15)
        self.assertEqual((cm.exception.length, cm.exception.cap), (16, 15))
        self.assertEqual(slp.expand(sd_example(), cap=16).to01(), SD_1_3)

        # Longer than the memo threshold:
        s = slp.expand(chain(15))
        self.assertEqual(len(s), 2 ** 14)
        self.assertEqual(s.count(1), 0)
        with self.assertRaises(slp.CapExceeded):
            slp.expand(chain(101))

    def test_access(self):
        g = sd_example()
        self.assertEqual(slp.access(g, 2), 1)
        self.assertEqual([slp.access(g, i) for i in range(16)],
            [int(c) for c in SD_1_3]
        )
        for bad in (16, 17, -1):
            with self.assertRaises(slp.OutOfRange) as cm:
                slp.access(g, bad)
            self.assertEqual((cm.exception.index, cm.exception.length), (bad, 16))
        # Without expanding:
        self.assertEqual(slp.access(chain(101), 2 ** 99 + 12345), 0)

    def test_access_path(self):
        g = sd_example()
        path = slp.access_path(g, 0)
        self.assertEqual(path[0], 9)
        self.assertIsInstance(g.rule(path[-1]), Terminal)
        self.assertEqual(len(path), 5)
        self.assertEqual(slp.access_path(Slp([Terminal(1)]), 0), [1])
        self.assertEqual(slp.access_path(chain(4), 7), [4, 3, 2, 1])

    def test_depth(self):
        self.assertEqual(slp.depth(Slp([Terminal(0)])), 0)
        for k in range(1, 30):
            self.assertEqual(slp.depth(chain(k)), k - 1)
        g = sd_example()
        self.assertEqual(slp.depth(g), recursive_depth(g))
        self.assertEqual(slp.depth(g), 4)

    def test_trim(self):
        g = Slp([Terminal(0), Terminal(1), Pair(2, 2)])
        self.assertEqual(slp.trim(g), Slp([Terminal(1), Pair(1, 1)]))
        (trimmed, remap) = slp.trim(g, with_map=True)
        self.assertEqual(remap, {2: 1, 3: 2})
        self.assertEqual(slp.expand(trimmed), slp.expand(g))
        self.assertEqual(slp.trim(chain(5)), chain(5))
        # 0^8 is only needed when 4 is in Y:
        trimmed = slp.trim(sd_example())
        self.assertEqual(len(trimmed), 8)
        self.assertEqual(slp.expand(trimmed).to01(), SD_1_3)

    def test_encode_slp(self):
        g = Slp([Terminal(1), Terminal(0), Pair(1, 2), Pair(3, 3)])
        self.assertEqual(slp.encode_slp(g),
            'SLPv1 4\n1 T 1\n2 T 0\n3 N 1 2\n4 N 3 3\n'
        )
        with self.assertRaises(slp.EmptyGrammar):
            slp.encode_slp(Slp([]))

    def test_decode_slp(self):
        g = sd_example()
        self.assertEqual(slp.decode_slp(slp.encode_slp(g)), g)
        self.assertEqual(
            slp.decode_slp('SLPv1 2\n\n1 T 1\n2   N 1 1\n'),
            Slp([Terminal(1), Pair(1, 1)])
        )
        bad = [
            ('', 1, 'missing header'),
            ('1 T 1\n', 1, "bad header: '1 T 1'"),
            ('SLPv2 1\n1 T 1\n', 1, "bad header: 'SLPv2 1'"),
            ('SLPv1 x\n1 T 1\n', 1, "not a decimal integer: 'x'"),
            ('SLPv1 2\n1 T 1\n', 2, 'header declares 2 rules, found 1'),
            ('SLPv1 2\n1 T 1\n3 N 1 1\n', 3, 'rule index 3 out of order (expected 2)'),
            ('SLPv1 2\n1 T 1\n2 N 1 2\n', 3, 'rule 2 must reference earlier symbols'),
            ('SLPv1 1\n1 T 2\n', 2, 'terminal must be 0 or 1'),
            ('SLPv1 1\n1 X 0\n', 2, "bad rule: '1 X 0'"),
            ('SLPv1 1\n1 T\n', 2, "truncated rule: '1 T'"),
            ('SLPv1 0\n', 1, 'grammar has no rules'),
        ]
        for (text, lineno, reason) in bad:
            with self.assertRaises(slp.ParseError) as cm:
                slp.decode_slp(text)
            self.assertEqual(cm.exception.lineno, lineno, text)
            self.assertEqual(cm.exception.reason, reason, text)

    def test_fingerprint(self):
        _id = slp.fingerprint(sd_example())
        self.assertEqual(len(_id), 24)
        self.assertTrue(isdb32(_id))
        self.assertEqual(slp.fingerprint(sd_example()), _id)
        other = build_sd_grammar(SetInstance(4, {1, 2}))
        self.assertNotEqual(slp.fingerprint(other), _id)


class TestProperties(TestCase):
    @settings(max_examples=200, deadline=None)
    @given(grammars())
    def test_access_matches_expand(self, g):
        s = slp.expand(g)
        self.assertEqual(s.to01(), recursive_expand(g))
        for i in range(len(s)):
            self.assertEqual(slp.access(g, i), s[i])

    @settings(max_examples=200, deadline=None)
    @given(grammars())
    def test_length_additivity(self, g):
        table = slp.lengths(g)
        for (i, rule) in enumerate(g.rules):
            if isinstance(rule, Terminal):
                self.assertEqual(table[i], 1)
            else:
                self.assertEqual(table[i],
                    table[rule.left - 1] + table[rule.right - 1]
                )
        self.assertLessEqual(table[-1], 2 ** len(g))

    @settings(max_examples=200, deadline=None)
    @given(grammars(max_rules=40))
    def test_codec_round_trip(self, g):
        self.assertEqual(slp.decode_slp(slp.encode_slp(g)), g)

    @settings(max_examples=100, deadline=None)
    @given(grammars())
    def test_depth_matches_recursion(self, g):
        self.assertEqual(slp.depth(g), recursive_depth(g))


class TestRandomGrammars(InstanceTestCase):
    def test_access_matches_expand(self):
        for trial in range(100):
            g = random_slp(self.rng, self.rng.randint(3, 12))
            s = slp.expand(g)
            for i in range(len(s)):
                self.assertEqual(slp.access(g, i), s[i])
