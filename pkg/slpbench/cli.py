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
The ``slpbench-cli`` command: generate, compile, compress, query, verify
and benchmark.

Streams default to stdin and stdout so that instances pipe between
subcommands, for example::

    $ slpbench-cli gen-sd --m 4 --Y 1,3 | slpbench-cli expand
    1010000010100000

Indices are zero-based.  Exit status is 0 on success, 1 when a validation or
verification fails, 2 on a usage error and 3 on an I/O error.
"""

import argparse
import csv
import io
import json
import logging
import sys
from collections import namedtuple

import slpbench
from .slp import (
    DEFAULT_CAP, access, decode_slp, encode_slp, expand, fingerprint,
)
from .hard import (
    SetInstance, BlockedInstance, blocked_index, blocked_sets, blsd_by_replacement,
    build_blsd_grammar, build_sd_grammar, disjoint, sd_tensor_string, set_index,
    set_from_index, tensor_string,
)
from .rangegrid import (
    PointSet, answer_oracle, build_butterfly, compile_answer_grammar,
    edges_to_rectangles, read_points, reach_oracle, reach_via_counting,
    rule_bound, pad_width,
)
from .bwt import (
    RUNS_FACTOR, bwt, build_bwt_hard, decode_rle_json, encode_rle_json, ibwt,
    rle_bits, rle_decode, rle_encode, runs, sigma,
)
from .lz import lz_report
from .probe import FAMILIES, REPORT_COLUMNS, STRUCTURES, bench_sweep, parse_range
from .misc import make_rng, random_deletions, random_points, random_subset


log = logging.getLogger(__name__)

PROG = 'slpbench-cli'

VerifyRecord = namedtuple('VerifyRecord', 'family params checks failures fingerprint')
ButterflyRecord = namedtuple('ButterflyRecord', 'trial edges pairs reachable disagreements')


class VerificationFailed(ValueError):
    def __init__(self, what, failures):
        self.what = what
        self.failures = failures
        super().__init__('{}: {} failed checks'.format(what, failures))


########################
# Input parsing and output:

def parse_set(text):
    """
    Parse a comma separated set of positive integers.

    >>> sorted(parse_set('1,3, 5'))
    [1, 3, 5]
    >>> parse_set('')
    frozenset()
    """
    items = [t.strip() for t in text.split(',') if t.strip()]
    try:
        values = frozenset(int(t) for t in items)
    except ValueError:
        raise ValueError('invalid set: {!r}'.format(text))
    return values


def read_input(name):
    if name == '-':
        return sys.stdin.read()
    with open(name, 'r') as fp:
        return fp.read()


def read_bits(name):
    """
    Read ASCII ``0``/``1`` text, ignoring whitespace.
    """
    text = ''.join(read_input(name).split())
    if text.strip('01'):
        raise ValueError('not a binary string: {!r}'.format(text[:40]))
    return text


def read_bwt_text(name):
    return ''.join(read_input(name).split())


def emit_report(records, fp, columns=None, as_json=False):
    """
    Write homogeneous *records* (namedtuples) as CSV with a header, or as a
    JSON array.

    >>> import io
    >>> fp = io.StringIO()
    >>> emit_report([], fp, columns=('a', 'b'))
    >>> fp.getvalue()
    'a,b\\n'
    """
    records = list(records)
    if columns is None:
        if not records:
            raise ValueError('columns are required for an empty report')
        columns = records[0]._fields
    if as_json:
        fp.write(json.dumps([dict(zip(columns, r)) for r in records]))
        fp.write('\n')
        return
    writer = csv.writer(fp, lineterminator='\n')
    writer.writerow(columns)
    writer.writerows(records)


########################
# Oracle suites for `verify`:

def verify_sd(m, Y):
    slp = build_sd_grammar(SetInstance(m, Y))
    s = expand(slp)
    failures = int(s != sd_tensor_string(Y, m)) + int(len(slp) != 2 * m + 1)
    for index in range(2 ** m):
        X = set_from_index(index, m)
        assert set_index(X, m) == index
        if access(slp, index) != disjoint(X, Y):
            failures += 1
    return VerifyRecord('sd', 'm={}'.format(m), 2 ** m + 2, failures,
        fingerprint(slp)
    )


def verify_blsd(B, N, Y):
    slp = build_blsd_grammar(BlockedInstance(B, N, Y))
    s = expand(slp)
    failures = int(s != blsd_by_replacement(Y, B, N))
    failures += int(s != tensor_string(Y, B, N))
    failures += int(len(slp) > 2 * B * N + 1)
    checks = 3
    for X in blocked_sets(B, N):
        checks += 1
        if access(slp, blocked_index(X, B, N)) != disjoint(X, Y):
            failures += 1
    return VerifyRecord('blsd', 'B={} N={}'.format(B, N), checks, failures,
        fingerprint(slp)
    )


def verify_rc(ps, auto_pad=True):
    slp = compile_answer_grammar(ps, auto_pad=auto_pad)
    W = pad_width(ps.W) if auto_pad else ps.W
    wide = ps.padded(W)
    failures = int(expand(slp) != answer_oracle(wide))
    failures += int(len(slp) > rule_bound(W, ps.H, len(ps)))
    return VerifyRecord('rc', 'W={} H={} P={}'.format(ps.W, ps.H, len(ps)), 2,
        failures, fingerprint(slp)
    )


def verify_bwt_hard(B, N, Y, cap=DEFAULT_CAP):
    s = build_bwt_hard(Y, B, N, cap)
    failures = int(len(s) != (4 * B) ** N)
    failures += int(runs(bwt(s)) > RUNS_FACTOR * B * N)
    checks = 2
    for X in blocked_sets(B, N):
        checks += 1
        if s[sigma(X, B, N)] != disjoint(X, Y):
            failures += 1
    return VerifyRecord('bwt-hard', 'B={} N={}'.format(B, N), checks, failures,
        None
    )


########################
# Subcommands:

def _instance_set(args, universe, rng):
    if args.Y is not None:
        return parse_set(args.Y)
    return random_subset(rng, universe)


def cmd_gen_sd(args, config, out):
    Y = _instance_set(args, args.m, make_rng(config['seed']))
    out.write(encode_slp(build_sd_grammar(SetInstance(args.m, Y))))


def cmd_gen_blsd(args, config, out):
    Y = _instance_set(args, args.B * args.N, make_rng(config['seed']))
    inst = BlockedInstance(args.B, args.N, Y)
    out.write(encode_slp(build_blsd_grammar(inst, args.compact_zeros)))


def _load_points(args, config):
    if args.random is not None:
        (W, H, P) = (int(v) for v in args.random.split('x'))
        return random_points(make_rng(config['seed']), W, H, P)
    name = args.points or args.input
    if name == '-':
        points = read_points(sys.stdin)
    else:
        with open(name, 'r', newline='') as fp:
            points = read_points(fp)
    W = args.W or max([x for (x, y) in points], default=1)
    H = args.H or max([y for (x, y) in points], default=1)
    return PointSet(W, H, points)


def cmd_compile_rc(args, config, out):
    ps = _load_points(args, config)
    if config['auto_pad'] and pad_width(ps.W) != ps.W:
        log.warning('width %d padded to %d', ps.W, pad_width(ps.W))
    out.write(encode_slp(compile_answer_grammar(ps, auto_pad=config['auto_pad'])))


def cmd_gen_bwt_hard(args, config, out):
    Y = _instance_set(args, args.B * args.N, make_rng(config['seed']))
    out.write(build_bwt_hard(Y, args.B, args.N, config['cap']).to01() + '\n')


def cmd_access(args, config, out):
    slp = decode_slp(read_input(args.input))
    out.write('{}\n'.format(access(slp, args.index)))


def cmd_expand(args, config, out):
    slp = decode_slp(read_input(args.input))
    out.write(expand(slp, config['cap']).to01() + '\n')


def cmd_fingerprint(args, config, out):
    out.write(fingerprint(decode_slp(read_input(args.input))) + '\n')


def cmd_bwt(args, config, out):
    out.write(bwt(read_bits(args.input)) + '\n')


def cmd_ibwt(args, config, out):
    out.write(ibwt(read_bwt_text(args.input)).to01() + '\n')


def cmd_runs(args, config, out):
    out.write('{}\n'.format(runs(read_bwt_text(args.input))))


def cmd_rle(args, config, out):
    code = rle_encode(read_bwt_text(args.input))
    log.info('%d runs, %d bits', len(code.runs), rle_bits(code))
    out.write(encode_rle_json(code) + '\n')


def cmd_unrle(args, config, out):
    out.write(rle_decode(decode_rle_json(read_input(args.input))) + '\n')


def cmd_lz_report(args, config, out):
    # One JSON object per line, in input order.
    for name in args.inputs:
        report = lz_report(decode_slp(read_input(name)), config['cap'])
        out.write(json.dumps(report._asdict()) + '\n')


def cmd_butterfly_check(args, config, out):
    rng = make_rng(config['seed'])
    (H, B, D) = (args.H, args.B, args.D)
    records = []
    for trial in range(args.trials):
        g = build_butterfly(H, B, D, random_deletions(rng, H, B, D, args.p))
        rects = edges_to_rectangles(g)
        (pairs, reachable, bad) = (0, 0, 0)
        for u in g.layer(0):
            for v in g.layer(D):
                pairs += 1
                expected = reach_oracle(g, u, v)
                reachable += expected
                bad += (reach_via_counting(rects, u, v) != expected)
        records.append(ButterflyRecord(trial, len(rects), pairs, reachable, bad))
    emit_report(records, out, ButterflyRecord._fields, config['output'] == 'json')
    failures = sum(r.disagreements for r in records)
    if failures:
        raise VerificationFailed('butterfly-check', failures)


def _word_size(args, config):
    if args.w is not None:
        return args.w
    if config['word_size'] == 'log2L':
        return None
    return config['word_size']


def cmd_probe_bench(args, config, out):
    if args.structure == 'all':
        structures = STRUCTURES
    else:
        structures = (args.structure,)
    rows = bench_sweep(args.family, parse_range(args.param_range),
        _word_size(args, config), config['seed'], structures
    )
    emit_report(rows, out, REPORT_COLUMNS, config['output'] == 'json')


def cmd_verify(args, config, out):
    rng = make_rng(config['seed'])
    family = args.family
    if family == 'sd':
        record = verify_sd(args.m, _instance_set(args, args.m, rng))
    elif family == 'blsd':
        record = verify_blsd(args.B, args.N,
            _instance_set(args, args.B * args.N, rng)
        )
    elif family == 'rc':
        record = verify_rc(_load_points(args, config), config['auto_pad'])
    else:
        record = verify_bwt_hard(args.B, args.N,
            _instance_set(args, args.B * args.N, rng), config['cap']
        )
    emit_report([record], out, VerifyRecord._fields, config['output'] == 'json')
    if record.failures:
        raise VerificationFailed('verify ' + family, record.failures)


########################
# Argument parsing:

def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='FILE', default=argparse.SUPPRESS,
        help='read defaults from an ini FILE'
    )
    common.add_argument('--loglevel', choices=slpbench.LOGLEVELS,
        default=argparse.SUPPRESS,
    )
    common.add_argument('--cap', type=int, default=argparse.SUPPRESS,
        help='largest string (in bits) to materialize'
    )
    common.add_argument('--seed', type=int, default=argparse.SUPPRESS)
    common.add_argument('--json', action='store_true', default=argparse.SUPPRESS,
        help='emit reports as JSON instead of CSV'
    )
    common.add_argument('-o', '--output', metavar='FILE', default=argparse.SUPPRESS,
        help='write to FILE instead of stdout'
    )
    return common


def _add_blocked(parser):
    parser.add_argument('--B', type=int, required=True, help='block size')
    parser.add_argument('--N', type=int, required=True, help='block count')


def _add_set(parser):
    parser.add_argument('--Y', metavar='E,E,...',
        help='the fixed set (random with --seed when omitted)'
    )


def _add_points(parser):
    parser.add_argument('input', nargs='?', default='-',
        help='points CSV of one-based x,y lines'
    )
    parser.add_argument('--points', metavar='FILE',
        help='points CSV, instead of the positional input'
    )
    parser.add_argument('--width', '--W', dest='W', type=int,
        help='grid width (default: max x)'
    )
    parser.add_argument('--height', '--H', dest='H', type=int,
        help='grid height (default: max y)'
    )
    parser.add_argument('--random', metavar='WxHxP',
        help='use P random points on a W x H grid instead of an input file'
    )
    parser.add_argument('--no-pad', dest='auto_pad', action='store_false',
        default=argparse.SUPPRESS,
        help='refuse widths that are not a power of two'
    )


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog=PROG, parents=[common],
        description='Random access into grammar-compressed strings.',
    )
    parser.add_argument('--version', action='version',
        version='%(prog)s ' + slpbench.__version__
    )
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        p.set_defaults(func=func)
        return p

    def add_input(p, what):
        p.add_argument('input', nargs='?', default='-', help=what + ' (default: stdin)')

    p = add('gen-sd', cmd_gen_sd, 'emit the set disjointness grammar (SLPv1)')
    p.add_argument('--m', type=int, required=True, help='universe size')
    _add_set(p)

    p = add('gen-blsd', cmd_gen_blsd, 'emit the blocked set disjointness grammar (SLPv1)')
    _add_blocked(p)
    _add_set(p)
    p.add_argument('--compact-zeros', action='store_true',
        help='build the zero strings by doubling'
    )

    p = add('compile-rc', cmd_compile_rc, 'compile a points CSV into its answer grammar')
    _add_points(p)

    p = add('gen-bwt-hard', cmd_gen_bwt_hard, 'emit the BWT-compressible hard string')
    _add_blocked(p)
    _add_set(p)

    p = add('access', cmd_access, 'print the bit at a zero-based index')
    add_input(p, 'SLPv1 file')
    p.add_argument('--index', type=int, required=True)

    p = add('expand', cmd_expand, 'print the derived string')
    add_input(p, 'SLPv1 file')

    p = add('fingerprint', cmd_fingerprint, 'print the Dbase32 ID of a grammar')
    add_input(p, 'SLPv1 file')

    p = add('bwt', cmd_bwt, 'Burrows-Wheeler transform of a bitstring')
    add_input(p, 'bitstring file')

    p = add('ibwt', cmd_ibwt, 'invert a Burrows-Wheeler transform')
    add_input(p, 'BWT text file')

    p = add('runs', cmd_runs, 'count runs, ignoring the sentinel')
    add_input(p, 'BWT text file')

    p = add('rle', cmd_rle, 'run-length code a BWT text as JSON')
    add_input(p, 'BWT text file')

    p = add('unrle', cmd_unrle, 'decode run-length JSON back to BWT text')
    add_input(p, 'JSON file')

    p = add('lz-report', cmd_lz_report,
        'compare grammar size with LZ77 and LZ78, one JSON object per input'
    )
    p.add_argument('inputs', nargs='*', default=['-'], metavar='input',
        help='SLPv1 files (default: stdin)'
    )

    p = add('butterfly-check', cmd_butterfly_check,
        'check reachability through rectangle stabbing on random butterflies'
    )
    p.add_argument('--H', type=int, default=2)
    p.add_argument('--B', type=int, default=2)
    p.add_argument('--D', type=int, default=2)
    p.add_argument('--trials', type=int, default=100)
    p.add_argument('--p', type=float, default=0.25, help='edge deletion probability')

    p = add('probe-bench', cmd_probe_bench, 'cell-probe costs over an instance family')
    p.add_argument('--family', choices=FAMILIES, required=True)
    p.add_argument('--param-range', default='2..6', metavar='LO..HI')
    p.add_argument('--w', type=int, help='word size (default: ceil(log2 L))')
    p.add_argument('--structure', choices=STRUCTURES + ('all',), default='all')

    p = add('verify', cmd_verify, 'check one instance against its oracles')
    p.add_argument('--family', choices=('sd', 'blsd', 'rc', 'bwt-hard'), required=True)
    p.add_argument('--m', type=int)
    p.add_argument('--B', type=int)
    p.add_argument('--N', type=int)
    _add_set(p)
    _add_points(p)
    return parser


def _check_verify_args(parser, args):
    if args.family == 'sd' and args.m is None:
        parser.error('verify --family sd requires --m')
    if args.family in ('blsd', 'bwt-hard') and (args.B is None or args.N is None):
        parser.error('verify --family {} requires --B and --N'.format(args.family))


def build_run_config(args):
    overrides = {}
    if getattr(args, 'config', None):
        overrides.update(slpbench.read_ini(args.config))
    for key in ('cap', 'seed', 'loglevel', 'auto_pad'):
        if hasattr(args, key):
            overrides[key] = getattr(args, key)
    if getattr(args, 'json', False):
        overrides['output'] = 'json'
    return slpbench.build_config(overrides)


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == 'verify':
        _check_verify_args(parser, args)
    output = getattr(args, 'output', None)
    buf = io.StringIO()
    try:
        config = build_run_config(args)
        slpbench.configure_logging(config['loglevel'])
        try:
            args.func(args, config, buf)
        finally:
            # A failed command leaves an existing -o file untouched.
            if not output:
                sys.stdout.write(buf.getvalue())
        if output:
            with open(output, 'w') as out:
                out.write(buf.getvalue())
    except OSError as e:
        print('{}: error: {}'.format(PROG, e), file=sys.stderr)
        return 3
    except ValueError as e:
        print('{}: error: {}'.format(PROG, e), file=sys.stderr)
        return 1
    return 0


def main():
    raise SystemExit(run())


if __name__ == '__main__':
    main()
