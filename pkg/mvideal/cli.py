#
# Copyright (c) 2026, mvideal contributors.
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are
# met:
#
#   Redistributions of source code must retain the above copyright notice,
#   this list of conditions and the following disclaimer.
#
#   Redistributions in binary form must reproduce the above copyright
#   notice, this list of conditions and the following disclaimer in the
#   documentation and/or other materials provided with the distribution.
#
#   Neither the name of the copyright holders nor the names of its
#   contributors may be used to endorse or promote products derived from
#   this software without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS
# "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT
# LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR
# A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT
# HOLDERS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL,
# EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO,
# PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR
# PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF
# LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING
# NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS
# SOFTWARE, EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.
#
"""Command line front end

Usage::

    mvideal focal ARR.json --k 3 [--sigma 1-3] [--counts]
    mvideal matrix ARR.json [--which joint|faugeras|ma|cross] [--sigma 1,2]
    mvideal multiview ARR.json [--method elimination|focal_sum] [--gb]
    mvideal verify ARR.json [--thm ID ...|all] [--seed N] [--timings]
    mvideal check-point ARR.json --point '((1,2,3),(2,2,4))'
    mvideal ideal VERB FILE [FILE2] [--poly P] [--vars q0,q1]

Every subcommand accepts ``--json``, ``--order lex|degrevlex``,
``--seed N`` and ``-v``.  Ideal files hold one polynomial per line; blank
lines and lines starting with ``#`` are ignored.

Exit status is 0 on success, 1 when a verification outcome differs from
its prediction and 2 on malformed input or a violated precondition.
"""

import re
import sys
import asyncio
import logging
import argparse

from mvideal import __version__
from mvideal import config as mvconfig
from mvideal.cameras import load_arrangement
from mvideal.errors import MvIdealError, PolynomialParseError, ShapeError
from mvideal.focalideals import (
    FocalIdealSet,
    JointMatrix,
    cross_block_diagonal,
    faugeras_matrix,
    focal_minors,
    ma_matrix
)
from mvideal.idealengine import Ideal, dehomogenize, homogenize
from mvideal.multiview import METHODS, multiview_ideal, rank_test_point
from mvideal.polycore import (
    format_rational,
    get_context,
    order_by_name,
    parse,
    to_rational
)
from mvideal.session import open_session
from mvideal.utils import configure_logging, dumps, expand_range


_LOGGER = logging.getLogger(__name__)

SCHEMA = 1

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_ERROR = 2

IDEAL_VERBS = ('gb', 'member', 'colon', 'saturate', 'intersect',
               'eliminate', 'dehom', 'homog', 'radical')

_CAMERA_NUMBER = re.compile(r'[xyzl](\d+)')
_POINT = re.compile(r'\(([^()]*)\)')


def _common(parser):
    parser.add_argument('--json', action='store_true',
                        help='emit a machine readable JSON document')
    parser.add_argument('--order', choices=('lex', 'degrevlex'),
                        help='monomial order for Gröbner output')
    parser.add_argument('--seed', type=int,
                        help='seed for randomized steps')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress (repeat for debug output)')
    parser.add_argument('--config', help='configuration file to load')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='mvideal',
        description='Exact multiview ideal computations and verifications')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    focal = commands.add_parser('focal', help='list k-focal polynomials')
    focal.add_argument('arrangement')
    focal.add_argument('--k', type=int, default=2)
    focal.add_argument('--sigma', help='camera subset, e.g. 1,3 or 1-3')
    focal.add_argument('--counts', action='store_true',
                       help='print minor counts only')
    focal.add_argument('--gb', action='store_true',
                       help='print the reduced Gröbner basis of H^k')
    _common(focal)

    matrix = commands.add_parser('matrix', help='print a symbolic matrix')
    matrix.add_argument('arrangement')
    matrix.add_argument('--which', default='joint',
                        choices=('joint', 'faugeras', 'ma', 'cross'))
    matrix.add_argument('--sigma', help='camera subset of the joint matrix')
    _common(matrix)

    multiview = commands.add_parser('multiview',
                                    help='compute the multiview ideal')
    multiview.add_argument('arrangement')
    multiview.add_argument('--method', choices=METHODS)
    multiview.add_argument('--gb', action='store_true',
                           help='print the reduced Gröbner basis')
    _common(multiview)

    verify = commands.add_parser('verify', help='run verifications')
    verify.add_argument('arrangement')
    verify.add_argument('--thm', nargs='+', default=['all'],
                        help='verification ids or "all"')
    verify.add_argument('--method', choices=METHODS)
    verify.add_argument('--workers', type=int)
    verify.add_argument('--timeout', type=float,
                        help='seconds allowed per verification')
    verify.add_argument('--timings', action='store_true',
                        help='include timings in the report')
    _common(verify)

    point = commands.add_parser('check-point',
                                help='rank test for an image tuple')
    point.add_argument('arrangement')
    point.add_argument('--point', required=True,
                       help="image points, e.g. '((1,2,3),(2,2,4))'")
    _common(point)

    ideal = commands.add_parser('ideal', help='ideal engine verbs')
    ideal.add_argument('verb', choices=IDEAL_VERBS)
    ideal.add_argument('file')
    ideal.add_argument('other', nargs='?')
    ideal.add_argument('--poly', help='polynomial for member and radical')
    ideal.add_argument('--vars', help='variables to eliminate, e.g. q0,q1')
    ideal.add_argument('--cameras', type=int,
                       help='number of cameras (inferred by default)')
    ideal.add_argument('--gb', action='store_true',
                       help='print a reduced Gröbner basis for homog')
    _common(ideal)
    return parser


def _emit(args, document, lines):
    if args.json:
        document = dict(document)
        document['schema'] = SCHEMA
        print(dumps(document))
    else:
        for line in lines:
            print(line)


def _sigma(args):
    if not args.sigma:
        return None
    try:
        return expand_range(args.sigma)
    except ValueError:
        raise ShapeError('invalid camera subset %r' % args.sigma)


def _order(args):
    return order_by_name(args.order or mvconfig.config.order)


def run_focal(args):
    arrangement = load_arrangement(args.arrangement)
    sigma = _sigma(args)
    if args.counts:
        counts = FocalIdealSet(arrangement).counts(args.k) if sigma is None \
            else _counts(focal_minors(arrangement, args.k, sigma))
        _emit(args, counts, ['%s: %s' % (key, counts[key])
                             for key in ('k', 'total', 'nonzero', 'zero')])
        return EXIT_OK
    found = [m for m in focal_minors(arrangement, args.k, sigma)
             if not m.is_zero()]
    document = {'k': args.k, 'minors': [m.to_dict() for m in found]}
    lines = [m.polynomial.primitive().to_text() for m in found]
    if args.gb:
        ideal = Ideal(get_context(arrangement.n),
                      [m.polynomial for m in found])
        lines = ideal.to_lines(_order(args))
        document['gb'] = lines
    _emit(args, document, lines)
    return EXIT_OK


def _counts(found):
    zero = sum(1 for m in found if m.is_zero())
    return {'k': found[0].k if found else None, 'total': len(found),
            'nonzero': len(found) - zero, 'zero': zero}


def run_matrix(args):
    arrangement = load_arrangement(args.arrangement)
    context = get_context(arrangement.n)
    if args.which == 'joint':
        matrix = JointMatrix(arrangement, _sigma(args), context).matrix
    elif args.which == 'faugeras':
        matrix = faugeras_matrix(arrangement, context)
    elif args.which == 'ma':
        matrix = ma_matrix(arrangement, context)
    else:
        matrix = cross_block_diagonal(context)
    rows = [[str(entry) for entry in row] for row in matrix.rows()]
    _emit(args, {'which': args.which, 'rows': rows},
          matrix.to_text().splitlines())
    return EXIT_OK


def run_multiview(args):
    arrangement = load_arrangement(args.arrangement)
    method = args.method or mvconfig.config.method
    ideal = multiview_ideal(arrangement, method)
    lines = ideal.to_lines(_order(args) if args.gb else None)
    _emit(args, {'method': method, 'fingerprint': ideal.fingerprint,
                 'gb': args.gb, 'generators': lines}, lines)
    return EXIT_OK


def _report_lines(report):
    lines = ['%s %s: %s' % (report.theorem, report.status, report.title)]
    if not report.applicable:
        lines.append('  reason: %s' % report.reason)
        return lines
    lines.append('  holds=%s expected=%s' % (report.holds, report.expected))
    for statement in report.statements:
        lines.append('  [%s] %s' % ('x' if statement.holds else ' ',
                                    statement.name))
    for witness in report.witnesses:
        lines.append('  witness: %s' % (witness,))
    return lines


def run_verify(args):
    arrangement = load_arrangement(args.arrangement)
    options = dict()
    for key in ('seed', 'method', 'workers', 'timeout'):
        value = getattr(args, key)
        if value is not None:
            options[key] = value
    session = open_session(arrangement, **options)
    requested = [t for t in args.thm if t != 'all']
    run_all = len(requested) != len(args.thm)
    ids = session.theorem_ids() if run_all else requested
    reports = asyncio.run(session.verify_all(ids))
    lines = list()
    for report in reports:
        lines.extend(_report_lines(report))
    _emit(args, {'fingerprint': arrangement.fingerprint(),
                 'seed': session.seed, 'method': session.method,
                 'reports': [r.to_dict(timings=args.timings)
                             for r in reports]}, lines)
    explicit = set(requested)
    if any(not r.applicable and r.theorem in explicit for r in reports):
        return EXIT_ERROR
    if any(r.status == 'unexpected' for r in reports):
        return EXIT_UNEXPECTED
    return EXIT_OK


def parse_points(text):
    """Parses '((1,2,3),(2,2,4))' into lists of rationals

    Raises:
        ShapeError: The text does not hold parenthesized triples
    """
    groups = _POINT.findall(text)
    if not groups:
        raise ShapeError('no image points in %r' % text)
    points = list()
    for group in groups:
        try:
            points.append([to_rational(v.strip()) for v in group.split(',')])
        except (ValueError, ZeroDivisionError):
            raise ShapeError('invalid image point (%s)' % group)
    return points


def run_check_point(args):
    arrangement = load_arrangement(args.arrangement)
    result = rank_test_point(arrangement, parse_points(args.point))
    kernel = None
    if result.kernel is not None:
        kernel = [format_rational(v) for v in result.kernel]
    verdict = 'consistent image tuple' if result.member else \
        'not a consistent image tuple'
    lines = [verdict, 'rank %d of %d' % (result.rank, result.full_rank)]
    if kernel:
        lines.append('kernel (q, -l): %s' %
                     ', '.join(str(v) for v in kernel))
    _emit(args, {'member': result.member, 'rank': result.rank,
                 'full_rank': result.full_rank, 'kernel': kernel}, lines)
    return EXIT_OK


def read_polynomials(path):
    """Reads the non-empty, non-comment lines of a polynomial file"""
    try:
        with open(path, encoding='utf-8') as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise MvIdealError('cannot read %s: %s' % (path, exc.strerror))
    return [line.strip() for line in lines
            if line.strip() and not line.strip().startswith('#')]


def _infer_cameras(texts):
    numbers = [int(n) for text in texts for n in _CAMERA_NUMBER.findall(text)]
    if not numbers:
        return 1
    return max(numbers)


def _load_ideal(path, context):
    return Ideal(context, [parse(text, context)
                           for text in read_polynomials(path)])


def run_ideal(args):
    texts = read_polynomials(args.file)
    if args.other:
        texts = texts + read_polynomials(args.other)
    if args.poly:
        texts.append(args.poly)
    cameras = args.cameras or _infer_cameras(texts)
    affine = args.verb == 'homog'
    context = get_context(cameras, affine=affine)
    ideal = _load_ideal(args.file, context)
    verb = args.verb
    if verb in ('colon', 'saturate', 'intersect'):
        if not args.other:
            raise MvIdealError('%s needs a second ideal file' % verb)
        other = _load_ideal(args.other, context)
        result = {'colon': ideal.colon, 'saturate': ideal.saturate,
                  'intersect': ideal.intersect}[verb](other)
        lines = result.to_lines(_order(args))
    elif verb in ('member', 'radical'):
        if not args.poly:
            raise PolynomialParseError('', '%s needs --poly' % verb)
        poly = parse(args.poly, context)
        answer = ideal.member(poly) if verb == 'member' \
            else ideal.radical_member(poly)
        _emit(args, {'verb': verb, 'result': answer},
              ['true' if answer else 'false'])
        return EXIT_OK
    elif verb == 'eliminate':
        if not args.vars:
            raise MvIdealError('eliminate needs --vars')
        names = [v.strip() for v in args.vars.split(',') if v.strip()]
        indices = [context.variable_index(name) for name in names]
        lines = ideal.eliminate(indices).to_lines(_order(args))
    elif verb == 'dehom':
        lines = dehomogenize(ideal).to_lines(_order(args))
    elif verb == 'homog':
        homogeneous = [homogenize(g) for g in ideal.generators]
        lines = [g.primitive().to_text() for g in homogeneous]
        if args.gb and homogeneous:
            lines = Ideal(homogeneous[0].context,
                          homogeneous).to_lines(_order(args))
    else:
        lines = ideal.to_lines(_order(args))
    _emit(args, {'verb': verb, 'generators': lines}, lines)
    return EXIT_OK


COMMANDS = {
    'focal': run_focal,
    'matrix': run_matrix,
    'multiview': run_multiview,
    'verify': run_verify,
    'check-point': run_check_point,
    'ideal': run_ideal,
}


def main(argv=None):
    """Runs the command line and returns the exit status"""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    configure_logging(level)
    try:
        if args.config:
            mvconfig.load_config(args.config)
        return COMMANDS[args.command](args)
    except MvIdealError as exc:
        _LOGGER.debug('command failed', exc_info=True)
        print('error: %s' % exc.message, file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print('error: %s' % exc, file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
