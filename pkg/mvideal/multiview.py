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
"""The multiview ideal and point level checks

Provides the multiview ideal M_A of an arrangement, the rank test for a
single image tuple, the limit point check along epipoles, the coplanar
witness construction, and the report objects returned by verifications.
"""

import logging
import itertools
from collections import namedtuple
from fractions import Fraction

from mvideal.cameras import (
    ProjectivePoint,
    kernel,
    mat_vec,
    matrix_rank,
    solve
)
from mvideal.errors import CameraError, PreconditionError, ShapeError
from mvideal.focalideals import JointMatrix, focal_sum
from mvideal.idealengine import Ideal
from mvideal.polycore import format_rational, get_context


_LOGGER = logging.getLogger(__name__)

METHODS = ('elimination', 'focal_sum')
DEFAULT_METHOD = 'elimination'


class MultiviewIdeal(Ideal):
    """The vanishing ideal of the multiview variety of an arrangement

    Attributes:
        method (str): 'elimination' or 'focal_sum'
        fingerprint (str): Digest of the arrangement it belongs to
    """

    def __init__(self, context, generators, method, fingerprint):
        super(MultiviewIdeal, self).__init__(context, generators)
        self.method = method
        self.fingerprint = fingerprint

    def __repr__(self):
        return 'MultiviewIdeal(%s, %d generators, method=%s)' % (
            self.fingerprint, len(self), self.method)


def _parametrization(arrangement, context):
    """Generators p_ij - l_i (A_i q)_j of the graph of (q, l) -> (l_i A_i q)"""
    q = [context.var(name) for name in ('q0', 'q1', 'q2', 'q3')]
    generators = list()
    for number in range(1, arrangement.n + 1):
        camera = arrangement.camera(number)
        scale = context.var('l%d' % number)
        point = context.image_point(number)
        for row, coordinate in zip(camera.matrix, point):
            image = context.zero()
            for coeff, var in zip(row, q):
                if coeff:
                    image = image + var.scale(coeff)
            generators.append(coordinate - scale * image)
    return generators


def multiview_ideal(arrangement, method=DEFAULT_METHOD, context=None):
    """Computes M_A

    Args:
        arrangement (Arrangement): The cameras
        method (str): 'elimination' eliminates q and the scalings from the
            incidence p_i = l_i A_i q; 'focal_sum' returns H^2 + H^3 and
            needs pairwise distinct foci

    Returns:
        MultiviewIdeal: Generated by a Gröbner basis (elimination) or by
            the bifocals and trifocals (focal_sum)

    Raises:
        PreconditionError: focal_sum on coincident foci
        ValueError: Unknown method
    """
    context = context or get_context(arrangement.n)
    fingerprint = arrangement.fingerprint()
    if method == 'elimination':
        incidence = Ideal(context, _parametrization(arrangement, context))
        eliminated = incidence.eliminate(context.world_indices +
                                         context.lambda_indices)
        generators = [g.primitive() for g in eliminated.generators]
        _LOGGER.debug('multiview ideal of %s by elimination: %d generators',
                      fingerprint, len(generators))
        return MultiviewIdeal(context, generators, method, fingerprint)
    if method == 'focal_sum':
        if not arrangement.distinct_foci():
            raise PreconditionError('foci must be pairwise distinct',
                                    'multiview_ideal(focal_sum)')
        summed = focal_sum(arrangement, (2, 3), context)
        return MultiviewIdeal(context, summed.generators, method,
                              fingerprint)
    raise ValueError('unknown method %r, expected one of %s' %
                     (method, ', '.join(METHODS)))


RankTest = namedtuple('RankTest', 'member rank full_rank kernel')


def _image_points(arrangement, points):
    if len(points) != arrangement.n:
        raise ShapeError('expected %d image points, got %d' %
                         (arrangement.n, len(points)))
    converted = list()
    for point in points:
        if len(point) != 3:
            raise ShapeError('image point %r is not a 3-vector' % (point,))
        converted.append(ProjectivePoint(point))
    return converted


def rank_test_point(arrangement, points):
    """Decides whether an image tuple lies on the multiview variety

    The tuple lies on V(M_A) exactly when the numeric joint matrix 𝒜(p)
    drops rank (for pairwise distinct foci).

    Args:
        points (list): One image point (3 rationals) per camera

    Returns:
        RankTest: member flag, rank, full rank 4+n and a kernel vector
            (q, -l) scaled so that its first nonzero entry is 1, or None

    Raises:
        CameraError: An image point is the zero vector
    """
    points = _image_points(arrangement, points)
    numeric = JointMatrix(arrangement).evaluate_at(
        [list(p) for p in points])
    rank = matrix_rank(numeric)
    full = 4 + arrangement.n
    vector = None
    if rank < full:
        vector = list(ProjectivePoint(kernel(numeric)[0]))
    return RankTest(rank < full, rank, full, vector)


LimitPointReport = namedtuple('LimitPointReport',
                              'camera points holds nonvanishing')


def limit_point_check(arrangement, camera, point, ideal):
    """Evaluates an ideal at the limit tuple of a camera

    The tuple has the free point p_i at camera i and the epipole A_j c_i
    at every other camera j.

    Raises:
        CameraError: Two foci coincide, so an epipole is undefined
    """
    free = ProjectivePoint(point)
    points = list()
    for other in range(1, arrangement.n + 1):
        if other == camera:
            points.append(free)
        else:
            points.append(arrangement.epipole(camera, other))
    coords = [list(p) for p in points]
    nonvanishing = [g for g in ideal.generators if g.evaluate_at(coords)]
    return LimitPointReport(camera, points, not nonvanishing, nonvanishing)


def _line_points(line):
    """Yields distinct points on an image line in a fixed order"""
    u, v = kernel([line])
    for a, b in itertools.chain([(1, 0), (0, 1)],
                                ((a, b) for total in itertools.count(2)
                                 for a in range(1, total)
                                 for b in (total - a, a - total))):
        yield ProjectivePoint([a * s + b * t for s, t in zip(u, v)])


def _pick(line, avoid, limit=64):
    avoid = set(avoid)
    for candidate in itertools.islice(_line_points(line), limit):
        if candidate not in avoid:
            yield candidate


def image_line(camera, plane):
    """The line l with A^T l = plane, the image of a plane through the focus"""
    columns = [list(col) for col in zip(*camera.matrix)]
    return solve(columns, plane)


def witness_coplanar(arrangement):
    """Builds an image tuple in V(H^2) outside V(M_A) for coplanar foci

    All foci lie on a plane; every camera images that plane as a line l_i.
    p_1 and p_2 are picked on l_1, l_2 away from the epipoles and
    triangulated to a world point q on the plane; p_3 is any point of l_3
    other than A_3 q and the remaining p_i are points of l_i.

    Returns:
        list: ProjectivePoints, one per camera

    Raises:
        PreconditionError: Fewer than three cameras, coincident foci or
            foci not coplanar
    """
    if arrangement.n < 3:
        raise PreconditionError('need at least three cameras',
                                'witness_coplanar')
    if not arrangement.distinct_foci():
        raise PreconditionError('foci must be pairwise distinct',
                                'witness_coplanar')
    if not arrangement.coplanar():
        raise PreconditionError('foci must be coplanar', 'witness_coplanar')
    plane = arrangement.plane_through_foci()
    lines = [image_line(camera, plane) for camera in arrangement.cameras]
    first, second, third = (arrangement.camera(i) for i in (1, 2, 3))
    foci = set(arrangement.foci)
    avoid_first = [arrangement.epipole(j, 1)
                   for j in range(2, arrangement.n + 1)]
    avoid_second = [arrangement.epipole(j, 2)
                    for j in range(1, arrangement.n + 1) if j != 2]
    for p1 in _pick(lines[0], avoid_first):
        for p2 in _pick(lines[1], avoid_second, limit=8):
            system = [list(a) + [-p1[r], Fraction(0)]
                      for r, a in enumerate(first.matrix)]
            system += [list(a) + [Fraction(0), -p2[r]]
                       for r, a in enumerate(second.matrix)]
            solutions = kernel(system)
            if len(solutions) != 1:
                continue
            world = solutions[0][:4]
            if not any(world) or ProjectivePoint(world) in foci:
                continue
            projected = ProjectivePoint(mat_vec(third.matrix, world))
            p3 = next(_pick(lines[2], [projected]), None)
            if p3 is None:
                continue
            rest = [next(_pick(line, [])) for line in lines[3:]]
            witness = [p1, p2, p3] + rest
            _LOGGER.debug('coplanar witness: %s', witness)
            return witness
    raise CameraError('no coplanar witness found')


def format_points(points):
    return [[format_rational(v) for v in p] for p in points]


class Statement(object):
    """One checked claim inside a verification report"""

    __slots__ = ('name', 'holds', 'detail')

    def __init__(self, name, holds, detail=None):
        self.name = name
        self.holds = bool(holds)
        self.detail = detail

    def __repr__(self):
        return 'Statement(%s=%s)' % (self.name, self.holds)

    def to_dict(self):
        result = {'name': self.name, 'holds': self.holds}
        if self.detail is not None:
            result['detail'] = self.detail
        return result


class VerificationReport(object):
    """The outcome of one verification

    Attributes:
        theorem (str): Verification id, e.g. 'thm_3_6'
        title (str): What the verification checks
        applicable (bool): False when a construction precondition failed
        holds (bool): The checked claim evaluated on the arrangement
        expected (bool): The predicted outcome, None when no claim is made
        hypotheses (dict): Arrangement predicates relevant to the claim
        statements (list): Individual Statement results
        witnesses (list): Canonical text of counterexamples
        gb_sizes (dict): Gröbner basis sizes of the compared ideals
        timings (dict): Seconds spent per step
        reason (str): Why the verification is not applicable
    """

    def __init__(self, theorem, title, applicable=True, holds=None,
                 expected=None, hypotheses=None, statements=None,
                 witnesses=None, gb_sizes=None, timings=None, reason=None):
        self.theorem = theorem
        self.title = title
        self.applicable = applicable
        self.holds = holds
        self.expected = expected
        self.hypotheses = dict(hypotheses or {})
        self.statements = list(statements or [])
        self.witnesses = list(witnesses or [])
        self.gb_sizes = dict(gb_sizes or {})
        self.timings = dict(timings or {})
        self.reason = reason

    def __repr__(self):
        return 'VerificationReport(%s, %s)' % (self.theorem, self.status)

    @property
    def confirmed(self):
        if not self.applicable:
            return False
        if self.expected is None:
            return True
        return self.holds == self.expected

    @property
    def status(self):
        if not self.applicable:
            return 'not-applicable'
        return 'confirmed' if self.confirmed else 'unexpected'

    def to_dict(self, timings=False):
        result = {
            'theorem': self.theorem,
            'title': self.title,
            'applicable': self.applicable,
            'holds': self.holds,
            'expected': self.expected,
            'confirmed': self.confirmed,
            'status': self.status,
            'hypotheses': self.hypotheses,
            'statements': [s.to_dict() for s in self.statements],
            'witnesses': self.witnesses,
            'gb_sizes': self.gb_sizes,
        }
        if self.reason:
            result['reason'] = self.reason
        if timings:
            result['timings'] = {k: round(v, 6)
                                 for k, v in self.timings.items()}
        return result
