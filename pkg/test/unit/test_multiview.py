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
import sys
import os
import unittest

sys.path.append(os.path.join(os.path.dirname(__file__), '../lib'))

from testlib import load_fixture, ring

from mvideal.errors import CameraError, PreconditionError, ShapeError
from mvideal.focalideals import k_focal_ideal, ma_ideal
from mvideal.multiview import (
    METHODS,
    MultiviewIdeal,
    Statement,
    VerificationReport,
    format_points,
    image_line,
    limit_point_check,
    multiview_ideal,
    rank_test_point,
    witness_coplanar
)
from mvideal.polycore import parse


class TestMultiviewIdeal(unittest.TestCase):

    def test_pair_methods_agree(self):
        for name in ('pair.json', 'raw_pair.json'):
            arrangement = load_fixture(name)
            eliminated = multiview_ideal(arrangement, 'elimination')
            summed = multiview_ideal(arrangement, 'focal_sum')
            self.assertIsInstance(eliminated, MultiviewIdeal)
            self.assertEqual(eliminated.method, 'elimination')
            self.assertEqual(summed.method, 'focal_sum')
            self.assertEqual(eliminated.fingerprint,
                             arrangement.fingerprint())
            self.assertTrue(eliminated.equal(summed), name)

    def test_pair_is_principal(self):
        arrangement = load_fixture('pair.json')
        ideal = multiview_ideal(arrangement)
        self.assertEqual(len(ideal), 1)
        expected = parse('y1*z2 - y2*z1', ideal.context)
        self.assertIn(ideal.generators[0], (expected, -expected))

    def test_focal_sum_needs_distinct_foci(self):
        with self.assertRaises(PreconditionError):
            multiview_ideal(load_fixture('pair_coincident.json'), 'focal_sum')

    def test_unknown_method(self):
        with self.assertRaises(ValueError):
            multiview_ideal(load_fixture('pair.json'), 'resultant')
        self.assertEqual(METHODS, ('elimination', 'focal_sum'))

    def test_ma_ideal_inside_multiview(self):
        arrangement = load_fixture('raw_pair.json')
        ideal = multiview_ideal(arrangement)
        self.assertTrue(ideal.contains(ma_ideal(arrangement, ideal.context)))


class TestRankTest(unittest.TestCase):

    def setUp(self):
        self.pair = load_fixture('pair.json')

    def test_member(self):
        result = rank_test_point(self.pair, [(1, 2, 3), (2, 2, 3)])
        self.assertTrue(result.member)
        self.assertEqual(result.rank, 5)
        self.assertEqual(result.full_rank, 6)
        self.assertEqual(result.kernel, [1, 2, 3, 1, -1, -1])

    def test_non_member(self):
        result = rank_test_point(self.pair, [(1, 2, 3), (2, 2, 4)])
        self.assertFalse(result.member)
        self.assertEqual(result.rank, 6)
        self.assertIsNone(result.kernel)

    def test_agrees_with_ideal(self):
        ideal = multiview_ideal(self.pair)
        for points in ([(1, 2, 3), (2, 2, 3)], [(1, 2, 3), (2, 2, 4)],
                       [(0, 1, 1), (5, 1, 1)], [(1, 0, 0), (1, 0, 0)]):
            vanishes = not any(g.evaluate_at(points)
                               for g in ideal.generators)
            self.assertEqual(rank_test_point(self.pair, points).member,
                             vanishes, points)

    def test_bad_points(self):
        with self.assertRaises(ShapeError):
            rank_test_point(self.pair, [(1, 2, 3)])
        with self.assertRaises(ShapeError):
            rank_test_point(self.pair, [(1, 2), (1, 2, 3)])
        with self.assertRaises(CameraError):
            rank_test_point(self.pair, [(0, 0, 0), (1, 2, 3)])


class TestLimitPoints(unittest.TestCase):

    def test_pair(self):
        arrangement = load_fixture('pair.json')
        ideal = k_focal_ideal(arrangement, 2)
        report = limit_point_check(arrangement, 1, (1, 2, 3), ideal)
        self.assertTrue(report.holds)
        self.assertEqual(report.nonvanishing, [])
        self.assertEqual(report.camera, 1)
        self.assertEqual(format_points(report.points),
                         [[1, 2, 3], [1, 0, 0]])

    def test_three_views(self):
        arrangement = load_fixture('three_views.json')
        ideal = k_focal_ideal(arrangement, 2) + k_focal_ideal(arrangement, 3)
        for camera in (1, 2, 3):
            report = limit_point_check(arrangement, camera, (2, -1, 5), ideal)
            self.assertTrue(report.holds, report.nonvanishing)

    def test_coincident_foci(self):
        arrangement = load_fixture('pair_coincident.json')
        with self.assertRaises(CameraError):
            limit_point_check(arrangement, 1, (1, 2, 3),
                              k_focal_ideal(load_fixture('pair.json'), 2))


class TestCoplanarWitness(unittest.TestCase):

    def test_witness(self):
        arrangement = load_fixture('coplanar_four.json')
        witness = witness_coplanar(arrangement)
        self.assertEqual(len(witness), 4)
        coords = [list(p) for p in witness]
        bifocals = k_focal_ideal(arrangement, 2)
        for g in bifocals.generators:
            self.assertEqual(g.evaluate_at(coords), 0)
        self.assertFalse(rank_test_point(arrangement, coords).member)

    def test_witness_points_lie_on_plane_images(self):
        arrangement = load_fixture('coplanar_four.json')
        plane = arrangement.plane_through_foci()
        for camera, point in zip(arrangement, witness_coplanar(arrangement)):
            line = image_line(camera, plane)
            self.assertEqual(sum(a * b for a, b in zip(line, point)), 0)

    def test_preconditions(self):
        for name in ('pair.json', 'noncoplanar_four.json',
                     'coincident_four.json'):
            with self.assertRaises(PreconditionError):
                witness_coplanar(load_fixture(name))


class TestReports(unittest.TestCase):

    def test_statement(self):
        statement = Statement('H2 = M', 1)
        self.assertIs(statement.holds, True)
        self.assertEqual(statement.to_dict(), {'name': 'H2 = M',
                                               'holds': True})
        self.assertEqual(Statement('x', False, 'why').to_dict()['detail'],
                         'why')

    def test_status(self):
        confirmed = VerificationReport('thm_3_6', 'title', holds=True,
                                       expected=True)
        self.assertTrue(confirmed.confirmed)
        self.assertEqual(confirmed.status, 'confirmed')
        unexpected = VerificationReport('thm_3_6', 'title', holds=False,
                                        expected=True)
        self.assertEqual(unexpected.status, 'unexpected')
        unchecked = VerificationReport('thm_3_6', 'title', holds=False)
        self.assertEqual(unchecked.status, 'confirmed')
        skipped = VerificationReport('cor_3_3', 'title', applicable=False,
                                     reason='needs three cameras')
        self.assertFalse(skipped.confirmed)
        self.assertEqual(skipped.status, 'not-applicable')

    def test_to_dict(self):
        report = VerificationReport('thm_3_6', 'title', holds=True,
                                    expected=True,
                                    statements=[Statement('a', True)],
                                    timings={'groebner': 0.12345678})
        document = report.to_dict()
        self.assertNotIn('timings', document)
        self.assertNotIn('reason', document)
        self.assertEqual(document['statements'], [{'name': 'a',
                                                   'holds': True}])
        self.assertEqual(report.to_dict(timings=True)['timings'],
                         {'groebner': 0.123457})


if __name__ == '__main__':
    unittest.main()
