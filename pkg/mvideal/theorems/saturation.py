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
"""Determinantal ideals and their saturation by the irrelevant ideal

Verifications:

    lem_4_8   H^n = M_A ∩ m
    thm_4_9   H^n : m = M_A
    thm_4_11  F_A : m = M_A
    thm_4_7c  Y_A ⊆ M_A and g*u lies in the radical of Y_A for every
              generator g of M_A and u of m (first camera [I|0])
    lem_4_1   A(p), A^F(p) and A^Y(p) drop rank on the same image tuples
"""

import logging
from fractions import Fraction

from mvideal.cameras import matrix_rank, random_world_point
from mvideal.errors import CameraError
from mvideal.focalideals import JointMatrix, faugeras_matrix, ma_matrix
from mvideal.multiview import format_points
from mvideal.theorems.abstract import BaseVerification


_LOGGER = logging.getLogger(__name__)

SAMPLES = 12


class Saturation(BaseVerification):

    THEOREMS = {
        'lem_4_8': ('nfocal_meet', 'H^n = M_A ∩ m'),
        'thm_4_9': ('nfocal_colon', 'H^n : m = M_A'),
        'thm_4_11': ('faugeras_colon', 'F_A : m = M_A'),
        'thm_4_7c': ('ma_radical', 'sqrt(Y_A) : m = M_A on generators'),
        'lem_4_1': ('rank_agreement',
                    'A(p), A^F(p) and A^Y(p) drop rank together'),
    }

    def _nfocal(self, report):
        with self.step(report, 'focal'):
            return self.record(report, 'Hn',
                               self.session.focal_ideal(self.n))

    def _multiview(self, report):
        with self.step(report, 'multiview'):
            return self.record(report, 'M', self.session.multiview())

    def nfocal_meet(self, report):
        nfocal = self._nfocal(report)
        multiview = self._multiview(report)
        with self.step(report, 'intersect'):
            meet = self.record(report, 'M∩m',
                               multiview.intersect(self.session.irrelevant))
        report.holds = self.check_equal(report, 'Hn = M∩m', nfocal, meet)
        report.expected = self.expect_if_distinct()

    def nfocal_colon(self, report):
        nfocal = self._nfocal(report)
        multiview = self._multiview(report)
        with self.step(report, 'colon'):
            colon = self.record(report, 'Hn:m', self.session.saturated(
                'focal:%d' % self.n, nfocal))
        report.holds = self.check_equal(report, 'Hn:m = M', colon, multiview)
        report.expected = self.expect_if_distinct()

    def faugeras_colon(self, report):
        with self.step(report, 'faugeras'):
            faugeras = self.record(report, 'F', self.session.faugeras.full)
        multiview = self._multiview(report)
        with self.step(report, 'colon'):
            colon = self.record(report, 'F:m',
                                self.session.saturated('faugeras', faugeras))
        report.holds = self.check_equal(report, 'F:m = M', colon, multiview)
        report.expected = self.expect_if_distinct()

    def ma_radical(self, report):
        with self.step(report, 'ma'):
            ma = self.record(report, 'Y', self.session.ma)
        multiview = self._multiview(report)
        contained = self.check_contains(report, 'Y in M', multiview, ma)
        self.statement(report, 'Y = M', ma.equal(multiview))
        failures = list()
        checked = 0
        with self.step(report, 'radical'):
            for g in multiview.generators:
                for u in self.session.irrelevant.generators:
                    checked += 1
                    if not ma.radical_member(g * u):
                        failures.append(g * u)
        _LOGGER.debug('%d radical membership tests, %d failed', checked,
                      len(failures))
        self.statement(report, 'g*u in sqrt(Y)', not failures,
                       {'checked': checked, 'failed': len(failures)})
        report.witnesses.extend(f.primitive().to_text() for f in failures)
        report.holds = contained and not failures
        report.expected = self.expect_if_distinct()

    def _tuples(self, rng):
        """Seeded consistent image tuples followed by random ones"""
        box = self.session.random_box
        consistent = list()
        while len(consistent) < SAMPLES:
            try:
                consistent.append(self.arrangement.project(
                    random_world_point(rng, box)))
            except CameraError:
                continue
        random_tuples = list()
        while len(random_tuples) < SAMPLES:
            candidate = [[Fraction(rng.randint(-box, box)) for _ in range(3)]
                         for _ in range(self.n)]
            if all(any(p) for p in candidate):
                random_tuples.append(candidate)
        return [[list(p) for p in t] for t in consistent], random_tuples

    def rank_agreement(self, report):
        rng = self.session.rng(report.theorem)
        consistent, random_tuples = self._tuples(rng)
        joint = JointMatrix(self.arrangement, context=self.context)
        faugeras = faugeras_matrix(self.arrangement, self.context)
        ma = None
        if self.arrangement.first_is_normalized():
            ma = ma_matrix(self.arrangement, self.context)
        multiview = None
        if self.predicates.distinct_foci:
            multiview = self._multiview(report)

        def drops(points):
            result = [matrix_rank(joint.evaluate_at(points)) < 4 + self.n,
                      matrix_rank(faugeras.evaluate_at(points)) < 4]
            if ma is not None:
                result.append(matrix_rank(ma.evaluate_at(points)) < 2)
            return result

        consistent_drop = True
        agree = True
        vanishing = True
        with self.step(report, 'ranks'):
            tagged = [(True, p) for p in consistent] + \
                [(False, p) for p in random_tuples]
            for is_consistent, points in tagged:
                flags = drops(points)
                if is_consistent and not all(flags):
                    consistent_drop = False
                    report.witnesses.append(format_points(points))
                if len(set(flags)) != 1:
                    agree = False
                    report.witnesses.append(format_points(points))
                if multiview is not None:
                    zero = not any(g.evaluate_at(points)
                                   for g in multiview.generators)
                    if zero != flags[0]:
                        vanishing = False
                        report.witnesses.append(format_points(points))
        self.statement(report, 'consistent tuples drop rank', consistent_drop,
                       {'samples': len(consistent)})
        self.statement(report, 'rank drops agree', agree,
                       {'samples': len(consistent) + len(random_tuples),
                        'ma': ma is not None})
        if multiview is not None:
            self.statement(report, 'M vanishes exactly on rank drops',
                           vanishing)
        report.holds = consistent_drop and agree and vanishing
        report.expected = True


def instance(session):
    """Returns an instance of Saturation

    Args:
        session (VerificationSession): The session the verifications run
            against
    """
    return Saturation(session)
