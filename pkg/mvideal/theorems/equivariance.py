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
"""Coordinate changes in the world and in the images

Verifications:

    lem_2_3   every k-focal of A G equals det(G) times the k-focal of A
    lem_2_5   the image change p_i -> G_i^{-1} p_i carries H^k_A to H^k_GA
    lem_3_1   the same image change carries M_A to M_GA
"""

import logging

from mvideal.cameras import random_invertible
from mvideal.focalideals import FocalIdealSet, k_focal_ideal
from mvideal.multiview import multiview_ideal
from mvideal.polycore import bareiss_determinant, format_rational
from mvideal.theorems.abstract import BaseVerification


_LOGGER = logging.getLogger(__name__)

TRANSFORMS = 3


def _matrix_text(matrix):
    return [[format_rational(v) for v in row] for row in matrix]


class Equivariance(BaseVerification):

    THEOREMS = {
        'lem_2_3': ('world_change', 'focals of A G are det(G) times focals'),
        'lem_2_5': ('image_change_focal', 'chi(H^k_A) = H^k_GA'),
        'lem_3_1': ('image_change_multiview', 'chi(M_A) = M_GA'),
    }

    def _image_changes(self, report):
        rng = self.session.rng(report.theorem)
        for _ in range(TRANSFORMS):
            matrices = [random_invertible(rng, 3, self.session.random_box)
                        for _ in range(self.n)]
            yield self.arrangement.image_transform(matrices)

    def world_change(self, report):
        rng = self.session.rng(report.theorem)
        holds = True
        for trial in range(TRANSFORMS):
            g = random_invertible(rng, 4, self.session.random_box)
            scale = bareiss_determinant(g)
            moved = self.arrangement.world_transform(g)
            moved_focal = FocalIdealSet(moved, self.context)
            mismatches = 0
            with self.step(report, 'focals'):
                for k in range(2, self.n + 1):
                    pairs = zip(self.session.focal.minors(k),
                                moved_focal.minors(k))
                    for original, changed in pairs:
                        expected = original.polynomial.scale(scale)
                        if changed.polynomial != expected:
                            mismatches += 1
                            report.witnesses.append(
                                changed.polynomial.primitive().to_text())
            holds = self.statement(
                report, 'transform %d' % (trial + 1), not mismatches,
                {'det': format_rational(scale), 'G': _matrix_text(g),
                 'mismatches': mismatches}) and holds
        report.holds = holds
        report.expected = True

    def image_change_focal(self, report):
        holds = True
        ks = [k for k in (2, 3) if k <= self.n]
        for trial, (moved, change) in enumerate(self._image_changes(report),
                                                start=1):
            for k in ks:
                with self.step(report, 'focal'):
                    original = self.session.focal_ideal(k)
                    target = k_focal_ideal(moved, k, self.context)
                    mapped = change.apply_ideal(original)
                holds = self.check_equal(
                    report, 'transform %d, k=%d' % (trial, k),
                    mapped, target) and holds
        report.holds = holds
        report.expected = True

    def image_change_multiview(self, report):
        holds = True
        with self.step(report, 'multiview'):
            original = self.record(report, 'M', self.session.multiview())
        for trial, (moved, change) in enumerate(self._image_changes(report),
                                                start=1):
            with self.step(report, 'multiview'):
                target = multiview_ideal(moved, self.session.method,
                                         self.context)
                mapped = change.apply_ideal(original)
            holds = self.check_equal(report, 'transform %d' % trial,
                                     mapped, target) and holds
            _LOGGER.debug('lem_3_1 transform %d done', trial)
        report.holds = holds
        report.expected = True


def instance(session):
    """Returns an instance of Equivariance

    Args:
        session (VerificationSession): The session the verifications run
            against
    """
    return Equivariance(session)
