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
"""Generation of the multiview ideal by low order focals

Verifications:

    thm_3_6   M_A = H^2 + H^3 (and the Euclidean case)
    cor_3_3   H^4 ⊆ H^3, also on seeded random arrangements with finite foci
    cor_3_8   limit points along the epipoles lie on V(M_A)
    lem_3_5   minor-genericity forces distinct foci; distinct foci can be
              made minor-generic by image changes
"""

import logging
from fractions import Fraction

from mvideal.cameras import (
    finite_foci_transform,
    minor_generic_search,
    random_arrangement
)
from mvideal.focalideals import k_focal_ideal
from mvideal.multiview import format_points, limit_point_check
from mvideal.polycore import format_rational, get_context
from mvideal.theorems.abstract import BaseVerification


_LOGGER = logging.getLogger(__name__)

FREE_POINTS = 3
RANDOM_ARRANGEMENTS = 3


def _free_point(rng, box):
    while True:
        point = [Fraction(rng.randint(-box, box)) for _ in range(3)]
        if any(point):
            return point


class Generation(BaseVerification):

    THEOREMS = {
        'thm_3_6': ('bifocals_and_trifocals', 'M_A = H^2 + H^3'),
        'cor_3_3': ('quadrifocals_in_trifocals', 'H^4 is contained in H^3'),
        'cor_3_8': ('limit_points', 'epipole limit points lie on V(M_A)'),
        'lem_3_5': ('minor_generic', 'minor-genericity and distinct foci'),
    }

    def bifocals_and_trifocals(self, report):
        """Compares M_A by elimination with the bifocal + trifocal ideal

        H^2 + H^3 ⊆ M_A always; equality is predicted for distinct foci.
        """
        with self.step(report, 'multiview'):
            multiview = self.record(
                report, 'M', self.session.multiview('elimination'))
        with self.step(report, 'focal_sum'):
            summed = self.record(report, 'H2+H3', self.session.focal_sum())
        self.check_contains(report, 'H2+H3 in M', multiview, summed)
        report.holds = self.check_equal(report, 'M = H2+H3',
                                        summed, multiview)
        report.expected = self.predicates.distinct_foci
        if self.arrangement.euclidean():
            self.statement(report, 'euclidean cameras', report.holds,
                           {'distinct_foci': self.predicates.distinct_foci})

    def quadrifocals_in_trifocals(self, report):
        """Checks H^4 ⊆ H^3 on the arrangement and on random finite ones

        Every random trial draws four integer cameras and moves them by a
        world change G with finite foci; G is reported with the trial.
        """
        self.require_cameras(4, 'cor_3_3')
        with self.step(report, 'focal'):
            trifocal = self.record(report, 'H3', self.session.focal_ideal(3))
            quadrifocal = self.session.focal_ideal(4)
        holds = self.check_contains(report, 'H4 in H3', trifocal, quadrifocal)
        rng = self.session.rng(report.theorem)
        box = self.session.random_box
        context = get_context(4)
        searched = True
        for trial in range(1, RANDOM_ARRANGEMENTS + 1):
            arrangement = random_arrangement(rng, 4, box)
            g = finite_foci_transform(arrangement, rng,
                                      self.session.retries, box)
            name = 'random arrangement %d' % trial
            if g is None:
                self.statement(report, name, False,
                               {'retries': self.session.retries})
                report.witnesses.append('%s: no finite-foci transform' % name)
                searched = False
                continue
            moved = arrangement.world_transform(g)
            with self.step(report, 'random focal'):
                random_trifocal = k_focal_ideal(moved, 3, context)
                random_quadrifocal = k_focal_ideal(moved, 4, context)
                missing = random_trifocal.non_members(random_quadrifocal)
            _LOGGER.debug('cor_3_3 %s: %d quadrifocals outside H3', name,
                          len(missing))
            report.witnesses.extend(m.primitive().to_text() for m in missing)
            holds = self.statement(
                report, name, not missing,
                {'G': [[format_rational(v) for v in row] for row in g],
                 'cameras': [[[format_rational(v) for v in row]
                              for row in camera.matrix]
                             for camera in moved.cameras],
                 'missing': len(missing)}) and holds
        report.holds = holds
        report.expected = True if searched else None

    def limit_points(self, report):
        self.require_distinct('cor_3_8')
        rng = self.session.rng(report.theorem)
        multiview = self.record(report, 'M', self.session.multiview())
        holds = True
        for camera in range(1, self.n + 1):
            for _ in range(FREE_POINTS):
                point = _free_point(rng, self.session.random_box)
                check = limit_point_check(self.arrangement, camera, point,
                                          multiview)
                name = 'camera %d at %s' % (
                    camera, format_points([check.points[camera - 1]])[0])
                self.statement(report, name, check.holds)
                if not check.holds:
                    holds = False
                    report.witnesses.append(format_points(check.points))
                    report.witnesses.extend(
                        g.primitive().to_text() for g in check.nonvanishing)
        report.holds = holds
        report.expected = True

    def minor_generic(self, report):
        predicates = self.predicates
        implication = not predicates.minor_generic or predicates.distinct_foci
        self.statement(report, 'minor-generic implies distinct foci',
                       implication)
        report.holds = implication
        report.expected = True
        if not implication:
            report.witnesses.append('foci %s' % format_points(
                self.arrangement.foci))
        if predicates.minor_generic:
            self.statement(report, 'already minor-generic', True)
            return
        rng = self.session.rng(report.theorem)
        with self.step(report, 'search'):
            found = minor_generic_search(self.arrangement, rng,
                                         self.session.retries,
                                         self.session.random_box)
        if predicates.distinct_foci:
            detail = {'retries': self.session.retries}
            if found is not None:
                detail['transform'] = [[[str(v) for v in row] for row in m]
                                       for m in found[1].matrices]
            self.statement(report, 'image change makes it minor-generic',
                           found is not None, detail)
            if found is None:
                _LOGGER.info('minor-generic search failed; no claim made')
                report.holds = False
                report.expected = None
                report.witnesses.append(
                    'no transform in %d attempts' % self.session.retries)
        else:
            self.statement(report, 'coincident foci stay non-generic',
                           found is None)
            report.holds = implication and found is None


def instance(session):
    """Returns an instance of Generation

    Args:
        session (VerificationSession): The session the verifications run
            against
    """
    return Generation(session)
