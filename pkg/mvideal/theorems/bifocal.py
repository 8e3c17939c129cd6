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
"""When the bifocals alone suffice

Verification thm_5_6 checks, for at least four cameras, that the three
conditions

    (a) the foci are not coplanar
    (b) H^n ⊆ H^2
    (c) H^2 : m = M_A

are equivalent.  On coplanar arrangements a witness tuple in V(H^2)
outside V(M_A) is constructed and attached to the report.
"""

import logging

from mvideal.errors import CameraError
from mvideal.multiview import format_points, witness_coplanar
from mvideal.theorems.abstract import BaseVerification


_LOGGER = logging.getLogger(__name__)


class Bifocal(BaseVerification):

    THEOREMS = {
        'thm_5_6': ('bifocals_suffice',
                    'noncoplanar <=> H^n in H^2 <=> H^2 : m = M_A'),
    }

    def bifocals_suffice(self, report):
        self.require_cameras(4, 'thm_5_6')
        session = self.session
        with self.step(report, 'focal'):
            bifocal = self.record(report, 'H2', session.focal_ideal(2))
            nfocal = session.focal_ideal(self.n)
        with self.step(report, 'multiview'):
            multiview = self.record(report, 'M', session.multiview())
        noncoplanar = not self.predicates.coplanar
        self.statement(report, '(a) noncoplanar foci', noncoplanar)
        contained = self.check_contains(report, '(b) Hn in H2',
                                        bifocal, nfocal)
        with self.step(report, 'colon'):
            colon = self.record(report, 'H2:m',
                                session.saturated('focal:2', bifocal))
        saturated = self.check_equal(report, '(c) H2:m = M', colon, multiview)
        report.holds = noncoplanar == contained == saturated
        report.expected = self.expect_if_distinct()
        if self.predicates.coplanar and self.predicates.distinct_foci:
            self._attach_witness(report, bifocal, multiview)

    def _attach_witness(self, report, bifocal, multiview):
        try:
            with self.step(report, 'witness'):
                points = witness_coplanar(self.arrangement)
        except CameraError as exc:
            self.statement(report, 'witness in V(H2) outside V(M)', False,
                           {'error': exc.message})
            return
        coords = [list(p) for p in points]
        on_bifocals = not any(g.evaluate_at(coords)
                              for g in bifocal.generators)
        off_multiview = [g for g in multiview.generators
                         if g.evaluate_at(coords)]
        self.statement(report, 'witness in V(H2) outside V(M)',
                       on_bifocals and bool(off_multiview),
                       {'points': format_points(points),
                        'nonvanishing': [g.primitive().to_text()
                                         for g in off_multiview]})
        report.witnesses.append(format_points(points))
        _LOGGER.debug('coplanar witness %s', format_points(points))


def instance(session):
    """Returns an instance of Bifocal

    Args:
        session (VerificationSession): The session the verifications run
            against
    """
    return Bifocal(session)
