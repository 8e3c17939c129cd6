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
"""Finite images: the dehomogenized ideals

pi sets every z_i to 1.  Verifications:

    cor_6_1   pi(M_A) = pi(H^2) + pi(H^3)
    cor_6_3   pi(M_A) = pi(H^n) = pi(F_A), and pi(M_A) agrees with the
              radical of pi(Y_A) on generators when A_1 = [I|0]
    cor_6_4   pi(M_A) = pi(H^2) (two cameras, or noncoplanar foci)
    lem_6_2   pi(I : J) = pi(I) : pi(J) for random bihomogeneous ideals
"""

import logging
import itertools
from fractions import Fraction

from mvideal.idealengine import Ideal
from mvideal.polycore import get_context
from mvideal.theorems.abstract import BaseVerification


_LOGGER = logging.getLogger(__name__)

TRIALS = 3


def _forms(context, camera, degree):
    """Monomials of the given degree in the variables of one camera"""
    block = [context.var('%s%d' % (letter, camera))
             for letter in context.letters]
    for choice in itertools.combinations_with_replacement(block, degree):
        product = context.one()
        for factor in choice:
            product = product * factor
        yield product


def random_form(rng, context, degrees, box):
    """A random polynomial of the given multidegree with integer coefficients

    Args:
        degrees (tuple): One block degree per camera
    """
    blocks = [list(_forms(context, camera, degree))
              for camera, degree in enumerate(degrees, start=1)]
    while True:
        poly = context.zero()
        for factors in itertools.product(*blocks):
            coeff = rng.randint(-box, box)
            if not coeff:
                continue
            term = context.constant(Fraction(coeff))
            for factor in factors:
                term = term * factor
            poly = poly + term
        if not poly.is_zero():
            return poly


class Finite(BaseVerification):

    THEOREMS = {
        'cor_6_1': ('affine_generation', 'pi(M_A) = pi(H^2) + pi(H^3)'),
        'cor_6_3': ('affine_determinantal',
                    'pi(M_A) = pi(H^n) = pi(F_A) = pi(sqrt(Y_A))'),
        'cor_6_4': ('affine_bifocals', 'pi(M_A) = pi(H^2)'),
        'lem_6_2': ('affine_colon', 'pi(I : J) = pi(I) : pi(J)'),
    }

    def _affine(self, report, name, ideal):
        with self.step(report, 'dehomogenize'):
            return self.record(report, 'pi(%s)' % name,
                               self.session.dehomogenized(name, ideal))

    def _affine_multiview(self, report):
        with self.step(report, 'multiview'):
            multiview = self.session.multiview()
        return self._affine(report, 'M', multiview)

    def affine_generation(self, report):
        multiview = self._affine_multiview(report)
        summed = self._affine(report, 'H2+H3', self.session.focal_sum())
        report.holds = self.check_equal(report, 'pi(M) = pi(H2)+pi(H3)',
                                        multiview, summed)
        report.expected = self.expect_if_distinct()

    def affine_determinantal(self, report):
        multiview = self._affine_multiview(report)
        nfocal = self._affine(report, 'Hn',
                              self.session.focal_ideal(self.n))
        faugeras = self._affine(report, 'F', self.session.faugeras.full)
        holds = self.check_equal(report, 'pi(M) = pi(Hn)', multiview, nfocal)
        holds = self.check_equal(report, 'pi(M) = pi(F)',
                                 multiview, faugeras) and holds
        if self.arrangement.first_is_normalized():
            ma = self._affine(report, 'Y', self.session.ma)
            holds = self.check_contains(report, 'pi(Y) in pi(M)',
                                        multiview, ma) and holds
            outside = list()
            with self.step(report, 'radical'):
                for g in multiview.generators:
                    if not ma.radical_member(g):
                        outside.append(g)
            report.witnesses.extend(g.primitive().to_text() for g in outside)
            holds = self.statement(report, 'pi(M) in sqrt(pi(Y))',
                                   not outside) and holds
        report.holds = holds
        report.expected = self.expect_if_distinct()

    def affine_bifocals(self, report):
        multiview = self._affine_multiview(report)
        bifocal = self._affine(report, 'H2', self.session.focal_ideal(2))
        report.holds = self.check_equal(report, 'pi(M) = pi(H2)',
                                        multiview, bifocal)
        if self.n == 2:
            report.expected = self.expect_if_distinct()
        elif self.n == 3:
            report.expected = None
        else:
            report.expected = self.expect_if_distinct(
                not self.predicates.coplanar)

    def affine_colon(self, report):
        """Checks that dehomogenization commutes with colons

        The ideals live in the ring of two cameras and do not depend on the
        arrangement.  Each trial takes I = <f*l, g> and J = <l> or <l, m>
        with l of multidegree (1,0), f and m of multidegree (0,1) and g of
        multidegree (1,1), so that I : J is a proper enlargement of I.
        """
        rng = self.session.rng(report.theorem)
        box = self.session.random_box
        context = get_context(2)
        holds = True
        for trial in range(TRIALS):
            line = random_form(rng, context, (1, 0), box)
            first = random_form(rng, context, (0, 1), box)
            second = random_form(rng, context, (1, 1), box)
            ideal = Ideal(context, [first * line, second])
            divisors = [line]
            if trial % 2:
                divisors.append(random_form(rng, context, (0, 1), box))
            colon_by = Ideal(context, divisors)
            with self.step(report, 'colon'):
                lhs = ideal.colon(colon_by).dehomogenize()
                rhs = ideal.dehomogenize().colon(colon_by.dehomogenize())
            holds = self.check_equal(report, 'trial %d' % (trial + 1),
                                     lhs, rhs) and holds
            _LOGGER.debug('lem_6_2 trial %d: I = %s, J = %s', trial + 1,
                          ideal, colon_by)
        report.holds = holds
        report.expected = True


def instance(session):
    """Returns an instance of Finite

    Args:
        session (VerificationSession): The session the verifications run
            against
    """
    return Finite(session)
