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
"""Provides an abstract implementation for building verification modules

This module provides the base class that verification modules derive from.
Verification modules are loaded automatically by
VerificationSession.theorems_autoload; every module exposes an
``instance(session)`` factory returning an object derived from
BaseVerification.

A verification module declares the ids it handles in the THEOREMS mapping,
id -> (method name, title).  Every method receives a fresh
VerificationReport, fills in holds, expected, statements and witnesses, and
returns nothing.  A method that cannot build one of its objects raises
PreconditionError (or CameraError for degenerate geometry); run turns that
into a report that is not applicable.
"""

import time
import logging
import contextlib

from mvideal.errors import CameraError, PreconditionError
from mvideal.multiview import Statement, VerificationReport
from mvideal.utils import check_cancelled


_LOGGER = logging.getLogger(__name__)


class BaseVerification(object):
    """Base class for all verification modules

    This class should not be directly instantiated.

    Attributes:
        session (VerificationSession): The session the verifications run
            against; it owns the arrangement and the shared ideal cache
        THEOREMS (dict): Verification id -> (method name, title)

    Args:
        session (VerificationSession): An instance of VerificationSession
    """

    THEOREMS = {}

    def __init__(self, session):
        self.session = session

    def __repr__(self):
        return '%s(%s)' % (type(self).__name__,
                           ', '.join(sorted(self.THEOREMS)))

    @property
    def arrangement(self):
        return self.session.arrangement

    @property
    def context(self):
        return self.session.context

    @property
    def n(self):
        return self.session.arrangement.n

    @property
    def predicates(self):
        return self.session.predicates

    def expect_if_distinct(self, value=True):
        """The expected outcome of a claim that needs distinct foci"""
        return value if self.predicates.distinct_foci else None

    def require_cameras(self, count, operation):
        if self.n < count:
            raise PreconditionError('needs at least %d cameras, got %d' %
                                    (count, self.n), operation)

    def require_distinct(self, operation):
        if not self.predicates.distinct_foci:
            raise PreconditionError('foci must be pairwise distinct',
                                    operation)

    def run(self, theorem_id):
        """Runs one verification and returns its VerificationReport"""
        method, title = self.THEOREMS[theorem_id]
        report = VerificationReport(theorem_id, title,
                                    hypotheses=self.session.hypotheses())
        started = time.perf_counter()
        try:
            getattr(self, method)(report)
        except (PreconditionError, CameraError) as exc:
            report.applicable = False
            report.holds = None
            report.expected = None
            report.reason = exc.message
            _LOGGER.info('%s not applicable: %s', theorem_id, exc.message)
        report.timings['total'] = time.perf_counter() - started
        _LOGGER.debug('%s finished: %s', theorem_id, report.status)
        return report

    def timed_out(self, theorem_id, timeout):
        _, title = self.THEOREMS[theorem_id]
        return VerificationReport(
            theorem_id, title, applicable=False,
            hypotheses=self.session.hypotheses(),
            reason='timed out after %s seconds' % timeout)

    @contextlib.contextmanager
    def step(self, report, name):
        """Records the time spent in a block under report.timings[name]

        Entering a step raises VerificationCancelled once the session has
        stopped this verification.
        """
        check_cancelled()
        started = time.perf_counter()
        try:
            yield
        finally:
            report.timings[name] = report.timings.get(name, 0.0) + \
                time.perf_counter() - started

    def record(self, report, name, ideal):
        """Stores the reduced Gröbner basis size of an ideal"""
        with self.step(report, 'gb:%s' % name):
            report.gb_sizes[name] = len(ideal.groebner())
        return ideal

    def statement(self, report, name, holds, detail=None):
        report.statements.append(Statement(name, holds, detail))
        return bool(holds)

    def check_equal(self, report, name, left, right):
        """Adds a statement comparing two ideals and collects witnesses

        Generators of either side outside the other side are appended to
        the report witnesses as canonical text.
        """
        with self.step(report, name):
            missing_left = left.non_members(right)
            missing_right = right.non_members(left)
        holds = not missing_left and not missing_right
        detail = None
        if not holds:
            detail = {'left_missing': len(missing_left),
                      'right_missing': len(missing_right)}
            report.witnesses.extend(g.primitive().to_text()
                                    for g in missing_left + missing_right)
        return self.statement(report, name, holds, detail)

    def check_contains(self, report, name, larger, smaller):
        """Adds a statement for smaller ⊆ larger"""
        with self.step(report, name):
            missing = larger.non_members(smaller)
        if missing:
            report.witnesses.extend(g.primitive().to_text() for g in missing)
        return self.statement(report, name, not missing,
                              {'missing': len(missing)} if missing else None)
