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
"""Verification sessions

A VerificationSession binds one arrangement to the ideals the
verifications compare.  Ideals are computed lazily the first time a
verification asks for them and are shared by every verification of the
session, so running the whole suite computes M_A, H^k, F and Y once.

Verifications live in the modules of the ``mvideal.theorems`` package and
are autoloaded; each module provides an ``instance(session)`` factory.
Running several verifications schedules them as coroutines whose CPU work
runs in worker threads, bounded by the configured worker count; reports
are returned in theorem id order regardless of completion order.
"""

import random
import logging
import threading

from mvideal import config as mvconfig
from mvideal.errors import MvIdealError, PreconditionError
from mvideal.focalideals import FaugerasIdeals, FocalIdealSet, ma_ideal
from mvideal.idealengine import irrelevant_ideal
from mvideal.multiview import multiview_ideal
from mvideal.polycore import get_context
from mvideal.utils import run_coroutines_with_limit, run_in_worker


_LOGGER = logging.getLogger(__name__)


class VerificationSession(object):
    """Represents one arrangement under verification

    Attributes:
        arrangement (Arrangement): The cameras
        context (VariableContext): Shared variable context
        seed (int): Seed for every randomized verification
        method (str): How M_A is computed ('elimination' or 'focal_sum')
        workers (int): Maximum number of concurrently running checks
        theorems (dict): Verification id -> loaded verification module
            instance, filled by theorems_autoload

    Args:
        arrangement (Arrangement): The cameras
        **kwargs: seed, method, workers, retries, random_box and timeout
            override the configuration defaults
    """

    def __init__(self, arrangement, **kwargs):
        settings = mvconfig.config
        self.arrangement = arrangement
        self.context = get_context(arrangement.n)
        self.seed = kwargs.get('seed', settings.seed)
        self.method = kwargs.get('method', settings.method)
        self.workers = kwargs.get('workers', settings.workers)
        self.retries = kwargs.get('retries', settings.retries)
        self.random_box = kwargs.get('random_box', settings.random_box)
        self.timeout = kwargs.get('timeout')
        self.settings = kwargs
        self.focal = FocalIdealSet(arrangement, self.context)
        self._cache = dict()
        self._locks = dict()
        self._guard = threading.Lock()
        self._theorems = dict()

    def __str__(self):
        return 'VerificationSession(%s)' % self.arrangement.fingerprint()

    def __repr__(self):
        return 'VerificationSession(arrangement=%r, seed=%r)' % (
            self.arrangement, self.seed)

    def _lazy(self, name, factory):
        with self._guard:
            if name in self._cache:
                return self._cache[name]
            lock = self._locks.setdefault(name, threading.Lock())
        with lock:
            if name not in self._cache:
                _LOGGER.debug('%s: computing %s', self, name)
                self._cache[name] = factory()
        return self._cache[name]

    def rng(self, theorem_id):
        """A random generator private to one verification"""
        return random.Random('%s:%s' % (self.seed, theorem_id))

    @property
    def predicates(self):
        return self.arrangement.predicates

    def hypotheses(self):
        """Arrangement predicates as a JSON friendly dict"""
        predicates = self.predicates._asdict()
        predicates['n'] = self.arrangement.n
        predicates['first_normalized'] = \
            self.arrangement.first_is_normalized()
        return predicates

    def multiview(self, method=None):
        """M_A computed with the session method (or the given one)"""
        method = method or self.method
        return self._lazy('multiview:%s' % method,
                          lambda: multiview_ideal(self.arrangement, method,
                                                  self.context))

    def focal_ideal(self, k):
        return self._lazy('focal:%d' % k, lambda: self.focal.ideal(k))

    def focal_sum(self, ks=(2, 3)):
        def build():
            total = self.focal_ideal(ks[0])
            for k in ks[1:]:
                total = total + self.focal_ideal(k)
            return total
        return self._lazy('focal_sum:%s' % ','.join(map(str, ks)), build)

    @property
    def faugeras(self):
        return self._lazy('faugeras',
                          lambda: FaugerasIdeals(self.arrangement,
                                                 self.context))

    @property
    def ma(self):
        """Y_A; raises PreconditionError unless A_1 = [I|0]"""
        if not self.arrangement.first_is_normalized():
            raise PreconditionError('first camera must be [I|0]', 'Y_A')
        return self._lazy('ma', lambda: ma_ideal(self.arrangement,
                                                 self.context))

    @property
    def irrelevant(self):
        return self._lazy('irrelevant',
                          lambda: irrelevant_ideal(self.context))

    def saturated(self, name, ideal):
        """The colon ideal I : m, cached under a name"""
        return self._lazy('colon:%s' % name,
                          lambda: ideal.colon(self.irrelevant))

    def dehomogenized(self, name, ideal):
        return self._lazy('dehom:%s' % name, ideal.dehomogenize)

    @property
    def theorems(self):
        return self._theorems

    def theorems_autoload(self):
        """Autoload verification modules

        This method loads every module of the 'mvideal.theorems' package
        except 'abstract' and registers each verification id the module
        instance declares.
        """
        import pkgutil
        import importlib
        import mvideal.theorems

        for _, name, _ in pkgutil.iter_modules(mvideal.theorems.__path__):
            if name == 'abstract':
                continue
            try:
                module = importlib.import_module('mvideal.theorems.%s' % name)
                handler = module.instance(self)
            except (ImportError, AttributeError) as exc:
                _LOGGER.warning('cannot load verification module %s: %s',
                                name, exc)
                continue
            for theorem_id in handler.THEOREMS:
                self._theorems[theorem_id] = handler
        return self._theorems

    def theorem_ids(self):
        if not self._theorems:
            self.theorems_autoload()
        return sorted(self._theorems)

    def handler(self, theorem_id):
        if not self._theorems:
            self.theorems_autoload()
        try:
            return self._theorems[theorem_id]
        except KeyError:
            raise MvIdealError('unknown verification %r; known: %s' %
                               (theorem_id, ', '.join(self.theorem_ids())))

    def run(self, theorem_id):
        """Runs one verification synchronously and returns its report"""
        return self.handler(theorem_id).run(theorem_id)

    async def verify(self, theorem_id):
        """Runs one verification in a worker thread

        Past the session timeout the worker is stopped at its next Gröbner
        pair or verification step and a timed out report is returned.
        """
        handler = self.handler(theorem_id)
        report, timed_out = await run_in_worker(handler.run, theorem_id,
                                                timeout=self.timeout)
        if timed_out:
            report = handler.timed_out(theorem_id, self.timeout)
        return report

    async def verify_all(self, theorem_ids=None):
        """Runs several verifications concurrently

        Args:
            theorem_ids (list): Ids to run, all known ids by default

        Returns:
            list: VerificationReports sorted by theorem id
        """
        ids = sorted(set(theorem_ids or self.theorem_ids()))
        for theorem_id in ids:
            self.handler(theorem_id)
        reports = await run_coroutines_with_limit(
            [self.verify(theorem_id) for theorem_id in ids], self.workers)
        return sorted(reports, key=lambda report: report.theorem)


def open_session(arrangement, **kwargs):
    """Creates a VerificationSession with its verifications loaded"""
    session = VerificationSession(arrangement, **kwargs)
    session.theorems_autoload()
    return session
