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
"""Polynomial ideals and Gröbner basis computations

The Ideal class keeps its generators in the order given and caches one
reduced Gröbner basis per monomial order.  All ideal operations of the
package are built on Buchberger's algorithm with the coprime and chain
criteria and sugar pair selection:

  * membership, containment and equality
  * intersection by eliminating ``t`` from ``t*I + (1 - t)*J``
  * colon ideals ``(I ∩ <g>) / g`` and saturation
  * elimination with block orders
  * radical membership via the Rabinowitsch variable ``r``
  * dehomogenization ``z_i -> 1`` and multihomogenization

The irrelevant ideal gets its own subclass so that colons by it run block
by block over the camera coordinates instead of over its 3^n generators.
"""

import time
import heapq
import logging
import threading
import itertools
from fractions import Fraction

from mvideal.errors import ContextMismatchError, IdealError
from mvideal.polycore import (
    DEGREVLEX,
    Polynomial,
    elimination_order,
    monomial_divides,
    monomial_lcm,
    monomial_multiply,
    monomial_quotient,
    monomials_coprime
)
from mvideal.utils import check_cancelled


_LOGGER = logging.getLogger(__name__)


class _Element(object):
    """A basis polynomial as seen by Buchberger: terms, lead and sugar"""

    __slots__ = ('terms', 'lead', 'sugar')

    def __init__(self, terms, order, sugar):
        lead = max(terms, key=order.key)
        inverse = 1 / terms[lead]
        self.terms = {m: c * inverse for m, c in terms.items()}
        self.lead = lead
        self.sugar = sugar


def _reduce(terms, basis, order):
    """Fully reduces terms modulo basis elements with monic leads

    Returns:
        dict: The remainder, no term of which a basis lead divides
    """
    key = order.key
    pending = dict(terms)
    remainder = dict()
    while pending:
        mono = max(pending, key=key)
        coeff = pending[mono]
        for element in basis:
            if monomial_divides(element.lead, mono):
                shift = monomial_quotient(mono, element.lead)
                for e_mono, e_coeff in element.terms.items():
                    target = monomial_multiply(e_mono, shift)
                    value = pending.get(target, 0) - coeff * e_coeff
                    if value:
                        pending[target] = value
                    else:
                        pending.pop(target, None)
                break
        else:
            remainder[mono] = coeff
            del pending[mono]
    return remainder


def _s_polynomial(a, b):
    lcm = monomial_lcm(a.lead, b.lead)
    shift_a = monomial_quotient(lcm, a.lead)
    shift_b = monomial_quotient(lcm, b.lead)
    terms = dict()
    for mono, coeff in a.terms.items():
        terms[monomial_multiply(mono, shift_a)] = coeff
    for mono, coeff in b.terms.items():
        target = monomial_multiply(mono, shift_b)
        value = terms.get(target, 0) - coeff
        if value:
            terms[target] = value
        else:
            terms.pop(target, None)
    sugar = max(a.sugar + sum(shift_a), b.sugar + sum(shift_b))
    return terms, sugar


def buchberger(polynomials, order=DEGREVLEX):
    """Computes the reduced Gröbner basis of the given polynomials

    Args:
        polynomials (list): Polynomials of one context
        order (MonomialOrder): The monomial order

    Returns:
        list: Monic basis polynomials sorted by descending leading
            monomial; ``[1]`` for the unit ideal and ``[]`` for zero
    """
    polynomials = [p for p in polynomials if not p.is_zero()]
    if not polynomials:
        return list()
    context = polynomials[0].context
    started = time.monotonic()
    key = order.key

    basis = list()
    for poly in polynomials:
        terms = dict(poly.terms)
        if poly.is_constant():
            return [context.one()]
        basis.append(_Element(terms, order, poly.total_degree()))
    pairs = set()
    queue = list()
    reductions = 0

    def add_pair(pair):
        a, b = basis[pair[0]], basis[pair[1]]
        lcm = monomial_lcm(a.lead, b.lead)
        sugar = max(a.sugar + sum(lcm) - sum(a.lead),
                    b.sugar + sum(lcm) - sum(b.lead))
        pairs.add(pair)
        heapq.heappush(queue, (sugar, key(lcm), pair))

    for pair in itertools.combinations(range(len(basis)), 2):
        add_pair(pair)

    while queue:
        check_cancelled()
        pair = heapq.heappop(queue)[2]
        pairs.discard(pair)
        i, j = pair
        a, b = basis[i], basis[j]
        if monomials_coprime(a.lead, b.lead):
            continue
        lcm = monomial_lcm(a.lead, b.lead)
        chained = False
        for k, other in enumerate(basis):
            if k in pair or not monomial_divides(other.lead, lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and \
                    (min(j, k), max(j, k)) not in pairs:
                chained = True
                break
        if chained:
            continue
        terms, sugar = _s_polynomial(a, b)
        remainder = _reduce(terms, basis, order)
        reductions += 1
        if not remainder:
            continue
        if all(not any(m) for m in remainder):
            _LOGGER.debug('unit ideal detected after %d reductions',
                          reductions)
            return [context.one()]
        element = _Element(remainder, order, sugar)
        basis.append(element)
        index = len(basis) - 1
        for k in range(index):
            add_pair((k, index))

    reduced = _interreduce(basis, order)
    _LOGGER.debug('groebner basis (%r): %d inputs, %d elements, %d '
                  'reductions, %.3fs', order, len(polynomials), len(reduced),
                  reductions, time.monotonic() - started)
    return [Polynomial._raw(context, element.terms) for element in reduced]


def _interreduce(basis, order):
    key = order.key
    basis = sorted(basis, key=lambda e: key(e.lead))
    minimal = list()
    for element in basis:
        if not any(monomial_divides(kept.lead, element.lead)
                   for kept in minimal):
            minimal.append(element)
    reduced = list()
    for index, element in enumerate(minimal):
        others = minimal[:index] + minimal[index + 1:]
        terms = _reduce(element.terms, others, order)
        reduced.append(_Element(terms, order, element.sugar))
    reduced.sort(key=lambda e: key(e.lead), reverse=True)
    return reduced


def _gcd_free_key(poly):
    return poly.primitive().to_text()


class Ideal(object):
    """An ideal given by generators in a VariableContext

    Generators are stored as given after dropping zeros and duplicates.
    Gröbner bases are computed on demand and cached per order; the cache
    is guarded by a lock so one Ideal can be shared between worker threads.

    Args:
        context (VariableContext): The ring of the ideal
        generators (iterable): Polynomials of that context
    """

    def __init__(self, context, generators=()):
        self.context = context
        seen = set()
        kept = list()
        for poly in generators:
            if not isinstance(poly, Polynomial):
                poly = context.constant(poly)
            if poly.context != context:
                raise ContextMismatchError(context, poly.context)
            if poly.is_zero():
                continue
            text = _gcd_free_key(poly)
            if text in seen:
                continue
            seen.add(text)
            kept.append(poly)
        self._generators = tuple(kept)
        self._groebner = dict()
        self._lock = threading.Lock()
        self._colon_cache = dict()
        self._reducers = dict()

    def __repr__(self):
        return 'Ideal(%r, %d generators)' % (self.context,
                                             len(self._generators))

    def __str__(self):
        return '<' + ', '.join(str(g) for g in self._generators) + '>'

    @property
    def generators(self):
        return self._generators

    def __len__(self):
        return len(self._generators)

    def __iter__(self):
        return iter(self._generators)

    def _check(self, other):
        if other.context != self.context:
            raise ContextMismatchError(self.context, other.context)

    def is_zero(self):
        return not self._generators

    def groebner(self, order=DEGREVLEX):
        """Returns the cached reduced Gröbner basis for an order"""
        with self._lock:
            basis = self._groebner.get(order)
        if basis is None:
            basis = tuple(buchberger(self._generators, order))
            with self._lock:
                basis = self._groebner.setdefault(order, basis)
        return basis

    def _elements(self, order):
        with self._lock:
            elements = self._reducers.get(order)
        if elements is None:
            elements = [_Element(dict(g.terms), order, 0)
                        for g in self.groebner(order)]
            with self._lock:
                elements = self._reducers.setdefault(order, elements)
        return elements

    def is_unit(self):
        basis = self.groebner()
        return len(basis) == 1 and basis[0].is_constant()

    def normal_form(self, poly, order=DEGREVLEX):
        """Returns the remainder of poly modulo the Gröbner basis"""
        self._check(poly)
        basis = self._elements(order)
        return Polynomial._raw(self.context,
                               _reduce(dict(poly.terms), basis, order))

    def member(self, poly):
        return self.normal_form(poly).is_zero()

    def contains(self, other):
        """True when every generator of other lies in this ideal"""
        self._check(other)
        if other.is_zero():
            return True
        if self.is_unit():
            return True
        return all(self.member(g) for g in other.generators)

    def non_members(self, other):
        """Returns the generators of other outside this ideal"""
        self._check(other)
        return [g for g in other.generators if not self.member(g)]

    def equal(self, other):
        """Ideal equality, compared through reduced Gröbner bases"""
        self._check(other)
        return self.groebner() == other.groebner()

    def __add__(self, other):
        self._check(other)
        return Ideal(self.context, self._generators + other.generators)

    def __mul__(self, other):
        self._check(other)
        return Ideal(self.context, [f * g for f in self._generators
                                    for g in other.generators])

    def eliminate(self, indices):
        """Intersects the ideal with the ring without the given variables

        Args:
            indices (iterable): Variable positions to eliminate

        Returns:
            Ideal: Generated by the Gröbner basis elements (block order)
                that are free of the eliminated variables
        """
        indices = tuple(sorted(set(indices)))
        if not indices:
            return Ideal(self.context, self._generators)
        basis = self.groebner(elimination_order(indices))
        return Ideal(self.context,
                     [g for g in basis if not g.involves(indices)])

    def intersect(self, other):
        """Returns the intersection with another ideal

        Uses the identity ``I ∩ J = (t*I + (1 - t)*J) ∩ k[vars without t]``.
        """
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Ideal(self.context)
        if self.is_unit():
            return Ideal(self.context, other.generators)
        if other.is_unit():
            return Ideal(self.context, self._generators)
        t_index = self.context.intersection_index
        for poly in self._generators + other.generators:
            if poly.involves((t_index,)):
                raise IdealError('intersection needs inputs free of t')
        t = self.context.var('t')
        generators = [t * f for f in self._generators]
        generators.extend((1 - t) * g for g in other.generators)
        return Ideal(self.context, generators).eliminate((t_index,))

    def quotient_principal(self, poly):
        """Returns the colon ideal I : <poly>"""
        self._check(poly)
        if poly.is_zero():
            raise IdealError('colon by the zero ideal is undefined')
        if poly.is_constant():
            return Ideal(self.context, self._generators)
        cache_key = poly.primitive().to_text()
        with self._lock:
            cached = self._colon_cache.get(cache_key)
        if cached is not None:
            return cached
        if self.is_zero():
            result = Ideal(self.context)
        elif self.member(poly):
            result = Ideal(self.context, [self.context.one()])
        else:
            meet = self.intersect(Ideal(self.context, [poly]))
            result = Ideal(self.context,
                           [g.exact_divide(poly) for g in meet.generators])
        with self._lock:
            result = self._colon_cache.setdefault(cache_key, result)
        return result

    def colon(self, other):
        """Returns the colon ideal I : J

        Raises:
            IdealError: J is the zero ideal
        """
        self._check(other)
        if isinstance(other, IrrelevantIdeal):
            return other.colon_of(self)
        if other.is_zero():
            raise IdealError('colon by the zero ideal is undefined')
        result = None
        for poly in other.generators:
            part = self.quotient_principal(poly)
            result = part if result is None else result.intersect(part)
        return result

    def saturate(self, other, max_rounds=64):
        """Returns I : J^∞ by iterating colons until they stabilize"""
        current = self
        for _ in range(max_rounds):
            following = current.colon(other)
            if following.equal(current):
                return following
            current = following
        raise IdealError('saturation did not stabilize after %d rounds' %
                         max_rounds)

    def radical_member(self, poly):
        """True when some power of poly lies in the ideal

        Tests whether 1 lies in I + <1 - r*poly>.
        """
        self._check(poly)
        if poly.is_zero():
            return True
        r_index = self.context.rabinowitsch_index
        if poly.involves((r_index,)) or any(
                g.involves((r_index,)) for g in self._generators):
            raise IdealError('radical membership needs inputs free of r')
        r = self.context.var('r')
        extended = Ideal(self.context,
                         self._generators + (1 - r * poly,))
        return extended.is_unit()

    def dehomogenize(self):
        """Applies z_i -> 1 and moves the ideal to the affine context"""
        return Ideal(self.context.affine(),
                     [dehomogenize(g) for g in self._generators])

    def to_lines(self, order=None):
        """Canonical text of the generators, or of a Gröbner basis"""
        polys = self._generators if order is None else self.groebner(order)
        return [g.primitive().to_text() for g in polys]


class IrrelevantIdeal(Ideal):
    """The irrelevant ideal: products of one image coordinate per camera

    The colon of an ideal by this ideal is computed one camera block at a
    time, ``I : m = (...((I : m_1) : m_2) ...) : m_n`` with
    ``I : m_i = (I : x_i) ∩ (I : y_i) ∩ (I : z_i)``, so the work grows with
    3n principal colons instead of 3^n.
    """

    def __init__(self, context):
        blocks = [[context.var('%s%d' % (letter, camera))
                   for letter in context.letters]
                  for camera in range(1, context.n_cameras + 1)]
        generators = list()
        for choice in itertools.product(*blocks):
            product = context.one()
            for factor in choice:
                product = product * factor
            generators.append(product)
        super(IrrelevantIdeal, self).__init__(context, generators)
        self.blocks = blocks

    def colon_of(self, ideal):
        current = ideal
        for camera, block in enumerate(self.blocks, start=1):
            parts = [current.quotient_principal(var) for var in block]
            meet = parts[0]
            for part in parts[1:]:
                meet = meet.intersect(part)
            _LOGGER.debug('colon by camera block %d: %d generators',
                          camera, len(meet.groebner()))
            current = meet
        return current


def irrelevant_ideal(context):
    """Returns the irrelevant ideal of a homogeneous context"""
    return IrrelevantIdeal(context)


def groebner(ideal, order=DEGREVLEX):
    return list(ideal.groebner(order))


def normal_form(poly, ideal, order=DEGREVLEX):
    return ideal.normal_form(poly, order)


def member(poly, ideal):
    return ideal.member(poly)


def contains(ideal, other):
    """True when other ⊆ ideal"""
    return ideal.contains(other)


def equal(ideal, other):
    return ideal.equal(other)


def intersect(ideal, other):
    return ideal.intersect(other)


def colon(ideal, other):
    return ideal.colon(other)


def saturate(ideal, other):
    return ideal.saturate(other)


def eliminate(ideal, variables):
    """Eliminates variables given by name or position"""
    indices = [v if isinstance(v, int) else ideal.context.variable_index(v)
               for v in variables]
    return ideal.eliminate(indices)


def radical_member(poly, ideal):
    return ideal.radical_member(poly)


def dehomogenize(obj):
    """Sets every z_i to 1

    Args:
        obj (Polynomial or Ideal): Homogeneous context input

    Returns:
        The same kind of object in the affine context
    """
    if isinstance(obj, Ideal):
        return obj.dehomogenize()
    context = obj.context
    if context.is_affine:
        return obj
    ones = {index: Fraction(1) for index in context.z_indices}
    return obj.substitute(ones).transfer(context.affine())


def homogenize(poly):
    """Multihomogenizes an affine polynomial with the z_i

    Each camera block is brought to its top block degree by powers of z_i,
    e.g. ``y1 - y2`` becomes ``y1*z2 - y2*z1``.

    Args:
        poly (Polynomial): Input from the affine (or a z-free) context

    Returns:
        Polynomial: The homogenized polynomial in the homogeneous context
    """
    context = poly.context.homogeneous()
    if not poly.context.is_affine:
        if poly.involves(context.z_indices):
            raise IdealError('homogenize expects a polynomial free of z')
    lifted = poly.transfer(context)
    if lifted.is_zero():
        return lifted
    tops = [0] * context.n_cameras
    for mono in lifted.terms:
        degrees = context.multidegree(mono)
        tops = [max(a, b) for a, b in zip(tops, degrees)]
    terms = dict()
    for mono, coeff in lifted.terms.items():
        degrees = context.multidegree(mono)
        mono = list(mono)
        for camera in range(1, context.n_cameras + 1):
            z_index = context.image_variable(camera, 'z')
            mono[z_index] += tops[camera - 1] - degrees[camera - 1]
        terms[tuple(mono)] = coeff
    return Polynomial(context, terms)
