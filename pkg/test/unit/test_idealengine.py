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
from concurrent.futures import ThreadPoolExecutor

sys.path.append(os.path.join(os.path.dirname(__file__), '../lib'))

import sympy
from hypothesis import assume, given, settings, strategies as st

from testlib import polys, ring

from mvideal.cameras import from_sympy
from mvideal.errors import ContextMismatchError, IdealError
from mvideal.idealengine import (
    Ideal,
    buchberger,
    dehomogenize,
    eliminate,
    homogenize,
    irrelevant_ideal,
    member
)
from mvideal.polycore import (
    DEGREVLEX,
    LEX,
    Polynomial,
    monomial_divides,
    parse
)

ONE = ring(1)
TWO = ring(2)


def ideal(context, *texts):
    return Ideal(context, polys(context, *texts))


def sympy_basis(generators, order):
    """Reduced basis from sympy, as primitive Polynomials

    sympy orders its generators from largest to smallest, the reverse of
    the variable positions of a VariableContext.
    """
    context = generators[0].context
    used = sorted({i for g in generators for i in g.support()},
                  reverse=True)
    symbols = [sympy.Symbol(context.names[i]) for i in used]
    exprs = [sympy.sympify(g.to_text().replace('^', '**'))
             for g in generators]
    name = 'grevlex' if order is DEGREVLEX else 'lex'
    basis = sympy.groebner(exprs, *symbols, order=name, domain='QQ')
    result = set()
    for expr in basis.exprs:
        terms = dict()
        for exponents, coeff in sympy.Poly(expr, *symbols).terms():
            mono = [0] * context.nvars
            for index, exponent in zip(used, exponents):
                mono[index] = exponent
            terms[tuple(mono)] = from_sympy(coeff)
        result.add(Polynomial(context, terms).primitive().to_text())
    return result


small_monomials = st.tuples(st.integers(0, 2), st.integers(0, 2),
                            st.integers(0, 1)).filter(
    lambda m: sum(m) <= 2).map(lambda m: m + (0,) * (ONE.nvars - 3))

small_polynomials = st.dictionaries(
    small_monomials, st.integers(-3, 3).filter(bool),
    min_size=1, max_size=3).map(lambda terms: Polynomial(ONE, terms))


class TestGroebner(unittest.TestCase):

    def test_principal(self):
        self.assertEqual(ideal(ONE, 'x1').groebner(), (ONE.var('x1'),))

    def test_linear_system(self):
        basis = ideal(ONE, 'x1 - y1', 'y1 - z1').groebner(LEX)
        self.assertEqual(len(basis), 2)
        self.assertTrue(ideal(ONE, 'x1 - z1', 'y1 - z1').equal(
            Ideal(ONE, basis)))

    def test_monomial_ideal(self):
        basis = ideal(ONE, 'x1^2', 'x1*y1').groebner()
        self.assertEqual(set(basis), set(polys(ONE, 'x1^2', 'x1*y1')))

    def test_unit_and_zero(self):
        self.assertEqual(ideal(ONE, 'x1', 'x1 + 1').groebner(), (ONE.one(),))
        self.assertTrue(ideal(ONE, 'x1', 'x1 + 1').is_unit())
        self.assertEqual(Ideal(ONE, [ONE.zero()]).groebner(), ())
        self.assertEqual(buchberger([]), [])

    def test_cached_per_order(self):
        i = ideal(ONE, 'x1*y1 - z1^2', 'x1^2 - y1*z1')
        self.assertIs(i.groebner(), i.groebner())
        self.assertIsNot(i.groebner(LEX), i.groebner())

    def test_shared_between_threads(self):
        i = ideal(TWO, 'x1*y2 - x2*y1', 'y1*z2 - y2*z1', 'x1*z2 - x2*z1')
        with ThreadPoolExecutor(max_workers=4) as pool:
            results = list(pool.map(lambda _: i.groebner(), range(8)))
        for result in results:
            self.assertIs(result, results[0])

    @given(st.lists(small_polynomials, min_size=1, max_size=3))
    @settings(max_examples=40, deadline=None)
    def test_reduced(self, generators):
        basis = Ideal(ONE, generators).groebner()
        leads = [g.leading_monomial() for g in basis]
        for g, lead in zip(basis, leads):
            self.assertEqual(g.leading_coefficient(), 1)
            for other in leads:
                if other is lead:
                    continue
                for mono in g.monomials():
                    self.assertFalse(monomial_divides(other, mono))
        for g in generators:
            self.assertTrue(Ideal(ONE, basis).member(g))

    @given(st.lists(small_polynomials, min_size=1, max_size=3),
           st.sampled_from([DEGREVLEX, LEX]))
    @settings(max_examples=40, deadline=None)
    def test_agrees_with_sympy(self, generators, order):
        assume(any(not g.is_constant() for g in generators))
        ours = {g.primitive().to_text()
                for g in Ideal(ONE, generators).groebner(order)}
        self.assertEqual(ours, sympy_basis(generators, order))


class TestMembership(unittest.TestCase):

    def test_member(self):
        i = ideal(ONE, 'x1 - y1', 'y1 - z1')
        self.assertTrue(i.member(parse('x1 - z1', ONE)))
        self.assertFalse(ideal(ONE, 'x1').member(ONE.var('y1')))
        self.assertTrue(member(ONE.var('x1'), ideal(ONE, 'x1')))

    def test_normal_form_is_idempotent_and_linear(self):
        i = ideal(ONE, 'x1^2 - y1', 'x1*y1 - z1')
        f, g = polys(ONE, 'x1^3 + y1^2', 'x1*z1 - 3*y1')
        nf = i.normal_form(f)
        self.assertEqual(i.normal_form(nf), nf)
        self.assertEqual(i.normal_form(f.scale(3) - g),
                         nf.scale(3) - i.normal_form(g))

    def test_normal_form_reduces_every_term(self):
        i = ideal(ONE, 'x1^2 - y1', 'x1*y1 - z1')
        leads = [g.leading_monomial() for g in i.groebner()]
        for text in ('y1^4 + x1*y1 + x1^2', 'z1 + x1^2*y1 - 5*x1*y1*z1',
                     'x1^5'):
            nf = i.normal_form(parse(text, ONE))
            for mono in nf.monomials():
                self.assertFalse(any(monomial_divides(lead, mono)
                                     for lead in leads), (text, nf))
            self.assertTrue(i.member(parse(text, ONE) - nf))

    def test_contains_and_equal(self):
        self.assertTrue(ideal(ONE, 'x1', 'y1').contains(
            ideal(ONE, 'x1^2 + x1*y1')))
        self.assertFalse(ideal(ONE, 'x1').contains(ideal(ONE, 'y1')))
        self.assertTrue(ideal(ONE, 'x1').equal(ideal(ONE, '2*x1')))

    def test_non_members(self):
        missing = ideal(ONE, 'x1').non_members(ideal(ONE, 'x1*y1', 'z1'))
        self.assertEqual(missing, [ONE.var('z1')])

    def test_context_mismatch(self):
        with self.assertRaises(ContextMismatchError):
            ideal(ONE, 'x1').contains(ideal(TWO, 'x1'))
        with self.assertRaises(ContextMismatchError):
            Ideal(ONE, [TWO.var('x1')])

    def test_sum_and_product(self):
        total = ideal(ONE, 'x1') + ideal(ONE, 'y1')
        self.assertTrue(total.equal(ideal(ONE, 'x1', 'y1')))
        product = ideal(ONE, 'x1', 'y1') * ideal(ONE, 'z1')
        self.assertTrue(product.equal(ideal(ONE, 'x1*z1', 'y1*z1')))


class TestIdealOperations(unittest.TestCase):

    def test_intersect(self):
        meet = ideal(ONE, 'x1').intersect(ideal(ONE, 'y1'))
        self.assertTrue(meet.equal(ideal(ONE, 'x1*y1')))

    def test_intersect_is_idempotent(self):
        i = ideal(TWO, 'y1*z2 - y2*z1', 'x1*z2 - x2*z1')
        self.assertTrue(i.intersect(i).equal(i))

    def test_intersect_refuses_t(self):
        i = Ideal(ONE, [ONE.var('t')])
        with self.assertRaises(IdealError):
            i.intersect(ideal(ONE, 'x1'))

    def test_colon(self):
        result = ideal(ONE, 'x1^2', 'x1*y1').colon(ideal(ONE, 'x1'))
        self.assertTrue(result.equal(ideal(ONE, 'x1', 'y1')))

    def test_colon_by_unit(self):
        i = ideal(ONE, 'x1^2', 'x1*y1')
        self.assertTrue(i.colon(Ideal(ONE, [ONE.one()])).equal(i))

    def test_colon_by_zero(self):
        with self.assertRaises(IdealError):
            ideal(ONE, 'x1').colon(Ideal(ONE))

    def test_colon_property(self):
        i = ideal(TWO, 'x1*y2 - x2*y1', 'x1*z1')
        j = ideal(TWO, 'x1', 'y2')
        result = i.colon(j)
        for f in result.generators:
            for g in j.generators:
                self.assertTrue(i.member(f * g))

    def test_saturate(self):
        result = ideal(ONE, 'x1^2*y1').saturate(ideal(ONE, 'x1'))
        self.assertTrue(result.equal(ideal(ONE, 'y1')))

    def test_eliminate(self):
        i = ideal(ONE, 'q1 - x1', 'q1 - y1')
        result = eliminate(i, ['q1'])
        self.assertTrue(result.equal(ideal(ONE, 'x1 - y1')))
        for g in result.generators:
            self.assertFalse(g.involves([ONE.index['q1']]))
        self.assertTrue(i.eliminate([]).equal(i))

    def test_radical_member(self):
        i = ideal(ONE, 'x1^2')
        self.assertTrue(i.radical_member(ONE.var('x1')))
        self.assertFalse(i.radical_member(parse('x1 + 1', ONE)))
        self.assertFalse(i.member(ONE.var('x1')))


class TestIrrelevantIdeal(unittest.TestCase):

    def test_generator_count(self):
        for n in (1, 2, 3):
            self.assertEqual(len(irrelevant_ideal(ring(n))), 3 ** n)

    def test_is_intersection_of_blocks(self):
        for n in (2, 3):
            context = ring(n)
            meet = None
            for camera in range(1, n + 1):
                block = Ideal(context, context.image_point(camera))
                meet = block if meet is None else meet.intersect(block)
            self.assertTrue(meet.equal(irrelevant_ideal(context)))

    def test_blockwise_colon_matches_generic_colon(self):
        i = ideal(TWO, 'x1*x2', 'x1*y2', 'x1*z2')
        m = irrelevant_ideal(TWO)
        blockwise = i.colon(m)
        generic = i.colon(Ideal(TWO, m.generators))
        self.assertTrue(blockwise.equal(generic))
        self.assertTrue(blockwise.equal(ideal(TWO, 'x1')))


class TestHomogenization(unittest.TestCase):

    def test_dehomogenize(self):
        self.assertTrue(dehomogenize(ideal(ONE, 'z1')).is_unit())
        result = dehomogenize(ideal(TWO, 'y1*z2 - y2*z1'))
        self.assertEqual(result.context, ring(2, affine=True))
        self.assertTrue(result.equal(ideal(ring(2, affine=True),
                                           'y1 - y2')))

    def test_dehomogenize_ignores_irrelevant_colon(self):
        i = ideal(TWO, 'x1*x2', 'x1*y2', 'x1*z2')
        saturated = i.colon(irrelevant_ideal(TWO))
        self.assertTrue(dehomogenize(saturated).equal(dehomogenize(i)))

    def test_homogenize(self):
        affine = ring(2, affine=True)
        result = homogenize(parse('y1 - y2', affine))
        expected = parse('y1*z2 - y2*z1', TWO)
        self.assertEqual(result, expected)
        self.assertEqual(homogenize(parse('x1', affine)), TWO.var('x1'))
        single = homogenize(parse('x1*y1 + 1', ring(1, affine=True)))
        self.assertEqual(single, parse('x1*y1 + z1^2', ONE))

    def test_homogenize_then_dehomogenize(self):
        affine = ring(2, affine=True)
        poly = parse('x1^2*y2 - 3*x2 + y1 - 7', affine)
        self.assertEqual(dehomogenize(homogenize(poly)), poly)

    def test_homogenize_refuses_z(self):
        with self.assertRaises(IdealError):
            homogenize(parse('z1 + x1', ONE))


if __name__ == '__main__':
    unittest.main()
