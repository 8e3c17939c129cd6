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
import itertools
from fractions import Fraction

sys.path.append(os.path.join(os.path.dirname(__file__), '../lib'))

import sympy
from hypothesis import given, settings, strategies as st

from testlib import load_fixture, polys, ring

from mvideal.cameras import from_sympy
from mvideal.errors import (
    ContextMismatchError,
    DivisionError,
    PolynomialParseError,
    ShapeError
)
from mvideal.focalideals import JointMatrix, cross_matrix, focal_minors
from mvideal.polycore import (
    DEGREVLEX,
    LEX,
    Polynomial,
    SymbolicMatrix,
    bareiss_determinant,
    determinant,
    elimination_order,
    format_rational,
    minors,
    order_by_name,
    parse,
    to_rational
)

CONTEXT = ring(2)


def _pad(exponents):
    return tuple(exponents) + (0,) * (CONTEXT.nvars - len(exponents))


image_monomials = st.lists(st.integers(0, 2), min_size=CONTEXT.image_count,
                           max_size=CONTEXT.image_count).map(_pad)

polynomials = st.dictionaries(
    image_monomials,
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=4).map(lambda terms: Polynomial(CONTEXT, terms))

small_ints = st.integers(-4, 4)


def int_matrix(rows, cols):
    return st.lists(st.lists(small_ints, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


class TestRationals(unittest.TestCase):

    def test_to_rational_accepts_strings_and_ints(self):
        self.assertEqual(to_rational('3/4'), Fraction(3, 4))
        self.assertEqual(to_rational(' −2 '), Fraction(-2))
        self.assertEqual(to_rational(5), Fraction(5))

    def test_to_rational_accepts_sympy_rationals(self):
        self.assertEqual(to_rational(sympy.Rational(1, 3)), Fraction(1, 3))

    def test_to_rational_rejects_bool(self):
        with self.assertRaises(TypeError):
            to_rational(True)

    def test_to_rational_rejects_garbage(self):
        with self.assertRaises(ValueError):
            to_rational('one half')
        with self.assertRaises(TypeError):
            to_rational(0.5j)

    def test_format_rational(self):
        self.assertEqual(format_rational(Fraction(6, 2)), 3)
        self.assertEqual(format_rational(Fraction(-1, 3)), '-1/3')


class TestArithmetic(unittest.TestCase):

    def test_cancellation(self):
        a, b, c = polys(CONTEXT, 'x1 + y1', '-x1', 'y1')
        self.assertEqual(a + b, c)

    def test_difference_of_squares(self):
        a, b, c = polys(CONTEXT, 'x1 - y1', 'x1 + y1', 'x1^2 - y1^2')
        self.assertEqual(a * b, c)

    def test_fraction_product(self):
        a, b, c = polys(CONTEXT, '1/2*x1', '2/3*x1', '1/3*x1^2')
        self.assertEqual(a * b, c)

    def test_constants_mix_in(self):
        x1 = CONTEXT.var('x1')
        self.assertEqual(1 - x1, parse('1 - x1', CONTEXT))
        self.assertEqual(x1 * Fraction(1, 2), parse('1/2*x1', CONTEXT))
        self.assertEqual(x1 - x1, 0)

    def test_context_mismatch(self):
        with self.assertRaises(ContextMismatchError):
            CONTEXT.var('x1') + ring(3).var('x1')

    def test_power(self):
        x1, y1 = CONTEXT.var('x1'), CONTEXT.var('y1')
        self.assertEqual((x1 + y1) ** 2, x1 * x1 + 2 * x1 * y1 + y1 * y1)
        self.assertEqual(x1 ** 0, CONTEXT.one())
        with self.assertRaises(ValueError):
            x1 ** -1

    def test_exact_divide(self):
        a, b, c = polys(CONTEXT, 'x1^2 - y1^2', 'x1 - y1', 'x1 + y1')
        self.assertEqual(a.exact_divide(b), c)
        self.assertEqual(a / b, c)

    def test_exact_divide_with_remainder(self):
        a, b = polys(CONTEXT, 'x1', 'y1')
        with self.assertRaises(DivisionError):
            a.exact_divide(b)

    def test_primitive(self):
        poly = parse('-2*x1 + 4/3*y1', CONTEXT)
        self.assertEqual(poly.primitive(), parse('2*y1 - 3*x1', CONTEXT))

    def test_zero_polynomial(self):
        zero = CONTEXT.zero()
        self.assertTrue(zero.is_zero())
        self.assertEqual(zero.total_degree(), -1)
        self.assertEqual(zero.to_text(), '0')
        with self.assertRaises(ValueError):
            zero.leading_monomial()

    @given(polynomials, polynomials, polynomials)
    @settings(max_examples=50, deadline=None)
    def test_ring_axioms(self, a, b, c):
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual(a + b, b + a)
        self.assertEqual(a * b, b * a)
        self.assertTrue((a - a).is_zero())


class TestMultidegree(unittest.TestCase):

    def test_bifocal_multidegree(self):
        poly = parse('y1*z2 - y2*z1', CONTEXT)
        self.assertEqual(poly.multidegree(), (1, 1))
        self.assertTrue(poly.is_multihomogeneous())

    def test_inhomogeneous(self):
        poly = parse('x1 + x1*y1', CONTEXT)
        self.assertIsNone(poly.multidegree())

    def test_zero_has_no_multidegree(self):
        with self.assertRaises(ValueError):
            CONTEXT.zero().multidegree()

    def test_bifocals_are_multilinear(self):
        arrangement = load_fixture('raw_pair.json')
        for minor in focal_minors(arrangement, 2, include_zero=False):
            self.assertEqual(minor.polynomial.multidegree(), (1, 1))


class TestSubstitution(unittest.TestCase):

    def test_identity_map(self):
        poly = parse('x1*y2 - 3*z1^2', CONTEXT)
        mapping = {name: CONTEXT.var(name) for name in poly.variables()}
        self.assertEqual(poly.substitute(mapping), poly)

    def test_image_change(self):
        poly = parse('x1*y2', CONTEXT)
        moved = poly.substitute({'x1': CONTEXT.var('x1').scale('1/2')})
        self.assertEqual(moved, parse('1/2*x1*y2', CONTEXT))

    def test_set_z_to_one(self):
        poly = parse('y1*z2 - y2*z1', CONTEXT)
        self.assertEqual(poly.substitute({'z1': 1, 'z2': 1}),
                         parse('y1 - y2', CONTEXT))

    def test_evaluate_at(self):
        poly = parse('y1*z2 - y2*z1', CONTEXT)
        self.assertEqual(poly.evaluate_at([(1, 2, 3), (2, 2, 3)]), 0)
        self.assertEqual(poly.evaluate_at([(1, 2, 3), (2, 2, 4)]), 2)
        with self.assertRaises(ShapeError):
            poly.evaluate_at([(1, 2, 3)])

    def test_transfer_between_contexts(self):
        poly = parse('y1 - y2', ring(2, affine=True))
        moved = poly.transfer(CONTEXT)
        self.assertEqual(moved, parse('y1 - y2', CONTEXT))
        with self.assertRaises(ContextMismatchError):
            parse('z1', CONTEXT).transfer(ring(2, affine=True))


class TestTextForm(unittest.TestCase):

    def test_canonical_order(self):
        poly = parse('x1*y1 - 3/2*y1^2', CONTEXT)
        self.assertEqual(poly.to_text(), '-3/2*y1^2 + x1*y1')

    def test_unicode_minus_and_exponents(self):
        self.assertEqual(parse('x1 − y1**2', CONTEXT),
                         parse('x1 - y1^2', CONTEXT))

    def test_parentheses(self):
        self.assertEqual(parse('(x1 + y1)*(x1 - y1)', CONTEXT),
                         parse('x1^2 - y1^2', CONTEXT))

    def test_reparse(self):
        text = 'x1*x3*y2 + x1*y2*y3 - x2*x3*y1 - x3*y1*y2'
        context = ring(3)
        poly = parse(text, context)
        self.assertEqual(parse(poly.to_text(), context), poly)

    def test_parse_errors(self):
        for text in ('x1 +', 'w1', 'x1^y1', 'x1 $ y1', '', 'x3'):
            with self.assertRaises(PolynomialParseError):
                parse(text, CONTEXT)


class TestMonomialOrders(unittest.TestCase):

    ORDERS = (LEX, DEGREVLEX, elimination_order((0, 1)))

    @given(image_monomials, image_monomials, image_monomials)
    @settings(max_examples=100, deadline=None)
    def test_order_axioms(self, a, b, c):
        one = CONTEXT.one_monomial()
        for order in self.ORDERS:
            self.assertEqual(order.compare(a, b), -order.compare(b, a))
            self.assertEqual(order.compare(a, b) == 0, a == b)
            product_a = tuple(x + y for x, y in zip(a, c))
            product_b = tuple(x + y for x, y in zip(b, c))
            self.assertEqual(order.compare(a, b),
                             order.compare(product_a, product_b))
            self.assertLessEqual(order.compare(one, a), 0)

    def test_elimination_ranks_front_variables_first(self):
        q0 = CONTEXT.index['q0']
        order = elimination_order((q0,))
        front = CONTEXT.variable_monomial(q0)
        high = CONTEXT.variable_monomial(CONTEXT.index['x1'], 5)
        self.assertEqual(order.compare(front, high), 1)

    def test_order_by_name(self):
        self.assertIs(order_by_name('lex'), LEX)
        with self.assertRaises(ValueError):
            order_by_name('grlex')


class TestDeterminants(unittest.TestCase):

    def test_identity(self):
        identity = SymbolicMatrix(CONTEXT, [[int(i == j) for j in range(4)]
                                            for i in range(4)])
        self.assertEqual(determinant(identity), CONTEXT.one())

    def test_cross_matrix_is_singular(self):
        cross = cross_matrix(CONTEXT, 1)
        self.assertTrue(determinant(cross).is_zero())
        self.assertEqual(cross.transpose().rows(),
                         [[-e for e in row] for row in cross.rows()])

    def test_epipolar_constraint(self):
        arrangement = load_fixture('pair.json')
        value = determinant(JointMatrix(arrangement).matrix)
        expected = parse('y1*z2 - y2*z1', CONTEXT)
        self.assertIn(value, (expected, -expected))

    def test_non_square(self):
        matrix = SymbolicMatrix(CONTEXT, [[1, 2, 3], [4, 5, 6]])
        with self.assertRaises(ShapeError):
            determinant(matrix)
        with self.assertRaises(ShapeError):
            bareiss_determinant([[1, 2, 3], [4, 5, 6]])

    def test_row_scaling(self):
        arrangement = load_fixture('raw_pair.json')
        matrix = JointMatrix(arrangement).matrix
        rows = matrix.rows()
        rows[4] = [entry.scale(Fraction(-7, 3)) for entry in rows[4]]
        scaled = SymbolicMatrix(CONTEXT, rows)
        self.assertEqual(determinant(scaled),
                         determinant(matrix).scale(Fraction(-7, 3)))

    def test_minor_counts(self):
        matrix = SymbolicMatrix(CONTEXT, [[1, 0], [0, 1], [1, 1]])
        self.assertEqual(len(minors(matrix, 2)), 3)
        self.assertEqual(len(minors(matrix, 1)), 6)
        with self.assertRaises(ShapeError):
            minors(matrix, 3)

    def test_trifocal_count(self):
        arrangement = load_fixture('three_views.json')
        found = focal_minors(arrangement, 3)
        self.assertEqual(len(found), 36)
        distributions = [sorted(m.row_distribution().values())
                         for m in found]
        self.assertEqual(distributions.count([2, 2, 3]), 27)

    @given(int_matrix(4, 6), int_matrix(6, 4))
    @settings(max_examples=100, deadline=None)
    def test_cauchy_binet(self, a, b):
        product = [[sum(a[i][k] * b[k][j] for k in range(6))
                    for j in range(4)] for i in range(4)]
        total = Fraction(0)
        for sigma in itertools.combinations(range(6), 4):
            left = [[a[i][k] for k in sigma] for i in range(4)]
            right = [b[k] for k in sigma]
            total += bareiss_determinant(left) * bareiss_determinant(right)
        self.assertEqual(bareiss_determinant(product), total)

    @given(int_matrix(4, 4))
    @settings(max_examples=50, deadline=None)
    def test_bareiss_agrees_with_cofactors(self, rows):
        symbolic = SymbolicMatrix(CONTEXT, rows)
        expected = from_sympy(sympy.Matrix(rows).det())
        self.assertEqual(determinant(symbolic), CONTEXT.constant(expected))
        self.assertEqual(bareiss_determinant(rows), expected)


if __name__ == '__main__':
    unittest.main()
