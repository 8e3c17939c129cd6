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
"""Exact sparse polynomials over the rationals

This module provides the arithmetic layer the rest of mvideal is built on:

  * VariableContext describes the variables of one computation.  Image
    variables come in camera blocks ``x_i < y_i < z_i`` ordered by camera,
    then the world variables ``q0..q3``, the scalings ``l1..ln``, the
    intersection variable ``t`` and the Rabinowitsch variable ``r``.  Every
    auxiliary variable sits above every image variable.
  * Monomials are exponent tuples indexed by variable position.
  * MonomialOrder implements lex, degrevlex and block elimination orders.
  * Polynomial is an immutable map from monomials to Fraction coefficients.
  * SymbolicMatrix holds polynomial entries and computes exact determinants
    and minors.

Polynomials print in a canonical text form, terms in descending degrevlex
order joined by ``+``/``-``, and ``parse`` reads that form back.
"""

import re
import logging
import itertools
from fractions import Fraction
from functools import lru_cache
from math import gcd
from collections import namedtuple
from types import MappingProxyType

from mvideal.errors import (
    ContextMismatchError,
    PolynomialParseError,
    ShapeError,
    DivisionError
)


IMAGE_LETTERS = ('x', 'y', 'z')
AFFINE_LETTERS = ('x', 'y')
WORLD_VARIABLES = ('q0', 'q1', 'q2', 'q3')
INTERSECTION_VARIABLE = 't'
RABINOWITSCH_VARIABLE = 'r'

_LOGGER = logging.getLogger(__name__)


def to_rational(value):
    """Converts int, Fraction, 'p/q' strings and sympy rationals to Fraction

    Args:
        value: The value to convert

    Returns:
        Fraction: The exact rational value

    Raises:
        TypeError: The value has no exact rational meaning
        ValueError: A string could not be parsed
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError('booleans are not rationals')
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace('−', '-')
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError('not a rational number: {!r}'.format(value))
    numerator = getattr(value, 'numerator', None)
    denominator = getattr(value, 'denominator', None)
    if numerator is not None and denominator is not None:
        if callable(numerator):
            numerator, denominator = numerator(), denominator()
        return Fraction(int(numerator), int(denominator))
    raise TypeError('cannot convert {!r} to a rational'.format(value))


def format_rational(value):
    """Returns the JSON friendly form of a rational: int or 'p/q' string"""
    value = to_rational(value)
    if value.denominator == 1:
        return value.numerator
    return '{}/{}'.format(value.numerator, value.denominator)


class VariableContext(object):
    """The ordered variable set of a computation over n cameras

    Contexts compare equal when they describe the same cameras and the same
    image coordinates, so polynomials built from separately constructed but
    equal contexts can be mixed freely.

    Attributes:
        n_cameras (int): Number of camera blocks
        is_affine (bool): True for the dehomogenized ring without z_i
        names (tuple): Variable names in increasing variable order
        blocks (tuple): Camera number of every variable, 0 for auxiliaries

    Args:
        n_cameras (int): Number of camera blocks, at least 1
        affine (bool): Build the x,y-only ring used after dehomogenization
    """

    def __init__(self, n_cameras, affine=False):
        if int(n_cameras) < 1:
            raise ShapeError('a variable context needs at least one camera')
        self.n_cameras = int(n_cameras)
        self.is_affine = bool(affine)
        letters = AFFINE_LETTERS if affine else IMAGE_LETTERS
        names = list()
        blocks = list()
        for camera in range(1, self.n_cameras + 1):
            for letter in letters:
                names.append('%s%d' % (letter, camera))
                blocks.append(camera)
        self.image_count = len(names)
        names.extend(WORLD_VARIABLES)
        names.extend('l%d' % camera
                     for camera in range(1, self.n_cameras + 1))
        names.extend((INTERSECTION_VARIABLE, RABINOWITSCH_VARIABLE))
        blocks.extend([0] * (len(names) - len(blocks)))
        self.names = tuple(names)
        self.blocks = tuple(blocks)
        self.index = {name: i for i, name in enumerate(self.names)}

    def __eq__(self, other):
        if not isinstance(other, VariableContext):
            return NotImplemented
        return (self.n_cameras == other.n_cameras and
                self.is_affine == other.is_affine)

    def __hash__(self):
        return hash((self.n_cameras, self.is_affine))

    def __repr__(self):
        if self.is_affine:
            return 'VariableContext(n_cameras=%d, affine=True)' % \
                self.n_cameras
        return 'VariableContext(n_cameras=%d)' % self.n_cameras

    @property
    def nvars(self):
        return len(self.names)

    @property
    def letters(self):
        return AFFINE_LETTERS if self.is_affine else IMAGE_LETTERS

    def variable_index(self, name):
        """Returns the position of the named variable

        Raises:
            PolynomialParseError: The name is not a variable of the context
        """
        try:
            return self.index[name]
        except KeyError:
            raise PolynomialParseError(name, 'unknown variable for %r' % self)

    def camera_block(self, camera):
        """Returns the variable positions of the image block of a camera

        Args:
            camera (int): 1-based camera number
        """
        if not 1 <= camera <= self.n_cameras:
            raise ShapeError('camera %d outside 1..%d' %
                             (camera, self.n_cameras))
        width = len(self.letters)
        start = (camera - 1) * width
        return tuple(range(start, start + width))

    def image_variable(self, camera, letter):
        return self.index['%s%d' % (letter, camera)]

    @property
    def image_indices(self):
        return tuple(range(self.image_count))

    @property
    def world_indices(self):
        return tuple(self.index[name] for name in WORLD_VARIABLES)

    @property
    def lambda_indices(self):
        return tuple(self.index['l%d' % camera]
                     for camera in range(1, self.n_cameras + 1))

    @property
    def intersection_index(self):
        return self.index[INTERSECTION_VARIABLE]

    @property
    def rabinowitsch_index(self):
        return self.index[RABINOWITSCH_VARIABLE]

    @property
    def z_indices(self):
        if self.is_affine:
            return tuple()
        return tuple(self.index['z%d' % camera]
                     for camera in range(1, self.n_cameras + 1))

    def affine(self):
        """Returns the dehomogenized context with the same cameras"""
        return get_context(self.n_cameras, affine=True)

    def homogeneous(self):
        """Returns the homogeneous context with the same cameras"""
        return get_context(self.n_cameras, affine=False)

    def one_monomial(self):
        return (0,) * self.nvars

    def variable_monomial(self, index, exponent=1):
        mono = [0] * self.nvars
        mono[index] = exponent
        return tuple(mono)

    def var(self, name):
        """Returns the named variable as a Polynomial"""
        index = self.variable_index(name)
        return Polynomial._raw(self, {self.variable_monomial(index):
                                      Fraction(1)})

    def constant(self, value):
        value = to_rational(value)
        if not value:
            return Polynomial._raw(self, {})
        return Polynomial._raw(self, {self.one_monomial(): value})

    def zero(self):
        return Polynomial._raw(self, {})

    def one(self):
        return self.constant(1)

    def image_point(self, camera):
        """Returns (x_i, y_i, z_i) of a camera as polynomials"""
        return tuple(self.var('%s%d' % (letter, camera))
                     for letter in self.letters)

    def multidegree(self, mono):
        """Returns the per camera degree of a monomial in image variables"""
        degrees = [0] * self.n_cameras
        for index in range(self.image_count):
            if mono[index]:
                degrees[self.blocks[index] - 1] += mono[index]
        return tuple(degrees)


@lru_cache(maxsize=None)
def get_context(n_cameras, affine=False):
    """Returns the shared VariableContext for n cameras"""
    return VariableContext(n_cameras, affine=affine)


def monomial_multiply(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    """True when monomial a divides monomial b"""
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b, a):
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomials_coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


class MonomialOrder(object):
    """A monomial order given by a sort key

    ``key(m)`` returns a tuple such that larger keys are larger monomials.
    Keys are memoized per order since Buchberger compares the same
    monomials over and over.

    Args:
        name (str): One of 'lex', 'degrevlex' or 'elimination'
        front (iterable): Variable positions of the eliminated block,
            only used by elimination orders
    """

    NAMES = ('lex', 'degrevlex', 'elimination')

    def __init__(self, name, front=()):
        if name not in self.NAMES:
            raise ValueError('unknown monomial order %r' % name)
        self.name = name
        self.front = tuple(sorted(set(front)))
        self._front_set = frozenset(self.front)
        if name == 'elimination' and not self.front:
            self.name = 'degrevlex'
        self.key = lru_cache(maxsize=1 << 18)(self._key)

    def _key(self, mono):
        if self.name == 'lex':
            return mono[::-1]
        if self.name == 'degrevlex':
            return (sum(mono), tuple(-e for e in mono))
        front = [mono[i] for i in self.front if i < len(mono)]
        rest = [e for i, e in enumerate(mono) if i not in self._front_set]
        return (sum(front), tuple(-e for e in front),
                sum(rest), tuple(-e for e in rest))

    def __eq__(self, other):
        if not isinstance(other, MonomialOrder):
            return NotImplemented
        return (self.name, self.front) == (other.name, other.front)

    def __hash__(self):
        return hash((self.name, self.front))

    def __repr__(self):
        if self.name == 'elimination':
            return 'MonomialOrder(elimination, front=%s)' % (self.front,)
        return 'MonomialOrder(%s)' % self.name

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def leading(self, monomials):
        return max(monomials, key=self.key)

    def sort(self, monomials):
        """Returns the monomials in descending order"""
        return sorted(monomials, key=self.key, reverse=True)


LEX = MonomialOrder('lex')
DEGREVLEX = MonomialOrder('degrevlex')


@lru_cache(maxsize=None)
def elimination_order(front):
    """Block order ranking monomials in the front variables highest

    Args:
        front (tuple): Sorted variable positions to eliminate
    """
    return MonomialOrder('elimination', front=tuple(front))


def order_by_name(name):
    """Maps the CLI names 'lex' and 'degrevlex' to shared orders"""
    try:
        return {'lex': LEX, 'degrevlex': DEGREVLEX}[name]
    except KeyError:
        raise ValueError('unknown monomial order %r' % name)


def _coefficient_text(value):
    if value.denominator == 1:
        return str(value.numerator)
    return '%d/%d' % (value.numerator, value.denominator)


@lru_cache(maxsize=None)
def _name_sort_key(name):
    match = re.match(r'([A-Za-z]+)(\d*)$', name)
    return (match.group(1), int(match.group(2) or -1))


class Polynomial(object):
    """An immutable sparse polynomial with Fraction coefficients

    Arithmetic between polynomials of different contexts raises
    ContextMismatchError.  Integers and Fractions mix in as constants.

    Args:
        context (VariableContext): The ring of the polynomial
        terms (dict): Map of exponent tuples to rational coefficients
    """

    __slots__ = ('context', '_terms', '_hash')

    def __init__(self, context, terms=None):
        self.context = context
        self._hash = None
        clean = dict()
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != context.nvars or min(mono, default=0) < 0:
                raise ShapeError('monomial %r does not fit %r' %
                                 (mono, context))
            coeff = to_rational(coeff)
            if coeff:
                clean[mono] = coeff
        self._terms = clean

    @classmethod
    def _raw(cls, context, terms):
        poly = cls.__new__(cls)
        poly.context = context
        poly._terms = terms
        poly._hash = None
        return poly

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.context != self.context:
                raise ContextMismatchError(self.context, other.context)
            return other
        try:
            return self.context.constant(other)
        except (TypeError, ValueError):
            return None

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, Polynomial) \
            else other
        if other is None:
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context,
                               frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            value = terms.get(mono, 0) + coeff
            if value:
                terms[mono] = value
            else:
                terms.pop(mono, None)
        return Polynomial._raw(self.context, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.context,
                               {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict()
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = monomial_multiply(ma, mb)
                value = terms.get(mono, 0) + ca * cb
                if value:
                    terms[mono] = value
                else:
                    terms.pop(mono, None)
        return Polynomial._raw(self.context, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('exponent must be a non-negative integer')
        result = self.context.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return self.exact_divide(other)
        return self.scale(1 / to_rational(other))

    def scale(self, factor):
        factor = to_rational(factor)
        if not factor:
            return self.context.zero()
        return Polynomial._raw(self.context,
                               {m: c * factor for m, c in self._terms.items()})

    def multiply_monomial(self, mono, coeff=1):
        coeff = to_rational(coeff)
        if not coeff:
            return self.context.zero()
        return Polynomial._raw(self.context,
                               {monomial_multiply(m, mono): c * coeff
                                for m, c in self._terms.items()})

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(m) for m in self._terms)

    def constant_value(self):
        """Returns the value of a constant polynomial as a Fraction"""
        if not self.is_constant():
            raise ValueError('%s is not constant' % self)
        return self._terms.get(self.context.one_monomial(), Fraction(0))

    def monomials(self):
        return list(self._terms)

    def coefficient(self, mono):
        return self._terms.get(tuple(mono), Fraction(0))

    def total_degree(self):
        """Returns the total degree, -1 for the zero polynomial"""
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self):
        return len({sum(m) for m in self._terms}) <= 1

    def multidegree(self):
        """Returns the per camera degree tuple

        Returns:
            tuple: Degrees per camera block when the polynomial is
                multihomogeneous in the image variables, otherwise None

        Raises:
            ValueError: The polynomial is zero
        """
        if not self._terms:
            raise ValueError('the zero polynomial has no multidegree')
        degrees = {self.context.multidegree(m) for m in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def is_multihomogeneous(self):
        return self.multidegree() is not None

    def support(self):
        """Returns the sorted positions of the variables that occur"""
        used = set()
        for mono in self._terms:
            used.update(i for i, e in enumerate(mono) if e)
        return tuple(sorted(used))

    def variables(self):
        return tuple(self.context.names[i] for i in self.support())

    def involves(self, indices):
        indices = tuple(indices)
        return any(m[i] for m in self._terms for i in indices)

    def leading_monomial(self, order=DEGREVLEX):
        if not self._terms:
            raise ValueError('the zero polynomial has no leading monomial')
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order=DEGREVLEX):
        return self._terms[self.leading_monomial(order)]

    def leading_term(self, order=DEGREVLEX):
        mono = self.leading_monomial(order)
        return mono, self._terms[mono]

    def sorted_terms(self, order=DEGREVLEX):
        return [(m, self._terms[m]) for m in order.sort(self._terms)]

    def monic(self, order=DEGREVLEX):
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def primitive(self):
        """Returns the canonical generator form

        Coefficients become coprime integers and the degrevlex leading
        coefficient is positive.
        """
        if not self._terms:
            return self
        denominators = 1
        for coeff in self._terms.values():
            denominators = denominators * coeff.denominator // \
                gcd(denominators, coeff.denominator)
        numerators = [int(c * denominators) for c in self._terms.values()]
        common = 0
        for value in numerators:
            common = gcd(common, value)
        factor = Fraction(denominators, common)
        if self.leading_coefficient(DEGREVLEX) < 0:
            factor = -factor
        return self.scale(factor)

    def exact_divide(self, divisor, order=DEGREVLEX):
        """Divides by a polynomial that is known to divide self

        Raises:
            DivisionError: The division leaves a remainder
        """
        divisor = self._coerce(divisor)
        if divisor is None or divisor.is_zero():
            raise DivisionError('division by zero polynomial')
        lead, lead_coeff = divisor.leading_term(order)
        remainder = dict(self._terms)
        quotient = dict()
        while remainder:
            mono = max(remainder, key=order.key)
            if not monomial_divides(lead, mono):
                raise DivisionError('%s does not divide %s' %
                                    (divisor, self))
            q_mono = monomial_quotient(mono, lead)
            q_coeff = remainder[mono] / lead_coeff
            quotient[q_mono] = q_coeff
            for d_mono, d_coeff in divisor._terms.items():
                target = monomial_multiply(d_mono, q_mono)
                value = remainder.get(target, 0) - q_coeff * d_coeff
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)
        return Polynomial._raw(self.context, quotient)

    def substitute(self, mapping):
        """Replaces variables by polynomials or constants

        Args:
            mapping (dict): Keys are variable names or positions, values
                are Polynomials (same context) or rationals

        Returns:
            Polynomial: The substituted polynomial
        """
        images = dict()
        for key, value in mapping.items():
            index = key if isinstance(key, int) else \
                self.context.variable_index(key)
            images[index] = self._coerce(value)
            if images[index] is None:
                raise TypeError('cannot substitute %r' % (value,))
        powers = dict()

        def power(index, exponent):
            cache_key = (index, exponent)
            if cache_key not in powers:
                powers[cache_key] = images[index] ** exponent
            return powers[cache_key]

        result = self.context.zero()
        for mono, coeff in self._terms.items():
            kept = list(mono)
            term = self.context.one()
            for index, exponent in enumerate(mono):
                if exponent and index in images:
                    kept[index] = 0
                    term = term * power(index, exponent)
            result = result + term.multiply_monomial(tuple(kept), coeff)
        return result

    def evaluate(self, values):
        """Evaluates at rational values

        Args:
            values (dict): Variable names or positions mapped to rationals;
                every occurring variable must be assigned

        Returns:
            Fraction: The value
        """
        assigned = dict()
        for key, value in values.items():
            index = key if isinstance(key, int) else \
                self.context.variable_index(key)
            assigned[index] = to_rational(value)
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            term = coeff
            for index, exponent in enumerate(mono):
                if exponent:
                    if index not in assigned:
                        raise ShapeError('no value for %s' %
                                         self.context.names[index])
                    term *= assigned[index] ** exponent
            total += term
        return total

    def evaluate_at(self, points):
        """Evaluates at one image point per camera

        Args:
            points (sequence): n coordinate triples (or pairs in the affine
                context), one per camera in camera order
        """
        values = dict()
        letters = self.context.letters
        if len(points) != self.context.n_cameras:
            raise ShapeError('expected %d image points, got %d' %
                             (self.context.n_cameras, len(points)))
        for camera, point in enumerate(points, start=1):
            if len(point) != len(letters):
                raise ShapeError('image point %r has wrong length' %
                                 (point,))
            for letter, value in zip(letters, point):
                values['%s%d' % (letter, camera)] = value
        return self.evaluate(values)

    def transfer(self, context):
        """Re-expresses the polynomial in another context by variable name

        Raises:
            ContextMismatchError: A used variable does not exist there
        """
        if context == self.context:
            return self
        mapping = dict()
        for index in self.support():
            name = self.context.names[index]
            if name not in context.index:
                raise ContextMismatchError(self.context, context)
            mapping[index] = context.index[name]
        terms = dict()
        for mono, coeff in self._terms.items():
            target = [0] * context.nvars
            for index, exponent in enumerate(mono):
                if exponent:
                    target[mapping[index]] = exponent
            terms[tuple(target)] = coeff
        return Polynomial._raw(context, terms)

    def _monomial_text(self, mono):
        names = self.context.names
        factors = sorted(((names[i], e) for i, e in enumerate(mono) if e),
                         key=lambda item: _name_sort_key(item[0]))
        return '*'.join(name if e == 1 else '%s^%d' % (name, e)
                        for name, e in factors)

    def to_text(self):
        """Returns the canonical text form

        Terms appear in descending degrevlex order, factors of a term
        in name order, e.g. ``x1*x3*y2 - 3/2*y1^2``.
        """
        if not self._terms:
            return '0'
        pieces = list()
        for index, (mono, coeff) in enumerate(self.sorted_terms(DEGREVLEX)):
            sign = '-' if coeff < 0 else '+'
            magnitude = abs(coeff)
            if any(mono):
                body = self._monomial_text(mono)
                if magnitude != 1:
                    body = '%s*%s' % (_coefficient_text(magnitude), body)
            else:
                body = _coefficient_text(magnitude)
            if index == 0:
                pieces.append(body if sign == '+' else '-' + body)
            else:
                pieces.append(' %s %s' % (sign, body))
        return ''.join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return 'Polynomial(%r)' % self.to_text()


_TOKEN = re.compile(r'\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z]+\d*)|'
                    r'(?P<op>\*\*|[-+*^()−]))')


class _Parser(object):

    def __init__(self, text, context):
        self.text = text
        self.context = context
        self.tokens = list()
        position = 0
        stripped = text.rstrip()
        while position < len(stripped):
            match = _TOKEN.match(stripped, position)
            if not match or match.end() == position:
                raise PolynomialParseError(text, 'unexpected character',
                                           position)
            kind = match.lastgroup
            value = match.group(kind)
            if value == '−':
                value = '-'
            self.tokens.append((kind, value, match.start(kind)))
            position = match.end()
        self.pos = 0

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return (None, None, len(self.text))

    def take(self):
        token = self.peek()
        self.pos += 1
        return token

    def fail(self, reason):
        raise PolynomialParseError(self.text, reason, self.peek()[2])

    def parse(self):
        if not self.tokens:
            self.fail('empty input')
        result = self.expression()
        if self.pos != len(self.tokens):
            self.fail('trailing input')
        return result

    def expression(self):
        result = self.product()
        while self.peek()[1] in ('+', '-'):
            op = self.take()[1]
            rhs = self.product()
            result = result + rhs if op == '+' else result - rhs
        return result

    def product(self):
        result = self.unary()
        while self.peek()[1] == '*':
            self.take()
            result = result * self.unary()
        return result

    def unary(self):
        if self.peek()[1] in ('+', '-'):
            op = self.take()[1]
            value = self.unary()
            return value if op == '+' else -value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ('^', '**'):
            self.take()
            kind, value, _ = self.take()
            if kind != 'num' or '/' in value:
                self.fail('exponent must be a non-negative integer')
            base = base ** int(value)
        return base

    def atom(self):
        kind, value, position = self.take()
        if kind == 'num':
            return self.context.constant(Fraction(value))
        if kind == 'var':
            if value not in self.context.index:
                raise PolynomialParseError(self.text,
                                           'unknown variable %s' % value,
                                           position)
            return self.context.var(value)
        if value == '(':
            inner = self.expression()
            if self.take()[1] != ')':
                self.pos -= 1
                self.fail("expected ')'")
            return inner
        self.pos -= 1
        self.fail('unexpected token %r' % (value,))


def parse(text, context):
    """Parses polynomial text in a context

    Accepts the canonical form written by serialize plus arbitrary
    whitespace, ``^`` or ``**`` exponents, parentheses and the unicode
    minus sign.

    Raises:
        PolynomialParseError: The text is not a polynomial over the context
    """
    if not isinstance(text, str):
        raise PolynomialParseError(repr(text), 'expected a string')
    return _Parser(text, context).parse()


def serialize(poly):
    """Returns the canonical text form of a polynomial"""
    return poly.to_text()


Minor = namedtuple('Minor', 'rows cols polynomial')


class SymbolicMatrix(object):
    """A dense matrix of polynomials in one context

    Args:
        context (VariableContext): The ring of the entries
        rows (list): Row lists of Polynomials or rationals
    """

    def __init__(self, context, rows):
        self.context = context
        entries = list()
        width = None
        for row in rows:
            row = [self._entry(value) for value in row]
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ShapeError('matrix rows have different lengths')
            entries.append(tuple(row))
        self._rows = tuple(entries)
        self._ncols = width or 0

    def _entry(self, value):
        if isinstance(value, Polynomial):
            if value.context != self.context:
                raise ContextMismatchError(self.context, value.context)
            return value
        return self.context.constant(value)

    @property
    def nrows(self):
        return len(self._rows)

    @property
    def ncols(self):
        return self._ncols

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, position):
        row, col = position
        return self._rows[row][col]

    def __eq__(self, other):
        if not isinstance(other, SymbolicMatrix):
            return NotImplemented
        return self.context == other.context and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return 'SymbolicMatrix(%dx%d)' % self.shape

    def rows(self):
        return [list(row) for row in self._rows]

    def row(self, index):
        return list(self._rows[index])

    def column(self, index):
        return [row[index] for row in self._rows]

    def submatrix(self, rows, cols):
        return SymbolicMatrix(self.context,
                              [[self._rows[r][c] for c in cols]
                               for r in rows])

    def delete(self, rows=(), cols=()):
        """Returns the matrix with the given rows and columns removed"""
        rows, cols = set(rows), set(cols)
        return self.submatrix(
            [r for r in range(self.nrows) if r not in rows],
            [c for c in range(self.ncols) if c not in cols])

    def transpose(self):
        return SymbolicMatrix(self.context,
                              [self.column(c) for c in range(self.ncols)])

    def __mul__(self, other):
        if not isinstance(other, SymbolicMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ShapeError('cannot multiply %dx%d by %dx%d' %
                             (self.shape + other.shape))
        if other.context != self.context:
            raise ContextMismatchError(self.context, other.context)
        product = list()
        for row in self._rows:
            product_row = list()
            for col in range(other.ncols):
                total = self.context.zero()
                for k, entry in enumerate(row):
                    if entry and other._rows[k][col]:
                        total = total + entry * other._rows[k][col]
                product_row.append(total)
            product.append(product_row)
        return SymbolicMatrix(self.context, product)

    def is_constant(self):
        return all(entry.is_constant() for row in self._rows for entry in row)

    def evaluate_at(self, points):
        """Evaluates every entry at image points, see Polynomial.evaluate_at"""
        return [[entry.evaluate_at(points) for entry in row]
                for row in self._rows]

    def substitute(self, mapping):
        return SymbolicMatrix(self.context,
                              [[entry.substitute(mapping) for entry in row]
                               for row in self._rows])

    def determinant(self):
        return determinant(self)

    def minors(self, k):
        return minors(self, k)

    def to_text(self):
        return '\n'.join('[' + ', '.join(str(e) for e in row) + ']'
                         for row in self._rows)


def vstack(matrices):
    matrices = list(matrices)
    context = matrices[0].context
    rows = list()
    for matrix in matrices:
        if matrix.ncols != matrices[0].ncols:
            raise ShapeError('vstack needs equal column counts')
        rows.extend(matrix.rows())
    return SymbolicMatrix(context, rows)


def hstack(matrices):
    matrices = list(matrices)
    context = matrices[0].context
    if len({m.nrows for m in matrices}) != 1:
        raise ShapeError('hstack needs equal row counts')
    rows = [[] for _ in range(matrices[0].nrows)]
    for matrix in matrices:
        for index, row in enumerate(matrix.rows()):
            rows[index].extend(row)
    return SymbolicMatrix(context, rows)


def block_diagonal(context, blocks):
    """Builds the block diagonal matrix of the given blocks"""
    blocks = list(blocks)
    total_cols = sum(b.ncols for b in blocks)
    rows = list()
    offset = 0
    for block in blocks:
        for row in block.rows():
            full = [context.zero()] * total_cols
            full[offset:offset + block.ncols] = row
            rows.append(full)
        offset += block.ncols
    return SymbolicMatrix(context, rows)


def bareiss_determinant(rows):
    """Fraction-free Bareiss elimination on a square rational matrix

    Args:
        rows (list): Square list of lists of rationals

    Returns:
        Fraction: The determinant
    """
    a = [[to_rational(v) for v in row] for row in rows]
    size = len(a)
    if any(len(row) != size for row in a):
        raise ShapeError('determinant of a non-square matrix')
    if size == 0:
        return Fraction(1)
    sign = 1
    previous = Fraction(1)
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous
        previous = a[k][k]
    return sign * a[size - 1][size - 1]


def _cofactor(entries, rows, cols, memo, context):
    key = (rows, cols)
    if key in memo:
        return memo[key]
    size = len(rows)
    if size == 0:
        result = context.one()
    elif size == 1:
        result = entries[rows[0]][cols[0]]
    elif all(entries[r][c].is_constant() for r in rows for c in cols):
        result = context.constant(bareiss_determinant(
            [[entries[r][c].constant_value() for c in cols] for r in rows]))
    else:
        row_counts = [sum(1 for c in cols if entries[r][c]) for r in rows]
        col_counts = [sum(1 for r in rows if entries[r][c]) for c in cols]
        best_row = min(range(size), key=lambda i: row_counts[i])
        best_col = min(range(size), key=lambda j: col_counts[j])
        result = context.zero()
        if min(row_counts[best_row], col_counts[best_col]) == 0:
            memo[key] = result
            return result
        if row_counts[best_row] <= col_counts[best_col]:
            r = rows[best_row]
            rest_rows = rows[:best_row] + rows[best_row + 1:]
            for j, c in enumerate(cols):
                entry = entries[r][c]
                if not entry:
                    continue
                sub = _cofactor(entries, rest_rows, cols[:j] + cols[j + 1:],
                                memo, context)
                if sub:
                    term = entry * sub
                    result = result - term if (best_row + j) % 2 else \
                        result + term
        else:
            c = cols[best_col]
            rest_cols = cols[:best_col] + cols[best_col + 1:]
            for i, r in enumerate(rows):
                entry = entries[r][c]
                if not entry:
                    continue
                sub = _cofactor(entries, rows[:i] + rows[i + 1:], rest_cols,
                                memo, context)
                if sub:
                    term = entry * sub
                    result = result - term if (best_col + i) % 2 else \
                        result + term
    memo[key] = result
    return result


def determinant(matrix):
    """Exact determinant of a square SymbolicMatrix

    Constant matrices use Bareiss elimination, symbolic ones a memoized
    cofactor expansion along the sparsest line.

    Raises:
        ShapeError: The matrix is not square
    """
    if matrix.nrows != matrix.ncols:
        raise ShapeError('determinant of a %dx%d matrix' % matrix.shape)
    entries = matrix._rows
    indices = tuple(range(matrix.nrows))
    return _cofactor(entries, indices, indices, dict(), matrix.context)


def minors(matrix, k, rows=None, cols=None):
    """Enumerates all k x k minors of a matrix

    Zero minors are included; their polynomial is the zero polynomial.

    Args:
        matrix (SymbolicMatrix): The matrix
        k (int): The minor size
        rows (iterable): Restrict to these row positions
        cols (iterable): Restrict to these column positions

    Returns:
        list: Minor tuples (rows, cols, polynomial), 0-based, in
            lexicographic order of (rows, cols)

    Raises:
        ShapeError: k is outside 1..min(rows, cols)
    """
    rows = tuple(range(matrix.nrows)) if rows is None else tuple(rows)
    cols = tuple(range(matrix.ncols)) if cols is None else tuple(cols)
    if not 1 <= k <= min(len(rows), len(cols)):
        raise ShapeError('minor size %d outside 1..%d' %
                         (k, min(len(rows), len(cols))))
    memo = dict()
    result = list()
    for row_set in itertools.combinations(rows, k):
        for col_set in itertools.combinations(cols, k):
            poly = _cofactor(matrix._rows, row_set, col_set, memo,
                             matrix.context)
            result.append(Minor(row_set, col_set, poly))
    return result
