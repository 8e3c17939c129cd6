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
"""Joint camera matrices and the ideals of their minors

For cameras σ = (i_1 < ... < i_k) the joint matrix 𝒜_σ(p) stacks the
camera rows A_i over the columns (q0..q3 | p_{i_1} .. p_{i_k}), each image
point sitting in its own column next to its camera block.  Its maximal
minors are the k-focals, which generate the k-focal ideal H^k.

The module also builds

  * the Faugeras matrix 𝒜^F(p) = stack([p_i]_x A_i) and the ideals of its
    4x4 minors, F (all), F^2 and F^3 (rows from exactly two or three
    cameras);
  * the 3n x 2 matrix 𝒜^Y(p) of an arrangement with A_1 = [I|0] and the
    ideal Y of its 2x2 minors;
  * bumping of a focal to more cameras and the reverse decomposition;
  * minors of the block diagonal P(p) = diag([p_i]_x) and their closed
    monomial forms.
"""

import logging
import itertools

from mvideal.cameras import kernel, matrix_rank
from mvideal.errors import MvIdealError, PreconditionError, ShapeError
from mvideal.idealengine import Ideal
from mvideal.polycore import (
    SymbolicMatrix,
    block_diagonal,
    determinant,
    get_context,
    minors,
    vstack
)


_LOGGER = logging.getLogger(__name__)


def cross_matrix(context, camera):
    """Returns [p_i]_x = [[0, -z, y], [z, 0, -x], [-y, x, 0]] of a camera"""
    x, y, z = context.image_point(camera)
    zero = context.zero()
    return SymbolicMatrix(context, [[zero, -z, y],
                                    [z, zero, -x],
                                    [-y, x, zero]])


def camera_matrix(context, camera):
    """The constant 3x4 matrix of a Camera in a context"""
    return SymbolicMatrix(context, camera.rows())


def _check_sigma(arrangement, sigma):
    if sigma is None:
        return tuple(range(1, arrangement.n + 1))
    sigma = tuple(sorted(set(int(i) for i in sigma)))
    if not sigma or sigma[0] < 1 or sigma[-1] > arrangement.n:
        raise ShapeError('camera subset %r outside 1..%d' %
                         (sigma, arrangement.n))
    return sigma


class JointMatrix(object):
    """The matrix 𝒜_σ(p) of a camera subset

    Attributes:
        sigma (tuple): 1-based camera numbers in increasing order
        matrix (SymbolicMatrix): The 3k x (4+k) matrix
        row_labels (list): (camera, letter) of every row
    """

    def __init__(self, arrangement, sigma=None, context=None):
        self.sigma = _check_sigma(arrangement, sigma)
        if len(self.sigma) < 2:
            raise PreconditionError('a joint matrix needs at least two '
                                    'cameras', 'joint_matrix')
        self.context = context or get_context(arrangement.n)
        k = len(self.sigma)
        rows = list()
        self.row_labels = list()
        for position, camera_number in enumerate(self.sigma):
            camera = arrangement.camera(camera_number)
            point = self.context.image_point(camera_number)
            for index, letter in enumerate(self.context.letters):
                row = list(camera.matrix[index])
                row.extend([0] * k)
                row[4 + position] = point[index]
                rows.append(row)
                self.row_labels.append((camera_number, letter))
        self.matrix = SymbolicMatrix(self.context, rows)

    def __repr__(self):
        return 'JointMatrix(sigma=%s)' % (self.sigma,)

    @property
    def k(self):
        return len(self.sigma)

    def label(self, row):
        camera, letter = self.row_labels[row]
        return '%s%d' % (letter, camera)

    def rows_of(self, camera):
        return [r for r, label in enumerate(self.row_labels)
                if label[0] == camera]

    def row_index(self, camera, letter):
        return self.row_labels.index((camera, letter))

    def evaluate_at(self, points):
        """Numeric 𝒜_σ(p) for image points of every camera of the context

        Args:
            points (list): One coordinate triple per camera 1..n
        """
        return self.matrix.evaluate_at(points)


def joint_matrix(arrangement, sigma=None, context=None):
    return JointMatrix(arrangement, sigma, context)


class FocalMinor(object):
    """One maximal minor of a joint matrix

    Attributes:
        sigma (tuple): The camera subset
        rows (tuple): Row positions of the minor in 𝒜_σ(p), 0-based
        labels (tuple): Row labels such as 'x1'
        polynomial (Polynomial): The minor
    """

    __slots__ = ('sigma', 'rows', 'labels', 'polynomial')

    def __init__(self, sigma, rows, labels, polynomial):
        self.sigma = tuple(sigma)
        self.rows = tuple(rows)
        self.labels = tuple(labels)
        self.polynomial = polynomial

    def __repr__(self):
        return 'FocalMinor(sigma=%s, rows=%s, %s)' % (
            self.sigma, ','.join(self.labels), self.polynomial)

    @property
    def k(self):
        return len(self.sigma)

    def is_zero(self):
        return self.polynomial.is_zero()

    def row_distribution(self):
        """Number of rows taken from every camera of sigma"""
        counts = {camera: 0 for camera in self.sigma}
        for label in self.labels:
            counts[int(label[1:])] += 1
        return counts

    def to_dict(self):
        return {'sigma': list(self.sigma),
                'rows': list(self.labels),
                'polynomial': self.polynomial.to_text()}


def _check_k(arrangement, k):
    if not 2 <= k <= arrangement.n:
        raise ShapeError('k must lie in 2..%d, got %d' % (arrangement.n, k))


def focal_minors(arrangement, k, sigma=None, context=None,
                 include_zero=True):
    """Enumerates the k-focals of an arrangement

    Args:
        arrangement (Arrangement): The cameras
        k (int): Subset size, 2 <= k <= n
        sigma (iterable): Restrict to this subset (must have size k)
        include_zero (bool): Keep identically zero minors

    Returns:
        list: FocalMinor instances ordered by subset then row set

    Raises:
        ShapeError: k or sigma is out of range
    """
    _check_k(arrangement, k)
    context = context or get_context(arrangement.n)
    if sigma is not None:
        subsets = [_check_sigma(arrangement, sigma)]
        if len(subsets[0]) != k:
            raise ShapeError('subset %r does not have size %d' %
                             (subsets[0], k))
    else:
        subsets = itertools.combinations(range(1, arrangement.n + 1), k)
    result = list()
    for subset in subsets:
        joint = JointMatrix(arrangement, subset, context)
        for minor in minors(joint.matrix, 4 + k):
            if minor.polynomial.is_zero() and not include_zero:
                continue
            result.append(FocalMinor(
                subset, minor.rows, [joint.label(r) for r in minor.rows],
                minor.polynomial))
    return result


def k_focal_ideal(arrangement, k, context=None):
    """The ideal H^k generated by all nonzero k-focals"""
    context = context or get_context(arrangement.n)
    generators = [m.polynomial for m in
                  focal_minors(arrangement, k, context=context,
                               include_zero=False)]
    return Ideal(context, generators)


def focal_sum(arrangement, ks=(2, 3), context=None):
    """Returns the sum of the k-focal ideals for the given k

    Orders k above the number of cameras contribute the zero ideal.
    """
    context = context or get_context(arrangement.n)
    generators = list()
    for k in ks:
        if k > arrangement.n:
            continue
        generators.extend(k_focal_ideal(arrangement, k, context).generators)
    return Ideal(context, generators)


class FocalIdealSet(object):
    """Lazily computed k-focal ideals of one arrangement

    Minors and ideals are built on first access and kept for the life of
    the instance.

    Args:
        arrangement (Arrangement): The cameras
        context (VariableContext): Optional shared context
    """

    def __init__(self, arrangement, context=None):
        self.arrangement = arrangement
        self.context = context or get_context(arrangement.n)
        self._minors = dict()
        self._ideals = dict()

    def __repr__(self):
        return 'FocalIdealSet(%r)' % self.arrangement

    def minors(self, k):
        if k > self.arrangement.n:
            return []
        if k not in self._minors:
            self._minors[k] = focal_minors(self.arrangement, k,
                                           context=self.context)
        return self._minors[k]

    def ideal(self, k):
        if k not in self._ideals:
            self._ideals[k] = Ideal(self.context,
                                    [m.polynomial for m in self.minors(k)
                                     if not m.is_zero()])
        return self._ideals[k]

    def __getitem__(self, k):
        return self.ideal(k)

    def counts(self, k):
        """Total, nonzero and zero minor counts for H^k"""
        found = self.minors(k)
        zero = sum(1 for m in found if m.is_zero())
        return {'k': k, 'total': len(found), 'nonzero': len(found) - zero,
                'zero': zero}


def _permutation_sign(sequence):
    inversions = sum(1 for a, b in itertools.combinations(sequence, 2)
                     if a > b)
    return -1 if inversions % 2 else 1


def bump(arrangement, minor, tau, coordinates, context=None):
    """Extends a focal on sigma to a focal on a larger subset tau

    Every camera i of tau outside sigma contributes the bordered row of its
    camera row w_i (one of 'x', 'y', 'z') with the variable w_i in its own
    new column, so the bordered determinant equals (prod w_i) * f.  Moving
    the new rows and columns into their places in 𝒜_τ(p) multiplies it by
    the sign of that reordering, which is +1 when every new camera follows
    sigma.

    Args:
        arrangement (Arrangement): The cameras
        minor (FocalMinor): The focal f on sigma
        tau (iterable): A camera subset containing sigma
        coordinates (dict): camera -> letter for each camera in tau - sigma

    Returns:
        FocalMinor: The focal of 𝒜_τ(p) on the bumped rows, equal to
            +-(prod w_i) * f

    Raises:
        PreconditionError: sigma is not a subset of tau, or a coordinate
            is missing
    """
    context = context or minor.polynomial.context
    tau = _check_sigma(arrangement, tau)
    extra = [i for i in tau if i not in minor.sigma]
    if not set(minor.sigma) <= set(tau):
        raise PreconditionError('sigma must be a subset of tau', 'bump')
    if set(coordinates) != set(extra):
        raise PreconditionError('need one coordinate for every camera '
                                'of tau outside sigma', 'bump')
    source = JointMatrix(arrangement, minor.sigma, context)
    width = 4 + len(minor.sigma) + len(extra)
    rows = list()
    for row in minor.rows:
        entries = source.matrix.row(row)
        rows.append(entries + [context.zero()] * len(extra))
    factor = context.one()
    for position, camera_number in enumerate(extra):
        letter = coordinates[camera_number]
        if letter not in context.letters:
            raise PreconditionError('unknown coordinate %r' % letter, 'bump')
        index = context.letters.index(letter)
        camera = arrangement.camera(camera_number)
        entries = [context.constant(v) for v in camera.matrix[index]]
        entries.extend([context.zero()] * (width - 4))
        variable = context.var('%s%d' % (letter, camera_number))
        entries[4 + len(minor.sigma) + position] = variable
        factor = factor * variable
        rows.append(entries)
    bordered = determinant(SymbolicMatrix(context, rows))
    if bordered != factor * minor.polynomial:
        raise MvIdealError('bumping identity failed for %r' % (minor,))
    target = JointMatrix(arrangement, tau, context)
    labels = list(minor.labels)
    labels.extend('%s%d' % (coordinates[i], i) for i in extra)
    placed = [target.row_index(int(label[1:]), label[0]) for label in labels]
    columns = [tau.index(i) for i in list(minor.sigma) + extra]
    sign = _permutation_sign(placed) * _permutation_sign(columns)
    positions = sorted(placed)
    return FocalMinor(tau, positions, [target.label(r) for r in positions],
                      bordered.scale(sign))


def decompose_focal(arrangement, minor, context=None):
    """Writes a k-focal (k > 4) as a signed monomial times a j-focal, j <= 4

    A camera contributing a single row to the minor has a single nonzero
    entry in its image column; expanding along that column strips the
    camera.  By pigeonhole such a camera exists while k > 4.

    Returns:
        tuple: (monomial Polynomial with sign, FocalMinor on the remaining
            cameras); the product equals the input minor

    Raises:
        PreconditionError: The minor is zero
    """
    if minor.is_zero():
        raise PreconditionError('cannot decompose a zero focal',
                                'decompose_focal')
    context = context or minor.polynomial.context
    sigma = list(minor.sigma)
    labels = list(minor.labels)
    factor = context.one()
    while len(sigma) > 4:
        counts = {camera: 0 for camera in sigma}
        for label in labels:
            counts[int(label[1:])] += 1
        single = next(c for c in sigma if counts[c] == 1)
        row_position = next(i for i, label in enumerate(labels)
                            if int(label[1:]) == single)
        column_position = 4 + sigma.index(single)
        label = labels[row_position]
        sign = -1 if (row_position + column_position) % 2 else 1
        factor = factor * context.var(label).scale(sign)
        sigma.remove(single)
        del labels[row_position]
    joint = JointMatrix(arrangement, sigma, context)
    positions = [joint.row_index(int(label[1:]), label[0])
                 for label in labels]
    inner = determinant(joint.matrix.submatrix(positions,
                                               range(4 + len(sigma))))
    if factor * inner != minor.polynomial:
        raise MvIdealError('focal decomposition failed for %r' % (minor,))
    return factor, FocalMinor(sigma, positions, labels, inner)


def faugeras_matrix(arrangement, context=None):
    """The 3n x 4 matrix stacking [p_i]_x A_i"""
    context = context or get_context(arrangement.n)
    blocks = [cross_matrix(context, i) *
              camera_matrix(context, arrangement.camera(i))
              for i in range(1, arrangement.n + 1)]
    return vstack(blocks)


def cross_block_diagonal(context):
    """P(p) = diag([p_1]_x, ..., [p_n]_x)"""
    return block_diagonal(context,
                          [cross_matrix(context, i)
                           for i in range(1, context.n_cameras + 1)])


class FaugerasMinor(object):
    """A 4x4 minor of the Faugeras matrix and the cameras it draws on"""

    __slots__ = ('rows', 'cameras', 'polynomial')

    def __init__(self, rows, polynomial):
        self.rows = tuple(rows)
        self.cameras = tuple(sorted({r // 3 + 1 for r in self.rows}))
        self.polynomial = polynomial

    def __repr__(self):
        return 'FaugerasMinor(rows=%s, %s)' % (self.rows, self.polynomial)


def faugeras_minors(arrangement, context=None):
    context = context or get_context(arrangement.n)
    matrix = faugeras_matrix(arrangement, context)
    return [FaugerasMinor(m.rows, m.polynomial) for m in minors(matrix, 4)]


class FaugerasIdeals(object):
    """The ideals F, F^2 and F^3 of the Faugeras matrix minors

    Attributes:
        full (Ideal): All nonzero 4x4 minors
        bifocal (Ideal): Minors with rows from exactly two cameras
        trifocal (Ideal): Minors with rows from exactly three cameras
    """

    def __init__(self, arrangement, context=None):
        self.context = context or get_context(arrangement.n)
        self.minors = faugeras_minors(arrangement, self.context)
        nonzero = [m for m in self.minors if not m.polynomial.is_zero()]
        self.full = Ideal(self.context, [m.polynomial for m in nonzero])
        self.bifocal = Ideal(self.context, [m.polynomial for m in nonzero
                                            if len(m.cameras) == 2])
        self.trifocal = Ideal(self.context, [m.polynomial for m in nonzero
                                             if len(m.cameras) == 3])

    def __repr__(self):
        return 'FaugerasIdeals(%d minors)' % len(self.minors)


def faugeras_ideals(arrangement, context=None):
    return FaugerasIdeals(arrangement, context)


def _require_normalized(arrangement, operation):
    if not arrangement.first_is_normalized():
        raise PreconditionError('first camera must be [I|0]', operation)


def ma_matrix(arrangement, context=None):
    """The 3n x 2 matrix with rows (p_i x (B_i p_1), p_i x t_i)

    Requires A_1 = [I|0]; A_i = [B_i | t_i].

    Raises:
        PreconditionError: The first camera is not [I|0]
    """
    _require_normalized(arrangement, 'ma_matrix')
    context = context or get_context(arrangement.n)
    first = context.image_point(1)
    rows = list()
    for number in range(1, arrangement.n + 1):
        camera = arrangement.camera(number)
        moved = list()
        for row in camera.left_block:
            value = context.zero()
            for coeff, var in zip(row, first):
                if coeff:
                    value = value + var.scale(coeff)
            moved.append(value)
        cross = cross_matrix(context, number)
        for r in range(3):
            left = context.zero()
            right = context.zero()
            for c in range(3):
                entry = cross[r, c]
                if entry:
                    left = left + entry * moved[c]
                    if camera.translation[c]:
                        right = right + entry.scale(camera.translation[c])
            rows.append([left, right])
    return SymbolicMatrix(context, rows)


def ma_factor(context):
    """The 4x2 matrix [[p_1, 0], [0, 1]] with 𝒜^Y = 𝒜^F [[p_1, 0], [0, 1]]"""
    x, y, z = context.image_point(1)
    zero = context.zero()
    return SymbolicMatrix(context, [[x, zero], [y, zero], [z, zero],
                                    [zero, context.one()]])


def ma_ideal(arrangement, context=None):
    """The ideal Y of the nonzero 2x2 minors of 𝒜^Y(p)"""
    context = context or get_context(arrangement.n)
    matrix = ma_matrix(arrangement, context)
    return Ideal(context, [m.polynomial for m in minors(matrix, 2)
                           if not m.polynomial.is_zero()])


def _positions(selectors, context):
    positions = list()
    for camera, coordinate in selectors:
        if not 1 <= camera <= context.n_cameras or \
                not 1 <= coordinate <= 3:
            raise ShapeError('selector p%d%d out of range' %
                             (camera, coordinate))
        positions.append(3 * (camera - 1) + coordinate - 1)
    return positions


def p_minor(context, deleted_rows, deleted_cols):
    """A minor of P(p) given by the rows and columns it removes

    The selector (i, j) removes from the block [p_i]_x its row (or column)
    j, which is the unique one not containing p_ij.

    Args:
        context (VariableContext): Homogeneous context
        deleted_rows (iterable): (camera, coordinate) pairs, 1-based
        deleted_cols (iterable): (camera, coordinate) pairs, 1-based

    Returns:
        Polynomial: The determinant of the remaining square submatrix
    """
    matrix = cross_block_diagonal(context)
    rows = _positions(deleted_rows, context)
    cols = _positions(deleted_cols, context)
    if len(set(rows)) != len(set(cols)):
        raise ShapeError('a minor needs as many rows as columns')
    return determinant(matrix.delete(rows, cols))


def _p(context, camera, coordinate):
    return context.var('%s%d' % ('xyz'[coordinate - 1], camera))


def _epsilon(a, b, c):
    return (a - b) * (b - c) * (c - a) // 2


def p_minor_closed_form(context, deleted_rows, deleted_cols):
    """Monomial form of the 4x4 minors of P(p) for two or three cameras

    Two cameras, rows R = {p1j, p2k} and columns C = {p1l, p2m} removed:
    (-1)^(j+k+l+m) p1j p2k p1l p2m.

    Three cameras with two rows and columns removed from blocks 1 and 2
    and one from block 3 (R3 = {p3j}, C3 = {p3k}): zero when R1 = C1 or
    R2 = C2, else e1 e2 (-1)^(j+k) p3j p3k p1l p2m where p1l and p2m are
    the common selectors of R1, C1 and R2, C2.  The surviving entry of
    block i sits in row a and column b, the selectors missing from R_i and
    C_i, and equals -epsilon(a, b, l) p_il, so e_i = epsilon(a, b, l).
    """
    rows = dict()
    cols = dict()
    for camera, coordinate in deleted_rows:
        rows.setdefault(camera, set()).add(coordinate)
    for camera, coordinate in deleted_cols:
        cols.setdefault(camera, set()).add(coordinate)
    if context.n_cameras == 2:
        (j,), (k,) = rows.get(1, ()), rows.get(2, ())
        (l,), (m,) = cols.get(1, ()), cols.get(2, ())
        sign = -1 if (j + k + l + m) % 2 else 1
        return (_p(context, 1, j) * _p(context, 2, k) *
                _p(context, 1, l) * _p(context, 2, m)).scale(sign)
    if context.n_cameras == 3:
        if len(rows.get(1, ())) != 2 or len(cols.get(1, ())) != 2 or \
                len(rows.get(2, ())) != 2 or len(cols.get(2, ())) != 2 or \
                len(rows.get(3, ())) != 1 or len(cols.get(3, ())) != 1:
            raise ShapeError('closed form needs |R1|=|R2|=2 and |R3|=1')
        if rows[1] == cols[1] or rows[2] == cols[2]:
            return context.zero()
        (j,), (k,) = rows[3], cols[3]
        sign = -1 if (j + k) % 2 else 1
        common = list()
        for block in (1, 2):
            (a,) = {1, 2, 3} - rows[block]
            (b,) = {1, 2, 3} - cols[block]
            (shared,) = rows[block] & cols[block]
            sign *= _epsilon(a, b, shared)
            common.append(shared)
        l, m = common
        return (_p(context, 3, j) * _p(context, 3, k) *
                _p(context, 1, l) * _p(context, 2, m)).scale(sign)
    raise ShapeError('closed forms exist for two or three cameras')


def faugeras_bifocal_relation(arrangement, pair, j, k, context=None):
    """The Faugeras bifocal identity for cameras pair = (a, b)

    Keeping all rows of the blocks a and b except row j of a and row k
    of b gives a 4x4 minor f of 𝒜^F(p) with
    f = (-1)^(j+k) p_aj p_bk det 𝒜_{a,b}(p).

    Returns:
        tuple: (f, right hand side)
    """
    context = context or get_context(arrangement.n)
    a, b = sorted(pair)
    matrix = faugeras_matrix(arrangement, context)
    kept = [3 * (a - 1) + r for r in range(3) if r != j - 1]
    kept += [3 * (b - 1) + r for r in range(3) if r != k - 1]
    f = determinant(matrix.submatrix(kept, range(4)))
    bifocal = determinant(JointMatrix(arrangement, (a, b), context).matrix)
    sign = -1 if (j + k) % 2 else 1
    rhs = (_p(context, a, j) * _p(context, b, k) * bifocal).scale(sign)
    return f, rhs


def faugeras_trifocal_relation(arrangement, triple, j1, j2, k, context=None):
    """The Faugeras trifocal identity for cameras (i1, i2, i3)

    Keeping row j1 of block i1, row j2 of block i2 and the rows of block i3
    except k gives a minor f of 𝒜^F(p) with
    f = s (-1)^(j1+j2+k) p_{i3 k} T, where T is the trifocal of 𝒜_σ(p)
    without the rows (i1, j1) and (i2, j2) and s is -1 when i3 lies
    between i1 and i2, else 1.

    Returns:
        tuple: (f, right hand side)
    """
    context = context or get_context(arrangement.n)
    i1, i2, i3 = triple
    matrix = faugeras_matrix(arrangement, context)
    kept = sorted([3 * (i1 - 1) + j1 - 1, 3 * (i2 - 1) + j2 - 1] +
                  [3 * (i3 - 1) + r for r in range(3) if r != k - 1])
    f = determinant(matrix.submatrix(kept, range(4)))
    joint = JointMatrix(arrangement, triple, context)
    letters = context.letters
    dropped = [joint.row_index(i1, letters[j1 - 1]),
               joint.row_index(i2, letters[j2 - 1])]
    trifocal = determinant(joint.matrix.delete(rows=dropped))
    sign = -1 if (j1 + j2 + k) % 2 else 1
    if (i1 < i3) != (i2 < i3):
        sign = -sign
    return f, (_p(context, i3, k) * trifocal).scale(sign)


def joint_rank_at(arrangement, points):
    """Rank and kernel of the numeric 𝒜(p) at image points

    Returns:
        tuple: (rank, kernel basis as lists of Fractions)
    """
    numeric = JointMatrix(arrangement).evaluate_at(points)
    return matrix_rank(numeric), kernel(numeric)
