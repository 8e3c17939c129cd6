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
"""Cameras, camera arrangements and their geometry

A Camera is an exact rank 3 matrix in Q^{3x4}; its focus is the kernel
vector.  An Arrangement is an ordered list of at least two cameras and
answers the geometric questions the verifications depend on: distinct
foci, coplanar or collinear foci and minor-genericity.

Arrangements are read from JSON documents of the form::

    {"cameras": [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], ...]}

with integer or "p/q" entries, or from the shorthands::

    {"kind": "translational", "t": [[0, 0, 0], [1, 0, 0]]}
    {"kind": "euclidean", "cameras": [{"q": [1, 0, 0, 0], "t": [0, 0, 0]}]}

Exact linear algebra over the rationals is done with sympy matrices.
"""

import hashlib
import logging
import itertools
from collections import namedtuple
from fractions import Fraction

import sympy

from mvideal.errors import ArrangementError, CameraError
from mvideal.polycore import (
    bareiss_determinant,
    format_rational,
    to_rational
)
from mvideal.utils import dumps, loads


_LOGGER = logging.getLogger(__name__)

DEFAULT_RETRIES = 10
DEFAULT_RANDOM_BOX = 10


def to_sympy(rows):
    """Converts a list of rational rows to an exact sympy Matrix"""
    return sympy.Matrix([[sympy.Rational(value.numerator, value.denominator)
                          for value in (to_rational(v) for v in row)]
                         for row in rows])


def from_sympy(value):
    """Converts a sympy rational to a Fraction"""
    return Fraction(int(value.p), int(value.q))


def matrix_rank(rows):
    rows = [list(row) for row in rows]
    if not rows:
        return 0
    return to_sympy(rows).rank()


def kernel(rows):
    """Returns a basis of the right kernel as lists of Fractions"""
    basis = to_sympy(rows).nullspace()
    return [[from_sympy(value) for value in vector] for vector in basis]


def solve(rows, rhs):
    """Returns one exact solution x of rows * x = rhs

    Raises:
        CameraError: The system is inconsistent
    """
    matrix = to_sympy(rows)
    vector = to_sympy([[value] for value in rhs])
    try:
        solution, params = matrix.gauss_jordan_solve(vector)
    except ValueError:
        raise CameraError('linear system has no solution')
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})
    return [from_sympy(value) for value in solution]


def inverse(rows):
    """Exact inverse of a square rational matrix

    Raises:
        CameraError: The matrix is singular
    """
    matrix = to_sympy(rows)
    if matrix.det() == 0:
        raise CameraError('matrix is singular')
    return [[from_sympy(value) for value in matrix.inv().row(i)]
            for i in range(matrix.rows)]


def mat_mul(left, right):
    return [[sum((a * b for a, b in zip(row, column)), Fraction(0))
             for column in zip(*right)] for row in left]


def mat_vec(matrix, vector):
    return [sum((a * b for a, b in zip(row, vector)), Fraction(0))
            for row in matrix]


class ProjectivePoint(object):
    """A point of projective space with exact canonical coordinates

    Coordinates are scaled so that the first nonzero entry is 1, which
    makes equality and hashing of projective points exact.

    Raises:
        CameraError: All coordinates are zero
    """

    __slots__ = ('coords',)

    def __init__(self, coords):
        values = [to_rational(v) for v in coords]
        pivot = next((v for v in values if v), None)
        if pivot is None:
            raise CameraError('the zero vector is not a projective point')
        self.coords = tuple(v / pivot for v in values)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, index):
        return self.coords[index]

    def __repr__(self):
        return 'ProjectivePoint(%s)' % ', '.join(
            str(format_rational(v)) for v in self.coords)

    @property
    def is_finite(self):
        return self.coords[-1] != 0

    def to_list(self):
        return [format_rational(v) for v in self.coords]


class Camera(object):
    """A projective camera, a rank 3 matrix of rationals

    Args:
        matrix (list): Three rows of four rationals (int, Fraction or
            'p/q' strings)

    Raises:
        CameraError: The matrix is not 3x4 or does not have rank 3
    """

    def __init__(self, matrix):
        rows = [list(row) for row in matrix]
        if len(rows) != 3 or any(len(row) != 4 for row in rows):
            raise CameraError('a camera is a 3x4 matrix')
        self.matrix = tuple(tuple(to_rational(v) for v in row)
                            for row in rows)
        if matrix_rank(self.matrix) != 3:
            raise CameraError('camera matrix must have rank 3',
                              self.to_list())
        self._focus = None

    def __eq__(self, other):
        if not isinstance(other, Camera):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return 'Camera(%s)' % self.to_list()

    @property
    def focus(self):
        """The camera center, the kernel of the matrix"""
        if self._focus is None:
            self._focus = ProjectivePoint(kernel(self.matrix)[0])
        return self._focus

    @property
    def left_block(self):
        return [list(row[:3]) for row in self.matrix]

    @property
    def translation(self):
        return [row[3] for row in self.matrix]

    def is_normalized(self):
        """True for the camera [I|0]"""
        identity = tuple(tuple(Fraction(int(i == j)) for j in range(4))
                         for i in range(3))
        return self.matrix == identity

    def project(self, point):
        """Images a world point

        Raises:
            CameraError: The point is the focus, its image is undefined
        """
        image = mat_vec(self.matrix, list(point))
        if not any(image):
            raise CameraError('projection of the camera focus is undefined')
        return ProjectivePoint(image)

    def rows(self):
        return [list(row) for row in self.matrix]

    def to_list(self):
        return [[format_rational(v) for v in row] for row in self.matrix]


Predicates = namedtuple('Predicates', 'distinct_foci coplanar collinear '
                        'minor_generic coplanar_vacuous finite_foci')


class ImageChange(object):
    """Invertible 3x3 transformations, one per camera image

    The induced substitution sends each image point p_i to G_i^{-1} p_i,
    which carries the ideals of an arrangement to those of the
    transformed arrangement.

    Args:
        matrices (list): One invertible 3x3 rational matrix per camera
    """

    def __init__(self, matrices):
        self.matrices = [[[to_rational(v) for v in row] for row in m]
                         for m in matrices]
        self.inverses = [inverse(m) for m in self.matrices]

    def __len__(self):
        return len(self.matrices)

    def substitution(self, context):
        """Returns the variable map of p_i -> G_i^{-1} p_i"""
        mapping = dict()
        for camera, inv in enumerate(self.inverses, start=1):
            point = context.image_point(camera)
            for row, letter in zip(inv, context.letters):
                image = context.zero()
                for coeff, var in zip(row, point):
                    if coeff:
                        image = image + var.scale(coeff)
                mapping[context.image_variable(camera, letter)] = image
        return mapping

    def apply(self, poly):
        """Applies the substitution to a Polynomial"""
        return poly.substitute(self.substitution(poly.context))

    def apply_ideal(self, ideal):
        from mvideal.idealengine import Ideal
        mapping = self.substitution(ideal.context)
        return Ideal(ideal.context,
                     [g.substitute(mapping) for g in ideal.generators])

    def map_points(self, points):
        """Returns G_i p_i for image points of the original arrangement"""
        return [mat_vec(m, list(p)) for m, p in zip(self.matrices, points)]


class Arrangement(object):
    """An ordered list of at least two cameras

    Cameras are numbered from 1 in the methods that take camera numbers,
    matching the variable names x1, y1, z1, ...

    Args:
        cameras (list): Camera instances or 3x4 rational matrices
        name (str): Optional label used in reports
    """

    def __init__(self, cameras, name=None):
        cameras = [c if isinstance(c, Camera) else Camera(c) for c in cameras]
        if len(cameras) < 2:
            raise ArrangementError('an arrangement needs at least two cameras')
        self.cameras = tuple(cameras)
        self.name = name
        self._predicates = None

    def __len__(self):
        return len(self.cameras)

    def __iter__(self):
        return iter(self.cameras)

    def __repr__(self):
        return 'Arrangement(n=%d%s)' % (
            self.n, ', name=%r' % self.name if self.name else '')

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.cameras == other.cameras

    def __hash__(self):
        return hash(self.cameras)

    @property
    def n(self):
        return len(self.cameras)

    def camera(self, number):
        """Returns camera number 1..n"""
        if not 1 <= number <= self.n:
            raise CameraError('camera %d outside 1..%d' % (number, self.n))
        return self.cameras[number - 1]

    @property
    def foci(self):
        return [camera.focus for camera in self.cameras]

    def epipole(self, i, j):
        """Returns the image A_j c_i of focus i in camera j

        Raises:
            CameraError: The foci of cameras i and j coincide
        """
        return self.camera(j).project(self.camera(i).focus)

    def stacked(self):
        """The 3n x 4 matrix of all camera rows"""
        rows = list()
        for camera in self.cameras:
            rows.extend(camera.rows())
        return rows

    def first_is_normalized(self):
        return self.cameras[0].is_normalized()

    def distinct_foci(self):
        return len(set(self.foci)) == self.n

    def foci_rank(self):
        return matrix_rank([list(c) for c in self.foci])

    def coplanar(self):
        """True when the foci lie on a plane (always for n < 4)"""
        return self.foci_rank() <= 3

    def collinear(self):
        return self.foci_rank() <= 2

    def minor_generic(self):
        """True when every 4x4 minor of the stacked camera rows is nonzero"""
        rows = self.stacked()
        for chosen in itertools.combinations(range(len(rows)), 4):
            if not bareiss_determinant([rows[r] for r in chosen]):
                return False
        return True

    def finite_foci(self):
        return all(c.is_finite for c in self.foci)

    def euclidean(self):
        """True when every left block is a rotation (R R^T = I, det R = 1)"""
        for camera in self.cameras:
            block = camera.left_block
            for i in range(3):
                for j in range(3):
                    dot = sum(block[i][k] * block[j][k] for k in range(3))
                    if dot != (1 if i == j else 0):
                        return False
            if bareiss_determinant(block) != 1:
                return False
        return True

    @property
    def predicates(self):
        if self._predicates is None:
            vacuous = self.n < 4
            if vacuous:
                _LOGGER.warning('%r: fewer than four foci, coplanarity is '
                                'vacuous', self)
            self._predicates = Predicates(
                distinct_foci=self.distinct_foci(),
                coplanar=self.coplanar(),
                collinear=self.collinear(),
                minor_generic=self.minor_generic(),
                coplanar_vacuous=vacuous,
                finite_foci=self.finite_foci())
        return self._predicates

    def plane_through_foci(self):
        """Returns a plane (as a 4-vector) containing every focus

        Raises:
            CameraError: The foci are not coplanar
        """
        basis = kernel([list(c) for c in self.foci])
        if not basis:
            raise CameraError('foci are not coplanar')
        return basis[0]

    def world_transform(self, matrix):
        """Returns the arrangement with cameras A_i G for G in GL_4

        Raises:
            CameraError: G is singular
        """
        g = [[to_rational(v) for v in row] for row in matrix]
        if len(g) != 4 or any(len(row) != 4 for row in g):
            raise CameraError('world transform must be 4x4')
        if not bareiss_determinant(g):
            raise CameraError('world transform is singular')
        return Arrangement([mat_mul(c.rows(), g) for c in self.cameras],
                           name=self.name)

    def image_transform(self, matrices):
        """Returns (arrangement with cameras G_i A_i, the ImageChange)

        Raises:
            CameraError: Some G_i is singular or the count is wrong
        """
        if len(matrices) != self.n:
            raise CameraError('need one image transform per camera')
        change = ImageChange(matrices)
        cameras = [mat_mul(m, c.rows())
                   for m, c in zip(change.matrices, self.cameras)]
        return Arrangement(cameras, name=self.name), change

    def project(self, point):
        """Returns the image tuple of a world point"""
        return [camera.project(point) for camera in self.cameras]

    def to_dict(self):
        return {'cameras': [c.to_list() for c in self.cameras]}

    def fingerprint(self):
        """Short stable digest of the camera matrices"""
        digest = hashlib.sha256(dumps(self.to_dict()).encode('utf-8'))
        return digest.hexdigest()[:16]


def quaternion_rotation(quaternion):
    """Exact rotation matrix of a nonzero rational quaternion (a, b, c, d)

    Raises:
        CameraError: The quaternion is zero
    """
    a, b, c, d = [to_rational(v) for v in quaternion]
    norm = a * a + b * b + c * c + d * d
    if not norm:
        raise CameraError('zero quaternion')
    return [[(a * a + b * b - c * c - d * d) / norm,
             2 * (b * c - a * d) / norm,
             2 * (b * d + a * c) / norm],
            [2 * (b * c + a * d) / norm,
             (a * a - b * b + c * c - d * d) / norm,
             2 * (c * d - a * b) / norm],
            [2 * (b * d - a * c) / norm,
             2 * (c * d + a * b) / norm,
             (a * a - b * b - c * c + d * d) / norm]]


def translational_arrangement(translations, name=None):
    """Cameras [I | t_i]"""
    cameras = list()
    for t in translations:
        t = [to_rational(v) for v in t]
        if len(t) != 3:
            raise ArrangementError('translation %r is not a 3-vector' % (t,))
        cameras.append([[int(i == j) for j in range(3)] + [t[i]]
                        for i in range(3)])
    return Arrangement(cameras, name=name)


def euclidean_arrangement(poses, name=None):
    """Cameras [R_i | t_i] with R_i given by rational quaternions

    Args:
        poses (list): Pairs (quaternion, translation)
    """
    cameras = list()
    for quaternion, t in poses:
        rotation = quaternion_rotation(quaternion)
        t = [to_rational(v) for v in t]
        cameras.append([rotation[i] + [t[i]] for i in range(3)])
    return Arrangement(cameras, name=name)


def make_arrangement(kind, data, name=None):
    """Builds an arrangement from a kind and its data

    Args:
        kind (str): 'raw', 'translational' or 'euclidean'
        data (list): Camera matrices, translations or (q, t) poses
    """
    if kind == 'raw':
        return Arrangement(data, name=name)
    if kind == 'translational':
        return translational_arrangement(data, name=name)
    if kind == 'euclidean':
        return euclidean_arrangement(data, name=name)
    raise ArrangementError('unknown arrangement kind %r' % kind)


def arrangement_from_dict(document, source=None):
    """Parses an arrangement document

    Raises:
        ArrangementError: The document is malformed
    """
    if not isinstance(document, dict):
        raise ArrangementError('arrangement must be a JSON object', source)
    name = document.get('name')
    kind = document.get('kind', 'raw')
    try:
        if kind == 'translational':
            return translational_arrangement(document['t'], name=name)
        if kind == 'euclidean':
            poses = [(pose['q'], pose['t']) for pose in document['cameras']]
            return euclidean_arrangement(poses, name=name)
        if kind == 'raw':
            return Arrangement(document['cameras'], name=name)
    except KeyError as exc:
        raise ArrangementError('missing key %s' % exc, source)
    except (TypeError, ValueError) as exc:
        raise ArrangementError(str(exc), source)
    except CameraError as exc:
        raise ArrangementError(exc.message, source)
    raise ArrangementError('unknown arrangement kind %r' % kind, source)


def load_arrangement(path):
    """Reads an arrangement JSON file

    Raises:
        ArrangementError: The file cannot be read or parsed
    """
    try:
        with open(path, encoding='utf-8') as handle:
            document = loads(handle.read())
    except OSError as exc:
        raise ArrangementError(str(exc), path)
    except ValueError as exc:
        raise ArrangementError('invalid JSON: %s' % exc, path)
    return arrangement_from_dict(document, source=path)


def random_matrix(rng, rows, cols, box=DEFAULT_RANDOM_BOX):
    return [[Fraction(rng.randint(-box, box)) for _ in range(cols)]
            for _ in range(rows)]


def random_invertible(rng, size, box=DEFAULT_RANDOM_BOX):
    """Returns a random invertible integer matrix"""
    while True:
        matrix = random_matrix(rng, size, size, box)
        if bareiss_determinant(matrix):
            return matrix


def random_arrangement(rng, n, box=DEFAULT_RANDOM_BOX, distinct=True):
    """Returns n random integer cameras, with distinct foci by default"""
    while True:
        cameras = list()
        while len(cameras) < n:
            matrix = random_matrix(rng, 3, 4, box)
            if matrix_rank(matrix) == 3:
                cameras.append(matrix)
        arrangement = Arrangement(cameras)
        if not distinct or arrangement.distinct_foci():
            return arrangement


def random_world_point(rng, box=DEFAULT_RANDOM_BOX):
    return [Fraction(rng.randint(-box, box)) for _ in range(3)] + \
        [Fraction(1)]


def minor_generic_search(arrangement, rng, retries=DEFAULT_RETRIES,
                         box=DEFAULT_RANDOM_BOX):
    """Searches image transforms making the arrangement minor-generic

    Returns:
        tuple: (transformed arrangement, ImageChange), or None when no
            transform was found within the retry budget
    """
    for attempt in range(retries):
        matrices = [random_invertible(rng, 3, box)
                    for _ in range(arrangement.n)]
        candidate, change = arrangement.image_transform(matrices)
        if candidate.minor_generic():
            _LOGGER.debug('minor-generic transform found on attempt %d',
                          attempt + 1)
            return candidate, change
    _LOGGER.warning('%r: no minor-generic image transform in %d attempts',
                    arrangement, retries)
    return None


def finite_foci_transform(arrangement, rng, retries=DEFAULT_RETRIES,
                          box=DEFAULT_RANDOM_BOX):
    """Searches G in GL_4 so that every focus of the arrangement A G is finite

    Returns:
        list: The 4x4 matrix G, or None within the retry budget
    """
    for _ in range(retries):
        g = random_invertible(rng, 4, box)
        moved = arrangement.world_transform(g)
        if moved.finite_foci():
            return g
    _LOGGER.warning('%r: no finite-foci world transform in %d attempts',
                    arrangement, retries)
    return None

