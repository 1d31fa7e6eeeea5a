# coding=utf-8
# corostab
# Copyright (C) 2026 The corostab developers
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more
# details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.
"""
Helpers for the six-dimensional space of symmetric 3×3 matrices.

Coordinates are ordered ``(11, 22, 33, 23, 13, 12)`` and scaled so that the
Euclidean norm of a coordinate vector equals the Frobenius norm of the matrix.
"""

import numpy


#: The off-diagonal index pairs, in coordinate order
PAIRS = ((1, 2), (0, 2), (0, 1))

_ROOT2 = numpy.sqrt(2.0)


def _basis():
    result = numpy.zeros((6, 3, 3))
    for i in range(3):
        result[i, i, i] = 1.0
    for n, (i, j) in enumerate(PAIRS):
        result[3 + n, i, j] = result[3 + n, j, i] = 1.0 / _ROOT2
    result.flags.writeable = False
    return result


#: An orthonormal basis of Sym(3) with respect to the Frobenius product
BASIS = _basis()


def to_vector(matrix):
    """Converts symmetric matrices to coordinate vectors.

    :param matrix: A symmetric matrix, or a stack of them with shape
        ``(..., 3, 3)``.

    :return: an array with shape ``(..., 6)``
    """
    matrix = numpy.asarray(matrix, dtype=float)
    return numpy.einsum('...ij,nij->...n', matrix, BASIS)


def from_vector(vector):
    """Converts coordinate vectors to symmetric matrices.

    :param vector: A coordinate vector, or a stack of them with shape
        ``(..., 6)``.

    :return: an array with shape ``(..., 3, 3)``
    """
    vector = numpy.asarray(vector, dtype=float)
    return numpy.einsum('...n,nij->...ij', vector, BASIS)
