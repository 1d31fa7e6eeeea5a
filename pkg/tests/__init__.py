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

import contextlib
import os
import shutil
import tempfile

import numpy

from scipy.spatial.transform import Rotation

import corostab


def rng(seed=0):
    """A random generator for a test.

    :param seed: The seed.
    """
    return numpy.random.default_rng(seed)


def rotation(generator):
    """A random rotation matrix.
    """
    return Rotation.random(random_state=generator).as_matrix()


def random_state(generator, box=0.7):
    """A random deformation state with principal log-stretches in
    ``[-box, box]³`` and random rotation and Lagrangian frame.
    """
    return corostab.DeformationState.from_log_stretches(
        generator.uniform(-box, box, 3),
        rotation(generator),
        rotation(generator))


def random_symmetric(generator, unit=True):
    """A random symmetric tensor, of unit Frobenius norm unless ``unit`` is
    false.
    """
    A = generator.standard_normal((3, 3))
    A = 0.5 * (A + A.T)
    return A / numpy.linalg.norm(A) if unit else A


def random_skew(generator):
    A = generator.standard_normal((3, 3))
    return 0.5 * (A - A.T)


def assert_close(actual, expected, tolerance, relative=True):
    """Asserts that two arrays are equal within a tolerance.

    :param float tolerance: The tolerance.

    :param bool relative: Whether the tolerance is relative to
        ``max(1, |expected|)``.
    """
    expected = numpy.asarray(expected, dtype=float)
    scale = max(1.0, float(numpy.max(numpy.abs(expected)))) \
        if relative else 1.0
    numpy.testing.assert_allclose(
        actual, expected, rtol=0.0, atol=tolerance * scale)


@contextlib.contextmanager
def temporary_directory():
    """A context manager yielding a temporary directory that is removed
    afterwards.
    """
    path = tempfile.mkdtemp()
    try:
        yield path
    finally:
        shutil.rmtree(path)


def write(path, text):
    """Writes a text file and returns its name.
    """
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    return path


#: The material file of an expression defined Hencky law
HENCKY_MATERIAL = '''
[material]
kind = custom-energy
variables = log-stretch

[parameters]
mu = 1
lam = 1

[expressions]
energy = mu*(x1^2+x2^2+x3^2) + lam/2*s^2
'''

#: A material file defining a stress that is not permutation equivariant
ANISOTROPIC_MATERIAL = '''
[material]
kind = custom-stress

[expressions]
stress1 = x2
stress2 = x2
stress3 = x3
'''


def material_file(directory, text=HENCKY_MATERIAL, name='law.mat'):
    """Writes a material file to a directory.
    """
    return write(os.path.join(directory, name), text)
