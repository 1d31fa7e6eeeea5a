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

import itertools
import unittest

import numpy

import corostab

from corostab import _quadforms as quadforms
from corostab._util import sym as symbasis

from . import (
    assert_close, random_skew, random_state, random_symmetric, rng)


FLAVORS = (corostab.CAUCHY, corostab.KIRCHHOFF)


def laws():
    return (
        corostab.hencky_law(1.0, 1.0),
        corostab.exp_hencky_law(1.0, 1.0, 1.0, 1.0),
        corostab.cauchy_nonhyper_law(1.0, 1.0, 0.2))


class LambdaMatrixTests(unittest.TestCase):
    def test_hencky(self):
        """Tests the closed form of the Hencky Kirchhoff matrix.
        """
        generator = rng()
        for mu, lam in ((1.0, 1.0), (0.5, -0.2), (2.0, 3.0)):
            law = corostab.hencky_law(mu, lam)
            for _ in range(10):
                matrix = corostab.lambda_matrix(
                    law, generator.uniform(-1, 1, 3), corostab.KIRCHHOFF)
                assert_close(
                    matrix.matrix,
                    2 * mu * numpy.eye(3) + lam * numpy.ones((3, 3)),
                    1e-10)
                assert_close(
                    matrix.eigenvalues,
                    sorted([2 * mu, 2 * mu, 2 * mu + 3 * lam]),
                    1e-10)

    def test_symmetric_part(self):
        """Tests that the matrix is the symmetric part of the Jacobian.
        """
        law = corostab.cauchy_nonhyper_law(1.0, 1.0, 0.2)
        x = numpy.array([0.3, -0.2, 0.6])
        for flavor in FLAVORS:
            jacobian = law.jacobian(x, flavor)
            matrix = corostab.lambda_matrix(law, x, flavor)
            assert_close(matrix.matrix, 0.5 * (jacobian + jacobian.T), 1e-15)
            self.assertEqual(matrix.eigenvalues[0], matrix.min_eigenvalue)


class DividedDifferenceTests(unittest.TestCase):
    def test_distinct(self):
        """Tests the quotient at distinct points.
        """
        self.assertAlmostEqual(
            0.5,
            quadforms.divided_difference(
                lambda x: x ** 2, [0.2, 0.3, 0.0], 0, 1, squared=False),
            places=14)

    def test_coinciding(self):
        """Tests the continuous extension at coinciding points.
        """
        self.assertAlmostEqual(
            0.4,
            quadforms.divided_difference(
                lambda x: x ** 2, [0.2, 0.2, 0.0], 0, 1, squared=False),
            places=10)

    def test_continuity(self):
        """Tests continuity of the pair coefficients across collisions.
        """
        generator = rng(1)
        expression = corostab.law_from_expressions(corostab.MaterialConfig(
            'custom-energy',
            {'mu': 1.0, 'lam': 1.0},
            {'energy': 'mu*(x1^2+x2^2+x3^2) + lam/2*s^2'}))
        for law in laws() + (expression,):
            for _ in range(20):
                x = generator.uniform(-0.7, 0.7, 3)
                i, j = sorted(generator.choice(3, 2, replace=False))
                outside, inside = x.copy(), x.copy()
                outside[j] = x[i] + law.DEGENERACY_TOLERANCE
                inside[j] = x[i] + 0.25 * law.DEGENERACY_TOLERANCE
                a = quadforms.pair_coefficient(law, outside, i, j)
                b = quadforms.pair_coefficient(law, inside, i, j)
                self.assertLessEqual(abs(a - b), 1e-4 * max(1.0, abs(b)))

    def test_expression_collision(self):
        """Tests that an expression energy agrees with its closed form near
        collisions.
        """
        generator = rng(11)
        closed = corostab.hencky_law(1.0, 1.0)
        expression = corostab.law_from_expressions(corostab.MaterialConfig(
            'custom-energy',
            {'mu': 1.0, 'lam': 1.0},
            {'energy': 'mu*(x1^2+x2^2+x3^2) + lam/2*s^2'}))
        for _ in range(20):
            x = generator.uniform(-0.7, 0.7, 3)
            x[1] = x[0] + 1e-7
            self.assertAlmostEqual(
                quadforms.pair_coefficient(closed, x, 0, 1),
                quadforms.pair_coefficient(expression, x, 0, 1),
                delta=1e-4)


class BlocksTests(unittest.TestCase):
    def test_reference(self):
        """Tests the Hencky blocks at the reference state.
        """
        law = corostab.hencky_law(1.0, 1.0)
        blocks = corostab.qhyp_blocks(
            law, corostab.strain_measures(numpy.eye(3)))
        expected = numpy.zeros((6, 6))
        expected[:3, :3] = 2.0 * numpy.eye(3) + numpy.ones((3, 3))
        expected[3:, 3:] = 2.0 * numpy.eye(3)
        assert_close(corostab.block_form_matrix(blocks), expected, 1e-6)

    def test_not_hyperelastic(self):
        """Tests that hyperelastic assembly requires an energy.
        """
        law = corostab.cauchy_nonhyper_law(1.0, 1.0, 0.2)
        state = random_state(rng(2))
        with self.assertRaises(ValueError):
            corostab.qhyp_blocks(law, state)
        with self.assertRaises(ValueError):
            corostab.qtau_blocks(law, state, quadforms.HYPERELASTIC)

    def test_cauchy_elastic_reduces(self):
        """Tests that the Cauchy-elastic assembly matches the hyperelastic
        one for an energy-derived law.
        """
        law = corostab.exp_hencky_law(1.0, 1.0, 1.0, 1.0)
        generator = rng(3)
        for _ in range(10):
            state = random_state(generator)
            a = corostab.qhyp_blocks(law, state)
            b = corostab.qela_blocks(law, state)
            assert_close(a.q1, b.q1, 1e-10)
            assert_close(a.q2, b.q2, 0.0)

    def test_tensorial(self):
        """Tests the block assembly against the tensor route.
        """
        generator = rng(4)
        for law, flavor in itertools.product(laws(), FLAVORS):
            for _ in range(20):
                state = random_state(generator)
                Edot = random_symmetric(generator)
                expected = corostab.tensorial_form_value(
                    law, state, Edot, flavor)
                actual = corostab.full_form_value(
                    corostab.quadform_blocks(law, state, flavor),
                    corostab.edot_components(state, Edot))
                self.assertLessEqual(
                    abs(actual - expected), 1e-7 * max(1.0, abs(expected)))

    def test_weighted(self):
        """Tests the diagonal block against the weighted matrix.
        """
        generator = rng(5)
        for law, flavor in itertools.product(laws(), FLAVORS):
            for _ in range(20):
                state = random_state(generator)
                assert_close(
                    corostab.weighted_q1(law, state, flavor),
                    corostab.quadform_blocks(law, state, flavor).q1,
                    1e-7)

    def test_kirchhoff_difference(self):
        """Tests that the Kirchhoff form adds ``⟨C⁻¹, Ė⟩·⟨S₂, Ė⟩``.
        """
        generator = rng(6)
        for law in laws():
            for _ in range(20):
                state = random_state(generator)
                Edot = random_symmetric(generator)
                components = corostab.edot_components(state, Edot)
                difference = corostab.full_form_value(
                    corostab.qtau_blocks(law, state), components
                ) - corostab.full_form_value(
                    corostab.quadform_blocks(law, state), components)
                expected = numpy.sum(numpy.linalg.inv(state.C) * Edot) \
                    * numpy.sum(corostab.second_pk(law, state) * Edot)
                self.assertAlmostEqual(expected, difference, delta=1e-9)

    def test_pairing(self):
        """Tests the form against the trajectory route of the pairing.
        """
        generator = rng(7)
        for law in laws():
            for _ in range(20):
                state = random_state(generator)
                D = random_symmetric(generator)
                W = random_skew(generator)
                components = corostab.edot_components(
                    state, state.F.T @ D @ state.F)
                expected = state.J * corostab.csp_pairing_along(
                    law, state.F, D, W)
                actual = corostab.full_form_value(
                    corostab.quadform_blocks(law, state), components)
                self.assertLessEqual(
                    abs(actual - expected), 1e-5 * (1.0 + abs(actual)))
                self.assertLessEqual(
                    abs(corostab.full_form_value(
                        corostab.qtau_blocks(law, state), components)
                        - corostab.csp_pairing_along(
                            law, state.F, D, W, corostab.KIRCHHOFF)),
                    1e-5 * (1.0 + abs(actual)))


class CspFormTests(unittest.TestCase):
    def test_quadratic_form(self):
        """Tests that the matrix represents the pairing.
        """
        generator = rng(8)
        for law, flavor in itertools.product(laws(), FLAVORS):
            state = random_state(generator)
            matrix = corostab.csp_form_matrix(
                corostab.quadform_blocks(law, state, flavor), state)
            assert_close(matrix, matrix.T, 0.0)
            for _ in range(5):
                D = random_symmetric(generator)
                vector = symbasis.to_vector(D)
                expected = corostab.csp_pairing_along(
                    law, state.F, D, flavor=flavor)
                self.assertLessEqual(
                    abs(vector @ matrix @ vector - expected),
                    1e-5 * (1.0 + abs(expected)))
                self.assertLessEqual(
                    numpy.linalg.eigvalsh(matrix)[0], expected + 1e-5)

    def test_conventions(self):
        """Tests the Kirchhoff scaling conventions.
        """
        state = corostab.DeformationState.from_log_stretches([0.1, 0.2, 0.3])
        self.assertEqual(1.0, quadforms.kirchhoff_scale(state))
        self.assertAlmostEqual(
            numpy.exp(-0.6),
            quadforms.kirchhoff_scale(state, quadforms.INVERSE_VOLUME),
            places=14)
        with self.assertRaises(ValueError):
            quadforms.kirchhoff_scale(state, 'square')
