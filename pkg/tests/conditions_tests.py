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
import math
import unittest

import numpy

import corostab

from corostab import _conditions as conditions
from corostab import _materials as materials

from . import assert_close, random_state, rng


FLAVORS = (corostab.CAUCHY, corostab.KIRCHHOFF)


def laws():
    return (
        corostab.hencky_law(1.0, 1.0),
        corostab.exp_hencky_law(1.0, 1.0, 1.0, 1.0),
        corostab.cauchy_nonhyper_law(1.0, 1.0, 0.2))


def grid(points=5, box=1.0):
    axis = numpy.linspace(-box, box, points)
    return list(itertools.product(axis, repeat=3))


class DefinitenessTests(unittest.TestCase):
    def test_hencky_sign(self):
        """Tests that the Hencky verdict follows the sign of
        ``2μ + 3λ``.
        """
        generator = rng()
        for mu in (0.5, 1.0, 2.0):
            for offset in (-0.05, 0.05):
                law = corostab.hencky_law(mu, (offset - 2.0 * mu) / 3.0)
                for _ in range(5):
                    verdict = corostab.check_tstsm_pp(
                        law, generator.uniform(-1, 1, 3), corostab.KIRCHHOFF)
                    self.assertEqual(offset > 0, verdict.positive)
                    self.assertAlmostEqual(
                        min(2.0 * mu, offset), verdict.min_eigenvalue,
                        places=10)

    def test_tensor_level(self):
        """Tests that the tensor tangent contains ``Λ`` as a block.
        """
        generator = rng(1)
        for law, flavor in itertools.product(laws(), FLAVORS):
            for _ in range(10):
                x = generator.uniform(-0.7, 0.7, 3)
                self.assertLessEqual(
                    conditions.check_tensor_tstsm_pp(
                        law, x, flavor).min_eigenvalue,
                    corostab.check_tstsm_pp(law, x, flavor).min_eigenvalue
                    + 1e-12)

    def test_tensor_blocks(self):
        """Tests the structure of the tensor tangent.
        """
        law = corostab.hencky_law(1.0, 1.0)
        tangent = conditions.tensor_tangent(
            law, [0.1, 0.4, -0.3], corostab.KIRCHHOFF)
        assert_close(tangent[:3, :3], 2.0 * numpy.eye(3) + 1.0, 1e-12)
        assert_close(tangent[3:, 3:], 2.0 * numpy.eye(3), 1e-9)
        assert_close(tangent[:3, 3:], numpy.zeros((3, 3)), 0.0)


class BakerEricksenTests(unittest.TestCase):
    def test_holds(self):
        """Tests monotone principal stresses.
        """
        verdict = corostab.check_be([1.0, 2.0, 3.0], [1.0, 1.1, 1.2])
        self.assertTrue(verdict.holds)
        self.assertAlmostEqual(0.1, verdict.margin, places=14)

    def test_fails(self):
        """Tests a reversed pair.
        """
        verdict = corostab.check_be([2.0, 1.0, 3.0], [1.0, 1.1, 1.2])
        self.assertFalse(verdict.holds)
        self.assertEqual((0, 1), verdict.pair)

    def test_exempt(self):
        """Tests that coinciding stretches are exempt.
        """
        verdict = corostab.check_be([2.0, 1.0, 1.0], [1.0, 1.0, 1.0])
        self.assertTrue(verdict.holds)
        self.assertEqual(math.inf, verdict.margin)
        self.assertIsNone(verdict.pair)


class MonotonicityTests(unittest.TestCase):
    def test_pair_hencky(self):
        """Tests the pair product of the Hencky law.
        """
        law = corostab.hencky_law(1.0, 1.0)
        x_a, x_b = numpy.array([0.2, 0.1, -0.3]), numpy.array([-0.1, 0.0, 0.4])
        delta = x_a - x_b
        self.assertAlmostEqual(
            2.0 * delta @ delta + delta.sum() ** 2,
            corostab.check_tstsm_pair(law, x_a, x_b, corostab.KIRCHHOFF),
            places=12)

    def test_pair_identical(self):
        """Tests that identical points are rejected.
        """
        with self.assertRaises(ValueError):
            corostab.check_tstsm_pair(
                corostab.hencky_law(1.0, 1.0),
                [0.1, 0.2, 0.3], [0.1, 0.2, 0.3])

    def test_line_integral(self):
        """Tests the line integral against the pair product.
        """
        generator = rng(2)
        for law, flavor in itertools.product(laws(), FLAVORS):
            for _ in range(20):
                x_a, x_b = generator.uniform(-0.7, 0.7, (2, 3))
                pair = corostab.check_tstsm_pair(law, x_a, x_b, flavor)
                integral = corostab.line_integral_monotonicity(
                    law, x_a, x_b, 64, flavor)
                self.assertLessEqual(
                    abs(pair - integral), 1e-6 * max(1.0, abs(pair)))

    def test_line_integral_nodes(self):
        """Tests that too few nodes are rejected.
        """
        with self.assertRaises(ValueError):
            corostab.line_integral_monotonicity(
                corostab.hencky_law(1.0, 1.0), [0.1, 0, 0], [0, 0, 0], 4)

    def test_rotated_frames(self):
        """Tests the pair product with distinct eigenframes.
        """
        generator = rng(3)
        for law in laws()[:2]:
            for _ in range(10):
                x_a, x_b = generator.uniform(-0.7, 0.7, (2, 3))
                self.assertGreater(
                    corostab.check_tstsm_pair(
                        law, x_a, x_b, corostab.KIRCHHOFF,
                        conditions.random_frames(generator)),
                    0.0)

    def test_segment(self):
        """Tests definiteness along a segment.
        """
        x_a, x_b = [0.3, -0.2, 0.1], [-0.4, 0.5, 0.0]
        self.assertTrue(conditions.segment_definite(
            corostab.hencky_law(1.0, 1.0), x_a, x_b, 16, corostab.KIRCHHOFF))
        self.assertFalse(conditions.segment_definite(
            corostab.hencky_law(1.0, -1.0), x_a, x_b, 16,
            corostab.KIRCHHOFF))

    def test_induced_map(self):
        """Tests that induced tensor maps are isotropic.
        """
        law = corostab.exp_hencky_law(1.0, 1.0, 1.0, 1.0)
        induced = conditions.InducedIsotropicMap(law.principal_kirchhoff)
        self.assertTrue(induced.commutes_with_rotations(seed=4))


class CspTests(unittest.TestCase):
    def test_sampled_bounds_exact(self):
        """Tests that sampling never undercuts the exact minimum.
        """
        generator = rng(5)
        for law, flavor in itertools.product(laws(), FLAVORS):
            state = random_state(generator)
            exact = corostab.csp_exact(law, state, flavor)
            sampled = corostab.csp_sampled(law, state, 50, generator, flavor)
            self.assertGreaterEqual(
                sampled.minimum, exact - 1e-9 * max(1.0, abs(exact)))
            self.assertAlmostEqual(
                1.0, numpy.linalg.norm(sampled.direction), places=12)

    def test_sampled_directions(self):
        """Tests that too few directions are rejected.
        """
        state = random_state(rng(6))
        with self.assertRaises(ValueError):
            corostab.csp_sampled(corostab.hencky_law(1.0, 1.0), state, 10)
        with self.assertRaises(ValueError):
            corostab.Tolerances(directions=10)

    def test_reference(self):
        """Tests the exact minimum at the reference state.
        """
        state = corostab.strain_measures(numpy.eye(3))
        self.assertAlmostEqual(
            2.0,
            corostab.csp_exact(corostab.hencky_law(1.0, 1.0), state),
            places=6)


class PermutationTests(unittest.TestCase):
    def test_evaluate_state(self):
        """Tests that relabelling the principal axes only relabels the
        verdicts.
        """
        generator = rng(12)
        permutation = [2, 0, 1]
        for law in laws():
            for _ in range(5):
                x = generator.uniform(-0.8, 0.8, 3)
                original = corostab.evaluate_state(law, x).as_dict()
                permuted = corostab.evaluate_state(
                    law, x[permutation]).as_dict()
                for key in ('stretches', 'sigma', 'tau'):
                    assert_close(
                        permuted[key],
                        numpy.asarray(original[key])[permutation],
                        1e-10)
                self.assertAlmostEqual(
                    original['J'], permuted['J'], delta=1e-12)
                for flavor in FLAVORS:
                    a = original['flavors'][flavor]
                    b = permuted['flavors'][flavor]
                    assert_close(
                        b['lambda_eigenvalues'], a['lambda_eigenvalues'],
                        1e-9)
                    self.assertAlmostEqual(
                        a['csp_exact'], b['csp_exact'],
                        delta=1e-8 * max(1.0, abs(a['csp_exact'])))
                    self.assertAlmostEqual(
                        a['be_margin'], b['be_margin'],
                        delta=1e-9 * max(1.0, abs(a['be_margin'])))
                    self.assertEqual(
                        sorted(a['be_pair']),
                        sorted(permutation[k] for k in b['be_pair']))
                    for key in (
                            'tstsm_pp', 'be', 'classification',
                            'csp_classification', 'consistent'):
                        self.assertEqual(a[key], b[key])


class AuditTests(unittest.TestCase):
    def test_builtin(self):
        """Tests that the built-in laws pass the equivalence audit.
        """
        for law in laws():
            report = corostab.equivalence_audit(law, grid())
            self.assertEqual(125, len(report))
            for flavor in FLAVORS:
                self.assertEqual([], report.violations(flavor))
                self.assertEqual([], report.implication_exceptions(flavor))
                self.assertEqual([], report.sampling_exceptions(flavor))
            self.assertTrue(report.consistent)

    def test_failing_hencky(self):
        """Tests that a Hencky law with ``2μ + 3λ < 0`` fails everywhere.
        """
        report = corostab.equivalence_audit(
            corostab.hencky_law(1.0, -1.0), grid(3, 0.5), flavors=('tau',))
        summary = report.summary()[corostab.KIRCHHOFF]
        self.assertEqual(27, summary['fail'])
        self.assertEqual(0, summary['pass'])
        self.assertEqual([], report.violations(corostab.KIRCHHOFF))

    def test_contrived(self):
        """Tests that a decreasing stress yields no implication exception.
        """
        law = corostab.law_from_expressions(corostab.MaterialConfig(
            materials.CUSTOM_STRESS, expressions={'stress': '-x{i}'}))
        report = corostab.equivalence_audit(law, grid(3))
        for flavor in FLAVORS:
            self.assertEqual([], report.implication_exceptions(flavor))

    def test_workers(self):
        """Tests that the outcome does not depend on the worker count.
        """
        law = corostab.cauchy_nonhyper_law(1.0, 1.0, 0.2)
        states = grid(3)
        single = corostab.equivalence_audit(law, states, jobs=1)
        several = corostab.equivalence_audit(law, states, jobs=4)
        self.assertEqual(
            [verdict.as_dict() for verdict in single.verdicts],
            [verdict.as_dict() for verdict in several.verdicts])

    def test_empty(self):
        """Tests that an empty audit is rejected.
        """
        with self.assertRaises(ValueError):
            corostab.equivalence_audit(corostab.hencky_law(1.0, 1.0), [])

    def test_verdict(self):
        """Tests the representation of a single verdict.
        """
        verdict = corostab.evaluate_state(
            corostab.hencky_law(1.0, 1.0), [0.1, 0.0, -0.2])
        document = verdict.as_dict()
        self.assertEqual(['cauchy', 'kirchhoff'], sorted(document['flavors']))
        assert_close(document['stretches'], numpy.exp([0.1, 0.0, -0.2]), 1e-15)
        self.assertTrue(verdict.consistent)
        self.assertTrue(verdict[corostab.KIRCHHOFF].tstsm_pp)
        self.assertGreater(verdict[corostab.KIRCHHOFF].tstsm, 0.0)

    def test_reference_tstsm(self):
        """Tests that the non-strict product is absent at the reference.
        """
        verdict = corostab.evaluate_state(
            corostab.hencky_law(1.0, 1.0), [0.0, 0.0, 0.0])
        self.assertIsNone(verdict[corostab.CAUCHY].tstsm)
