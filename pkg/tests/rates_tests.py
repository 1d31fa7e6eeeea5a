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

import unittest

import numpy

from scipy.spatial.transform import Rotation

import corostab

from . import (
    assert_close, random_skew, random_state, random_symmetric, rng)


class ZarembaJaumannTests(unittest.TestCase):
    def test_assembly(self):
        """Tests that the rate is assembled from the material rate and the
        spin.
        """
        generator = rng()
        state = random_state(generator)
        sample = corostab.zj_rate(
            corostab.exp_hencky_law(1.0, 1.0, 1.0, 1.0),
            corostab.probe_path(
                state.F,
                random_symmetric(generator),
                random_skew(generator)),
            0.0)
        W = numpy.asarray(sample.W)
        assert_close(
            sample.zj_sigma,
            sample.sigma_rate + sample.sigma @ W - W @ sample.sigma,
            1e-12)
        assert_close(
            sample.zj_tau,
            sample.tau_rate + sample.tau @ W - W @ sample.tau,
            1e-12)
        self.assertIs(sample.zj_tau, sample.zj(corostab.KIRCHHOFF))

    def test_rigid_rotation(self):
        """Tests that a rigid rotation of a stressed state has no rate.
        """
        generator = rng(1)
        law = corostab.hencky_law(1.0, 1.0)
        for _ in range(10):
            state = random_state(generator)
            sample = corostab.zj_rate(
                law,
                corostab.rotation_path(generator.standard_normal(3), state.F),
                0.0)
            assert_close(sample.zj_sigma, numpy.zeros((3, 3)), 1e-8)
            assert_close(sample.zj_tau, numpy.zeros((3, 3)), 1e-8)

    def test_stretch(self):
        """Tests that the rate of a spin free path is the material rate.
        """
        sample = corostab.zj_rate(
            corostab.hencky_law(1.0, 1.0),
            corostab.stretch_path([0.3, -0.1, 0.2]),
            0.5)
        assert_close(sample.W, numpy.zeros((3, 3)), 1e-10)
        assert_close(sample.zj_sigma, sample.sigma_rate, 1e-9)

    def test_reference_pairing(self):
        """Tests the Hencky pairing at the reference state.
        """
        generator = rng(2)
        law = corostab.hencky_law(1.0, 1.0)
        for _ in range(10):
            D = random_symmetric(generator)
            self.assertAlmostEqual(
                2.0 + numpy.trace(D) ** 2,
                corostab.csp_pairing_along(
                    law, numpy.eye(3), D, random_skew(generator)),
                delta=1e-8)

    def test_objectivity(self):
        """Tests that superposed rotations do not change the pairing.
        """
        generator = rng(3)
        law = corostab.cauchy_nonhyper_law(1.0, 1.0, 0.2)
        for _ in range(10):
            state = random_state(generator)
            path = corostab.probe_path(
                state.F, random_symmetric(generator), random_skew(generator))
            rotated = corostab.superpose_rotation(
                path, generator.standard_normal(3))
            for flavor in (corostab.CAUCHY, corostab.KIRCHHOFF):
                self.assertAlmostEqual(
                    corostab.csp_pairing(
                        corostab.zj_rate(law, path, 0.0), flavor),
                    corostab.csp_pairing(
                        corostab.zj_rate(law, rotated, 0.0), flavor),
                    delta=1e-6)

    def test_pairing_along(self):
        """Tests that the trajectory route matches an explicit path.
        """
        generator = rng(4)
        law = corostab.hencky_law(1.0, 1.0)
        state = random_state(generator)
        D, W = random_symmetric(generator), random_skew(generator)
        self.assertEqual(
            corostab.csp_pairing(corostab.zj_rate(
                law, corostab.probe_path(state.F, D, W), 0.0)),
            corostab.csp_pairing_along(law, state.F, D, W))

    def test_domain(self):
        """Tests that rates outside of the path domain are rejected.
        """
        with self.assertRaises(corostab.DomainExceeded):
            corostab.zj_rate(
                corostab.hencky_law(1.0, 1.0),
                corostab.stretch_path([1.0, 0.0, 0.0], domain=(0.0, 1.0)),
                1.0)


class CorotatedFrameTests(unittest.TestCase):
    def test_constant_spin(self):
        """Tests that a constant spin yields the rotation itself.
        """
        omega = numpy.array([0.0, 0.0, 0.7])
        frame = corostab.corotated_frame(
            corostab.rotation_path(omega), 0.0, 1.0, 100)
        for t in (0.0, 0.25, 0.503, 1.0):
            assert_close(
                frame.at(t),
                Rotation.from_rotvec(t * omega).as_matrix(),
                1e-9)

    def test_orthonormal(self):
        """Tests that frames stay rotations.
        """
        generator = rng(5)
        path = corostab.exponential_path(
            generator.standard_normal((3, 3)),
            0.3 * generator.standard_normal((3, 3)))
        frame = corostab.corotated_frame(path, -0.5, 0.5, 50)
        for Q in frame.frames:
            assert_close(Q.T @ Q, numpy.eye(3), 1e-12)
            self.assertAlmostEqual(1.0, numpy.linalg.det(Q), places=12)

    def test_outside(self):
        """Tests that times outside of the frame are rejected.
        """
        frame = corostab.corotated_frame(corostab.shear_path(), 0.0, 1.0, 10)
        with self.assertRaises(corostab.DomainExceeded):
            frame.at(1.5)

    def test_invalid(self):
        """Tests that invalid intervals are rejected.
        """
        with self.assertRaises(ValueError):
            corostab.corotated_frame(corostab.shear_path(), 1.0, 0.0)
        with self.assertRaises(ValueError):
            corostab.corotated_frame(corostab.shear_path(), 0.0, 1.0, 0)

    def test_two_routes(self):
        """Tests the rate in the corotated frame against the direct rate.
        """
        generator = rng(6)
        for law in (
                corostab.hencky_law(1.0, 1.0),
                corostab.cauchy_nonhyper_law(1.0, 1.0, 0.2)):
            for _ in range(10):
                path = corostab.exponential_path(
                    0.3 * generator.standard_normal((3, 3)),
                    0.1 * generator.standard_normal((3, 3)),
                    random_state(generator).F)
                t = generator.uniform(-0.2, 0.2)
                frame = corostab.corotated_frame(path, t - 0.01, t + 0.01, 20)
                sample = corostab.zj_rate(law, path, t)
                for flavor in (corostab.CAUCHY, corostab.KIRCHHOFF):
                    assert_close(
                        corostab.zj_rate_via_frame(
                            law, path, t, frame, flavor=flavor),
                        sample.zj(flavor),
                        1e-6,
                        relative=False)
