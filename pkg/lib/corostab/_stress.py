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

import numpy

from ._base import KIRCHHOFF
from ._kinematics import as_symmetric, as_tensor


class StressState(object):
    """The stresses of a law at a deformation state.

    :param S2: The second Piola-Kirchhoff stress.

    :param sigma: The Cauchy stress.

    :param tau: The Kirchhoff stress.

    :param principal_second_pk: The eigenvalues ``s̆ᵢ`` of ``S₂``.

    :param principal_cauchy: The principal Cauchy stresses ``σᵢ``.

    :param principal_kirchhoff: The principal Kirchhoff stresses ``τᵢ``.

    :param push_forward: The vectors ``uⁱ = F·Uⁱ`` as matrix columns.
    """
    def __init__(
            self, S2, sigma, tau, principal_second_pk, principal_cauchy,
            principal_kirchhoff, push_forward):
        self._S2 = S2
        self._sigma = sigma
        self._tau = tau
        self._principal_second_pk = principal_second_pk
        self._principal_cauchy = principal_cauchy
        self._principal_kirchhoff = principal_kirchhoff
        self._push_forward = push_forward

    @property
    def S2(self):
        """The second Piola-Kirchhoff stress.
        """
        return self._S2

    @property
    def sigma(self):
        """The Cauchy stress.
        """
        return self._sigma

    @property
    def tau(self):
        """The Kirchhoff stress ``τ = J·σ``.
        """
        return self._tau

    @property
    def principal_second_pk(self):
        """The eigenvalues ``s̆ᵢ`` of ``S₂``, in the order of the Lagrangian
        axes.
        """
        return self._principal_second_pk

    @property
    def principal_cauchy(self):
        """The principal Cauchy stresses ``σᵢ = (λᵢ²/J)·s̆ᵢ``.
        """
        return self._principal_cauchy

    @property
    def principal_kirchhoff(self):
        """The principal Kirchhoff stresses ``τᵢ = λᵢ²·s̆ᵢ``.
        """
        return self._principal_kirchhoff

    @property
    def push_forward(self):
        """The eigenvectors ``uⁱ = F·Uⁱ`` of ``σ`` as matrix columns; these
        are not unit vectors in general.
        """
        return self._push_forward

    def flavored(self, flavor):
        """The Cauchy or Kirchhoff stress tensor.

        :param str flavor: Either :data:`~corostab.CAUCHY` or
            :data:`~corostab.KIRCHHOFF`.
        """
        return self._tau if flavor == KIRCHHOFF else self._sigma


def second_pk(law, state):
    """The second Piola-Kirchhoff stress ``S₂ = Σᵢ s̆ᵢ Uⁱ⊗Uⁱ``.

    :param law: The material law.

    :param corostab.DeformationState state: The deformation state.

    :return: a symmetric tensor
    """
    return state.spectral.reconstruct(
        law.principal_second_pk(state.log_stretches))


def cauchy_stress(law, state):
    """Evaluates all stresses of a law at a deformation state.

    The Cauchy stress is computed by the Doyle-Ericksen route
    ``σ = (1/J)·F·S₂·Fᵀ``.

    :param law: The material law.

    :param corostab.DeformationState state: The deformation state.

    :return: the stresses
    :rtype: StressState
    """
    x = state.log_stretches
    S2 = second_pk(law, state)
    F = state.F
    tau = as_symmetric(F @ S2 @ F.T)
    sigma = as_symmetric(tau / state.J)
    principal_kirchhoff = law.principal_kirchhoff(x)
    return StressState(
        S2,
        sigma,
        tau,
        law.principal_second_pk(x),
        principal_kirchhoff / state.J,
        principal_kirchhoff,
        F @ state.eigenvectors)


def first_pk(stress, state):
    """The first Piola-Kirchhoff stress ``S₁ = J·σ·F⁻ᵀ``.

    :param StressState stress: The stresses.

    :param corostab.DeformationState state: The deformation state.

    :return: a general tensor
    """
    return as_tensor(stress.tau @ numpy.linalg.inv(state.F).T)


def richter_cauchy(law, state):
    """The Cauchy stress assembled from principal values.

    The principal directions are the unit vectors ``nⁱ = F·Uⁱ/‖F·Uⁱ‖``,
    re-orthonormalised in order, so that ``σ = Σᵢ σ̂ᵢ nⁱ⊗nⁱ``.

    :param law: The material law.

    :param corostab.DeformationState state: The deformation state.

    :return: a symmetric tensor
    """
    pushed = state.F @ state.eigenvectors
    pushed = pushed / numpy.linalg.norm(pushed, axis=0)
    directions, triangular = numpy.linalg.qr(pushed)
    directions = directions * numpy.sign(numpy.diag(triangular))
    principal = law.principal_cauchy(state.log_stretches)
    return as_symmetric((directions * principal) @ directions.T)
