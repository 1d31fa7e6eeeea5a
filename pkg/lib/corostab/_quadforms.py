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
Quadratic forms of the corotational stability postulate in the Lagrangian
axes.

For a deformation state with Lagrangian axes ``Uⁱ`` and a strain rate ``Ė``
with components ``Ė_jk = ⟨Ė·Uʲ, Uᵏ⟩``, every form splits into a block acting on
the diagonal components ``(Ė₁₁, Ė₂₂, Ė₃₃)`` and one coefficient per
off-diagonal pair::

    Q(Ė) = dᵀ·Q1·d + 2·Σ_pairs c_p·Ė_p²

The pairs are ordered ``(23, 13, 12)``.
"""

import math

import numpy

from ._base import CAUCHY, KIRCHHOFF, MaterialLaw, log_stretches
from ._kinematics import (
    IDENTITY,
    DeformationState,
    RATE_STEP,
    as_symmetric,
    frobenius,
    sqrt_spd,
    sym)
from ._stress import second_pk
from ._util import sym as symbasis


#: The law flavour of energy-derived laws
HYPERELASTIC = 'hyperelastic'

#: The law flavour of laws giving the stresses directly
CAUCHY_ELASTIC = 'cauchy-elastic'

#: ``⟨D^ZJ τ, D⟩ = Q_τ(Ė)``
UNIT = 'unit'

#: ``⟨D^ZJ τ, D⟩ = Q_τ(Ė)/J``
INVERSE_VOLUME = 'inverse-volume'

#: The Kirchhoff scaling conventions
CONVENTIONS = (UNIT, INVERSE_VOLUME)

#: The default relative separation below which a pair is treated as
#: degenerate
DEGENERACY_TOLERANCE = MaterialLaw.DEGENERACY_TOLERANCE

#: The half-separation of log-stretches used to evaluate degenerate pairs
DEGENERACY_STEP = 1e-4


class LambdaMatrix(object):
    """The symmetrised log-stretch Jacobian of the principal stresses.

    :param x: The evaluation point.

    :param str flavor: The stress flavour.

    :param jacobian: The unsymmetrised Jacobian ``∂f̂ᵢ/∂xⱼ``.
    """
    def __init__(self, x, flavor, jacobian):
        self._x = x
        self._flavor = flavor
        self._jacobian = numpy.array(jacobian, dtype=float)
        self._matrix = sym(self._jacobian)
        self._eigenvalues = numpy.linalg.eigvalsh(self._matrix)
        for value in (self._jacobian, self._matrix, self._eigenvalues):
            value.flags.writeable = False

    def __repr__(self):
        return 'LambdaMatrix({}, {})'.format(
            self._flavor, self._matrix.tolist())

    @property
    def x(self):
        """The log-stretches at which the matrix was evaluated.
        """
        return self._x

    @property
    def flavor(self):
        """The stress flavour.
        """
        return self._flavor

    @property
    def jacobian(self):
        """The unsymmetrised Jacobian.
        """
        return self._jacobian

    @property
    def matrix(self):
        """The symmetric matrix ``Λ``.
        """
        return self._matrix

    @property
    def eigenvalues(self):
        """The eigenvalues of ``Λ``, ascending.
        """
        return self._eigenvalues

    @property
    def min_eigenvalue(self):
        """The smallest eigenvalue of ``Λ``.
        """
        return float(self._eigenvalues[0])

    @property
    def norm(self):
        """The spectral norm of ``Λ``.
        """
        return float(numpy.max(numpy.abs(self._eigenvalues)))


def lambda_matrix(law, x, flavor=CAUCHY):
    """Evaluates ``Λ = sym D_{log λ} f̂`` for ``f̂ = σ̂`` or ``f̂ = τ̂``.

    :param law: The material law.

    :param x: The principal log-stretches.

    :param str flavor: The stress flavour.

    :return: the matrix
    :rtype: LambdaMatrix
    """
    x = log_stretches(x)
    return LambdaMatrix(x, flavor, law.jacobian(x, flavor))


class QuadFormBlocks(object):
    """The blocks of a quadratic form in the Lagrangian axes.

    :param q1_raw: The diagonal block before symmetrisation.

    :param q2: The pair coefficients, ordered ``(23, 13, 12)``.

    :param str stress_flavor: Either :data:`~corostab.CAUCHY` or
        :data:`~corostab.KIRCHHOFF`.

    :param str law_flavor: Either :data:`HYPERELASTIC` or
        :data:`CAUCHY_ELASTIC`.
    """
    def __init__(self, q1_raw, q2, stress_flavor, law_flavor):
        self._q1_raw = numpy.array(q1_raw, dtype=float)
        self._q1 = sym(self._q1_raw)
        self._q2 = numpy.array(q2, dtype=float)
        for value in (self._q1_raw, self._q1, self._q2):
            value.flags.writeable = False
        self._stress_flavor = stress_flavor
        self._law_flavor = law_flavor

    def __repr__(self):
        return 'QuadFormBlocks({}, {}, q1={}, q2={})'.format(
            self._stress_flavor,
            self._law_flavor,
            self._q1.tolist(),
            self._q2.tolist())

    @property
    def q1(self):
        """The symmetric diagonal block.
        """
        return self._q1

    @property
    def q1_raw(self):
        """The diagonal block as assembled; only its symmetric part enters
        the form.
        """
        return self._q1_raw

    @property
    def q2(self):
        """The pair coefficients ``c_p`` for the pairs ``(23, 13, 12)``.
        """
        return self._q2

    @property
    def stress_flavor(self):
        """The stress flavour.
        """
        return self._stress_flavor

    @property
    def law_flavor(self):
        """The law flavour used to assemble the blocks.
        """
        return self._law_flavor


def divided_difference(
        function, x, i, j, squared=True, values=None,
        tolerance=DEGENERACY_TOLERANCE):
    """The divided difference ``(fᵢ − fⱼ)/(gᵢ − gⱼ)`` of a vector function.

    Here ``g = e^{2x}`` when ``squared`` is set and ``g = x`` otherwise. For
    nearly coinciding ``gᵢ`` and ``gⱼ`` the difference is evaluated at
    ``xᵢ, xⱼ = m ± δ`` around the midpoint ``m`` instead, which is the central
    difference approximating the continuous extension.

    :param callable function: The vector function of the log-stretches.

    :param x: The log-stretches.

    :param int i: The first index.

    :param int j: The second index.

    :param bool squared: Whether to divide by squared stretches.

    :param values: ``function(x)``, if already known.

    :param float tolerance: The relative separation below which the pair is
        treated as degenerate.

    :return: the divided difference
    """
    x = numpy.asarray(x, dtype=float)
    g = numpy.exp(2.0 * x) if squared else x
    if squared:
        scale = max(g[i], g[j])
    else:
        scale = max(1.0, abs(g[i]), abs(g[j]))
    if abs(g[i] - g[j]) >= tolerance * scale:
        f = function(x) if values is None else values
        return (f[i] - f[j]) / (g[i] - g[j])

    middle = 0.5 * (x[i] + x[j])
    y = x.copy()
    y[i] = middle + DEGENERACY_STEP
    y[j] = middle - DEGENERACY_STEP
    g = numpy.exp(2.0 * y) if squared else y
    f = function(y)
    return (f[i] - f[j]) / (g[i] - g[j])


def pair_coefficient(law, x, i, j, values=None):
    """The off-diagonal coefficient
    ``(τ̂ᵢ − τ̂ⱼ)/(λᵢ² − λⱼ²)·(λᵢ⁻² + λⱼ⁻²)`` of the pair ``(i, j)``.

    :param law: The material law.

    :param x: The principal log-stretches.

    :param int i: The first index.

    :param int j: The second index.

    :param values: The principal Kirchhoff stresses at ``x``, if known.

    :return: the coefficient
    """
    x = log_stretches(x)
    return divided_difference(
        law.principal_kirchhoff, x, i, j, values=values,
        tolerance=law.DEGENERACY_TOLERANCE) * (
            math.exp(-2.0 * x[i]) + math.exp(-2.0 * x[j]))


def _pair_coefficients(law, state):
    x = state.log_stretches
    tau = law.principal_kirchhoff(x)
    return numpy.array([
        pair_coefficient(law, x, i, j, tau) for i, j in symbasis.PAIRS])


def _second_pk_derivatives(law, state):
    x = state.log_stretches
    return (
        law.principal_second_pk(x),
        law.second_pk_jacobian(x),
        1.0 / numpy.asarray(state.squared_stretches))


def qhyp_blocks(law, state):
    """Assembles the blocks of ``J·⟨D^ZJ σ, D⟩`` for a hyperelastic law from
    the derivatives of ``W̆(e)``.

    :param law: A hyperelastic law.

    :param corostab.DeformationState state: The deformation state.

    :return: the blocks
    :rtype: QuadFormBlocks

    :raises ValueError: if the law is not hyperelastic
    """
    if not law.HYPERELASTIC:
        raise ValueError('{} is not hyperelastic'.format(law.name))
    first, second, inverse = _second_pk_derivatives(law, state)
    coupling = numpy.outer(inverse, first)
    q1 = second + numpy.diag(2.0 * first * inverse) - sym(coupling)
    return QuadFormBlocks(
        q1, _pair_coefficients(law, state), CAUCHY, HYPERELASTIC)


def qela_blocks(law, state):
    """Assembles the blocks of ``J·⟨D^ZJ σ, D⟩`` for a Cauchy-elastic law
    from the principal values ``s̆ᵢ(e)``.

    The diagonal block as assembled, with entries ``∂s̆ⱼ/∂eᵢ``, is not
    symmetric in general.

    :param law: A material law.

    :param corostab.DeformationState state: The deformation state.

    :return: the blocks
    :rtype: QuadFormBlocks
    """
    first, second, inverse = _second_pk_derivatives(law, state)
    coupling = numpy.outer(inverse, first)
    q1 = second.T + numpy.diag(2.0 * first * inverse) - sym(coupling)
    return QuadFormBlocks(
        q1, _pair_coefficients(law, state), CAUCHY, CAUCHY_ELASTIC)


def qtau_blocks(law, state, law_flavor=None):
    """Assembles the blocks of the Kirchhoff form ``Q_τ``.

    This form lacks the term ``−⟨C⁻¹, Ė⟩·⟨S₂, Ė⟩`` of the Cauchy form.

    :param law: A material law.

    :param corostab.DeformationState state: The deformation state.

    :param str law_flavor: Either :data:`HYPERELASTIC` or
        :data:`CAUCHY_ELASTIC`. This defaults to the flavour of the law.

    :return: the blocks
    :rtype: QuadFormBlocks

    :raises ValueError: if a hyperelastic assembly is requested for a law
        that is not hyperelastic
    """
    if law_flavor is None:
        law_flavor = HYPERELASTIC if law.HYPERELASTIC else CAUCHY_ELASTIC
    if law_flavor == HYPERELASTIC and not law.HYPERELASTIC:
        raise ValueError('{} is not hyperelastic'.format(law.name))
    first, second, inverse = _second_pk_derivatives(law, state)
    if law_flavor == CAUCHY_ELASTIC:
        second = second.T
    q1 = second + numpy.diag(2.0 * first * inverse)
    return QuadFormBlocks(
        q1, _pair_coefficients(law, state), KIRCHHOFF, law_flavor)


def quadform_blocks(law, state, flavor=CAUCHY):
    """Assembles the blocks appropriate for a law and a stress flavour.
    """
    if flavor == KIRCHHOFF:
        return qtau_blocks(law, state)
    elif law.HYPERELASTIC:
        return qhyp_blocks(law, state)
    else:
        return qela_blocks(law, state)


def weighted_q1(law, state, flavor=CAUCHY):
    """The diagonal block computed as ``J·Wᵀ·Λ·W`` with ``W = diag(λᵢ⁻²)``.

    For the Kirchhoff flavour the leading ``J`` is omitted.

    :param law: The material law.

    :param corostab.DeformationState state: The deformation state.

    :param str flavor: The stress flavour.

    :return: a symmetric matrix
    """
    weights = 1.0 / numpy.asarray(state.squared_stretches)
    matrix = lambda_matrix(law, state.log_stretches, flavor).matrix
    factor = 1.0 if flavor == KIRCHHOFF else state.J
    return factor * matrix * numpy.outer(weights, weights)


def full_form_value(blocks, edot_components):
    """Evaluates a form on strain rate components in the Lagrangian axes.

    :param QuadFormBlocks blocks: The blocks.

    :param edot_components: The symmetric component matrix, as returned by
        :func:`~corostab.edot_components`.

    :return: the value
    """
    components = numpy.asarray(edot_components, dtype=float)
    diagonal = numpy.diag(components)
    off = numpy.array([components[i, j] for i, j in symbasis.PAIRS])
    return float(
        diagonal @ blocks.q1 @ diagonal
        + 2.0 * numpy.sum(blocks.q2 * off ** 2))


def block_form_matrix(blocks):
    """The 6×6 matrix of a form in the orthonormal basis of symmetric
    matrices expressed in the Lagrangian axes.

    :param QuadFormBlocks blocks: The blocks.

    :return: a block diagonal matrix
    """
    result = numpy.zeros((6, 6))
    result[:3, :3] = blocks.q1
    result[3:, 3:] = numpy.diag(blocks.q2)
    return result


def kirchhoff_scale(state, convention=UNIT):
    """The factor relating ``Q_τ(Ė)`` to ``⟨D^ZJ τ, D⟩``.

    :param corostab.DeformationState state: The deformation state.

    :param str convention: One of :data:`CONVENTIONS`.

    :raises ValueError: if the convention is unknown
    """
    if convention == UNIT:
        return 1.0
    elif convention == INVERSE_VOLUME:
        return 1.0 / state.J
    else:
        raise ValueError('unknown convention: {!r}'.format(convention))


def csp_form_matrix(blocks, state, convention=UNIT):
    """The 6×6 matrix of the pairing ``D ↦ ⟨D^ZJ f, D⟩`` over symmetric
    spatial ``D``, in the orthonormal basis of symmetric matrices.

    The pairing is the form evaluated on ``Ė = Fᵀ·D·F``, divided by ``J`` for
    the Cauchy flavour and scaled by :func:`kirchhoff_scale` for the
    Kirchhoff flavour. Its smallest eigenvalue is the minimum of the pairing
    over unit stretchings.

    :param QuadFormBlocks blocks: The blocks.

    :param corostab.DeformationState state: The deformation state.

    :param str convention: The Kirchhoff scaling convention.

    :return: a symmetric matrix
    """
    pushed = state.F @ state.eigenvectors
    transform = numpy.stack([
        symbasis.to_vector(pushed.T @ element @ pushed)
        for element in symbasis.BASIS], axis=1)
    if blocks.stress_flavor == KIRCHHOFF:
        scale = kirchhoff_scale(state, convention)
    else:
        scale = 1.0 / state.J
    return sym(scale * transform.T @ block_form_matrix(blocks) @ transform)


def tensorial_form_value(law, state, Edot, flavor=CAUCHY, h=None):
    """Evaluates the form directly from tensors.

    The value is ``⟨Ṡ₂, Ė⟩ + 2·tr(C⁻¹·Ė·S₂·Ė) − ⟨C⁻¹, Ė⟩·⟨S₂, Ė⟩``, where the
    last term is omitted for the Kirchhoff flavour and ``Ṡ₂`` is a central
    difference along ``E(t) = E + t·Ė``.

    :param law: The material law.

    :param corostab.DeformationState state: The deformation state.

    :param Edot: The referential strain rate.

    :param str flavor: The stress flavour.

    :param float h: The step. This defaults to a step relative to the size of
        ``Ė``.

    :return: the value
    """
    Edot = as_symmetric(Edot)
    if h is None:
        h = RATE_STEP / max(1.0, float(numpy.linalg.norm(Edot)))

    def S2(t):
        C = IDENTITY + 2.0 * (state.E + t * Edot)
        return second_pk(law, DeformationState(sqrt_spd(C)))

    S2_rate = (S2(h) - S2(-h)) / (2.0 * h)
    stress = S2(0.0)
    inverse = numpy.linalg.inv(state.C)
    value = frobenius(S2_rate, Edot) + 2.0 * numpy.trace(
        inverse @ Edot @ stress @ Edot)
    if flavor != KIRCHHOFF:
        value -= frobenius(inverse, Edot) * frobenius(stress, Edot)
    return float(value)
