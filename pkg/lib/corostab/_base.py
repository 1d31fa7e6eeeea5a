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

import logging
import types

import numpy


#: The Cauchy (true) stress flavour
CAUCHY = 'cauchy'

#: The Kirchhoff (weighted) stress flavour
KIRCHHOFF = 'kirchhoff'

_FLAVORS = {
    'cauchy': CAUCHY,
    'sigma': CAUCHY,
    'kirchhoff': KIRCHHOFF,
    'tau': KIRCHHOFF}


class Error(Exception):
    """The base class of all errors raised by this package.
    """
    pass


class LawError(Error):
    """An error raised when a material law cannot be evaluated at a point.
    """
    pass


def flavor(value):
    """Normalises a stress flavour name.

    :param str value: The name; one of ``'cauchy'``, ``'sigma'``,
        ``'kirchhoff'`` or ``'tau'``.

    :return: either :data:`CAUCHY` or :data:`KIRCHHOFF`

    :raises ValueError: if the name is unknown
    """
    try:
        return _FLAVORS[str(value).strip().lower()]
    except KeyError:
        raise ValueError('unknown stress flavour: {!r}'.format(value))


def log_stretches(x):
    """Converts a value to a vector of principal log-stretches.

    :param x: Three numbers.

    :return: a float array with shape ``(3,)``

    :raises ValueError: if the value does not hold three finite numbers
    """
    result = numpy.array(x, dtype=float).reshape(-1)
    if result.shape != (3,) or not numpy.all(numpy.isfinite(result)):
        raise ValueError('expected three finite log-stretches: {!r}'.format(x))
    return result


def invariants(x):
    """The principal invariants of ``C`` for principal log-stretches ``x``.

    :param x: The principal log-stretches.

    :return: the array ``(ι₁, ι₂, ι₃)``
    """
    squares = numpy.exp(2.0 * log_stretches(x))
    return numpy.array([
        squares.sum(),
        squares[0] * squares[1]
        + squares[1] * squares[2]
        + squares[0] * squares[2],
        squares.prod()])


def _steps(x, relative):
    return relative * numpy.maximum(1.0, numpy.abs(x))


def finite_difference_gradient(function, x, relative=1e-6):
    """The central finite-difference gradient of a scalar function.

    :param callable function: A function of a 3-vector returning a number.

    :param x: The evaluation point.

    :param float relative: The step relative to ``max(1, |x_j|)``.

    :return: an array with shape ``(3,)``
    """
    x = numpy.asarray(x, dtype=float)
    result = numpy.empty(3)
    for j, h in enumerate(_steps(x, relative)):
        forward, backward = x.copy(), x.copy()
        forward[j] += h
        backward[j] -= h
        result[j] = (function(forward) - function(backward)) / (2.0 * h)
    return result


def finite_difference_jacobian(function, x, relative=1e-6):
    """The central finite-difference Jacobian of a vector function.

    :param callable function: A function of a 3-vector returning a 3-vector.

    :param x: The evaluation point.

    :param float relative: The step relative to ``max(1, |x_j|)``.

    :return: the matrix ``J`` with ``J[i, j] = ∂f_i/∂x_j``
    """
    x = numpy.asarray(x, dtype=float)
    result = numpy.empty((3, 3))
    for j, h in enumerate(_steps(x, relative)):
        forward, backward = x.copy(), x.copy()
        forward[j] += h
        backward[j] -= h
        result[:, j] = (
            numpy.asarray(function(forward))
            - numpy.asarray(function(backward))) / (2.0 * h)
    return result


def finite_difference_hessian(function, x, relative=1e-4):
    """The Hessian of a scalar function by nested central differences.

    :param callable function: A function of a 3-vector returning a number.

    :param x: The evaluation point.

    :param float relative: The step relative to ``max(1, |x_j|)``.

    :return: a symmetric matrix with shape ``(3, 3)``
    """
    x = numpy.asarray(x, dtype=float)
    steps = _steps(x, relative)
    result = numpy.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            values = []
            for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                point = x.copy()
                point[i] += si * steps[i]
                point[j] += sj * steps[j]
                values.append(function(point))
            result[i, j] = result[j, i] = (
                values[0] - values[1] - values[2] + values[3]) / (
                4.0 * steps[i] * steps[j])
    return result


class MaterialLaw(object):
    """An isotropic elastic law expressed in principal log-stretches.

    Every law provides the principal Kirchhoff stresses ``τ̂ᵢ(x)`` as a
    permutation-equivariant function of ``x = (log λ₁, log λ₂, log λ₃)``; all
    other principal quantities are derived from them:

    * the principal Cauchy stresses ``σ̂ᵢ = τ̂ᵢ·e^{-s}`` with ``s = x₁+x₂+x₃``,
    * the eigenvalues of the second Piola-Kirchhoff stress ``s̆ᵢ = τ̂ᵢ/λᵢ²``.

    Laws are immutable after construction.

    :param str name: The name of the law.

    :param dict parameters: The material parameters.
    """
    #: Whether the principal stresses derive from a stored energy.
    HYPERELASTIC = False

    #: Whether the law carries a representation as coefficients of
    #: ``S₂ = γ₀𝟙 + γ₁C + γ₂C²``.
    HAS_GAMMA = False

    #: The relative step used for first derivatives by finite differences.
    FIRST_STEP = 1e-6

    #: The relative step used for second derivatives by finite differences.
    SECOND_STEP = 1e-4

    #: The relative separation of squared stretches below which divided
    #: differences of the principal stresses use their continuous extension.
    DEGENERACY_TOLERANCE = 1e-7

    #: The relative tolerance used when checking permutation equivariance of
    #: the principal stresses.
    EQUIVARIANCE_TOLERANCE = 1e-9

    def __init__(self, name, parameters=None):
        self._name = name
        self._parameters = types.MappingProxyType(dict(parameters or {}))
        self._log = logging.getLogger(__name__)

    def __repr__(self):
        return '{}({!r}, {})'.format(
            self.__class__.__name__,
            self._name,
            ', '.join(
                '{}={!r}'.format(key, value)
                for key, value in sorted(self._parameters.items())))

    @property
    def name(self):
        """The name passed to the constructor.
        """
        return self._name

    @property
    def parameters(self):
        """A read-only mapping of the material parameters.
        """
        return self._parameters

    def principal_kirchhoff(self, x):
        """The principal Kirchhoff stresses ``τ̂(x)``.

        :param x: The principal log-stretches.

        :return: an array with shape ``(3,)``

        :raises LawError: if the law does not produce finite values
        """
        x = log_stretches(x)
        return self._checked(self._kirchhoff(x), (3,), x)

    def kirchhoff_jacobian(self, x):
        """The Jacobian ``∂τ̂ᵢ/∂xⱼ``.

        This is not symmetrised.

        :param x: The principal log-stretches.

        :return: a matrix with shape ``(3, 3)``
        """
        x = log_stretches(x)
        return self._checked(self._kirchhoff_jacobian(x), (3, 3), x)

    def principal_cauchy(self, x):
        """The principal Cauchy stresses ``σ̂(x) = τ̂(x)·e^{-s}``.

        :param x: The principal log-stretches.

        :return: an array with shape ``(3,)``
        """
        x = log_stretches(x)
        return self.principal_kirchhoff(x) * numpy.exp(-x.sum())

    def cauchy_jacobian(self, x):
        """The Jacobian ``∂σ̂ᵢ/∂xⱼ = e^{-s}·(∂τ̂ᵢ/∂xⱼ − τ̂ᵢ)``.

        :param x: The principal log-stretches.

        :return: a matrix with shape ``(3, 3)``
        """
        x = log_stretches(x)
        tau = self.principal_kirchhoff(x)
        return numpy.exp(-x.sum()) * (
            self.kirchhoff_jacobian(x) - tau[:, numpy.newaxis])

    def principal_second_pk(self, x):
        """The eigenvalues ``s̆ᵢ = τ̂ᵢ/λᵢ²`` of the second Piola-Kirchhoff
        stress.

        For a hyperelastic law these are the derivatives ``∂W̆/∂eᵢ``.

        :param x: The principal log-stretches.

        :return: an array with shape ``(3,)``
        """
        x = log_stretches(x)
        return self.principal_kirchhoff(x) * numpy.exp(-2.0 * x)

    def second_pk_jacobian(self, x):
        """The Jacobian ``∂s̆ᵢ/∂eⱼ`` with respect to the Green-Lagrange
        eigenvalues ``eⱼ = ½(λⱼ² − 1)``.

        This is obtained from the log-stretch Jacobian by the chain rule, never
        by differencing in ``e``.

        :param x: The principal log-stretches.

        :return: a matrix with shape ``(3, 3)``
        """
        x = log_stretches(x)
        tau = self.principal_kirchhoff(x)
        inverse = numpy.exp(-2.0 * x)
        return (
            self.kirchhoff_jacobian(x) - numpy.diag(2.0 * tau)) * numpy.outer(
                inverse, inverse)

    def principal(self, x, flavor):
        """The principal stresses of a flavour.

        :param x: The principal log-stretches.

        :param str flavor: Either :data:`CAUCHY` or :data:`KIRCHHOFF`.

        :return: an array with shape ``(3,)``
        """
        if flavor == KIRCHHOFF:
            return self.principal_kirchhoff(x)
        else:
            return self.principal_cauchy(x)

    def jacobian(self, x, flavor):
        """The log-stretch Jacobian of the principal stresses of a flavour.

        :param x: The principal log-stretches.

        :param str flavor: Either :data:`CAUCHY` or :data:`KIRCHHOFF`.

        :return: a matrix with shape ``(3, 3)``
        """
        if flavor == KIRCHHOFF:
            return self.kirchhoff_jacobian(x)
        else:
            return self.cauchy_jacobian(x)

    def gamma(self, iota):
        """The coefficients ``(γ₀, γ₁, γ₂)`` at the invariants of ``C``.

        :param iota: The invariants ``(ι₁, ι₂, ι₃)``.

        :return: an array with shape ``(3,)``

        :raises NotImplementedError: if :attr:`HAS_GAMMA` is ``False``
        """
        iota = numpy.asarray(iota, dtype=float)
        return self._checked(self._gamma(iota), (3,), iota)

    def _checked(self, value, shape, x):
        """Verifies the shape and finiteness of a computed value.
        """
        result = numpy.asarray(value, dtype=float)
        if result.shape != shape:
            raise LawError('{} returned shape {} at {}'.format(
                self._name, result.shape, x.tolist()))
        if not numpy.all(numpy.isfinite(result)):
            raise LawError('{} is not finite at {}'.format(
                self._name, x.tolist()))
        return result

    def _kirchhoff(self, x):
        """The implementation of :meth:`principal_kirchhoff`.

        This is a law dependent implementation.
        """
        raise NotImplementedError()

    def _kirchhoff_jacobian(self, x):
        """The implementation of :meth:`kirchhoff_jacobian`.

        The default implementation uses central differences of
        :meth:`_kirchhoff`.
        """
        return finite_difference_jacobian(
            self._kirchhoff, x, self.FIRST_STEP)

    def _gamma(self, iota):
        """The implementation of :meth:`gamma`.

        This is a law dependent implementation.
        """
        raise NotImplementedError()


class HyperelasticLaw(MaterialLaw):
    """A law deriving from a stored energy ``ŵ(x)``.

    The principal Kirchhoff stresses are given by the Richter formula
    ``τ̂ᵢ = ∂ŵ/∂xᵢ``, so their Jacobian is the Hessian of the energy and is
    symmetric.
    """
    HYPERELASTIC = True

    def energy(self, x):
        """The stored energy ``ŵ(x)``.

        :param x: The principal log-stretches.

        :return: the energy

        :raises LawError: if the energy is not finite
        """
        x = log_stretches(x)
        return float(self._checked(self._energy(x), (), x))

    def green_lagrange_energy(self, e):
        """The stored energy ``W̆(e)`` as a function of the Green-Lagrange
        eigenvalues.

        :param e: The eigenvalues ``eᵢ > -½`` of ``E``.

        :return: the energy
        """
        e = numpy.asarray(e, dtype=float)
        return self.energy(0.5 * numpy.log1p(2.0 * e))

    def energy_hessian(self, x):
        """The Hessian ``∂²ŵ/∂xᵢ∂xⱼ``.

        :param x: The principal log-stretches.

        :return: a symmetric matrix with shape ``(3, 3)``
        """
        x = log_stretches(x)
        return self._checked(self._energy_hessian(x), (3, 3), x)

    def _kirchhoff(self, x):
        return finite_difference_gradient(self._energy, x, self.FIRST_STEP)

    def _kirchhoff_jacobian(self, x):
        return self._energy_hessian(x)

    def _energy(self, x):
        """The implementation of :meth:`energy`.

        This is a law dependent implementation.
        """
        raise NotImplementedError()

    def _energy_hessian(self, x):
        """The implementation of :meth:`energy_hessian`.

        The default implementation uses nested central differences of
        :meth:`_energy`.
        """
        return finite_difference_hessian(self._energy, x, self.SECOND_STEP)


class CauchyElasticLaw(MaterialLaw):
    """A law giving the principal stresses directly.

    The Jacobian of the principal stresses need not be symmetric.
    """
    HYPERELASTIC = False
