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
Built-in and expression-defined isotropic material laws.
"""

import logging

import numpy

from ._base import (
    CauchyElasticLaw,
    Error,
    HyperelasticLaw,
    invariants)
from ._expressions import (
    Expression,
    check_function_equivariance,
    expand_components)


#: Expressions are functions of the principal log-stretches
LOG_STRETCH = 'log-stretch'

#: Expressions are functions of the Green-Lagrange eigenvalues
GREEN_LAGRANGE = 'green-lagrange'

#: Expressions are functions of the invariants of ``C``
INVARIANTS = 'invariants'

HENCKY = 'hencky'
EXP_HENCKY = 'exp-hencky'
CAUCHY_NONHYPER = 'cauchy-nonhyper'
CUSTOM_ENERGY = 'custom-energy'
CUSTOM_STRESS = 'custom-stress'
CUSTOM_GAMMA = 'custom-gamma'

#: All law kinds
KINDS = (
    HENCKY, EXP_HENCKY, CAUCHY_NONHYPER,
    CUSTOM_ENERGY, CUSTOM_STRESS, CUSTOM_GAMMA)


class SchemaError(Error):
    """Raised when a material or scan description is incomplete or
    inconsistent.
    """
    pass


class EquivarianceError(Error):
    """Raised when the principal stresses of a law are not permutation
    equivariant.

    :param dict witness: The first counterexample found.
    """
    def __init__(self, message, witness=None):
        super(EquivarianceError, self).__init__(message)
        self.witness = witness


def _warn_unless(law, condition, description):
    if not condition:
        law._log.warning(
            '{} is outside of the admissible range: {}'.format(
                law, description))


class HenckyLaw(HyperelasticLaw):
    """The Hencky energy ``ŵ(x) = μ‖x‖² + (λ/2)s²``.
    """
    def __init__(self, mu, lam, name=HENCKY):
        super(HenckyLaw, self).__init__(name, {'mu': mu, 'lam': lam})
        self._mu = float(mu)
        self._lam = float(lam)
        _warn_unless(self, self._mu > 0, 'mu > 0')
        _warn_unless(
            self, 2 * self._mu + 3 * self._lam > 0, '2*mu + 3*lam > 0')

    def _energy(self, x):
        return self._mu * x.dot(x) + 0.5 * self._lam * x.sum() ** 2

    def _kirchhoff(self, x):
        return 2.0 * self._mu * x + self._lam * x.sum()

    def _energy_hessian(self, x):
        return 2.0 * self._mu * numpy.eye(3) + self._lam * numpy.ones((3, 3))


class ExpHenckyLaw(HyperelasticLaw):
    """The exponentiated Hencky energy
    ``ŵ(x) = (μ/k)·e^{k‖x‖²} + (λ/2k̂)·e^{k̂s²}``.
    """
    def __init__(self, mu, lam, k, khat, name=EXP_HENCKY):
        super(ExpHenckyLaw, self).__init__(
            name, {'mu': mu, 'lam': lam, 'k': k, 'khat': khat})
        self._mu = float(mu)
        self._lam = float(lam)
        self._k = float(k)
        self._khat = float(khat)
        _warn_unless(self, self._mu > 0, 'mu > 0')
        _warn_unless(
            self, 2 * self._mu + 3 * self._lam > 0, '2*mu + 3*lam > 0')
        _warn_unless(self, self._k > 0, 'k > 0')
        _warn_unless(self, self._khat > 0, 'khat > 0')

    def _exponentials(self, x):
        s = x.sum()
        return numpy.exp(self._k * x.dot(x)), numpy.exp(self._khat * s * s), s

    def _energy(self, x):
        deviatoric, volumetric, _ = self._exponentials(x)
        return (
            self._mu / self._k * deviatoric
            + self._lam / (2.0 * self._khat) * volumetric)

    def _kirchhoff(self, x):
        deviatoric, volumetric, s = self._exponentials(x)
        return (
            2.0 * self._mu * deviatoric * x
            + self._lam * volumetric * s * numpy.ones(3))

    def _energy_hessian(self, x):
        deviatoric, volumetric, s = self._exponentials(x)
        return (
            2.0 * self._mu * deviatoric * (
                numpy.eye(3) + 2.0 * self._k * numpy.outer(x, x))
            + self._lam * volumetric * (
                1.0 + 2.0 * self._khat * s * s) * numpy.ones((3, 3)))


class CauchyNonhyperLaw(CauchyElasticLaw):
    """The Cauchy-elastic law ``τ̂ᵢ = 2μxᵢ + λs + d·xᵢ·s``.

    For ``d ≠ 0`` this law does not derive from an energy.
    """
    def __init__(self, mu, lam, d, name=CAUCHY_NONHYPER):
        super(CauchyNonhyperLaw, self).__init__(
            name, {'mu': mu, 'lam': lam, 'd': d})
        self._mu = float(mu)
        self._lam = float(lam)
        self._d = float(d)
        _warn_unless(self, self._mu > 0, 'mu > 0')

    def _kirchhoff(self, x):
        s = x.sum()
        return 2.0 * self._mu * x + self._lam * s + self._d * x * s

    def _kirchhoff_jacobian(self, x):
        return (
            2.0 * self._mu * numpy.eye(3)
            + self._lam * numpy.ones((3, 3))
            + self._d * (
                x.sum() * numpy.eye(3) + numpy.outer(x, numpy.ones(3))))


class GammaLaw(CauchyElasticLaw):
    """A Cauchy-elastic law given by ``S₂ = γ₀𝟙 + γ₁C + γ₂C²``.

    :param callable gamma: A function from the invariants ``(ι₁, ι₂, ι₃)`` of
        ``C`` to the coefficients ``(γ₀, γ₁, γ₂)``.
    """
    HAS_GAMMA = True

    def __init__(self, name, gamma, parameters=None):
        super(GammaLaw, self).__init__(name, parameters)
        self._gamma_function = gamma

    def _gamma(self, iota):
        return self._gamma_function(iota)

    def _kirchhoff(self, x):
        squares = numpy.exp(2.0 * x)
        g0, g1, g2 = self.gamma(invariants(x))
        return squares * (g0 + squares * (g1 + squares * g2))


class ExpressionEnergyLaw(HyperelasticLaw):
    """A hyperelastic law with an energy given by an expression.

    :param Expression energy: The energy, either ``ŵ(x)`` or ``W̆(e)``.

    :param str variables: Either :data:`LOG_STRETCH` or
        :data:`GREEN_LAGRANGE`.
    """
    EQUIVARIANCE_TOLERANCE = 1e-7

    #: The principal stresses are finite differences of the energy, with an
    #: absolute noise of about ``1e-10``.
    DEGENERACY_TOLERANCE = 1e-3

    def __init__(self, name, energy, variables, parameters=None):
        super(ExpressionEnergyLaw, self).__init__(name, parameters)
        self._expression = energy
        self._variables = variables

    def _energy(self, x):
        if self._variables == GREEN_LAGRANGE:
            x = 0.5 * numpy.expm1(2.0 * x)
        return self._expression(x, self.parameters)


class ExpressionStressLaw(CauchyElasticLaw):
    """A Cauchy-elastic law with principal stresses given by expressions.

    With :data:`LOG_STRETCH` variables the expressions give ``τ̂ᵢ(x)``; with
    :data:`GREEN_LAGRANGE` variables they give ``s̆ᵢ(e)``.

    :param components: Three :class:`Expression` instances.

    :param str variables: Either :data:`LOG_STRETCH` or
        :data:`GREEN_LAGRANGE`.
    """
    def __init__(self, name, components, variables, parameters=None):
        super(ExpressionStressLaw, self).__init__(name, parameters)
        self._components = tuple(components)
        self._variables = variables

    def _kirchhoff(self, x):
        if self._variables == GREEN_LAGRANGE:
            squares = numpy.exp(2.0 * x)
            e = 0.5 * (squares - 1.0)
            return squares * numpy.array([
                component(e, self.parameters)
                for component in self._components])
        else:
            return numpy.array([
                component(x, self.parameters)
                for component in self._components])


def hencky_law(mu, lam):
    """Creates a Hencky law.

    Parameters outside of ``μ > 0, 2μ + 3λ > 0`` are accepted with a
    warning.

    :param float mu: The shear modulus.

    :param float lam: The first Lamé parameter.

    :return: the law
    :rtype: HenckyLaw
    """
    return HenckyLaw(mu, lam)


def exp_hencky_law(mu, lam, k, khat):
    """Creates an exponentiated Hencky law.

    :param float mu: The shear modulus.

    :param float lam: The first Lamé parameter.

    :param float k: The deviatoric exponent.

    :param float khat: The volumetric exponent.

    :return: the law
    :rtype: ExpHenckyLaw
    """
    return ExpHenckyLaw(mu, lam, k, khat)


def cauchy_nonhyper_law(mu, lam, d):
    """Creates the non-hyperelastic Cauchy-elastic law
    ``τ̂ᵢ = 2μxᵢ + λs + d·xᵢ·s``.

    :param float mu: The shear modulus.

    :param float lam: The first Lamé parameter.

    :param float d: The coupling coefficient.

    :return: the law
    :rtype: CauchyNonhyperLaw
    """
    return CauchyNonhyperLaw(mu, lam, d)


def gamma_to_principal_s2(law, state):
    """Evaluates the principal values of ``S₂`` from the γ-representation.

    :param law: A law with :attr:`~corostab.MaterialLaw.HAS_GAMMA` set.

    :param state: The deformation state.

    :return: the values ``s̆ⱼ = γ₀ + γ₁λⱼ² + γ₂λⱼ⁴``

    :raises ValueError: if the law has no γ-representation
    """
    if not law.HAS_GAMMA:
        raise ValueError('{} has no gamma representation'.format(law.name))
    squares = numpy.asarray(state.squared_stretches)
    g0, g1, g2 = law.gamma(invariants(state.log_stretches))
    return g0 + squares * (g1 + squares * g2)


class MaterialConfig(object):
    """A description of a material law.

    :param str kind: One of :data:`KINDS`.

    :param dict parameters: The material parameters.

    :param dict expressions: The expression sources for custom kinds, keyed
        by ``energy``, ``stress`` (a component template), ``stress1`` to
        ``stress3`` or ``gamma0`` to ``gamma2``.

    :param str variables: The meaning of ``x1``, ``x2`` and ``x3`` in the
        expressions. This defaults to :data:`INVARIANTS` for
        ``custom-gamma`` and :data:`LOG_STRETCH` otherwise.

    :param str name: The name of the law. This defaults to ``kind``.
    """
    def __init__(
            self, kind, parameters=None, expressions=None, variables=None,
            name=None):
        if kind not in KINDS:
            raise SchemaError('unknown material kind: {!r}'.format(kind))
        self._kind = kind
        self._parameters = {
            key: float(value)
            for key, value in (parameters or {}).items()}
        self._expressions = dict(expressions or {})
        self._variables = variables or (
            INVARIANTS if kind == CUSTOM_GAMMA else LOG_STRETCH)
        self._name = name or kind

    def __repr__(self):
        return 'MaterialConfig({!r}, {!r})'.format(
            self._kind, self._parameters)

    @property
    def kind(self):
        """The law kind.
        """
        return self._kind

    @property
    def parameters(self):
        """The material parameters.
        """
        return dict(self._parameters)

    @property
    def expressions(self):
        """The expression sources.
        """
        return dict(self._expressions)

    @property
    def variables(self):
        """The meaning of the expression variables.
        """
        return self._variables

    @property
    def name(self):
        """The name of the law.
        """
        return self._name

    def as_dict(self):
        """A plain representation of this configuration.
        """
        return {
            'kind': self._kind,
            'name': self._name,
            'parameters': dict(sorted(self._parameters.items())),
            'expressions': dict(sorted(self._expressions.items())),
            'variables': self._variables}


#: The built-in law classes, keyed by kind, with their parameter names
BUILTIN_LAWS = {
    HENCKY: (HenckyLaw, ('mu', 'lam')),
    EXP_HENCKY: (ExpHenckyLaw, ('mu', 'lam', 'k', 'khat')),
    CAUCHY_NONHYPER: (CauchyNonhyperLaw, ('mu', 'lam', 'd'))}


def check_law_equivariance(law, samples=100, seed=0, box=1.0):
    """Checks that the principal Kirchhoff stresses of a law are permutation
    equivariant.

    For energy-defined laws this checks the gradient of the energy.

    :param law: The law.

    :param int samples: The number of sample points.

    :param int seed: The random seed.

    :param float box: The half-width of the log-stretch sample box.

    :return: the verdict
    :rtype: corostab.EquivarianceVerdict
    """
    return check_function_equivariance(
        law.principal_kirchhoff, samples, seed, box,
        law.EQUIVARIANCE_TOLERANCE)


def _expression(config, key):
    try:
        return Expression(config.expressions[key])
    except KeyError:
        raise SchemaError('{} material requires the expression {!r}'.format(
            config.kind, key))


def _stress_components(config):
    expressions = config.expressions
    if 'stress' in expressions:
        if any('stress{}'.format(i) in expressions for i in (1, 2, 3)):
            raise SchemaError('specify either stress or stress1 to stress3')
        return tuple(
            Expression(source)
            for source in expand_components(expressions['stress']))
    else:
        return tuple(
            _expression(config, 'stress{}'.format(i)) for i in (1, 2, 3))


def law_from_expressions(config):
    """Creates a law from expressions.

    Derivatives are computed by central finite differences with the relative
    step :attr:`~corostab.MaterialLaw.FIRST_STEP`; energy Hessians by nested
    central differences with :attr:`~corostab.MaterialLaw.SECOND_STEP`.

    :param MaterialConfig config: A configuration of a custom kind.

    :return: the law

    :raises corostab.LexError: if an expression contains invalid characters

    :raises corostab.ParseError: if an expression does not parse

    :raises SchemaError: if an expression is missing, references an unknown
        parameter or the variables do not fit the kind

    :raises EquivarianceError: if the principal stresses are not permutation
        equivariant
    """
    kind, variables = config.kind, config.variables
    if kind == CUSTOM_ENERGY:
        allowed = (LOG_STRETCH, GREEN_LAGRANGE)
        expressions = (_expression(config, 'energy'),)
    elif kind == CUSTOM_STRESS:
        allowed = (LOG_STRETCH, GREEN_LAGRANGE)
        expressions = _stress_components(config)
    elif kind == CUSTOM_GAMMA:
        allowed = (INVARIANTS,)
        expressions = tuple(
            _expression(config, 'gamma{}'.format(i)) for i in (0, 1, 2))
    else:
        raise SchemaError('{!r} is not an expression kind'.format(kind))
    if variables not in allowed:
        raise SchemaError('{} material cannot use {!r} variables'.format(
            kind, variables))

    unknown = set().union(
        *(expression.parameters for expression in expressions)) - set(
            config.parameters)
    if unknown:
        raise SchemaError('unknown parameters: {}'.format(
            ', '.join(sorted(unknown))))

    parameters = config.parameters
    if kind == CUSTOM_ENERGY:
        law = ExpressionEnergyLaw(
            config.name, expressions[0], variables, parameters)
    elif kind == CUSTOM_STRESS:
        law = ExpressionStressLaw(
            config.name, expressions, variables, parameters)
    else:
        law = GammaLaw(
            config.name,
            lambda iota: numpy.array([
                expression(iota, parameters)
                for expression in expressions]),
            parameters)

    verdict = check_law_equivariance(law)
    if not verdict:
        raise EquivarianceError(
            '{} is not permutation equivariant: {}'.format(
                config.name, verdict.witness),
            verdict.witness)
    return law


def law_from_config(config):
    """Creates a law from a configuration.

    :param MaterialConfig config: The configuration.

    :return: the law

    :raises SchemaError: if the parameters of a built-in law are missing or
        unknown
    """
    if config.kind in BUILTIN_LAWS:
        factory, names = BUILTIN_LAWS[config.kind]
        parameters = config.parameters
        missing = set(names) - set(parameters)
        unknown = set(parameters) - set(names)
        if missing or unknown:
            raise SchemaError(
                '{} requires the parameters {}; missing: {}; unknown: '
                '{}'.format(
                    config.kind,
                    ', '.join(names),
                    ', '.join(sorted(missing)) or 'none',
                    ', '.join(sorted(unknown)) or 'none'))
        law = factory(
            *(parameters[name] for name in names), name=config.name)
        logging.getLogger(__name__).debug('Created {!r}'.format(law))
        return law
    else:
        return law_from_expressions(config)
