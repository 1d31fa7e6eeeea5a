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
Kinematics of homogeneous deformations.

Second-order tensors are represented by read-only ``(3, 3)`` float arrays; use
:func:`as_tensor` and :func:`as_symmetric` to validate and freeze a value.
"""

import collections

import numpy
import scipy.linalg

from scipy.spatial.transform import Rotation

from ._base import Error


#: The identity tensor
IDENTITY = numpy.eye(3)
IDENTITY.flags.writeable = False

#: The default tolerance below which an eigenvalue is considered non-positive
DEFINITENESS_TOLERANCE = 1e-12

#: The relative finite-difference step in path time
RATE_STEP = 1e-5


class NonPositiveDefinite(Error):
    """Raised when a symmetric tensor is required to be positive definite but
    is not.
    """
    pass


class NonInvertible(Error):
    """Raised when a deformation gradient does not have a positive determinant.
    """
    pass


class DomainExceeded(Error):
    """Raised when a motion path is evaluated outside of its domain.
    """
    pass


def _frozen(value):
    value.flags.writeable = False
    return value


def as_tensor(entries):
    """Validates a general second-order tensor.

    :param entries: A 3×3 array-like.

    :return: a read-only float array with shape ``(3, 3)``

    :raises ValueError: if the value does not have the correct shape or holds
        non-finite entries
    """
    result = numpy.array(entries, dtype=float)
    if result.shape != (3, 3):
        raise ValueError('expected a 3×3 tensor, got shape {}'.format(
            result.shape))
    if not numpy.all(numpy.isfinite(result)):
        raise ValueError('tensor has non-finite entries')
    return _frozen(result)


def as_symmetric(entries):
    """Validates a symmetric second-order tensor.

    The value is symmetrised, so roundoff asymmetry is removed.

    :param entries: A 3×3 array-like.

    :return: a read-only symmetric float array with shape ``(3, 3)``

    :raises ValueError: if the value does not have the correct shape or holds
        non-finite entries
    """
    result = numpy.array(as_tensor(entries))
    return _frozen(0.5 * (result + result.T))


def sym(tensor):
    """The symmetric part of a tensor.
    """
    tensor = numpy.asarray(tensor, dtype=float)
    return 0.5 * (tensor + tensor.T)


def skew(tensor):
    """The skew-symmetric part of a tensor.
    """
    tensor = numpy.asarray(tensor, dtype=float)
    return 0.5 * (tensor - tensor.T)


def frobenius(a, b):
    """The Frobenius inner product ``⟨a, b⟩ = tr(aᵀb)``.
    """
    return float(numpy.sum(numpy.asarray(a) * numpy.asarray(b)))


class SpectralData(object):
    """The spectral decomposition of a symmetric tensor.

    :param eigenvalues: The eigenvalues in ascending order.

    :param eigenvectors: A matrix whose columns are the corresponding
        orthonormal eigenvectors.
    """
    def __init__(self, eigenvalues, eigenvectors):
        self._eigenvalues = _frozen(numpy.array(eigenvalues, dtype=float))
        self._eigenvectors = _frozen(numpy.array(eigenvectors, dtype=float))

    def __repr__(self):
        return 'SpectralData({})'.format(self._eigenvalues.tolist())

    @property
    def eigenvalues(self):
        """The eigenvalues, in ascending order.
        """
        return self._eigenvalues

    @property
    def eigenvectors(self):
        """The orthonormal eigenvectors as the columns of a matrix.

        The sign of every eigenvector is chosen so that its component of
        largest magnitude is positive.
        """
        return self._eigenvectors

    def vector(self, i):
        """The eigenvector for eigenvalue ``i``.
        """
        return self._eigenvectors[:, i]

    def reconstruct(self, values=None):
        """Reassembles ``Σᵢ fᵢ Uⁱ⊗Uⁱ``.

        :param values: The values ``fᵢ`` to place on the eigenvectors. If not
            specified, the eigenvalues are used.

        :return: a symmetric tensor
        """
        if values is None:
            values = self._eigenvalues
        vectors = self._eigenvectors
        return as_symmetric(
            (vectors * numpy.asarray(values, dtype=float)) @ vectors.T)


def spectral_decompose(tensor):
    """Decomposes a symmetric tensor.

    Repeated eigenvalues yield an orthonormal basis of the eigenspace.

    :param tensor: A symmetric tensor.

    :return: the spectral data
    :rtype: SpectralData
    """
    values, vectors = numpy.linalg.eigh(as_symmetric(tensor))
    largest = numpy.argmax(numpy.abs(vectors), axis=0)
    signs = numpy.sign(vectors[largest, numpy.arange(3)])
    signs[signs == 0] = 1.0
    return SpectralData(values, vectors * signs)


def _positive_spectrum(tensor, tolerance):
    spectral = spectral_decompose(tensor)
    if spectral.eigenvalues[0] <= tolerance:
        raise NonPositiveDefinite(
            'minimum eigenvalue {!r} is not positive'.format(
                float(spectral.eigenvalues[0])))
    return spectral


def log_spd(tensor, tolerance=DEFINITENESS_TOLERANCE):
    """The logarithm of a symmetric positive definite tensor.

    :param tensor: The tensor.

    :param float tolerance: The minimum admissible eigenvalue.

    :return: ``Σᵢ log(eᵢ) Uⁱ⊗Uⁱ``

    :raises NonPositiveDefinite: if an eigenvalue is not greater than
        ``tolerance``
    """
    spectral = _positive_spectrum(tensor, tolerance)
    return spectral.reconstruct(numpy.log(spectral.eigenvalues))


def sqrt_spd(tensor, tolerance=DEFINITENESS_TOLERANCE):
    """The positive definite square root of a symmetric positive definite
    tensor.

    :param tensor: The tensor.

    :param float tolerance: The minimum admissible eigenvalue.

    :raises NonPositiveDefinite: if an eigenvalue is not greater than
        ``tolerance``
    """
    spectral = _positive_spectrum(tensor, tolerance)
    return spectral.reconstruct(numpy.sqrt(spectral.eigenvalues))


def exp_sym(tensor):
    """The exponential of a symmetric tensor.
    """
    spectral = spectral_decompose(tensor)
    return spectral.reconstruct(numpy.exp(spectral.eigenvalues))


class DeformationState(object):
    """A homogeneous deformation with its derived strain measures.

    All values are computed once, at construction.

    :param F: The deformation gradient.

    :raises NonInvertible: if ``det F ≤ 0``
    """
    def __init__(self, F):
        F = as_tensor(F)
        J = float(numpy.linalg.det(F))
        if not J > 0.0:
            raise NonInvertible(
                'deformation gradient has determinant {!r}'.format(J))

        self._F = F
        self._J = J
        self._C = as_symmetric(F.T @ F)
        self._B = as_symmetric(F @ F.T)
        self._E = as_symmetric(0.5 * (self._C - IDENTITY))
        self._spectral = spectral_decompose(self._E)

        e = self._spectral.eigenvalues
        if numpy.any(2.0 * e <= -1.0):
            raise NonPositiveDefinite(
                'right Cauchy-Green tensor is singular: {}'.format(
                    (1.0 + 2.0 * e).tolist()))
        self._log_stretches = _frozen(0.5 * numpy.log1p(2.0 * e))
        self._stretches = _frozen(numpy.exp(self._log_stretches))
        self._U = self._spectral.reconstruct(self._stretches)
        self._R = as_tensor(F @ numpy.linalg.inv(self._U))
        self._V = sqrt_spd(self._B)
        self._log_V = as_symmetric(numpy.asarray(log_spd(self._V)))

    def __repr__(self):
        return 'DeformationState(log_stretches={})'.format(
            self._log_stretches.tolist())

    @classmethod
    def from_log_stretches(cls, x, rotation=None, frame=None):
        """Creates a state with prescribed principal log-stretches.

        The deformation gradient is ``F = R·Q·diag(e^x)·Qᵀ``.

        :param x: The principal log-stretches.

        :param rotation: The rotation ``R``. This defaults to the identity.

        :param frame: The Lagrangian frame ``Q``. This defaults to the
            identity.

        :return: a deformation state
        """
        x = numpy.asarray(x, dtype=float).reshape(3)
        rotation = IDENTITY if rotation is None else as_tensor(rotation)
        frame = IDENTITY if frame is None else as_tensor(frame)
        return cls(rotation @ frame @ numpy.diag(numpy.exp(x)) @ frame.T)

    @property
    def F(self):
        """The deformation gradient.
        """
        return self._F

    @property
    def J(self):
        """The volume ratio ``det F``.
        """
        return self._J

    @property
    def C(self):
        """The right Cauchy-Green tensor ``FᵀF``.
        """
        return self._C

    @property
    def B(self):
        """The left Cauchy-Green tensor ``FFᵀ``.
        """
        return self._B

    @property
    def E(self):
        """The Green-Lagrange strain ``½(C − 𝟙)``.
        """
        return self._E

    @property
    def U(self):
        """The right stretch tensor ``√C``.
        """
        return self._U

    @property
    def V(self):
        """The left stretch tensor ``√B``.
        """
        return self._V

    @property
    def R(self):
        """The rotation of the polar decomposition ``F = RU``.
        """
        return self._R

    @property
    def log_V(self):
        """The spatial logarithmic strain ``log V``.
        """
        return self._log_V

    @property
    def spectral(self):
        """The spectral data of ``E``; its eigenvectors span the Lagrangian
        axes.
        """
        return self._spectral

    @property
    def eigenvectors(self):
        """The Lagrangian axes ``Uⁱ`` as matrix columns.
        """
        return self._spectral.eigenvectors

    @property
    def green_lagrange(self):
        """The eigenvalues ``eᵢ`` of ``E``, ascending.
        """
        return self._spectral.eigenvalues

    @property
    def stretches(self):
        """The principal stretches ``λᵢ``, ascending.
        """
        return self._stretches

    @property
    def squared_stretches(self):
        """The values ``λᵢ² = 1 + 2eᵢ``.
        """
        return 1.0 + 2.0 * self._spectral.eigenvalues

    @property
    def log_stretches(self):
        """The principal log-stretches ``xᵢ = log λᵢ``, ascending.
        """
        return self._log_stretches


def strain_measures(F):
    """Computes all strain measures of a deformation gradient.

    :param F: The deformation gradient.

    :return: the deformation state
    :rtype: DeformationState

    :raises NonInvertible: if ``det F ≤ 0``
    """
    return DeformationState(F)


def edot_components(state, Edot):
    """Expresses a Green-Lagrange strain rate in the Lagrangian axes.

    :param DeformationState state: The current state.

    :param Edot: The symmetric rate ``Ė``.

    :return: the symmetric matrix of ``Ė_jk = ⟨Ė·Uʲ, Uᵏ⟩``
    """
    vectors = state.eigenvectors
    return as_symmetric(vectors.T @ as_symmetric(Edot) @ vectors)


class MotionPath(object):
    """A smooth motion ``t ↦ F(t)``.

    :param callable evaluator: The function returning ``F(t)``.

    :param domain: The closed time interval ``(t₀, t₁)`` on which the path is
        defined.
    """
    def __init__(self, evaluator, domain=(-numpy.inf, numpy.inf)):
        t0, t1 = (float(t) for t in domain)
        if not t0 < t1:
            raise ValueError('invalid domain: {!r}'.format(domain))
        self._evaluator = evaluator
        self._domain = (t0, t1)

    @property
    def domain(self):
        """The domain ``(t₀, t₁)``.
        """
        return self._domain

    def contains(self, t):
        """Whether a time lies inside of the domain.
        """
        return self._domain[0] <= t <= self._domain[1]

    def __call__(self, t):
        """Evaluates ``F(t)``.

        :raises DomainExceeded: if ``t`` is outside of the domain

        :raises NonInvertible: if ``det F(t) ≤ 0``
        """
        if not self.contains(t):
            raise DomainExceeded('{!r} is outside of {!r}'.format(
                t, self._domain))
        F = as_tensor(self._evaluator(t))
        if not numpy.linalg.det(F) > 0.0:
            raise NonInvertible('F({!r}) is not orientation preserving'.format(
                t))
        return F

    def state(self, t):
        """The deformation state at ``t``.
        """
        return DeformationState(self(t))


def rate_step(t):
    """The default central-difference step ``1e-5·max(1, |t|)``.
    """
    return RATE_STEP * max(1.0, abs(t))


def _check_step(path, t, h):
    if h is None:
        h = rate_step(t)
    if not h > 0.0:
        raise ValueError('step must be positive: {!r}'.format(h))
    if not (path.contains(t - h) and path.contains(t + h)):
        raise DomainExceeded('[{!r}, {!r}] is outside of {!r}'.format(
            t - h, t + h, path.domain))
    return h


#: The velocity gradient ``L`` with its symmetric part ``D`` and skew part
#: ``W``
VelocityFields = collections.namedtuple('VelocityFields', ('L', 'D', 'W'))


def velocity_fields(path, t, h=None):
    """Computes the velocity gradient of a path.

    ``Ḟ`` is approximated by the central difference
    ``(F(t + h) − F(t − h))/2h``.

    :param MotionPath path: The path.

    :param float t: The time.

    :param float h: The step. This defaults to :func:`rate_step`.

    :return: the tuple ``(L, D, W)``
    :rtype: VelocityFields

    :raises DomainExceeded: if ``t ± h`` is outside of the domain
    """
    h = _check_step(path, t, h)
    Fdot = (path(t + h) - path(t - h)) / (2.0 * h)
    L = Fdot @ numpy.linalg.inv(path(t))
    return VelocityFields(as_tensor(L), as_symmetric(L), as_tensor(skew(L)))


def time_derivative(function, t, h):
    """The central difference ``(f(t + h) − f(t − h))/2h`` of an
    array-valued function.
    """
    return (
        numpy.asarray(function(t + h))
        - numpy.asarray(function(t - h))) / (2.0 * h)


def _based(base):
    return IDENTITY if base is None else as_tensor(base)


def stretch_path(rates, base=None, domain=(-numpy.inf, numpy.inf)):
    """The path ``F(t) = diag(e^{rᵢt})·F₀``.

    :param rates: The logarithmic stretch rates ``rᵢ``.

    :param base: The initial gradient ``F₀``.
    """
    rates = numpy.asarray(rates, dtype=float).reshape(3)
    F0 = _based(base)
    return MotionPath(
        lambda t: numpy.diag(numpy.exp(rates * t)) @ F0, domain)


def rotation_path(omega, base=None, domain=(-numpy.inf, numpy.inf)):
    """The rigid rotation ``F(t) = exp(t·[ω]ₓ)·F₀``.

    :param omega: The angular velocity vector.

    :param base: The initial gradient ``F₀``.
    """
    omega = numpy.asarray(omega, dtype=float).reshape(3)
    F0 = _based(base)
    return MotionPath(
        lambda t: Rotation.from_rotvec(t * omega).as_matrix() @ F0, domain)


def shear_path(i=0, j=1, rate=1.0, base=None, domain=(-numpy.inf, numpy.inf)):
    """The simple shear ``F(t) = (𝟙 + t·γ̇·eᵢ⊗eⱼ)·F₀``.

    :param int i: The shear direction.

    :param int j: The shear plane normal; must differ from ``i``.

    :param float rate: The shear rate ``γ̇``.

    :param base: The initial gradient ``F₀``.
    """
    if i == j:
        raise ValueError('shear requires two distinct directions')
    F0 = _based(base)
    direction = numpy.zeros((3, 3))
    direction[i, j] = rate
    return MotionPath(lambda t: (IDENTITY + t * direction) @ F0, domain)


def exponential_path(G1, G2=None, base=None, domain=(-numpy.inf, numpy.inf)):
    """The path ``F(t) = expm(t·G₁ + t²·G₂)·F₀``.

    The determinant is ``e^{t·tr G₁ + t²·tr G₂}·det F₀``, so the path never
    leaves the orientation preserving tensors.

    :param G1: The first-order generator.

    :param G2: The second-order generator. This defaults to zero.

    :param base: The initial gradient ``F₀``.
    """
    G1 = as_tensor(G1)
    G2 = numpy.zeros((3, 3)) if G2 is None else as_tensor(G2)
    F0 = _based(base)
    return MotionPath(
        lambda t: scipy.linalg.expm(t * G1 + t * t * G2) @ F0, domain)


def superpose_rotation(path, omega):
    """Superposes a rigid rotation on a path.

    :param MotionPath path: The original path.

    :param omega: The angular velocity vector of the superposed rotation.

    :return: the path ``t ↦ exp(t·[ω]ₓ)·F(t)``
    """
    omega = numpy.asarray(omega, dtype=float).reshape(3)
    return MotionPath(
        lambda t: Rotation.from_rotvec(t * omega).as_matrix() @ path(t),
        path.domain)


def probe_path(F, D, W=None):
    """A path realising a prescribed velocity gradient at ``t = 0``.

    The path is ``F(t) = expm(t·(D + W))·F``, so ``L(0) = D + W``.

    :param F: The deformation gradient at ``t = 0``.

    :param D: The symmetric stretching.

    :param W: The skew spin. This defaults to zero.
    """
    L = numpy.asarray(as_symmetric(D))
    if W is not None:
        L = L + skew(W)
    return exponential_path(L, base=F)
