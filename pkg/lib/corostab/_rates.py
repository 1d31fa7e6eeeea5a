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
Material and Zaremba-Jaumann stress rates along motion paths.
"""

import bisect

import numpy

from ._base import CAUCHY, KIRCHHOFF
from ._kinematics import (
    DomainExceeded,
    IDENTITY,
    as_symmetric,
    as_tensor,
    frobenius,
    probe_path,
    rate_step,
    time_derivative,
    velocity_fields)
from ._stress import cauchy_stress


#: The default number of integration steps of a corotated frame
FRAME_STEPS = 1000


class RateSample(object):
    """The stress rates of a law at one time of a path.

    :param float t: The time.

    :param state: The deformation state at ``t``.

    :param fields: The velocity fields at ``t``.

    :param stress: The stresses at ``t``.

    :param sigma_rate: The material rate ``σ̇``.

    :param tau_rate: The material rate ``τ̇``.
    """
    def __init__(self, t, state, fields, stress, sigma_rate, tau_rate):
        W = fields.W
        self._t = t
        self._state = state
        self._fields = fields
        self._stress = stress
        self._sigma_rate = as_symmetric(sigma_rate)
        self._tau_rate = as_symmetric(tau_rate)
        self._zj_sigma = as_symmetric(
            self._sigma_rate + stress.sigma @ W - W @ stress.sigma)
        self._zj_tau = as_symmetric(
            self._tau_rate + stress.tau @ W - W @ stress.tau)

    @property
    def t(self):
        """The time.
        """
        return self._t

    @property
    def state(self):
        """The deformation state.
        """
        return self._state

    @property
    def stress(self):
        """The stresses.
        """
        return self._stress

    @property
    def D(self):
        """The stretching ``sym L``.
        """
        return self._fields.D

    @property
    def W(self):
        """The vorticity ``skew L``.
        """
        return self._fields.W

    @property
    def sigma(self):
        """The Cauchy stress.
        """
        return self._stress.sigma

    @property
    def sigma_rate(self):
        """The material rate of the Cauchy stress.
        """
        return self._sigma_rate

    @property
    def zj_sigma(self):
        """The Zaremba-Jaumann rate ``σ̇ + σW − Wσ``.
        """
        return self._zj_sigma

    @property
    def tau(self):
        """The Kirchhoff stress.
        """
        return self._stress.tau

    @property
    def tau_rate(self):
        """The material rate of the Kirchhoff stress.
        """
        return self._tau_rate

    @property
    def zj_tau(self):
        """The Zaremba-Jaumann rate ``τ̇ + τW − Wτ``.
        """
        return self._zj_tau

    def zj(self, flavor):
        """The Zaremba-Jaumann rate of a stress flavour.
        """
        return self._zj_tau if flavor == KIRCHHOFF else self._zj_sigma


def zj_rate(law, path, t, h=None):
    """Computes the Zaremba-Jaumann stress rates along a path.

    The material rates are central differences of the stresses at ``t ± h``.

    :param law: The material law.

    :param corostab.MotionPath path: The path.

    :param float t: The time.

    :param float h: The step. This defaults to
        :func:`~corostab.rate_step`.

    :return: the rates
    :rtype: RateSample

    :raises corostab.DomainExceeded: if ``t ± h`` is outside of the domain
    """
    h = rate_step(t) if h is None else h
    fields = velocity_fields(path, t, h)
    forward = cauchy_stress(law, path.state(t + h))
    backward = cauchy_stress(law, path.state(t - h))
    state = path.state(t)
    return RateSample(
        t,
        state,
        fields,
        cauchy_stress(law, state),
        (forward.sigma - backward.sigma) / (2.0 * h),
        (forward.tau - backward.tau) / (2.0 * h))


def _orthonormalized(Q):
    """Gram-Schmidt orthonormalisation of the columns of ``Q``.
    """
    result, triangular = numpy.linalg.qr(Q)
    return result * numpy.sign(numpy.diag(triangular))


class CorotatedFrame(object):
    """A rotation ``Q(t)`` with ``Q̇ = W·Q`` sampled on a uniform grid.

    :param path: The path whose vorticity drives the frame.

    :param times: The sample times.

    :param frames: The rotations at the sample times.
    """
    def __init__(self, path, times, frames):
        self._path = path
        self._times = numpy.array(times, dtype=float)
        self._frames = numpy.array(frames, dtype=float)
        self._times.flags.writeable = False
        self._frames.flags.writeable = False

    @property
    def times(self):
        """The sample times.
        """
        return self._times

    @property
    def frames(self):
        """The rotations at :attr:`times`, with shape ``(n, 3, 3)``.
        """
        return self._frames

    @property
    def domain(self):
        """The interval covered by this frame.
        """
        return float(self._times[0]), float(self._times[-1])

    def at(self, t, base=None):
        """Evaluates ``Q(t)``.

        Between sample times a single integration step is taken from a sample
        time.

        :param float t: The time.

        :param float base: The time of the sample to step from. This defaults
            to the sample closest to ``t``.

        :raises corostab.DomainExceeded: if ``t`` is outside of the frame
        """
        t0, t1 = self.domain
        if not t0 <= t <= t1:
            raise DomainExceeded('{!r} is outside of the frame {!r}'.format(
                t, (t0, t1)))
        index = self._nearest(t if base is None else base)
        start = self._times[index]
        if t == start:
            return as_tensor(self._frames[index])
        return as_tensor(_rk4_step(
            self._path, start, t - start, self._frames[index]))

    def base_time(self, t):
        """The sample time closest to ``t``.
        """
        return float(self._times[self._nearest(t)])

    def _nearest(self, t):
        index = bisect.bisect_left(self._times, t)
        if index == 0:
            return 0
        elif index == len(self._times):
            return index - 1
        elif t - self._times[index - 1] <= self._times[index] - t:
            return index - 1
        else:
            return index


def _spin(path, t):
    return numpy.asarray(velocity_fields(path, t).W)


def _rk4_step(path, t, dt, Q):
    k1 = _spin(path, t) @ Q
    middle = _spin(path, t + 0.5 * dt)
    k2 = middle @ (Q + 0.5 * dt * k1)
    k3 = middle @ (Q + 0.5 * dt * k2)
    k4 = _spin(path, t + dt) @ (Q + dt * k3)
    return _orthonormalized(Q + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


def corotated_frame(path, t0, t1, n_steps=FRAME_STEPS):
    """Integrates the corotated frame ``Q̇ = W(t)·Q``, ``Q(t₀) = 𝟙``.

    A classical fourth-order Runge-Kutta scheme is used, and the columns are
    re-orthonormalised after every step.

    :param corostab.MotionPath path: The path.

    :param float t0: The initial time.

    :param float t1: The final time.

    :param int n_steps: The number of steps.

    :return: the frame
    :rtype: CorotatedFrame

    :raises corostab.DomainExceeded: if the path is not defined on a
        neighbourhood of ``[t₀, t₁]``
    """
    if not t0 < t1:
        raise ValueError('invalid interval: {!r}'.format((t0, t1)))
    if n_steps < 1:
        raise ValueError('invalid step count: {!r}'.format(n_steps))
    times = numpy.linspace(t0, t1, n_steps + 1)
    frames = [numpy.array(IDENTITY)]
    for start, end in zip(times[:-1], times[1:]):
        frames.append(_rk4_step(path, start, end - start, frames[-1]))
    return CorotatedFrame(path, times, frames)


def zj_rate_via_frame(law, path, t, frame, h=None, flavor=CAUCHY):
    """Computes the Zaremba-Jaumann rate as ``Q·(d/dt)[Qᵀ·σ·Q]·Qᵀ``.

    Both legs of the central difference step from the same frame sample.

    :param law: The material law.

    :param corostab.MotionPath path: The path.

    :param float t: The time.

    :param CorotatedFrame frame: A frame covering ``t ± h``.

    :param float h: The step. This defaults to
        :func:`~corostab.rate_step`.

    :param str flavor: The stress flavour.

    :return: the rate

    :raises corostab.DomainExceeded: if the frame does not cover ``t ± h``
    """
    h = rate_step(t) if h is None else h
    base = frame.base_time(t)

    def corotated(time):
        Q = frame.at(time, base)
        stress = cauchy_stress(law, path.state(time)).flavored(flavor)
        return Q.T @ stress @ Q

    Q = frame.at(t, base)
    return as_symmetric(Q @ time_derivative(corotated, t, h) @ Q.T)


def csp_pairing(sample, flavor=CAUCHY):
    """The corotational stability pairing ``⟨D^ZJ σ, D⟩``.

    :param RateSample sample: The rates.

    :param str flavor: The stress flavour.

    :return: the Frobenius product
    """
    return frobenius(sample.zj(flavor), sample.D)


def csp_pairing_along(law, F, D, W=None, flavor=CAUCHY, h=None):
    """The pairing ``⟨D^ZJ σ, D⟩`` along a path realising a prescribed
    velocity gradient.

    :param law: The material law.

    :param F: The deformation gradient.

    :param D: The stretching.

    :param W: The spin. This defaults to zero.

    :param str flavor: The stress flavour.

    :param float h: The step. This defaults to
        :func:`~corostab.rate_step`.

    :return: the pairing
    """
    return csp_pairing(zj_rate(law, probe_path(F, D, W), 0.0, h), flavor)
