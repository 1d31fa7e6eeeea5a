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
Cross-route verification suites.

Every check compares two independent computations of the same quantity, or
audits an implication over many states, and records the worst residual.
"""

import collections
import itertools
import logging

import numpy

from scipy.spatial.transform import Rotation

from ._base import CAUCHY, KIRCHHOFF, finite_difference_jacobian
from ._conditions import (
    InducedIsotropicMap,
    Tolerances,
    check_tstsm_pair,
    check_tstsm_pp,
    equivalence_audit,
    line_integral_monotonicity,
    segment_definite)
from ._kinematics import (
    DeformationState,
    IDENTITY,
    edot_components,
    exponential_path,
    frobenius,
    probe_path,
    rotation_path,
    superpose_rotation,
    velocity_fields)
from ._materials import (
    CUSTOM_ENERGY,
    CUSTOM_GAMMA,
    CUSTOM_STRESS,
    MaterialConfig,
    cauchy_nonhyper_law,
    exp_hencky_law,
    gamma_to_principal_s2,
    hencky_law,
    law_from_expressions)
from ._quadforms import (
    CONVENTIONS,
    block_form_matrix,
    full_form_value,
    kirchhoff_scale,
    lambda_matrix,
    pair_coefficient,
    qela_blocks,
    qhyp_blocks,
    qtau_blocks,
    quadform_blocks,
    tensorial_form_value,
    weighted_q1)
from ._rates import (
    corotated_frame, csp_pairing, zj_rate, zj_rate_via_frame)
from ._stress import cauchy_stress, richter_cauchy, second_pk
from ._util import sym as symbasis


#: The names of the verification suites
SUITES = ('zj', 'quadform', 'monotonicity', 'gamma')

#: The half-width of the log-stretch box of random states
BOX = 0.7

#: The number of random states of the main identities
IDENTITY_SAMPLES = 500

#: The number of random path and time samples of the corotated frame route
FRAME_SAMPLES = 200

#: The number of random pairs per law of the line integral check
PAIR_SAMPLES = 100

#: The number of collision paths of the degenerate continuity check
COLLISION_PATHS = 20

#: The axis points of the equivalence audit grid on ``[-1, 1]³``
AUDIT_POINTS = 9


#: The outcome of a single check
CheckResult = collections.namedtuple(
    'CheckResult',
    ('suite', 'name', 'passed', 'residual', 'tolerance', 'samples'))


class VerifyReport(object):
    """The outcome of :func:`run_verify`.

    :param int seed: The random seed.

    :param results: The check results.

    :param str convention: The Kirchhoff scaling convention selected by the
        ``zj`` suite, or ``None`` if that suite did not run.
    """
    def __init__(self, seed, results, convention):
        self._seed = seed
        self._results = list(results)
        self._convention = convention

    @property
    def results(self):
        return list(self._results)

    @property
    def convention(self):
        """The Kirchhoff scaling convention selected by the oracle.
        """
        return self._convention

    @property
    def failures(self):
        """The failed checks.
        """
        return [result for result in self._results if not result.passed]

    @property
    def passed(self):
        """Whether every check passed.
        """
        return not self.failures

    def as_dict(self):
        return {
            'seed': self._seed,
            'passed': self.passed,
            'kirchhoff_convention': self._convention,
            'checks': [
                {
                    'suite': result.suite,
                    'name': result.name,
                    'passed': result.passed,
                    'residual': result.residual,
                    'tolerance': result.tolerance,
                    'samples': result.samples}
                for result in self._results]}


def _laws():
    """The built-in laws exercised by the suites.
    """
    return (
        hencky_law(1.0, 1.0),
        exp_hencky_law(1.0, 1.0, 1.0, 1.0),
        cauchy_nonhyper_law(1.0, 1.0, 0.2))


def _expression_hencky():
    """The Hencky law given as an expression energy.
    """
    return law_from_expressions(MaterialConfig(
        CUSTOM_ENERGY,
        {'mu': 1.0, 'lam': 1.0},
        {'energy': 'mu*(x1^2+x2^2+x3^2) + lam/2*s^2'}))


def _direction(rng):
    """A random unit symmetric tensor from the Gaussian orthogonal ensemble.
    """
    A = rng.standard_normal((3, 3))
    A = 0.5 * (A + A.T)
    return A / numpy.linalg.norm(A)


def _spin(rng, scale=1.0):
    A = rng.standard_normal((3, 3))
    return scale * 0.5 * (A - A.T)


def _rotation(rng):
    return Rotation.random(random_state=rng).as_matrix()


def _state(rng, box=BOX):
    return DeformationState.from_log_stretches(
        rng.uniform(-box, box, 3), _rotation(rng), _rotation(rng))


def _relative(value, reference):
    return abs(value - reference) / (1.0 + abs(reference))


class _Suite(object):
    """Collects the results of one suite.
    """
    def __init__(self, name, seed):
        self._name = name
        self._log = logging.getLogger(__name__)
        self.rng = numpy.random.default_rng([seed, SUITES.index(name)])
        self.results = []

    def record(self, name, residual, tolerance, samples, passed=None):
        residual = float(residual)
        if passed is None:
            passed = residual <= tolerance
        result = CheckResult(
            self._name, name, bool(passed), residual, tolerance, samples)
        if result.passed:
            self._log.info('{}/{}: residual {:.3g}'.format(
                self._name, name, residual))
        else:
            self._log.warning(
                '{}/{} failed: residual {!r} exceeds {!r}'.format(
                    self._name, name, residual, tolerance))
        self.results.append(result)
        return result


def _zj_suite(suite):
    """Stress rate identities; returns the selected Kirchhoff convention.
    """
    rng = suite.rng
    hencky, exp_hencky, nonhyper = _laws()

    worst = 0.0
    for _ in range(FRAME_SAMPLES):
        path = exponential_path(
            0.3 * rng.standard_normal((3, 3)),
            0.1 * rng.standard_normal((3, 3)),
            _state(rng).F)
        t = rng.uniform(-0.2, 0.2)
        frame = corotated_frame(path, t - 0.01, t + 0.01, 20)
        direct = zj_rate(hencky, path, t).zj_sigma
        via_frame = zj_rate_via_frame(hencky, path, t, frame)
        worst = max(worst, float(numpy.max(numpy.abs(direct - via_frame))))
    suite.record('corotated-frame', worst, 1e-6, FRAME_SAMPLES)

    identity = {True: 0.0, False: 0.0}
    tau = {convention: 0.0 for convention in CONVENTIONS}
    for law in (hencky, exp_hencky, nonhyper):
        for _ in range(IDENTITY_SAMPLES):
            state = _state(rng)
            D = _direction(rng)
            sample = zj_rate(law, probe_path(state.F, D, _spin(rng)), 0.0)
            components = edot_components(state, state.F.T @ D @ state.F)
            blocks = qhyp_blocks(law, state) if law.HYPERELASTIC \
                else qela_blocks(law, state)
            residual = _relative(
                state.J * csp_pairing(sample, CAUCHY),
                full_form_value(blocks, components))
            identity[law.HYPERELASTIC] = max(
                identity[law.HYPERELASTIC], residual)
            value = full_form_value(qtau_blocks(law, state), components)
            for convention in CONVENTIONS:
                tau[convention] = max(tau[convention], _relative(
                    csp_pairing(sample, KIRCHHOFF),
                    kirchhoff_scale(state, convention) * value))
    suite.record('hyperelastic-identity', identity[True], 1e-5,
                 2 * IDENTITY_SAMPLES)
    suite.record('cauchy-elastic-identity', identity[False], 1e-5,
                 IDENTITY_SAMPLES)

    convention = min(CONVENTIONS, key=lambda c: tau[c])
    logging.getLogger(__name__).info(
        'Kirchhoff pairing follows the {} convention (residuals {})'.format(
            convention, tau))
    suite.record(
        'kirchhoff-identity-{}'.format(convention), tau[convention], 1e-5,
        3 * IDENTITY_SAMPLES)

    worst = 0.0
    for _ in range(50):
        state = _state(rng)
        path = probe_path(state.F, _direction(rng), _spin(rng))
        rotated = superpose_rotation(path, rng.standard_normal(3))
        for law in (hencky, nonhyper):
            worst = max(worst, _relative(
                csp_pairing(zj_rate(law, rotated, 0.0)),
                csp_pairing(zj_rate(law, path, 0.0))))
    suite.record('objectivity', worst, 1e-6, 100)

    worst = 0.0
    for _ in range(20):
        state = _state(rng)
        path = rotation_path(rng.standard_normal(3), state.F)
        sample = zj_rate(exp_hencky, path, 0.0)
        worst = max(worst, float(
            numpy.max(numpy.abs(sample.zj_sigma))
            / (1.0 + numpy.max(numpy.abs(sample.sigma)))))
        worst = max(worst, float(numpy.max(numpy.abs(
            velocity_fields(path, 0.0).D))))
    suite.record('rigid-neutrality', worst, 1e-7, 20)

    return convention


def _quadform_suite(suite):
    rng = suite.rng
    laws = _laws()

    worst = 0.0
    for law, flavor in itertools.product(laws, (CAUCHY, KIRCHHOFF)):
        for _ in range(100):
            state = _state(rng)
            Edot = _direction(rng)
            reference = tensorial_form_value(law, state, Edot, flavor)
            value = full_form_value(
                quadform_blocks(law, state, flavor),
                edot_components(state, Edot))
            worst = max(worst, abs(value - reference) / max(
                1.0, abs(reference)))
    suite.record('block-vs-tensorial', worst, 1e-7, 600)

    decoupling, assembly = 0.0, 0.0
    for law, flavor in itertools.product(laws, (CAUCHY, KIRCHHOFF)):
        for _ in range(5):
            state = _state(rng)
            vectors = state.eigenvectors
            elements = [vectors @ element @ vectors.T
                        for element in symbasis.BASIS]

            def form(Edot):
                return tensorial_form_value(law, state, Edot, flavor)

            diagonal = [form(element) for element in elements]
            matrix = numpy.diag(diagonal)
            for m, n in itertools.combinations(range(6), 2):
                matrix[m, n] = matrix[n, m] = 0.5 * (
                    form(elements[m] + elements[n])
                    - diagonal[m] - diagonal[n])
            scale = max(1.0, float(numpy.max(numpy.abs(matrix))))
            off = numpy.array(matrix)
            off[:3, :3] = 0.0
            off[3:, 3:] -= numpy.diag(numpy.diag(off[3:, 3:]))
            decoupling = max(
                decoupling, float(numpy.max(numpy.abs(off))) / scale)
            assembly = max(assembly, float(numpy.max(numpy.abs(
                matrix - block_form_matrix(
                    quadform_blocks(law, state, flavor))))) / scale)
    suite.record('block-decoupling', decoupling, 1e-8, 30)
    suite.record('block-assembly', assembly, 1e-7, 30)

    worst = 0.0
    for law, flavor in itertools.product(laws, (CAUCHY, KIRCHHOFF)):
        for _ in range(IDENTITY_SAMPLES):
            state = _state(rng)
            q1 = quadform_blocks(law, state, flavor).q1
            worst = max(worst, float(
                numpy.max(numpy.abs(weighted_q1(law, state, flavor) - q1))
                / max(1.0, float(numpy.max(numpy.abs(q1))))))
    suite.record('weighted-lambda', worst, 1e-7, 6 * IDENTITY_SAMPLES)

    worst = 0.0
    for _ in range(COLLISION_PATHS):
        x = rng.uniform(-BOX, BOX, 3)
        i, j = sorted(rng.choice(3, 2, replace=False))
        for law in laws + (_expression_hencky(),):
            outside, inside = x.copy(), x.copy()
            outside[j] = x[i] + law.DEGENERACY_TOLERANCE
            inside[j] = x[i] + 0.25 * law.DEGENERACY_TOLERANCE
            a = pair_coefficient(law, outside, i, j)
            b = pair_coefficient(law, inside, i, j)
            worst = max(worst, abs(a - b) / max(1.0, abs(b)))
    suite.record('degenerate-continuity', worst, 1e-4, 4 * COLLISION_PATHS)

    worst = 0.0
    for law in laws[:2]:
        for _ in range(50):
            jacobian = finite_difference_jacobian(
                law.principal_kirchhoff, rng.uniform(-BOX, BOX, 3))
            worst = max(worst, float(numpy.max(numpy.abs(
                jacobian - jacobian.T))))
    suite.record('major-symmetry', worst, 1e-7, 100)
    jacobian = finite_difference_jacobian(
        laws[2].principal_kirchhoff, [1.0, 0.0, 0.0])
    asymmetry = float(numpy.max(numpy.abs(jacobian - jacobian.T)))
    suite.record(
        'cauchy-elastic-asymmetry', asymmetry, 0.05, 1,
        passed=asymmetry >= 0.05)

    worst, flips = 0.0, True
    for mu, lam in ((1.0, 1.0), (0.5, -0.2), (2.0, 3.0), (1.0, -1.0)):
        law = hencky_law(mu, lam)
        expected = 2 * mu * numpy.eye(3) + lam * numpy.ones((3, 3))
        spectrum = numpy.sort([2 * mu, 2 * mu, 2 * mu + 3 * lam])
        for _ in range(10):
            matrix = lambda_matrix(law, rng.uniform(-1, 1, 3), KIRCHHOFF)
            worst = max(
                worst,
                float(numpy.max(numpy.abs(matrix.matrix - expected))),
                float(numpy.max(numpy.abs(matrix.eigenvalues - spectrum))))
    for mu in (0.5, 1.0, 2.0):
        for offset in (-0.05, 0.05):
            law = hencky_law(mu, -2.0 * mu / 3.0 + offset / 3.0)
            verdict = check_tstsm_pp(law, rng.uniform(-1, 1, 3), KIRCHHOFF)
            flips = flips and verdict.positive == (offset > 0)
    suite.record('hencky-closed-form', worst, 1e-10, 40)
    suite.record(
        'hencky-verdict-flip', 0.0 if flips else 1.0, 0.0, 6, passed=flips)

    worst = 0.0
    for law in laws:
        for _ in range(100):
            state = _state(rng)
            Edot = _direction(rng)
            components = edot_components(state, Edot)
            difference = full_form_value(
                qtau_blocks(law, state), components) - full_form_value(
                quadform_blocks(law, state, CAUCHY), components)
            expected = frobenius(numpy.linalg.inv(state.C), Edot) * frobenius(
                second_pk(law, state), Edot)
            worst = max(worst, _relative(difference, expected))
    suite.record('kirchhoff-difference', worst, 1e-9, 300)


def _monotonicity_suite(suite):
    rng = suite.rng
    laws = _laws()

    worst = 0.0
    for law, flavor in itertools.product(laws, (CAUCHY, KIRCHHOFF)):
        for _ in range(PAIR_SAMPLES):
            x_a, x_b = rng.uniform(-BOX, BOX, (2, 3))
            pair = check_tstsm_pair(law, x_a, x_b, flavor)
            integral = line_integral_monotonicity(law, x_a, x_b, 64, flavor)
            worst = max(worst, abs(pair - integral) / max(1.0, abs(pair)))
    suite.record('line-integral', worst, 1e-6, 6 * PAIR_SAMPLES)

    axis = numpy.linspace(-1.0, 1.0, AUDIT_POINTS)
    grid = list(itertools.product(axis, repeat=3))
    violations, exceptions, states = 0, 0, 0
    for law in laws:
        report = equivalence_audit(law, grid, Tolerances())
        for flavor in report.flavors:
            violations += len(report.violations(flavor))
            exceptions += len(report.implication_exceptions(flavor))
        states += len(report)
    suite.record('equivalence-audit', violations, 0, states)

    contrived = law_from_expressions(
        MaterialConfig(CUSTOM_STRESS, expressions={'stress': '-x{i}'}))
    report = equivalence_audit(
        contrived, list(itertools.product(axis[::2], repeat=3)))
    for flavor in report.flavors:
        exceptions += len(report.implication_exceptions(flavor))
    suite.record('implication-audit', exceptions, 0, states + len(report))

    failures, segments = 0, 0
    for law, flavor in itertools.product(laws, (CAUCHY, KIRCHHOFF)):
        for _ in range(PAIR_SAMPLES):
            x_a, x_b = rng.uniform(-BOX, BOX, (2, 3))
            if segment_definite(law, x_a, x_b, 16, flavor):
                segments += 1
                if not check_tstsm_pair(law, x_a, x_b, flavor) > 0.0:
                    failures += 1
                frames = (_rotation(rng), _rotation(rng))
                if not check_tstsm_pair(law, x_a, x_b, flavor, frames) > 0.0:
                    failures += 1
    suite.record('sufficiency', failures, 0, segments)

    isotropic = all(
        InducedIsotropicMap(
            lambda x, law=law, flavor=flavor: law.principal(x, flavor)
        ).commutes_with_rotations(seed=rng)
        for law, flavor in itertools.product(laws, (CAUCHY, KIRCHHOFF)))
    suite.record(
        'induced-map-isotropy', 0.0 if isotropic else 1.0, 0.0, 6,
        passed=isotropic)


def _gamma_suite(suite):
    rng = suite.rng
    parameters = {'a': 0.8, 'b': 0.3, 'c': -0.05}
    law = law_from_expressions(MaterialConfig(
        CUSTOM_GAMMA,
        parameters,
        {
            'gamma0': 'a*(x1 - 3) - b',
            'gamma1': 'b + c*(x2 - 3)',
            'gamma2': 'c*log(x3)'}))

    principal, tensor = 0.0, 0.0
    for _ in range(100):
        state = _state(rng)
        s2 = gamma_to_principal_s2(law, state)
        principal = max(principal, float(numpy.max(numpy.abs(
            s2 - law.principal_second_pk(state.log_stretches))) / max(
                1.0, float(numpy.max(numpy.abs(s2))))))
        g0, g1, g2 = law.gamma([
            numpy.trace(state.C),
            0.5 * (numpy.trace(state.C) ** 2 - numpy.trace(state.C @ state.C)),
            numpy.linalg.det(state.C)])
        polynomial = g0 * IDENTITY + g1 * state.C + g2 * state.C @ state.C
        tensor = max(tensor, float(numpy.max(numpy.abs(
            second_pk(law, state) - polynomial)) / max(
                1.0, float(numpy.max(numpy.abs(polynomial))))))
    suite.record('gamma-principal', principal, 1e-9, 100)
    suite.record('gamma-tensor', tensor, 1e-10, 100)

    hencky = hencky_law(1.0, 1.0)
    expression = _expression_hencky()
    worst = 0.0
    for _ in range(100):
        x = rng.uniform(-BOX, BOX, 3)
        worst = max(worst, float(numpy.max(numpy.abs(
            expression.principal_kirchhoff(x)
            - hencky.principal_kirchhoff(x)))))
    suite.record('expression-hencky', worst, 1e-6, 100)

    worst = 0.0
    for law in _laws():
        for _ in range(50):
            state = _state(rng)
            sigma = cauchy_stress(law, state).sigma
            worst = max(worst, float(numpy.max(numpy.abs(
                richter_cauchy(law, state) - sigma)) / max(
                    1.0, float(numpy.max(numpy.abs(sigma))))))
    suite.record('richter-cauchy', worst, 1e-8, 150)


def run_verify(seed=0, suite='all'):
    """Runs the verification suites.

    :param int seed: The random seed.

    :param str suite: ``'all'`` or one of :data:`SUITES`.

    :return: the report
    :rtype: VerifyReport

    :raises ValueError: if the suite is unknown
    """
    if suite == 'all':
        names = SUITES
    elif suite in SUITES:
        names = (suite,)
    else:
        raise ValueError('unknown suite: {!r}'.format(suite))

    results, convention = [], None
    for name in names:
        collector = _Suite(name, seed)
        outcome = {
            'zj': _zj_suite,
            'quadform': _quadform_suite,
            'monotonicity': _monotonicity_suite,
            'gamma': _gamma_suite}[name](collector)
        if name == 'zj':
            convention = outcome
        results.extend(collector.results)
    return VerifyReport(seed, results, convention)
