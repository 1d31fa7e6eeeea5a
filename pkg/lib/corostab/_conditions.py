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
Constitutive stability predicates and the audit of their equivalence.
"""

import collections
import logging
import math

import numpy

from numpy.polynomial import legendre
from scipy.spatial.transform import Rotation

from ._base import CAUCHY, KIRCHHOFF, flavor as _flavor, log_stretches
from ._kinematics import (
    DeformationState,
    IDENTITY,
    as_tensor,
    frobenius,
    spectral_decompose)
from ._quadforms import (
    UNIT,
    csp_form_matrix,
    divided_difference,
    lambda_matrix,
    quadform_blocks)
from ._util import parallel_map, sym as symbasis


#: The classification of states satisfying a condition
PASS = 'pass'

#: The classification of states violating a condition
FAIL = 'fail'

#: The classification of states within the margin of the boundary
MARGINAL = 'marginal'

#: The relative separation of stretches below which a pair is exempt from the
#: Baker-Ericksen inequality
BE_EXEMPTION = 1e-12

#: The smallest number of quadrature nodes of a line integral
MIN_NODES = 8

#: The smallest number of sampled stretching directions
MIN_DIRECTIONS = 50


class Tolerances(object):
    """The numeric tolerances of the stability predicates.

    :param float definiteness: The relative tolerance above which a smallest
        eigenvalue counts as positive.

    :param float margin: The half-width of the marginal band.

    :param int directions: The number of sampled stretching directions.

    :param int seed: The random seed of direction sampling.
    """
    def __init__(
            self, definiteness=1e-10, margin=1e-6, directions=200, seed=0):
        if int(directions) < MIN_DIRECTIONS:
            raise ValueError('at least {} directions are required'.format(
                MIN_DIRECTIONS))
        self._definiteness = float(definiteness)
        self._margin = float(margin)
        self._directions = int(directions)
        self._seed = int(seed)

    def __repr__(self):
        return 'Tolerances({})'.format(', '.join(
            '{}={!r}'.format(key, value)
            for key, value in sorted(self.as_dict().items())))

    @property
    def definiteness(self):
        """The relative definiteness tolerance.
        """
        return self._definiteness

    @property
    def margin(self):
        """The half-width of the marginal band.
        """
        return self._margin

    @property
    def directions(self):
        """The number of sampled stretching directions.
        """
        return self._directions

    @property
    def seed(self):
        """The random seed.
        """
        return self._seed

    def as_dict(self):
        return {
            'definiteness': self._definiteness,
            'margin': self._margin,
            'directions': self._directions,
            'seed': self._seed}


class InducedIsotropicMap(object):
    """The map ``S ↦ Σᵢ fᵢ(spectrum) vⁱ⊗vⁱ`` induced on symmetric tensors by a
    permutation equivariant vector function.

    :param callable function: The vector function of three eigenvalues.
    """
    def __init__(self, function):
        self._function = function

    def __call__(self, tensor):
        spectral = spectral_decompose(tensor)
        return spectral.reconstruct(self._function(spectral.eigenvalues))

    def commutes_with_rotations(self, samples=10, seed=0, tolerance=1e-9):
        """Checks ``Σ_f(QSQᵀ) = Q·Σ_f(S)·Qᵀ`` on random tensors and rotations.

        :return: whether all samples agree
        """
        rng = numpy.random.default_rng(seed)
        for _ in range(samples):
            S = rng.uniform(-1.0, 1.0, (3, 3))
            S = 0.5 * (S + S.T)
            Q = Rotation.random(random_state=rng).as_matrix()
            direct = numpy.asarray(self(Q @ S @ Q.T))
            conjugated = Q @ numpy.asarray(self(S)) @ Q.T
            scale = max(1.0, float(numpy.max(numpy.abs(conjugated))))
            if numpy.max(numpy.abs(direct - conjugated)) > tolerance * scale:
                return False
        return True


#: The outcome of a definiteness check
Definiteness = collections.namedtuple(
    'Definiteness', ('min_eigenvalue', 'positive'))

#: The outcome of a Baker-Ericksen check; ``pair`` is the worst pair, or
#: ``None`` if every pair is exempt
BakerEricksen = collections.namedtuple(
    'BakerEricksen', ('holds', 'margin', 'pair'))

#: The minimum of a sampled pairing with the direction attaining it
CspSample = collections.namedtuple('CspSample', ('minimum', 'direction'))


def _positive(eigenvalues, tolerance):
    eigenvalues = numpy.asarray(eigenvalues)
    scale = float(numpy.max(numpy.abs(eigenvalues)))
    return bool(eigenvalues[0] > tolerance * scale)


def check_tstsm_pp(law, x, flavor=CAUCHY, tolerance=1e-10):
    """Checks positive definiteness of ``Λ = sym D_{log λ} f̂``.

    :param law: The material law.

    :param x: The principal log-stretches.

    :param str flavor: The stress flavour.

    :param float tolerance: The tolerance relative to the norm of ``Λ``.

    :return: the smallest eigenvalue and whether it exceeds the tolerance
    :rtype: Definiteness
    """
    matrix = lambda_matrix(law, x, flavor)
    return Definiteness(
        matrix.min_eigenvalue, _positive(matrix.eigenvalues, tolerance))


def check_be(principal, stretches, exemption=BE_EXEMPTION):
    """Checks the Baker-Ericksen inequalities ``(fᵢ − fⱼ)(λᵢ − λⱼ) > 0``.

    Pairs with coinciding stretches are exempt.

    :param principal: The principal stresses.

    :param stretches: The principal stretches, in the same order.

    :param float exemption: The relative separation below which stretches
        coincide.

    :return: the verdict, with the smallest product as margin; the margin is
        infinite if every pair is exempt
    :rtype: BakerEricksen
    """
    principal = numpy.asarray(principal, dtype=float)
    stretches = numpy.asarray(stretches, dtype=float)
    margin, worst = math.inf, None
    for i, j in ((0, 1), (0, 2), (1, 2)):
        separation = stretches[i] - stretches[j]
        scale = max(abs(stretches[i]), abs(stretches[j]))
        if abs(separation) <= exemption * scale:
            continue
        product = (principal[i] - principal[j]) * separation
        if product < margin:
            margin, worst = float(product), (i, j)
    return BakerEricksen(margin > 0.0, margin, worst)


def _flavored(law, flavor):
    return lambda x: law.principal(x, flavor)


def check_tstsm_pair(law, x_a, x_b, flavor=CAUCHY, frames=None):
    """The monotonicity product
    ``⟨f̂(log V_a) − f̂(log V_b), log V_a − log V_b⟩``.

    :param law: The material law.

    :param x_a: The principal log-stretches of ``V_a``.

    :param x_b: The principal log-stretches of ``V_b``.

    :param str flavor: The stress flavour.

    :param frames: A pair of rotations ``(Q_a, Q_b)`` giving the
        eigenframes of the two tensors. If not specified, both tensors share
        the identity frame.

    :return: the product

    :raises ValueError: if the two points coincide
    """
    x_a, x_b = log_stretches(x_a), log_stretches(x_b)
    if numpy.array_equal(x_a, x_b):
        raise ValueError('the two points must differ')
    frame_a, frame_b = (IDENTITY, IDENTITY) if frames is None else (
        as_tensor(frames[0]), as_tensor(frames[1]))
    log_a = frame_a @ numpy.diag(x_a) @ frame_a.T
    log_b = frame_b @ numpy.diag(x_b) @ frame_b.T
    induced = InducedIsotropicMap(_flavored(law, flavor))
    return frobenius(
        numpy.asarray(induced(log_a)) - numpy.asarray(induced(log_b)),
        log_a - log_b)


def random_frames(seed):
    """Two independent random rotations.

    :param seed: The seed, or a :class:`numpy.random.Generator`.
    """
    return tuple(Rotation.random(
        2, random_state=numpy.random.default_rng(seed)).as_matrix())


def line_integral_monotonicity(law, x_a, x_b, n_nodes=64, flavor=CAUCHY):
    """Integrates ``⟨Λ(x(t))·Δ, Δ⟩`` along ``x(t) = x_b + t·Δ``,
    ``Δ = x_a − x_b``, over ``[0, 1]``.

    The result equals the shared-frame monotonicity product of the end
    points.

    :param law: The material law.

    :param x_a: The first end point.

    :param x_b: The second end point.

    :param int n_nodes: The number of Gauss-Legendre nodes.

    :param str flavor: The stress flavour.

    :return: the integral

    :raises ValueError: if fewer than eight nodes are requested
    """
    if n_nodes < MIN_NODES:
        raise ValueError('at least {} nodes are required'.format(MIN_NODES))
    x_a, x_b = log_stretches(x_a), log_stretches(x_b)
    delta = x_a - x_b
    nodes, weights = legendre.leggauss(n_nodes)
    total = 0.0
    for node, weight in zip(0.5 * (nodes + 1.0), 0.5 * weights):
        matrix = lambda_matrix(law, x_b + node * delta, flavor).matrix
        total += weight * delta @ matrix @ delta
    return float(total)


def segment_definite(law, x_a, x_b, n_nodes=64, flavor=CAUCHY, tolerance=0.0):
    """Whether ``Λ`` is positive definite at every quadrature node of a
    segment.
    """
    x_a, x_b = log_stretches(x_a), log_stretches(x_b)
    nodes, _ = legendre.leggauss(n_nodes)
    return all(
        lambda_matrix(law, x_b + t * (x_a - x_b), flavor).min_eigenvalue
        > tolerance
        for t in 0.5 * (nodes + 1.0))


def csp_exact(law, state, flavor=CAUCHY, convention=UNIT):
    """The minimum of ``⟨D^ZJ f, D⟩`` over unit stretchings ``D``.

    :param law: The material law.

    :param corostab.DeformationState state: The deformation state.

    :param str flavor: The stress flavour.

    :param str convention: The Kirchhoff scaling convention.

    :return: the smallest eigenvalue of the pairing matrix
    """
    blocks = quadform_blocks(law, state, flavor)
    return float(numpy.linalg.eigvalsh(
        csp_form_matrix(blocks, state, convention))[0])


def csp_sampled(
        law, state, n_directions=200, seed=0, flavor=CAUCHY,
        convention=UNIT):
    """Samples ``⟨D^ZJ f, D⟩`` over unit stretchings.

    The directions are symmetric matrices from the Gaussian orthogonal
    ensemble normalised to unit Frobenius norm, the six basis directions and
    the eigenvector of the smallest eigenvalue of the pairing matrix.

    :param law: The material law.

    :param corostab.DeformationState state: The deformation state.

    :param int n_directions: The number of random directions.

    :param seed: The seed, or a :class:`numpy.random.Generator`.

    :param str flavor: The stress flavour.

    :param str convention: The Kirchhoff scaling convention.

    :return: the smallest value with its direction
    :rtype: CspSample

    :raises ValueError: if fewer than fifty directions are requested
    """
    if n_directions < MIN_DIRECTIONS:
        raise ValueError('at least {} directions are required'.format(
            MIN_DIRECTIONS))
    matrix = csp_form_matrix(
        quadform_blocks(law, state, flavor), state, convention)
    rng = numpy.random.default_rng(seed)
    samples = rng.standard_normal((n_directions, 3, 3))
    samples = 0.5 * (samples + numpy.swapaxes(samples, 1, 2))
    vectors = symbasis.to_vector(samples)
    vectors /= numpy.linalg.norm(vectors, axis=1)[:, numpy.newaxis]
    _, eigenvectors = numpy.linalg.eigh(matrix)
    vectors = numpy.concatenate(
        (vectors, numpy.eye(6), eigenvectors[:, :1].T))
    values = numpy.einsum('ni,ij,nj->n', vectors, matrix, vectors)
    index = int(numpy.argmin(values))
    return CspSample(
        float(values[index]), symbasis.from_vector(vectors[index]))


def tensor_tangent(law, x, flavor=CAUCHY):
    """The 6×6 matrix of ``sym D_{log V} f̂(log V)`` in the eigenframe of
    ``log V``.

    It is block diagonal with ``Λ`` and the divided differences
    ``(f̂ᵢ − f̂ⱼ)/(xᵢ − xⱼ)``.

    :param law: The material law.

    :param x: The principal log-stretches.

    :param str flavor: The stress flavour.
    """
    x = log_stretches(x)
    function = _flavored(law, flavor)
    values = function(x)
    result = numpy.zeros((6, 6))
    result[:3, :3] = lambda_matrix(law, x, flavor).matrix
    for n, (i, j) in enumerate(symbasis.PAIRS):
        result[3 + n, 3 + n] = divided_difference(
            function, x, i, j, squared=False, values=values,
            tolerance=law.DEGENERACY_TOLERANCE)
    return result


def check_tensor_tstsm_pp(law, x, flavor=CAUCHY, tolerance=1e-10):
    """Checks positive definiteness of :func:`tensor_tangent`.

    :return: the smallest eigenvalue and whether it exceeds the tolerance
    :rtype: Definiteness
    """
    eigenvalues = numpy.linalg.eigvalsh(tensor_tangent(law, x, flavor))
    return Definiteness(
        float(eigenvalues[0]), _positive(eigenvalues, tolerance))


def _classify(value, margin):
    if abs(value) < margin:
        return MARGINAL
    return PASS if value > 0 else FAIL


class FlavorVerdict(object):
    """The stability data of one stress flavour at one state.

    All verdicts are derived from the raw numbers stored alongside them.
    """
    def __init__(
            self, flavor, lambda_eigenvalues, lambda_positive, tensor_min,
            csp_exact, csp_sampled, be, tstsm, margin):
        self._flavor = flavor
        self._lambda_eigenvalues = tuple(float(v) for v in lambda_eigenvalues)
        self._lambda_positive = lambda_positive
        self._tensor_min = float(tensor_min)
        self._csp_exact = float(csp_exact)
        self._csp_sampled = float(csp_sampled)
        self._be = be
        self._tstsm = tstsm
        self._lambda_class = _classify(self.lambda_min, margin)
        self._csp_class = _classify(self._csp_exact, margin)

    @property
    def flavor(self):
        return self._flavor

    @property
    def lambda_eigenvalues(self):
        """The eigenvalues of ``Λ``.
        """
        return self._lambda_eigenvalues

    @property
    def lambda_min(self):
        """The smallest eigenvalue of ``Λ``.
        """
        return self._lambda_eigenvalues[0]

    @property
    def tstsm_pp(self):
        """Whether ``Λ`` is positive definite within the definiteness
        tolerance.
        """
        return self._lambda_positive

    @property
    def tensor_min(self):
        """The smallest eigenvalue of the tensor tangent.
        """
        return self._tensor_min

    @property
    def csp_exact(self):
        """The exact minimum of the stability pairing.
        """
        return self._csp_exact

    @property
    def csp_sampled(self):
        """The sampled minimum of the stability pairing.
        """
        return self._csp_sampled

    @property
    def be(self):
        """The Baker-Ericksen verdict.
        """
        return self._be

    @property
    def tstsm(self):
        """The non-strict monotonicity product against the reference state,
        or ``None`` at the reference state.
        """
        return self._tstsm

    @property
    def classification(self):
        """The classification of ``Λ``; one of :data:`PASS`, :data:`FAIL` or
        :data:`MARGINAL`.
        """
        return self._lambda_class

    @property
    def csp_classification(self):
        """The classification of the exact stability pairing minimum.
        """
        return self._csp_class

    @property
    def marginal(self):
        """Whether either value lies within the marginal band.
        """
        return MARGINAL in (self._lambda_class, self._csp_class)

    @property
    def consistent(self):
        """Whether the signs of ``Λ`` and the pairing agree; states within
        the marginal band are consistent.
        """
        return self.marginal or self._lambda_class == self._csp_class

    @property
    def implication_exception(self):
        """Whether ``Λ`` is positive definite while the Baker-Ericksen
        inequalities fail.
        """
        return self._lambda_positive and not self._be.holds

    def as_dict(self):
        return {
            'lambda_eigenvalues': list(self._lambda_eigenvalues),
            'lambda_min': self.lambda_min,
            'tstsm_pp': self._lambda_positive,
            'tensor_min': self._tensor_min,
            'csp_exact': self._csp_exact,
            'csp_sampled': self._csp_sampled,
            'be': self._be.holds,
            'be_margin': (
                self._be.margin if math.isfinite(self._be.margin) else None),
            'be_pair': list(self._be.pair) if self._be.pair else None,
            'tstsm': self._tstsm,
            'classification': self._lambda_class,
            'csp_classification': self._csp_class,
            'consistent': self.consistent}


class StabilityVerdict(object):
    """The stability data of a law at one state.

    :param x: The principal log-stretches.

    :param state: The deformation state.

    :param principal_cauchy: The principal Cauchy stresses in the order of
        ``x``.

    :param principal_kirchhoff: The principal Kirchhoff stresses in the
        order of ``x``.

    :param dict flavors: The :class:`FlavorVerdict` instances keyed by
        flavour.
    """
    def __init__(
            self, x, state, principal_cauchy, principal_kirchhoff, flavors):
        self._x = tuple(float(v) for v in x)
        self._state = state
        self._principal_cauchy = tuple(float(v) for v in principal_cauchy)
        self._principal_kirchhoff = tuple(
            float(v) for v in principal_kirchhoff)
        self._flavors = dict(flavors)

    def __getitem__(self, flavor):
        return self._flavors[flavor]

    @property
    def x(self):
        """The principal log-stretches.
        """
        return self._x

    @property
    def state(self):
        """The deformation state.
        """
        return self._state

    @property
    def flavors(self):
        """The audited flavours.
        """
        return tuple(sorted(self._flavors))

    @property
    def consistent(self):
        """Whether all flavours are consistent.
        """
        return all(verdict.consistent for verdict in self._flavors.values())

    def as_dict(self):
        """A plain representation of this verdict.
        """
        return {
            'x': list(self._x),
            'stretches': [math.exp(v) for v in self._x],
            'J': self._state.J,
            'sigma': list(self._principal_cauchy),
            'tau': list(self._principal_kirchhoff),
            'flavors': {
                key: verdict.as_dict()
                for key, verdict in sorted(self._flavors.items())}}


def evaluate_state(
        law, x, tolerances=None, flavors=(CAUCHY, KIRCHHOFF), seed=0,
        convention=UNIT):
    """Evaluates every stability predicate at a state.

    :param law: The material law.

    :param x: The principal log-stretches.

    :param Tolerances tolerances: The tolerances.

    :param flavors: The stress flavours to evaluate.

    :param seed: The seed of direction sampling.

    :param str convention: The Kirchhoff scaling convention.

    :return: the verdict
    :rtype: StabilityVerdict
    """
    tolerances = tolerances or Tolerances()
    x = log_stretches(x)
    state = DeformationState.from_log_stretches(x)
    stretches = numpy.exp(x)
    rng = numpy.random.default_rng(seed)
    verdicts = {}
    for flavor in (_flavor(f) for f in flavors):
        matrix = lambda_matrix(law, x, flavor)
        sampled = csp_sampled(
            law, state, tolerances.directions, rng, flavor, convention)
        verdicts[flavor] = FlavorVerdict(
            flavor,
            matrix.eigenvalues,
            _positive(matrix.eigenvalues, tolerances.definiteness),
            check_tensor_tstsm_pp(law, x, flavor).min_eigenvalue,
            csp_exact(law, state, flavor, convention),
            sampled.minimum,
            check_be(law.principal(x, flavor), stretches),
            check_tstsm_pair(law, x, numpy.zeros(3), flavor)
            if numpy.any(x) else None,
            tolerances.margin)
    return StabilityVerdict(
        x,
        state,
        law.principal_cauchy(x),
        law.principal_kirchhoff(x),
        verdicts)


class AuditReport(object):
    """The outcome of an equivalence audit.

    :param verdicts: The verdicts, in the order of the audited states.

    :param flavors: The audited flavours.
    """
    def __init__(self, verdicts, flavors):
        self._verdicts = list(verdicts)
        self._flavors = tuple(flavors)

    def __len__(self):
        return len(self._verdicts)

    @property
    def verdicts(self):
        """The verdicts, in the order of the audited states.
        """
        return list(self._verdicts)

    @property
    def flavors(self):
        """The audited flavours.
        """
        return self._flavors

    def violations(self, flavor):
        """The indices of states where the signs of ``Λ`` and the pairing
        disagree outside of the marginal band.
        """
        return [
            index for index, verdict in enumerate(self._verdicts)
            if not verdict[flavor].consistent]

    def implication_exceptions(self, flavor):
        """The indices of states where ``Λ`` is positive definite but the
        Baker-Ericksen inequalities fail.
        """
        return [
            index for index, verdict in enumerate(self._verdicts)
            if verdict[flavor].implication_exception]

    def sampling_exceptions(self, flavor, tolerance=1e-9):
        """The indices of states where the sampled pairing minimum lies below
        the exact minimum.
        """
        return [
            index for index, verdict in enumerate(self._verdicts)
            if verdict[flavor].csp_sampled < verdict[flavor].csp_exact
            - tolerance * max(1.0, abs(verdict[flavor].csp_exact))]

    @property
    def consistent(self):
        """Whether no violation and no implication exception was found.
        """
        return not any(
            self.violations(flavor) or self.implication_exceptions(flavor)
            for flavor in self._flavors)

    def summary(self):
        """Counts and fractions per flavour.
        """
        result = {}
        total = len(self._verdicts)
        for flavor in self._flavors:
            counts = collections.Counter(
                verdict[flavor].classification for verdict in self._verdicts)
            decided = [
                verdict for verdict in self._verdicts
                if not verdict[flavor].marginal]
            agreeing = sum(
                1 for verdict in decided if verdict[flavor].consistent)
            worst = min(
                range(total),
                key=lambda index: self._verdicts[index][flavor].lambda_min,
                default=None)
            result[flavor] = {
                'states': total,
                'pass': counts[PASS],
                'fail': counts[FAIL],
                'marginal': counts[MARGINAL],
                'pass_fraction': counts[PASS] / total if total else None,
                'fail_fraction': counts[FAIL] / total if total else None,
                'marginal_fraction':
                    counts[MARGINAL] / total if total else None,
                'agreement': agreeing / len(decided) if decided else None,
                'violations': self.violations(flavor),
                'implication_exceptions': self.implication_exceptions(flavor),
                'sampling_exceptions': self.sampling_exceptions(flavor),
                'worst_state':
                    list(self._verdicts[worst].x) if worst is not None
                    else None}
        return result


def equivalence_audit(
        law, states, tolerances=None, flavors=(CAUCHY, KIRCHHOFF), jobs=1,
        convention=UNIT):
    """Audits the equivalence of the stability pairing and ``Λ`` positivity.

    The states are evaluated with :func:`evaluate_state`; state ``n`` samples
    directions with the seed ``[tolerances.seed, n]``, so the outcome does not
    depend on the number of workers.

    :param law: The material law.

    :param states: The principal log-stretches of the states, or
        :class:`~corostab.DeformationState` instances.

    :param Tolerances tolerances: The tolerances.

    :param flavors: The stress flavours to audit.

    :param int jobs: The number of worker threads.

    :param str convention: The Kirchhoff scaling convention.

    :return: the report
    :rtype: AuditReport

    :raises ValueError: if no states are given
    """
    log = logging.getLogger(__name__)
    tolerances = tolerances or Tolerances()
    flavors = tuple(_flavor(f) for f in flavors)
    points = [
        state.log_stretches if isinstance(state, DeformationState) else state
        for state in states]
    if not points:
        raise ValueError('no states to audit')

    def evaluate(item):
        index, x = item
        verdict = evaluate_state(
            law, x, tolerances, flavors, [tolerances.seed, index], convention)
        log.debug('Evaluated state {} at {}'.format(index, verdict.x))
        return verdict

    report = AuditReport(
        parallel_map(evaluate, enumerate(points), jobs), flavors)
    for flavor in flavors:
        for index in report.violations(flavor):
            log.warning('Equivalence violation for {} at {}'.format(
                flavor, report.verdicts[index].x))
        for index in report.implication_exceptions(flavor):
            log.warning(
                'Positive definite {} tangent without Baker-Ericksen '
                'inequalities at {}'.format(
                    flavor, report.verdicts[index].x))
    return report
