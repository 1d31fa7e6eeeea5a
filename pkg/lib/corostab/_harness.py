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
Material files, scan configurations, scans and reports.

Material files and scan configurations are INI documents. A material file::

    [material]
    kind = custom-energy
    variables = log-stretch

    [parameters]
    mu = 1
    lam = 1

    [expressions]
    energy = mu*sum(xk^2) + lam/2*sum(xk)^2

A scan configuration::

    [scan]
    material = hencky
    mode = grid
    flavors = cauchy, kirchhoff
    format = json
    output = report.json

    [parameters]
    mu = 1
    lam = 1

    [grid]
    min = -0.5
    max = 0.5
    points = 5

Reports written as JSON carry every float in the shortest form that reads
back to the same double, which never needs more than 17 significant digits.
CSV reports write every float with exactly 17 significant digits.
"""

import configparser
import csv
import io
import itertools
import json
import logging
import os

import numpy

from ._base import CAUCHY, KIRCHHOFF, flavor as _flavor
from ._conditions import Tolerances, equivalence_audit
from ._materials import (
    BUILTIN_LAWS,
    KINDS,
    MaterialConfig,
    SchemaError,
    law_from_config)
from ._quadforms import UNIT, quadform_blocks, weighted_q1
from ._stress import cauchy_stress, richter_cauchy
from ._util import atomic_output, default_jobs


#: The version of the report document layout
SCHEMA = 1

#: The exit status of a successful run
EXIT_OK = 0

#: The exit status of a failed operation
EXIT_ERROR = 1

#: The exit status of a run finding an equivalence violation
EXIT_VIOLATION = 2

GRID = 'grid'
RANDOM = 'random'
JSON = 'json'
CSV = 'csv'

#: The supported report formats
FORMATS = (JSON, CSV)


def _parser():
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    return parser


def _read(path):
    """Reads an INI document; a missing file raises :class:`OSError`.
    """
    parser = _parser()
    with open(path, encoding='utf-8') as f:
        try:
            parser.read_file(f, source=path)
        except configparser.Error as e:
            raise SchemaError('{}: {}'.format(path, e))
    return parser


def _floats(section, path):
    try:
        return {key: float(value) for key, value in section.items()}
    except ValueError as e:
        raise SchemaError('{}: invalid number in [{}]: {}'.format(
            path, section.name, e))


def _check_keys(section, allowed, path):
    unknown = set(section) - set(allowed)
    if unknown:
        raise SchemaError('{}: unknown keys in [{}]: {}'.format(
            path, section.name, ', '.join(sorted(unknown))))


def read_material_config(path):
    """Reads a material file.

    :param str path: The file name.

    :return: the configuration
    :rtype: corostab.MaterialConfig

    :raises OSError: if the file cannot be read

    :raises corostab.SchemaError: if the document is malformed
    """
    parser = _read(path)
    if not parser.has_section('material'):
        raise SchemaError('{}: missing section [material]'.format(path))
    material = parser['material']
    _check_keys(material, ('kind', 'variables', 'name'), path)
    if 'kind' not in material:
        raise SchemaError('{}: missing key kind'.format(path))
    return MaterialConfig(
        material['kind'].strip(),
        _floats(parser['parameters'], path)
        if parser.has_section('parameters') else {},
        dict(parser['expressions'])
        if parser.has_section('expressions') else {},
        material.get('variables', None),
        material.get('name', None))


def load_material(source, parameters=None):
    """Loads a material law.

    :param str source: Either the kind of a built-in law, or the name of a
        material file.

    :param dict parameters: The parameters of a built-in law, or values
        overriding those of a material file.

    :return: the law

    :raises OSError: if the material file cannot be read

    :raises corostab.SchemaError: if the description is malformed

    :raises corostab.ExpressionError: if an expression is malformed

    :raises corostab.EquivarianceError: if the law is not isotropic
    """
    if source in BUILTIN_LAWS:
        config = MaterialConfig(source, parameters)
    elif source in KINDS:
        raise SchemaError('{} materials require a material file'.format(
            source))
    else:
        config = read_material_config(source)
        if parameters:
            merged = config.parameters
            merged.update(parameters)
            config = MaterialConfig(
                config.kind, merged, config.expressions, config.variables,
                config.name)
    return law_from_config(config)


def material_description(law):
    """A plain representation of a law.
    """
    return {
        'name': law.name,
        'type': law.__class__.__name__,
        'hyperelastic': law.HYPERELASTIC,
        'parameters': dict(sorted(law.parameters.items()))}


class ScanConfig(object):
    """The description of a scan.

    :param str material: A built-in law kind or a material file name.

    :param dict parameters: Parameters of the material.

    :param str mode: Either ``'grid'`` or ``'random'``.

    :param tuple grid: The grid ``(min, max, points)`` per axis.

    :param tuple random: The random draw ``(count, min, max, seed)``.

    :param flavors: The audited stress flavours.

    :param Tolerances tolerances: The tolerances.

    :param str output_format: Either ``'json'`` or ``'csv'``.

    :param str output: The report file name, or ``None``.

    :param int jobs: The number of workers. This defaults to
        :func:`corostab.default_jobs`.

    :raises corostab.SchemaError: if a value is invalid
    """
    def __init__(
            self, material, parameters=None, mode=GRID,
            grid=(-0.5, 0.5, 5), random=(100, -0.5, 0.5, 0),
            flavors=(CAUCHY, KIRCHHOFF), tolerances=None,
            output_format=JSON, output=None, jobs=None):
        try:
            self._flavors = tuple(_flavor(f) for f in flavors)
            self._tolerances = tolerances or Tolerances()
        except ValueError as e:
            raise SchemaError(str(e))
        if mode not in (GRID, RANDOM):
            raise SchemaError('unknown scan mode: {!r}'.format(mode))
        low, high, points = grid
        if not float(low) < float(high):
            raise SchemaError('grid min must be less than max')
        if int(points) < 2:
            raise SchemaError('grid needs at least 2 points per axis')
        count, random_low, random_high, seed = random
        if int(count) < 1 or not float(random_low) < float(random_high):
            raise SchemaError('invalid random sample specification')
        if output_format not in FORMATS:
            raise SchemaError('unknown report format: {!r}'.format(
                output_format))
        self._material = material
        self._parameters = {
            key: float(value) for key, value in (parameters or {}).items()}
        self._mode = mode
        self._grid = (float(low), float(high), int(points))
        self._random = (
            int(count), float(random_low), float(random_high), int(seed))
        self._output_format = output_format
        self._output = output
        self._jobs = jobs

    @property
    def material(self):
        return self._material

    @property
    def parameters(self):
        return dict(self._parameters)

    @property
    def mode(self):
        return self._mode

    @property
    def grid(self):
        return self._grid

    @property
    def random(self):
        return self._random

    @property
    def flavors(self):
        return self._flavors

    @property
    def tolerances(self):
        return self._tolerances

    @property
    def output_format(self):
        return self._output_format

    @property
    def output(self):
        return self._output

    @property
    def jobs(self):
        """The number of workers.
        """
        return self._jobs if self._jobs is not None else default_jobs()

    def replace(self, **kwargs):
        """Returns a copy with some values replaced.
        """
        values = {
            'material': self._material,
            'parameters': self._parameters,
            'mode': self._mode,
            'grid': self._grid,
            'random': self._random,
            'flavors': self._flavors,
            'tolerances': self._tolerances,
            'output_format': self._output_format,
            'output': self._output,
            'jobs': self._jobs}
        values.update(kwargs)
        return ScanConfig(**values)

    def states(self):
        """The principal log-stretches of the scanned states.

        :return: an array with shape ``(n, 3)``
        """
        if self._mode == GRID:
            low, high, points = self._grid
            axis = numpy.linspace(low, high, points)
            return numpy.array(list(itertools.product(axis, repeat=3)))
        else:
            count, low, high, seed = self._random
            return numpy.random.default_rng(seed).uniform(
                low, high, (count, 3))

    def as_dict(self):
        """A plain representation of this configuration.

        The output file name and worker count are omitted, since they do not
        affect the report.
        """
        return {
            'material': self._material,
            'parameters': dict(sorted(self._parameters.items())),
            'mode': self._mode,
            'grid': {
                'min': self._grid[0],
                'max': self._grid[1],
                'points': self._grid[2]},
            'random': {
                'count': self._random[0],
                'min': self._random[1],
                'max': self._random[2],
                'seed': self._random[3]},
            'flavors': list(self._flavors),
            'tolerances': self._tolerances.as_dict(),
            'format': self._output_format}


def read_scan_config(path):
    """Reads a scan configuration file.

    A material file named in the configuration is resolved relative to the
    directory of the configuration.

    :param str path: The file name.

    :return: the configuration
    :rtype: ScanConfig

    :raises OSError: if the file cannot be read

    :raises corostab.SchemaError: if the document is malformed
    """
    parser = _read(path)
    if not parser.has_section('scan'):
        raise SchemaError('{}: missing section [scan]'.format(path))
    scan = parser['scan']
    _check_keys(
        scan, ('material', 'mode', 'flavors', 'format', 'output', 'jobs'),
        path)
    if 'material' not in scan:
        raise SchemaError('{}: missing key material'.format(path))
    material = scan['material'].strip()
    if material not in KINDS:
        material = os.path.join(os.path.dirname(path), material)

    def section(name, keys, defaults):
        if not parser.has_section(name):
            return defaults
        _check_keys(parser[name], keys, path)
        values = parser[name]
        try:
            return tuple(
                type(default)(values.get(key, default))
                for key, default in zip(keys, defaults))
        except ValueError as e:
            raise SchemaError('{}: invalid value in [{}]: {}'.format(
                path, name, e))

    grid = section('grid', ('min', 'max', 'points'), (-0.5, 0.5, 5))
    random = section(
        'random', ('count', 'min', 'max', 'seed'), (100, -0.5, 0.5, 0))
    definiteness, margin, directions, seed = section(
        'tolerances', ('definiteness', 'margin', 'directions', 'seed'),
        (1e-10, 1e-6, 200, 0))
    try:
        tolerances = Tolerances(definiteness, margin, directions, seed)
        jobs = int(scan['jobs']) if 'jobs' in scan else None
    except ValueError as e:
        raise SchemaError('{}: {}'.format(path, e))

    output = scan.get('output', None)
    if output is not None:
        output = os.path.join(os.path.dirname(path), output.strip())
    return ScanConfig(
        material,
        _floats(parser['parameters'], path)
        if parser.has_section('parameters') else {},
        scan.get('mode', GRID).strip(),
        grid,
        random,
        [f.strip() for f in scan.get('flavors', 'cauchy, kirchhoff').split(
            ',') if f.strip()],
        tolerances,
        scan.get('format', JSON).strip(),
        output,
        jobs)


def _relative(a, b):
    a, b = numpy.asarray(a), numpy.asarray(b)
    return float(numpy.max(numpy.abs(a - b)) / max(
        1.0, float(numpy.max(numpy.abs(b)))))


def _statistics(values):
    values = numpy.asarray(values, dtype=float)
    return {
        'max': float(values.max()) if values.size else None,
        'mean': float(values.mean()) if values.size else None}


def _residuals(law, verdicts, flavors):
    """Oracle residuals comparing independent routes at every state.
    """
    richter, weighted, gap = [], [], []
    for verdict in verdicts:
        state = verdict.state
        richter.append(_relative(
            richter_cauchy(law, state), cauchy_stress(law, state).sigma))
        for flavor in flavors:
            weighted.append(_relative(
                weighted_q1(law, state, flavor),
                quadform_blocks(law, state, flavor).q1))
            gap.append(verdict[flavor].csp_sampled - verdict[flavor].csp_exact)
    return {
        'richter_cauchy': _statistics(richter),
        'weighted_lambda': _statistics(weighted),
        'sampling_gap': _statistics(gap)}


class ScanReport(object):
    """The outcome of a scan.

    :param dict document: The report document.
    """
    def __init__(self, document):
        self._document = document

    @property
    def document(self):
        """The report document.
        """
        return self._document

    @property
    def consistent(self):
        """Whether no equivalence violation was found.
        """
        return self._document['summary']['consistent']

    @property
    def status(self):
        """The exit status; :data:`EXIT_OK` or :data:`EXIT_VIOLATION`.
        """
        return EXIT_OK if self.consistent else EXIT_VIOLATION


def run_scan(config, write=True):
    """Runs a scan.

    :param ScanConfig config: The configuration.

    :param bool write: Whether to write the report to ``config.output``.

    :return: the report
    :rtype: ScanReport
    """
    log = logging.getLogger(__name__)
    law = load_material(config.material, config.parameters)
    states = config.states()
    log.info('Scanning {} states of {}'.format(len(states), law.name))
    audit = equivalence_audit(
        law, states, config.tolerances, config.flavors, config.jobs, UNIT)
    summary = audit.summary()
    summary['consistent'] = audit.consistent
    document = {
        'schema': SCHEMA,
        'config': config.as_dict(),
        'material': material_description(law),
        'states': [verdict.as_dict() for verdict in audit.verdicts],
        'summary': summary,
        'residuals': _residuals(law, audit.verdicts, config.flavors)}
    if not audit.consistent:
        log.warning('Scan of {} found equivalence violations'.format(
            law.name))
    report = ScanReport(document)
    if write and config.output is not None:
        write_report(document, config.output, config.output_format)
    return report


def dump_report(document):
    """Serialises a report document as JSON.

    Numbers are written with the shortest representation that reads back
    exactly.

    :return: the text
    """
    return json.dumps(
        document, indent=2, sort_keys=True, allow_nan=False) + '\n'


#: The per-flavour columns of CSV reports
_FLAVOR_COLUMNS = (
    'lambda_min', 'tstsm_pp', 'tensor_min', 'csp_exact', 'csp_sampled', 'be',
    'be_margin', 'tstsm', 'classification', 'consistent')


def _csv_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    elif isinstance(value, float):
        return '%.17g' % value
    elif value is None:
        return ''
    else:
        return str(value)


def dump_csv(document):
    """Flattens the per-state records of a report document to CSV.

    :return: the text
    """
    flavors = document['config']['flavors']
    header = (
        ['x1', 'x2', 'x3', 'lambda1', 'lambda2', 'lambda3', 'J']
        + ['sigma1', 'sigma2', 'sigma3', 'tau1', 'tau2', 'tau3']
        + [
            '{}_{}'.format(flavor, column)
            for flavor in flavors
            for column in _FLAVOR_COLUMNS])
    result = io.StringIO()
    writer = csv.writer(result, lineterminator='\n')
    writer.writerow(header)
    for record in document['states']:
        row = (
            record['x'] + record['stretches'] + [record['J']]
            + record['sigma'] + record['tau'])
        for flavor in flavors:
            data = record['flavors'][flavor]
            row.extend(data[column] for column in _FLAVOR_COLUMNS)
        writer.writerow([_csv_value(value) for value in row])
    return result.getvalue()


def write_report(document, path, output_format=JSON):
    """Writes a report document.

    The file only appears once completely written.

    :param dict document: The report document.

    :param str path: The file name.

    :param str output_format: Either ``'json'`` or ``'csv'``.
    """
    text = dump_csv(document) if output_format == CSV else dump_report(
        document)
    with atomic_output(path) as f:
        f.write(text)


def read_report(path):
    """Reads a JSON report.

    :param str path: The file name.

    :return: the report document

    :raises OSError: if the file cannot be read

    :raises corostab.SchemaError: if the document is not a report of a known
        schema
    """
    with open(path, encoding='utf-8') as f:
        try:
            document = json.load(f)
        except ValueError as e:
            raise SchemaError('{}: {}'.format(path, e))
    if not isinstance(document, dict) or document.get('schema') != SCHEMA:
        raise SchemaError('{}: unsupported report schema'.format(path))
    return document
