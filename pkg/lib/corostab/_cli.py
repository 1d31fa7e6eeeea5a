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
The ``corostab`` command line interface.
"""

import argparse
import logging
import sys

import numpy

from ._base import Error
from ._conditions import Tolerances, evaluate_state
from ._harness import (
    EXIT_ERROR,
    EXIT_OK,
    EXIT_VIOLATION,
    FORMATS,
    dump_report,
    load_material,
    material_description,
    read_scan_config,
    run_scan)
from ._info import __version__
from ._verify import SUITES, run_verify


def _triple(value):
    """Parses three comma separated numbers.
    """
    try:
        result = [float(v) for v in value.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected three numbers: {!r}'.format(value))
    if len(result) != 3:
        raise argparse.ArgumentTypeError(
            'expected three numbers: {!r}'.format(value))
    return result


def _assignment(value):
    """Parses a ``name=value`` parameter assignment.
    """
    name, sep, number = value.partition('=')
    try:
        if not sep or not name.strip():
            raise ValueError()
        return name.strip(), float(number)
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected name=value: {!r}'.format(value))


def _print(document):
    sys.stdout.write(dump_report(document))


def _eval(args):
    law = load_material(args.material or args.law, dict(args.param))
    if args.log_stretch is not None:
        x = numpy.array(args.log_stretch)
    else:
        stretches = numpy.array(args.stretch)
        if numpy.any(stretches <= 0.0):
            raise ValueError('stretches must be positive')
        x = numpy.log(stretches)
    verdict = evaluate_state(
        law, x, Tolerances(seed=args.seed), seed=args.seed)
    document = verdict.as_dict()
    document['material'] = material_description(law)
    document['consistent'] = verdict.consistent
    _print(document)
    return EXIT_OK


def _scan(args):
    config = read_scan_config(args.config)
    overrides = {}
    if args.out is not None:
        overrides['output'] = args.out
    if args.format is not None:
        overrides['output_format'] = args.format
    if args.jobs is not None:
        overrides['jobs'] = args.jobs
    config = config.replace(**overrides)

    report = run_scan(config)
    if config.output is None:
        _print(report.document)
    else:
        _print(report.document['summary'])
    return report.status


def _verify(args):
    report = run_verify(args.seed, args.suite)
    document = report.as_dict()
    document['checks'] = [
        check for check in document['checks']
        if args.verbose or not check['passed']]
    _print(document)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _check_material(args):
    law = load_material(args.path)
    _print(material_description(law))
    return EXIT_OK


def parser():
    """Creates the argument parser.

    :return: an :class:`argparse.ArgumentParser`
    """
    result = argparse.ArgumentParser(
        prog='corostab',
        description='Numerical verification of corotational stability '
        'conditions for isotropic elastic laws.')
    result.add_argument(
        '--version', action='version',
        version='%(prog)s ' + '.'.join(str(v) for v in __version__))
    result.add_argument(
        '-v', '--verbose', action='count', default=0,
        help='log progress; repeat for debug output')
    commands = result.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    command = commands.add_parser(
        'eval', help='evaluate the stability predicates at a single state')
    material = command.add_mutually_exclusive_group(required=True)
    material.add_argument('--law', help='the kind of a built-in law')
    material.add_argument('--material', help='a material file')
    command.add_argument(
        '--param', action='append', type=_assignment, default=[],
        metavar='NAME=VALUE', help='a material parameter')
    state = command.add_mutually_exclusive_group(required=True)
    state.add_argument(
        '--stretch', type=_triple, metavar='L1,L2,L3',
        help='the principal stretches')
    state.add_argument(
        '--log-stretch', type=_triple, metavar='X1,X2,X3',
        help='the principal log-stretches')
    command.add_argument(
        '--seed', type=int, default=0, help='the direction sampling seed')
    command.set_defaults(function=_eval)

    command = commands.add_parser(
        'scan', help='audit a grid or random sample of states')
    command.add_argument(
        '--config', required=True, help='the scan configuration file')
    command.add_argument('--out', help='the report file')
    command.add_argument(
        '--format', choices=FORMATS, help='the report format')
    command.add_argument('--jobs', type=int, help='the number of workers')
    command.set_defaults(function=_scan)

    command = commands.add_parser(
        'verify', help='run the cross-route verification suites')
    command.add_argument(
        '--suite', choices=('all',) + SUITES, default='all',
        help='the suite to run')
    command.add_argument(
        '--seed', type=int, default=0, help='the random seed')
    command.set_defaults(function=_verify)

    command = commands.add_parser(
        'check-material', help='parse and validate a material file')
    command.add_argument('path', help='the material file')
    command.set_defaults(function=_check_material)

    return result


def main(argv=None):
    """Runs the command line interface.

    :param argv: The arguments. If not specified, ``sys.argv[1:]`` is used.

    :return: the exit status
    """
    args = parser().parse_args(argv)
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[
            min(args.verbose, 2)],
        format='%(levelname)s %(name)s: %(message)s')
    log = logging.getLogger(__name__)

    try:
        return args.function(args)
    except (Error, OSError, ValueError) as e:
        log.debug('Command failed', exc_info=True)
        sys.stderr.write('corostab: {}\n'.format(e))
        return EXIT_ERROR
