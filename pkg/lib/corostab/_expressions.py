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
A small expression language for material laws.

Expressions are arithmetic over the variables ``x1``, ``x2``, ``x3`` and
``s = x1 + x2 + x3``, named parameters and the functions ``exp``, ``log``,
``sqrt``, ``abs``, ``pow(a, b)`` and ``sum(...)``. ``sum`` is expanded when
parsing: ``sum(xk^2)`` is equivalent to ``(x1^2 + x2^2) + x3^2``.

Operator precedence, from tightest to loosest binding, is ``^`` (right
associative), unary ``-``, ``*`` and ``/``, and finally ``+`` and ``-``. Thus
``-x1^2`` is ``-(x1^2)``.
"""

import collections
import itertools
import math
import re

import numpy

from ._base import Error


#: The variables bound by an evaluation context
VARIABLES = ('x1', 'x2', 'x3', 's')

#: The summation variable inside of ``sum(...)``
SUMMATION_VARIABLE = 'xk'

#: The single argument functions
FUNCTIONS = ('exp', 'log', 'sqrt', 'abs')

#: The relative tolerance of the permutation equivariance check
EQUIVARIANCE_TOLERANCE = 1e-9

NUMBER = 'number'
IDENTIFIER = 'identifier'
OPERATOR = 'operator'
PAREN = 'paren'
COMMA = 'comma'


class ExpressionError(Error):
    """The base class for errors in expressions.

    :param str message: A description of the error.

    :param int position: The zero-based character offset of the error in the
        source, if known.
    """
    def __init__(self, message, position=None):
        if position is not None:
            message = '{} at position {}'.format(message, position)
        super(ExpressionError, self).__init__(message)
        self.position = position


class LexError(ExpressionError):
    """Raised for characters that do not start a token.
    """
    pass


class ParseError(ExpressionError):
    """Raised for token streams that do not form an expression.

    :param tuple expected: Descriptions of the tokens that would have been
        accepted.
    """
    def __init__(self, message, position=None, expected=()):
        self.expected = tuple(expected)
        if self.expected:
            message = '{}; expected {}'.format(
                message, ' or '.join(self.expected))
        super(ParseError, self).__init__(message, position)


class EvalError(ExpressionError):
    """Raised when an expression cannot be evaluated in a context.
    """
    pass


#: A lexical token
Token = collections.namedtuple('Token', ('kind', 'lexeme', 'position'))


_TOKEN = re.compile(r'''
    (?P<number>(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][-+]?[0-9]+)?)
  | (?P<identifier>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<operator>[-+*/^])
  | (?P<paren>[()])
  | (?P<comma>,)
''', re.VERBOSE)

_WHITESPACE = re.compile(r'\s*')


def tokenize(source):
    """Splits a source text into tokens.

    :param str source: The expression text.

    :return: a list of tokens
    :rtype: [Token]

    :raises LexError: if a character does not start a token
    """
    result = []
    position = _WHITESPACE.match(source, 0).end()
    while position < len(source):
        match = _TOKEN.match(source, position)
        if match is None:
            raise LexError(
                'unexpected character {!r}'.format(source[position]),
                position)
        result.append(Token(match.lastgroup, match.group(), position))
        position = _WHITESPACE.match(source, match.end()).end()
    return result


class EvalContext(object):
    """The bindings used to evaluate an expression.

    :param values: The values of ``x1``, ``x2`` and ``x3``.

    :param dict parameters: The parameter values.
    """
    def __init__(self, values, parameters=None):
        values = [float(v) for v in numpy.asarray(values).reshape(-1)]
        if len(values) != 3:
            raise ValueError('expected three variable values')
        self._variables = {
            'x1': values[0],
            'x2': values[1],
            'x3': values[2],
            's': values[0] + values[1] + values[2]}
        self._parameters = dict(parameters or {})

    def variable(self, name):
        return self._variables[name]

    def parameter(self, name):
        try:
            return float(self._parameters[name])
        except KeyError:
            raise EvalError('unbound parameter {!r}'.format(name))


class Constant(collections.namedtuple('Constant', ('value',))):
    """A numeric literal.
    """
    def evaluate(self, context):
        return self.value

    def format(self):
        return repr(self.value) if self.value >= 0 else '({!r})'.format(
            self.value)

    def names(self):
        return frozenset()


class Variable(collections.namedtuple('Variable', ('name',))):
    """One of the variables ``x1``, ``x2``, ``x3`` or ``s``.
    """
    def evaluate(self, context):
        return context.variable(self.name)

    def format(self):
        return self.name

    def names(self):
        return frozenset()


class Parameter(collections.namedtuple('Parameter', ('name',))):
    """A reference to a named material parameter.
    """
    def evaluate(self, context):
        return context.parameter(self.name)

    def format(self):
        return self.name

    def names(self):
        return frozenset((self.name,))


def _log(value):
    if value <= 0.0:
        raise EvalError('log of non-positive value {!r}'.format(value))
    return math.log(value)


def _sqrt(value):
    if value < 0.0:
        raise EvalError('sqrt of negative value {!r}'.format(value))
    return math.sqrt(value)


_UNARY = {
    'neg': lambda value: -value,
    'exp': math.exp,
    'log': _log,
    'sqrt': _sqrt,
    'abs': abs}


class Unary(collections.namedtuple('Unary', ('operator', 'operand'))):
    """Negation or the application of a single argument function.
    """
    def evaluate(self, context):
        value = self.operand.evaluate(context)
        try:
            result = _UNARY[self.operator](value)
        except OverflowError:
            raise EvalError('{}({!r}) overflows'.format(self.operator, value))
        if not math.isfinite(result):
            raise EvalError('{}({!r}) is not finite'.format(
                self.operator, value))
        return result

    def format(self):
        if self.operator == 'neg':
            return '(-{})'.format(self.operand.format())
        else:
            return '{}({})'.format(self.operator, self.operand.format())

    def names(self):
        return self.operand.names()


def _power(base, exponent):
    if exponent == int(exponent) and 0 <= exponent <= 4:
        result = 1.0
        for _ in range(int(exponent)):
            result *= base
        return result
    if base < 0.0 and exponent != int(exponent):
        raise EvalError('{!r}^{!r} is not real'.format(base, exponent))
    if base == 0.0 and exponent < 0.0:
        raise EvalError('0^{!r} is undefined'.format(exponent))
    return math.pow(base, exponent)


def _divide(numerator, denominator):
    if denominator == 0.0:
        raise EvalError('division by zero')
    return numerator / denominator


_BINARY = {
    '+': lambda a, b: a + b,
    '-': lambda a, b: a - b,
    '*': lambda a, b: a * b,
    '/': _divide,
    '^': _power}


class Binary(collections.namedtuple('Binary', ('operator', 'left', 'right'))):
    """A binary arithmetic operation.
    """
    def evaluate(self, context):
        left = self.left.evaluate(context)
        right = self.right.evaluate(context)
        if not (math.isfinite(left) and math.isfinite(right)):
            raise EvalError('{!r} {} {!r} has a non-finite operand'.format(
                left, self.operator, right))
        try:
            result = _BINARY[self.operator](left, right)
        except OverflowError:
            raise EvalError('{!r} {} {!r} overflows'.format(
                left, self.operator, right))
        if not math.isfinite(result):
            raise EvalError('{!r} {} {!r} overflows'.format(
                left, self.operator, right))
        return result

    def format(self):
        return '({} {} {})'.format(
            self.left.format(), self.operator, self.right.format())

    def names(self):
        return self.left.names() | self.right.names()


#: The binding powers of the infix operators
_INFIX = {
    '+': 10,
    '-': 10,
    '*': 20,
    '/': 20,
    '^': 40}

#: The binding power of unary minus
_PREFIX = 30


def _substitute(node, name, replacement):
    """Replaces every variable ``name`` in a tree.
    """
    if isinstance(node, Variable):
        return replacement if node.name == name else node
    elif isinstance(node, Unary):
        return node._replace(
            operand=_substitute(node.operand, name, replacement))
    elif isinstance(node, Binary):
        return node._replace(
            left=_substitute(node.left, name, replacement),
            right=_substitute(node.right, name, replacement))
    else:
        return node


class _Parser(object):
    """A Pratt parser over a token list.
    """
    def __init__(self, tokens, end):
        self._tokens = list(tokens)
        self._index = 0
        self._end = end
        self._summing = False

    def parse(self):
        if not self._tokens:
            raise ParseError('empty expression', 0, ('expression',))
        result = self._expression(0)
        token = self._peek()
        if token is not None:
            raise ParseError(
                'unexpected {!r}'.format(token.lexeme),
                token.position,
                ('operator', 'end of expression'))
        return result

    def _peek(self):
        if self._index < len(self._tokens):
            return self._tokens[self._index]

    def _next(self, expected):
        token = self._peek()
        if token is None:
            raise ParseError('unexpected end', self._end, expected)
        self._index += 1
        return token

    def _expect(self, lexeme):
        token = self._next(('{!r}'.format(lexeme),))
        if token.lexeme != lexeme:
            raise ParseError(
                'unexpected {!r}'.format(token.lexeme),
                token.position,
                ('{!r}'.format(lexeme),))

    def _expression(self, right_binding):
        left = self._prefix(self._next(
            ('number', 'identifier', "'('", "'-'")))
        while True:
            token = self._peek()
            if token is None or token.kind != OPERATOR:
                return left
            binding = _INFIX[token.lexeme]
            if binding <= right_binding:
                return left
            self._index += 1
            left = Binary(
                token.lexeme,
                left,
                self._expression(binding - 1 if token.lexeme == '^'
                                 else binding))

    def _prefix(self, token):
        if token.kind == NUMBER:
            return Constant(float(token.lexeme))
        elif token.kind == IDENTIFIER:
            following = self._peek()
            if following is not None and following.lexeme == '(':
                return self._call(token)
            elif token.lexeme in VARIABLES:
                return Variable(token.lexeme)
            elif token.lexeme == SUMMATION_VARIABLE:
                if not self._summing:
                    raise ParseError(
                        '{!r} outside of sum'.format(token.lexeme),
                        token.position)
                return Variable(token.lexeme)
            else:
                return Parameter(token.lexeme)
        elif token.lexeme == '(':
            result = self._expression(0)
            self._expect(')')
            return result
        elif token.lexeme == '-':
            return Unary('neg', self._expression(_PREFIX))
        elif token.lexeme == '+':
            return self._expression(_PREFIX)
        else:
            raise ParseError(
                'unexpected {!r}'.format(token.lexeme),
                token.position,
                ('number', 'identifier', "'('", "'-'"))

    def _call(self, token):
        self._expect('(')
        name = token.lexeme
        if name in FUNCTIONS:
            result = Unary(name, self._expression(0))
        elif name == 'pow':
            base = self._expression(0)
            self._expect(',')
            result = Binary('^', base, self._expression(0))
        elif name == 'sum':
            if self._summing:
                raise ParseError('nested sum', token.position)
            self._summing = True
            try:
                term = self._expression(0)
            finally:
                self._summing = False
            terms = [
                _substitute(term, SUMMATION_VARIABLE, Variable(variable))
                for variable in VARIABLES[:3]]
            result = Binary('+', Binary('+', terms[0], terms[1]), terms[2])
        else:
            raise ParseError(
                'unknown function {!r}'.format(name), token.position,
                FUNCTIONS + ('pow', 'sum'))
        self._expect(')')
        return result


def parse(tokens, end=None):
    """Parses a token stream.

    :param tokens: The tokens, as returned by :func:`tokenize`.

    :param int end: The length of the source text; used as the position of
        errors at the end of input.

    :return: the expression tree

    :raises ParseError: if the tokens do not form a single expression
    """
    tokens = list(tokens)
    if end is None:
        end = tokens[-1].position + len(tokens[-1].lexeme) if tokens else 0
    return _Parser(tokens, end).parse()


def parse_expression(source):
    """Tokenizes and parses a source text.

    :param str source: The expression text.

    :return: the expression tree

    :raises LexError: if the text contains invalid characters

    :raises ParseError: if the text is not an expression
    """
    return parse(tokenize(source), len(source))


def evaluate(ast, context):
    """Evaluates an expression tree.

    :param ast: The expression tree.

    :param EvalContext context: The variable and parameter bindings.

    :return: the value

    :raises EvalError: if a parameter is unbound or an argument is outside of
        the domain of a function
    """
    return float(ast.evaluate(context))


def format_expr(ast):
    """Formats an expression tree as fully parenthesised source text.

    Parsing the result yields a tree with identical values.
    """
    return ast.format()


def expand_components(template):
    """Expands a component template into three sources.

    ``{i}`` is replaced by the component index and ``{j}`` and ``{k}`` by the
    following indices in cyclic order, so ``'2*x{i} + s'`` expands to
    ``('2*x1 + s', '2*x2 + s', '2*x3 + s')``.

    :param str template: The template.

    :return: a tuple of three sources
    """
    return tuple(
        template
        .replace('{i}', str(i + 1))
        .replace('{j}', str((i + 1) % 3 + 1))
        .replace('{k}', str((i + 2) % 3 + 1))
        for i in range(3))


class Expression(object):
    """A parsed expression together with its source.

    :param str source: The source text.

    :raises LexError: if the text contains invalid characters

    :raises ParseError: if the text is not an expression
    """
    def __init__(self, source):
        self._source = source
        self._ast = parse_expression(source)

    def __repr__(self):
        return 'Expression({!r})'.format(self._source)

    def __call__(self, values, parameters=None):
        return evaluate(self._ast, EvalContext(values, parameters))

    @property
    def source(self):
        """The source text.
        """
        return self._source

    @property
    def ast(self):
        """The expression tree.
        """
        return self._ast

    @property
    def parameters(self):
        """The names of all referenced parameters.
        """
        return self._ast.names()


class EquivarianceVerdict(object):
    """The outcome of a permutation equivariance check.

    The verdict is truthy if the function is equivariant.

    :param witness: A description of the first failure found, or ``None``.
    """
    def __init__(self, witness=None):
        self._witness = witness

    def __bool__(self):
        return self._witness is None

    __nonzero__ = __bool__

    def __repr__(self):
        return 'EquivarianceVerdict({!r})'.format(self._witness)

    @property
    def equivariant(self):
        """Whether no counterexample was found.
        """
        return self._witness is None

    @property
    def witness(self):
        """A dict with the keys ``x``, ``permutation``, ``component``,
        ``expected`` and ``actual`` describing the first failure, or ``None``.
        """
        return self._witness


def check_function_equivariance(
        function, samples=100, seed=0, box=1.0,
        tolerance=EQUIVARIANCE_TOLERANCE):
    """Checks that a vector function satisfies ``f(x∘π)ᵢ = f(x)_π(i)``.

    Sample points are drawn uniformly from ``[-box, box]³``.

    :param callable function: A function from three to three numbers.

    :param int samples: The number of sample points.

    :param int seed: The random seed.

    :param float box: The half-width of the sample box.

    :param float tolerance: The tolerance relative to ``max(1, |f(x)|)``.

    :return: the verdict
    :rtype: EquivarianceVerdict
    """
    rng = numpy.random.default_rng(seed)
    permutations = list(itertools.permutations(range(3)))
    for _ in range(samples):
        x = rng.uniform(-box, box, 3)
        reference = numpy.asarray(function(x), dtype=float)
        scale = max(1.0, float(numpy.max(numpy.abs(reference))))
        for permutation in permutations:
            permuted = numpy.asarray(
                function(x[list(permutation)]), dtype=float)
            for i, j in enumerate(permutation):
                if abs(permuted[i] - reference[j]) > tolerance * scale:
                    return EquivarianceVerdict({
                        'x': x.tolist(),
                        'permutation': list(permutation),
                        'component': i,
                        'expected': float(reference[j]),
                        'actual': float(permuted[i])})
    return EquivarianceVerdict()


def check_permutation_equivariance(
        components, samples=100, seed=0, parameters=None, box=1.0):
    """Checks that three component expressions form an isotropic vector
    function.

    :param components: Three expression trees, :class:`Expression` instances
        or source texts.

    :param int samples: The number of random sample points.

    :param int seed: The random seed.

    :param dict parameters: The parameter values.

    :param float box: The half-width of the sample box.

    :return: the verdict
    :rtype: EquivarianceVerdict

    :raises EvalError: if a component cannot be evaluated at a sample point
    """
    trees = []
    for component in components:
        if isinstance(component, Expression):
            component = component.ast
        elif isinstance(component, str):
            component = parse_expression(component)
        trees.append(component)
    if len(trees) != 3:
        raise ValueError('expected three components')

    def function(x):
        context = EvalContext(x, parameters)
        return [evaluate(tree, context) for tree in trees]

    return check_function_equivariance(function, samples, seed, box)
