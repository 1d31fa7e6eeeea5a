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

import math
import unittest

import corostab

from corostab import _expressions as expressions
from corostab._base import finite_difference_gradient

from . import rng


def value(source, x=(0.3, -0.2, 0.5), **parameters):
    return corostab.Expression(source)(x, parameters)


class TokenizeTests(unittest.TestCase):
    def test_simple(self):
        """Tests tokenizing a product.
        """
        self.assertEqual(
            ['2', '*', 'mu', '*', 'x1'],
            [token.lexeme for token in corostab.tokenize('2*mu*x1')])

    def test_kinds(self):
        """Tests that token kinds are assigned.
        """
        self.assertEqual(
            [
                expressions.IDENTIFIER, expressions.PAREN,
                expressions.NUMBER, expressions.COMMA,
                expressions.OPERATOR, expressions.IDENTIFIER,
                expressions.PAREN],
            [token.kind for token in corostab.tokenize('pow(1.5e-3, -x1)')])

    def test_nested(self):
        """Tests tokenizing nested parentheses.
        """
        tokens = corostab.tokenize('exp(k*(x1^2+x2^2+x3^2))')
        self.assertEqual(18, len(tokens))
        self.assertEqual(
            sum(1 for token in tokens if token.lexeme == '('),
            sum(1 for token in tokens if token.lexeme == ')'))

    def test_positions(self):
        """Tests that positions increase strictly.
        """
        positions = [
            token.position
            for token in corostab.tokenize('  mu * (x1 +  x2) ')]
        self.assertEqual([2, 5, 7, 8, 11, 14, 16], positions)

    def test_invalid_character(self):
        """Tests that invalid characters are rejected with their position.
        """
        with self.assertRaises(corostab.LexError) as e:
            corostab.tokenize('2 $ x1')
        self.assertEqual(2, e.exception.position)


class ParseTests(unittest.TestCase):
    def test_precedence(self):
        """Tests that multiplication binds tighter than addition.
        """
        self.assertEqual(
            expressions.Binary(
                '+',
                expressions.Variable('x1'),
                expressions.Binary(
                    '*',
                    expressions.Variable('x2'),
                    expressions.Variable('x3'))),
            corostab.parse_expression('x1+x2*x3'))

    def test_negated_power(self):
        """Tests that the power binds tighter than unary minus.
        """
        self.assertEqual(
            expressions.Unary(
                'neg',
                expressions.Binary(
                    '^',
                    expressions.Variable('x1'),
                    expressions.Constant(2.0))),
            corostab.parse_expression('-x1^2'))

    def test_right_associative_power(self):
        """Tests that the power is right associative.
        """
        self.assertEqual(2.0 ** 9.0, value('2^3^2'))

    def test_parameters(self):
        """Tests that unknown identifiers are parameters.
        """
        self.assertEqual(
            {'mu', 'lam'},
            corostab.Expression('2*mu*x1 + lam*s').parameters)

    def test_unexpected_end(self):
        """Tests that truncated input is rejected.
        """
        with self.assertRaises(corostab.ParseError) as e:
            corostab.parse_expression('mu*(x1+')
        self.assertEqual(7, e.exception.position)
        self.assertIn('unexpected end', str(e.exception))
        self.assertTrue(e.exception.expected)

    def test_empty(self):
        """Tests that an empty expression is rejected.
        """
        with self.assertRaises(corostab.ParseError):
            corostab.parse_expression('  ')

    def test_trailing(self):
        """Tests that trailing tokens are rejected.
        """
        with self.assertRaises(corostab.ParseError) as e:
            corostab.parse_expression('x1 x2')
        self.assertEqual(3, e.exception.position)

    def test_unknown_function(self):
        """Tests that unknown functions are rejected.
        """
        with self.assertRaises(corostab.ParseError):
            corostab.parse_expression('sin(x1)')

    def test_sum(self):
        """Tests that sums are expanded.
        """
        self.assertAlmostEqual(
            0.3 ** 2 + 0.2 ** 2 + 0.5 ** 2,
            value('sum(xk^2)'),
            places=14)

    def test_summation_variable(self):
        """Tests that the summation variable is only valid inside of sums.
        """
        with self.assertRaises(corostab.ParseError):
            corostab.parse_expression('xk + 1')
        with self.assertRaises(corostab.ParseError):
            corostab.parse_expression('sum(sum(xk))')

    def test_round_trip(self):
        """Tests that formatted expressions evaluate identically.
        """
        generator = rng()
        parameters = {'mu': 1.3, 'lam': -0.4, 'k': 0.7}
        for source in (
                'mu*(x1^2+x2^2+x3^2) + lam/2*s^2',
                '-x1^2 - -x2 + 3/4/x3',
                'exp(k*sum(xk^2))/k + pow(abs(s), 1.5)',
                'sqrt(1 + x1^2) * log(2 + x2) - 2^-x3'):
            tree = corostab.parse_expression(source)
            reparsed = corostab.parse_expression(corostab.format_expr(tree))
            for _ in range(100):
                context = expressions.EvalContext(
                    generator.uniform(-1, 1, 3), parameters)
                self.assertAlmostEqual(
                    corostab.evaluate(tree, context),
                    corostab.evaluate(reparsed, context),
                    delta=1e-12)


class EvaluateTests(unittest.TestCase):
    def test_hencky_stress(self):
        """Tests evaluation of the Hencky stress.
        """
        self.assertEqual(
            3.0, value('2*mu*x1 + lam*s', (1.0, 0.0, 0.0), mu=1, lam=1))

    def test_variable(self):
        """Tests evaluation of a variable.
        """
        self.assertEqual(0.5, value('x1', (0.5, 0.0, 0.0)))

    def test_log_domain(self):
        """Tests that logarithms of non-positive values are errors.
        """
        with self.assertRaises(corostab.EvalError):
            value('log(x1)', (-1.0, 0.0, 0.0))

    def test_sqrt_domain(self):
        """Tests that square roots of negative values are errors.
        """
        with self.assertRaises(corostab.EvalError):
            value('sqrt(x1)', (-1.0, 0.0, 0.0))

    def test_division_by_zero(self):
        """Tests that division by zero is an error.
        """
        with self.assertRaises(corostab.EvalError):
            value('1/x1', (0.0, 0.0, 0.0))

    def test_unbound_parameter(self):
        """Tests that unbound parameters are errors.
        """
        with self.assertRaises(corostab.EvalError):
            value('mu*x1')

    def test_integer_powers(self):
        """Tests that small integer powers are exact.
        """
        self.assertEqual(0.3 * 0.3 * 0.3, value('x1^3'))
        self.assertEqual(1.0, value('x1^0'))

    def test_non_finite(self):
        """Tests that non-finite intermediate values are errors.
        """
        with self.assertRaises(corostab.EvalError):
            value('x1^(1e308*10 - 1e308*10)')
        with self.assertRaises(corostab.EvalError):
            value('1e308*10')
        with self.assertRaises(corostab.EvalError):
            value('exp(1e308*10)')

    def test_gradients(self):
        """Tests finite difference gradients against analytic derivatives.
        """
        x = [0.3, -0.2, 0.5]
        for source, gradient in (
                ('x1^2 + x2^2 + x3^2', lambda x: [2 * v for v in x]),
                ('s^2', lambda x: [2 * sum(x)] * 3),
                ('exp(x1*x2)', lambda x: [
                    x[1] * math.exp(x[0] * x[1]),
                    x[0] * math.exp(x[0] * x[1]),
                    0.0]),
                ('log(2 + x3) * x1', lambda x: [
                    math.log(2 + x[2]), 0.0, x[0] / (2 + x[2])]),
                ('sqrt(1 + x1^2 + x2^4)', lambda x: [
                    x[0] / math.sqrt(1 + x[0] ** 2 + x[1] ** 4),
                    2 * x[1] ** 3 / math.sqrt(1 + x[0] ** 2 + x[1] ** 4),
                    0.0])):
            expression = corostab.Expression(source)
            actual = finite_difference_gradient(expression, x)
            for a, b in zip(actual, gradient(x)):
                self.assertAlmostEqual(b, a, delta=1e-6)


class EquivarianceTests(unittest.TestCase):
    def test_symmetric(self):
        """Tests that a symmetric construction is equivariant.
        """
        self.assertTrue(corostab.check_permutation_equivariance(
            corostab.expand_components('2*x{i} + s')))

    def test_product(self):
        """Tests that products with the trace are equivariant.
        """
        self.assertTrue(corostab.check_permutation_equivariance(
            corostab.expand_components('x{i}*s')))

    def test_cyclic(self):
        """Tests that cyclic companions expand symmetrically.
        """
        self.assertEqual(
            ('x1*(x2+x3)', 'x2*(x3+x1)', 'x3*(x1+x2)'),
            corostab.expand_components('x{i}*(x{j}+x{k})'))
        self.assertTrue(corostab.check_permutation_equivariance(
            corostab.expand_components('x{i}*(x{j}+x{k})')))

    def test_swapped(self):
        """Tests that swapped components fail with a witness.
        """
        verdict = corostab.check_permutation_equivariance(
            ('x2', 'x1', 'x3'))
        self.assertFalse(verdict)
        self.assertEqual(
            {'x', 'permutation', 'component', 'expected', 'actual'},
            set(verdict.witness))

    def test_parameters(self):
        """Tests that parameters are bound during the check.
        """
        self.assertTrue(corostab.check_permutation_equivariance(
            corostab.expand_components('mu*x{i} + lam*s'),
            parameters={'mu': 1.0, 'lam': 2.0}))
