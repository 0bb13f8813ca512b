# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
import math
from fractions import Fraction

import fixtures
import testscenarios
import testtools
from testtools.content import text_content

from timescales._calculus import (
    DerivKind,
    GridFunction,
    cross_relation_check,
    delta_derivative,
    delta_integral,
    derivative_sequence,
    diamond_antiderivative,
    diamond_derivative,
    diamond_integral,
    differentiate,
    iterated_derivative,
    nabla_derivative,
    nabla_integral,
)
from timescales._scale import FiniteGrid, RealLine, UniformGrid
from timescales.errors import DomainError
from timescales.functions import polynomial, pow2
from timescales.specials import ExpParams, exp_function

F = Fraction
Z = UniformGrid()


def square(T):
    return GridFunction(T, lambda t: t * t, name="t^2")


class DerivKindTests(testtools.TestCase):
    def test_names(self):
        self.assertEqual("delta", str(DerivKind.from_name("delta")))
        self.assertEqual("nabla", str(DerivKind.from_name("NABLA")))
        self.assertEqual("diamond(1/4)", str(DerivKind.from_name("diamond", "1/4")))
        self.assertIs(DerivKind.DELTA.is_delta, True)

    def test_diamond_needs_alpha(self):
        self.assertRaises(DomainError, DerivKind.from_name, "diamond")

    def test_alpha_range(self):
        self.assertRaises(DomainError, DerivKind, F(3, 2))
        self.assertRaises(DomainError, DerivKind, -1)

    def test_end_points_are_plain_directions(self):
        self.assertEqual(DerivKind.DELTA, DerivKind.diamond(1))
        self.assertEqual(DerivKind.NABLA, DerivKind.diamond(0))


class DiscreteDerivativeTests(testscenarios.WithScenarios, testtools.TestCase):
    scenarios = [
        ("Z", {"step": F(1)}),
        ("half Z", {"step": F(1, 2)}),
        ("3Z", {"step": F(3)}),
    ]

    def setUp(self):
        super().setUp()
        self.T = UniformGrid(0, self.step)
        self.f = square(self.T)

    def test_delta_of_square(self):
        # (t^2)^delta = t + sigma(t)
        t = 2 * self.step
        self.assertEqual(2 * t + self.step, delta_derivative(self.f, t))

    def test_nabla_of_square(self):
        t = 2 * self.step
        self.assertEqual(2 * t - self.step, nabla_derivative(self.f, t))

    def test_diamond_is_convex_combination(self):
        t = -self.step
        for alpha in (F(0), F(1, 4), F(1, 2), F(3, 4), F(1)):
            expected = alpha * delta_derivative(self.f, t) + (1 - alpha) * (
                nabla_derivative(self.f, t)
            )
            self.assertEqual(expected, diamond_derivative(self.f, t, alpha))

    def test_estimate_is_exact(self):
        estimate = differentiate(self.f, self.step, DerivKind.DELTA)
        self.assertTrue(estimate.exact)
        self.assertFalse(estimate.fallback)

    def test_cross_relations(self):
        self.assertEqual((True, True), cross_relation_check(self.f, 5 * self.step))

    def test_integrals_are_weighted_sums(self):
        a, b = -self.step, 3 * self.step
        points = self.T.points_between(a, b)
        self.assertEqual(
            sum(self.step * p * p for p in points[:-1]), delta_integral(self.f, a, b)
        )
        self.assertEqual(
            sum(self.step * p * p for p in points[1:]), nabla_integral(self.f, a, b)
        )

    def test_integral_orientation(self):
        a, b = 0, 4 * self.step
        self.assertEqual(-delta_integral(self.f, a, b), delta_integral(self.f, b, a))
        self.assertEqual(0, nabla_integral(self.f, a, a))

    def test_delta_integral_inverts_delta_derivative(self):
        derivative = GridFunction(self.T, lambda t: delta_derivative(self.f, t))
        a, b = -2 * self.step, 5 * self.step
        self.assertEqual(self.f(b) - self.f(a), delta_integral(derivative, a, b))


class FiniteGridDerivativeTests(testtools.TestCase):
    def setUp(self):
        super().setUp()
        self.T = FiniteGrid((0, 1, 3, 7))
        self.f = square(self.T)

    def test_delta_at_maximum(self):
        e = self.assertRaises(DomainError, delta_derivative, self.f, 7)
        self.assertEqual(7, e.point)

    def test_nabla_at_minimum(self):
        self.assertRaises(DomainError, nabla_derivative, self.f, 0)

    def test_nonuniform_quotients(self):
        self.assertEqual(F(10), delta_derivative(self.f, 3))
        self.assertEqual(F(4), nabla_derivative(self.f, 3))
        self.assertEqual(F(7), diamond_derivative(self.f, 3, F(1, 2)))

    def test_cross_relation_fails_at_boundary(self):
        self.assertEqual((False, True), cross_relation_check(self.f, 0))

    def test_iterated_derivative_domain_is_trimmed(self):
        second = iterated_derivative(self.f, DerivKind.DELTA, 2)
        self.assertEqual((0, 1), second.domain.points)
        # (t^2)^delta = t + sigma(t): 1, 4, 10 on 0, 1, 3
        self.assertEqual(F(3), second(1))
        self.assertRaises(DomainError, second, 3)


class RealLineTests(testtools.TestCase):
    def test_attached_derivative(self):
        f = polynomial(RealLine(), [0, 0, 1])
        estimate = differentiate(f, 1.5, DerivKind.diamond("1/2"))
        self.assertEqual(3.0, estimate.value)
        self.assertFalse(estimate.fallback)
        self.assertFalse(estimate.exact)
        self.assertTrue(estimate.closed_form)

    def test_central_difference_fallback_is_logged(self):
        logger = self.useFixture(fixtures.FakeLogger())
        f = GridFunction(RealLine(), lambda t: t**3, exact=False, name="cube")
        estimate = differentiate(f, 2.0, DerivKind.NABLA)
        self.assertTrue(estimate.fallback)
        self.assertFalse(estimate.closed_form)
        self.assertFalse(estimate.exact)
        self.assertTrue(math.isclose(12.0, estimate.value, rel_tol=1e-8))
        self.assertIn("central difference", logger.output)

    def test_quadrature(self):
        f = GridFunction(RealLine(), math.sin, exact=False)
        value = diamond_integral(f, 0, math.pi, "1/3")
        self.assertTrue(math.isclose(2.0, value, rel_tol=1e-9))

    def test_iterated_fallback_warns_once(self):
        logger = self.useFixture(fixtures.FakeLogger())
        f = GridFunction(RealLine(), math.exp, exact=False, name="exp")
        second = iterated_derivative(f, DerivKind.DELTA, 2)
        self.assertTrue(second.fallback)
        self.assertTrue(math.isclose(math.e, second(1.0), rel_tol=1e-6))
        self.assertEqual(1, logger.output.count("central differences"))

    def test_higher_order_fallback(self):
        f = GridFunction(RealLine(), math.exp, exact=False, name="exp")
        third = iterated_derivative(f, DerivKind.NABLA, 3)
        self.assertTrue(third.fallback)
        self.assertTrue(math.isclose(math.e, third(1.0), rel_tol=1e-3))

    def test_attached_chain_is_followed(self):
        logger = self.useFixture(fixtures.FakeLogger())
        f = exp_function(ExpParams(2, scale=RealLine()))
        fifth = iterated_derivative(f, DerivKind.DELTA, 5)
        self.assertFalse(fifth.fallback)
        self.assertTrue(math.isclose(32 * math.exp(1.0), fifth(0.5), rel_tol=1e-12))
        self.assertNotIn("central difference", logger.output)

    def test_chain_falls_back_past_its_end(self):
        f = polynomial(RealLine(), [0, 0, 0, 1])
        f = GridFunction(f.domain, f.evaluator, exact=False, derivative=f.derivative)
        second = iterated_derivative(f, DerivKind.DELTA, 2)
        self.assertTrue(second.fallback)
        self.assertTrue(math.isclose(12.0, second(2.0), rel_tol=1e-6))


class SequenceTests(testtools.TestCase):
    def test_pow2_delta_derivatives_at_zero(self):
        sequence = derivative_sequence(pow2(Z), DerivKind.DELTA, 0, 20)
        self.assertEqual([F(1)] * 21, sequence)

    def test_pow2_nabla_derivatives_at_zero(self):
        sequence = derivative_sequence(pow2(Z), DerivKind.NABLA, 0, 20)
        self.assertEqual([F(1, 2**k) for k in range(21)], sequence)

    def test_sequence_matches_iterated_derivative(self):
        f = polynomial(Z, [1, -2, 0, 1])
        for kind in (DerivKind.DELTA, DerivKind.NABLA):
            sequence = derivative_sequence(f, kind, 3, 4)
            self.assertEqual(
                [iterated_derivative(f, kind, k)(3) for k in range(5)], sequence
            )

    def test_diamond_sequence_rejected(self):
        self.assertRaises(
            DomainError, derivative_sequence, pow2(Z), DerivKind("1/2"), 0, 3
        )

    def test_iterated_diamond_is_nested(self):
        f = polynomial(Z, [0, 0, 0, 1])
        alpha = F(1, 3)
        kind = DerivKind(alpha)
        first = GridFunction(Z, lambda t: diamond_derivative(f, t, alpha))
        self.assertEqual(
            diamond_derivative(first, 2, alpha), iterated_derivative(f, kind, 2)(2)
        )


class NonInversionTests(testtools.TestCase):
    def test_diamond_derivative_of_diamond_integral(self):
        alpha = F(1, 2)
        f = square(Z)
        antiderivative = diamond_antiderivative(f, 0, alpha)
        t = 3
        difference = diamond_derivative(antiderivative, t, alpha) - f(t)
        self.addDetail("difference", text_content(str(difference)))
        # alpha (1 - alpha) (f(sigma(t)) - 2 f(t) + f(rho(t))) for t^2 on Z
        self.assertEqual(F(1, 2), difference)

    def test_one_sided_integrals_invert(self):
        f = square(Z)
        self.assertEqual(
            f(4), delta_derivative(diamond_antiderivative(f, 0, 1), 4)
        )
        self.assertEqual(
            f(4), nabla_derivative(diamond_antiderivative(f, 0, 0), 4)
        )
