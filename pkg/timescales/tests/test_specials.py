# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
import math
from fractions import Fraction

import testscenarios
import testtools

from timescales._calculus import (
    DerivKind,
    delta_derivative,
    diamond_derivative,
    differentiate,
    nabla_derivative,
)
from timescales._scale import FiniteGrid, RealLine, UniformGrid
from timescales.errors import DomainError, SingularityError
from timescales.series import Verdict, exp_series, series_eval
from timescales.specials import (
    ExpKind,
    ExpParams,
    TrigFamily,
    TrigKind,
    exp_diamond_derivative,
    exp_eval,
    exp_function,
    trig_diamond_derivative,
    trig_eval,
    trig_function,
)
from timescales.util import exact_complex, is_exact

F = Fraction
ALPHAS = (F(0), F(1, 4), F(1, 2), F(3, 4), F(1))
# none of these makes 1 + c*p or 1 - c*p vanish on Z or on half Z
P_VALUES = (F(1, 2), F(-1, 3), F(3))


class ExponentialTests(testscenarios.WithScenarios, testtools.TestCase):
    scenarios = [
        ("Z", {"step": F(1)}),
        ("half Z", {"step": F(1, 2)}),
    ]

    def setUp(self):
        super().setUp()
        self.T = UniformGrid(0, self.step)
        self.points = self.T.points_between(-4 * self.step, 4 * self.step)

    def test_closed_forms(self):
        c = self.step
        for p in P_VALUES:
            delta = ExpParams(p, ExpKind.DELTA, 0, self.T)
            nabla = ExpParams(p, ExpKind.NABLA, 0, self.T)
            for t in self.points:
                n = int(t / c)
                self.assertEqual((1 + c * p) ** n, exp_eval(delta, t))
                self.assertEqual((1 - c * p) ** -n, exp_eval(nabla, t))

    def test_initial_value(self):
        params = ExpParams("1/2", ExpKind.DELTA, 2 * self.step, self.T)
        self.assertEqual(1, exp_eval(params, 2 * self.step))

    def test_semigroup(self):
        c = self.step
        r, s = 2 * c, -3 * c
        for p in P_VALUES:
            for t in self.points:
                self.assertEqual(
                    exp_eval(ExpParams(p, t0=s, scale=self.T), t),
                    exp_eval(ExpParams(p, t0=r, scale=self.T), t)
                    * exp_eval(ExpParams(p, t0=s, scale=self.T), r),
                )

    def test_dynamic_equations(self):
        for p in P_VALUES:
            e = exp_function(ExpParams(p, ExpKind.DELTA, 0, self.T))
            hat_e = exp_function(ExpParams(p, ExpKind.NABLA, 0, self.T))
            for t in self.points:
                self.assertEqual(p * e(t), delta_derivative(e, t))
                self.assertEqual(p * hat_e(t), nabla_derivative(hat_e, t))

    def test_diamond_derivative_matches_operator(self):
        for p in P_VALUES:
            for kind in ExpKind:
                params = ExpParams(p, kind, self.step, self.T)
                f = exp_function(params)
                for t in self.points:
                    for alpha in ALPHAS:
                        self.assertEqual(
                            diamond_derivative(f, t, alpha),
                            exp_diamond_derivative(params, t, alpha),
                            "{} p={} t={} alpha={}".format(kind.value, p, t, alpha),
                        )

    def test_series_identity(self):
        for kind in ExpKind:
            params = ExpParams("1/2", kind, 0, self.T)
            spec = exp_series(params)
            for t in self.points:
                value, report = series_eval(spec, t)
                if report.verdict is Verdict.FINITE_SUM:
                    self.assertEqual(exp_eval(params, t), value)
                else:
                    self.assertEqual(Verdict.CONVERGENT, report.verdict)
                    self.assertTrue(
                        math.isclose(
                            float(exp_eval(params, t)), float(value), rel_tol=1e-9
                        )
                    )


class SingularExponentialTests(testtools.TestCase):
    def test_delta_exponential_of_minus_one_on_z(self):
        params = ExpParams(-1)
        self.assertRaises(SingularityError, exp_eval, params, 2)
        self.assertRaises(SingularityError, exp_eval, params, -2)
        self.assertEqual(1, exp_eval(params, 0))

    def test_nabla_exponential_of_two_on_half_z(self):
        params = ExpParams(2, ExpKind.NABLA, 0, UniformGrid(0, F(1, 2)))
        self.assertRaises(SingularityError, exp_eval, params, 1)

    def test_diamond_derivative_needs_regressive_p(self):
        params = ExpParams(-1, ExpKind.DELTA, 0, UniformGrid())
        self.assertRaises(SingularityError, exp_diamond_derivative, params, 0, "1/2")

    def test_exp_series_needs_constant_p(self):
        params = ExpParams(lambda t: t, scale=UniformGrid())
        self.assertRaises(DomainError, exp_series, params)

    def test_bad_coefficient(self):
        self.assertRaises(DomainError, ExpParams, object())


class VariableCoefficientTests(testtools.TestCase):
    def setUp(self):
        super().setUp()
        self.T = FiniteGrid((0, 1, 3))

    def test_delta_product(self):
        # (1 + 1*1) (1 + 2*1)
        self.assertEqual(6, exp_eval(ExpParams(lambda t: 1, scale=self.T), 3))
        self.assertEqual(
            F(1, 6), exp_eval(ExpParams(lambda t: 1, t0=3, scale=self.T), 0)
        )

    def test_nabla_product(self):
        # 1 / ((1 + 1*1) (1 + 2*1))
        params = ExpParams(lambda t: -1, ExpKind.NABLA, 0, self.T)
        self.assertEqual(F(1, 6), exp_eval(params, 3))

    def test_non_regressive_factor(self):
        params = ExpParams(lambda t: F(1, 2), ExpKind.NABLA, 0, self.T)
        self.assertRaises(SingularityError, exp_eval, params, 3)

    def test_diamond_derivative_at_end_point(self):
        params = ExpParams(1, scale=self.T)
        self.assertRaises(DomainError, exp_diamond_derivative, params, 0, "1/2")

    def test_diamond_derivative_at_interior_point(self):
        params = ExpParams(1, scale=self.T)
        f = exp_function(params)
        for alpha in ALPHAS:
            self.assertEqual(
                diamond_derivative(f, 1, alpha),
                exp_diamond_derivative(params, 1, alpha),
            )


class TrigTests(testscenarios.WithScenarios, testtools.TestCase):
    scenarios = [
        ("Z", {"step": F(1)}),
        ("half Z", {"step": F(1, 2)}),
    ]

    def setUp(self):
        super().setUp()
        self.T = UniformGrid(0, self.step)
        self.points = self.T.points_between(-3 * self.step, 3 * self.step)

    def family(self, kind, p="1/2", hatted=False):
        return TrigFamily(kind, p, hatted, self.T)

    def test_initial_values(self):
        for hatted in (False, True):
            self.assertEqual(0, trig_eval(self.family("sin", hatted=hatted), 0, 0))
            self.assertEqual(1, trig_eval(self.family("cos", hatted=hatted), 0, 0))
            self.assertEqual(0, trig_eval(self.family("sinh", hatted=hatted), 0, 0))
            self.assertEqual(1, trig_eval(self.family("cosh", hatted=hatted), 0, 0))

    def test_values_are_exact_rationals(self):
        for kind in TrigKind:
            value = trig_eval(self.family(kind), 3 * self.step, 0)
            self.assertIsInstance(value, Fraction)

    def test_delta_derivatives(self):
        p = F(1, 2)
        sin = trig_function(self.family("sin"), 0)
        cos = trig_function(self.family("cos"), 0)
        sinh = trig_function(self.family("sinh"), 0)
        cosh = trig_function(self.family("cosh"), 0)
        for t in self.points:
            self.assertEqual(p * cos(t), delta_derivative(sin, t))
            self.assertEqual(-p * sin(t), delta_derivative(cos, t))
            self.assertEqual(p * cosh(t), delta_derivative(sinh, t))
            self.assertEqual(p * sinh(t), delta_derivative(cosh, t))

    def test_hatted_nabla_derivatives(self):
        p = F(1, 2)
        sin = trig_function(self.family("sin", hatted=True), 0)
        cos = trig_function(self.family("cos", hatted=True), 0)
        for t in self.points:
            self.assertEqual(p * cos(t), nabla_derivative(sin, t))
            self.assertEqual(-p * sin(t), nabla_derivative(cos, t))

    def test_closed_form_matches_operator(self):
        for kind in TrigKind:
            for hatted in (False, True):
                family = self.family(kind, hatted=hatted)
                f = trig_function(family, self.step)
                for t in self.points[1:-1]:
                    for alpha in ALPHAS:
                        self.assertEqual(
                            diamond_derivative(f, t, alpha),
                            trig_diamond_derivative(family, t, self.step, alpha),
                            "{} t={} alpha={}".format(family.name, t, alpha),
                        )

    def test_partner(self):
        family = self.family("sinh", hatted=True)
        self.assertEqual(TrigKind.COSH, family.partner().kind)
        self.assertTrue(family.partner().hatted)
        self.assertEqual("hatsinh_1/2", family.name)


class SingularTrigTests(testtools.TestCase):
    def test_hyperbolic_of_one_on_z(self):
        self.assertRaises(SingularityError, trig_eval, TrigFamily("sinh", 1), 2, 0)
        self.assertRaises(
            SingularityError, trig_eval, TrigFamily("cosh", 1, hatted=True), -1, 0
        )

    def test_circular_of_one_on_z_is_regular(self):
        # e_i(1, 0) = 1 + i
        self.assertEqual(1, trig_eval(TrigFamily("sin", 1), 1, 0))
        self.assertEqual(1, trig_eval(TrigFamily("cos", 1), 1, 0))

    def test_needs_homogeneous_scale(self):
        self.assertRaises(DomainError, TrigFamily, "sin", 1, False, FiniteGrid((0, 1)))


class RealLineTests(testtools.TestCase):
    def setUp(self):
        super().setUp()
        self.R = RealLine()

    def test_exponential(self):
        params = ExpParams("1/2", scale=self.R)
        self.assertTrue(math.isclose(math.e, exp_eval(params, 2.0)))
        self.assertFalse(params.exact)

    def test_complex_exponential(self):
        params = ExpParams(1j, scale=self.R)
        value = exp_eval(params, math.pi)
        self.assertTrue(math.isclose(-1.0, value.real))
        self.assertLess(abs(value.imag), 1e-12)

    def test_attached_derivative(self):
        params = ExpParams("1/2", scale=self.R)
        estimate = differentiate(exp_function(params), 1.0, DerivKind.NABLA)
        self.assertFalse(estimate.fallback)
        self.assertTrue(math.isclose(0.5 * math.exp(0.5), estimate.value))

    def test_diamond_derivative(self):
        params = ExpParams("1/2", scale=self.R)
        value = exp_diamond_derivative(params, 1.0, "1/3")
        self.assertTrue(math.isclose(0.5 * math.exp(0.5), value))

    def test_trig(self):
        family = TrigFamily("sin", 2, scale=self.R)
        self.assertTrue(math.isclose(math.sin(2.0), trig_eval(family, 1.0, 0)))
        f = trig_function(family, 0)
        estimate = differentiate(f, 1.0, DerivKind.DELTA)
        self.assertTrue(math.isclose(2 * math.cos(2.0), estimate.value))
        value = trig_diamond_derivative(family, 1.0, 0, "1/2")
        self.assertTrue(math.isclose(2 * math.cos(2.0), value))


class ComplexExponentialTests(testtools.TestCase):
    def setUp(self):
        super().setUp()
        self.params = ExpParams(exact_complex(0, 1))

    def test_powers_of_one_plus_i(self):
        self.assertEqual(exact_complex(0, 2), exp_eval(self.params, 2))
        self.assertEqual(exact_complex(0, F(-1, 2)), exp_eval(self.params, -2))
        self.assertEqual(exact_complex(F(1, 2), F(-1, 2)), exp_eval(self.params, -1))
        self.assertEqual(F(-4), exp_eval(self.params, 4))
        self.assertIsInstance(exp_eval(self.params, 4), Fraction)

    def test_exact(self):
        self.assertTrue(self.params.exact)
        self.assertTrue(is_exact(exp_eval(self.params, 7)))

    def test_variable_coefficient(self):
        params = ExpParams(lambda t: exact_complex(0, 1), scale=FiniteGrid((0, 1, 2)))
        self.assertEqual(exact_complex(0, 2), exp_eval(params, 2))

    def test_long_products_stay_exact(self):
        # (1 + i)**8 = 16
        params = ExpParams(exact_complex(0, F(1, 2)), scale=UniformGrid(0, 2))
        self.assertEqual(16**5, exp_eval(params, 80))
