# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
from fractions import Fraction

import sympy
import testtools

from timescales import util

F = Fraction


class AsRationalTests(testtools.TestCase):
    def test_conversions(self):
        self.assertEqual(F(1, 2), util.as_rational("1/2"))
        self.assertEqual(F(1, 4), util.as_rational(" 0.25 "))
        self.assertEqual(F(3), util.as_rational(3))
        self.assertEqual(F(1, 2), util.as_rational(0.5))
        value = F(2, 3)
        self.assertIs(value, util.as_rational(value))
        self.assertEqual(F(1, 3), util.as_rational(sympy.Rational(1, 3)))
        self.assertIsInstance(util.as_rational(sympy.Integer(4)), Fraction)

    def test_rejects(self):
        for value in (True, "x", "1/0", None, [1]):
            self.assertRaises(ValueError, util.as_rational, value)


class IsExactTests(testtools.TestCase):
    def test_exact(self):
        self.assertTrue(util.is_exact(F(1, 3)))
        self.assertTrue(util.is_exact(2))
        self.assertTrue(util.is_exact(util.exact_complex(1, 1)))
        self.assertTrue(util.is_exact([F(1), 2]))

    def test_inexact(self):
        self.assertFalse(util.is_exact(True))
        self.assertFalse(util.is_exact(0.5))
        self.assertFalse(util.is_exact((1, 0.5)))
        self.assertFalse(util.is_exact(None))


class FormatValueTests(testtools.TestCase):
    def test_exact_values(self):
        self.assertEqual("3/4", util.format_value(F(3, 4)))
        self.assertEqual("-2", util.format_value(-2))
        self.assertEqual("1+2i", util.format_value(util.exact_complex(1, 2)))
        self.assertEqual("3", util.format_value(util.exact_complex(3)))

    def test_inexact_values(self):
        self.assertEqual("0.1", util.format_value(0.1))
        self.assertEqual("(1+2j)", util.format_value(complex(1, 2)))

    def test_other_values(self):
        self.assertEqual("True", util.format_value(True))
        self.assertEqual("Z", util.format_value("Z"))


class ParseValueTests(testtools.TestCase):
    def test_parse(self):
        self.assertEqual(F(3, 4), util.parse_value("3/4"))
        self.assertEqual(util.exact_complex(1, 2), util.parse_value("1+2i"))
        self.assertEqual(complex(1, 2), util.parse_value("(1+2j)"))

    def test_exact_renderings_survive(self):
        for value in (
            F(-7, 3),
            F(0),
            util.exact_complex(F(1, 2), F(-3, 4)),
            util.exact_complex(-1, 1),
        ):
            self.assertEqual(value, util.parse_value(util.format_value(value)))


class FromSympyTests(testtools.TestCase):
    def test_real_results_are_fractions(self):
        value = util.from_sympy((1 + sympy.I) * (1 - sympy.I) / 4)
        self.assertEqual(F(1, 2), value)
        self.assertIsInstance(value, Fraction)

    def test_complex_results_are_expanded(self):
        self.assertEqual(util.exact_complex(0, 2), util.from_sympy((1 + sympy.I) ** 2))
        self.assertEqual(
            util.exact_complex(F(1, 2), F(-1, 2)), util.from_sympy(1 / (1 + sympy.I))
        )
        self.assertEqual(
            util.exact_complex(0, F(-1, 2)), util.from_sympy((1 + sympy.I) ** -2)
        )

    def test_inexact_parts(self):
        value = util.from_sympy(sympy.Float(0.5) + sympy.I)
        self.assertEqual(complex(0.5, 1), value)
        self.assertFalse(util.is_exact(sympy.Float(0.5)))

    def test_to_sympy(self):
        self.assertEqual(sympy.Rational(-3, 4), util.to_sympy(F(-3, 4)))
        self.assertIs(sympy.I, util.to_sympy(sympy.I))
