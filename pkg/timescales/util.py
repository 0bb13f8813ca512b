# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
import numbers
import re
from fractions import Fraction

import sympy

_COMPLEX_RE = re.compile(
    r"^(?P<real>[-+]?\d+(?:/\d+)?)(?P<imag>[-+]\d+(?:/\d+)?)i$"
)


def as_rational(value):
    """Convert a JSON/CLI value ("p/q", decimal string, int, float) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("{!r} is not a rational".format(value))
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, (int, float, numbers.Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError("{!r} is not a rational: {}".format(value, e)) from e
    raise ValueError("{!r} is not a rational".format(value))


def to_sympy(value):
    """A Fraction (or int) as a sympy Rational; sympy values pass through."""
    if isinstance(value, sympy.Basic):
        return value
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def exact_complex(real, imag=0):
    """``real + imag*i`` with rational parts, as a sympy number."""
    return to_sympy(real) + to_sympy(imag) * sympy.I


def _real_imag(value):
    real, imag = sympy.expand_complex(value).as_real_imag()
    if real.is_Rational and imag.is_Rational:
        return as_rational(real), as_rational(imag)
    return None


def from_sympy(value):
    """Collapse a sympy number to ``a + b*i`` form.

    Real results come back as Fraction so the rest of the package keeps
    working on Fractions; anything with a non-rational part becomes a
    builtin complex.
    """
    parts = _real_imag(value)
    if parts is None:
        return complex(value)
    real, imag = parts
    if imag == 0:
        return real
    return exact_complex(real, imag)


def is_exact(value):
    if isinstance(value, bool):
        return False
    if isinstance(value, numbers.Rational):
        return True
    if isinstance(value, sympy.Basic):
        return value.is_number and _real_imag(value) is not None
    if isinstance(value, (list, tuple)):
        return all(is_exact(v) for v in value)
    return False


def format_value(value):
    """Render a value; exact values become "p/q" strings with no precision loss."""
    if isinstance(value, sympy.Basic) and is_exact(value):
        real, imag = _real_imag(value)
        if imag == 0:
            return str(real)
        sign = "-" if imag < 0 else "+"
        return "{}{}{}i".format(real, sign, abs(imag))
    if isinstance(value, numbers.Rational) and not isinstance(value, bool):
        return str(as_rational(value))
    if isinstance(value, (float, complex)):
        return repr(value)
    return str(value)


def parse_value(text):
    """Inverse of :func:`format_value` for exact renderings."""
    text = text.strip()
    match = _COMPLEX_RE.match(text)
    if match:
        return exact_complex(Fraction(match["real"]), Fraction(match["imag"]))
    if text.startswith("("):
        return complex(text)
    return Fraction(text)
