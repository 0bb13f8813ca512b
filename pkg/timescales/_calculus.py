# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Delta, nabla and diamond-alpha derivatives and integrals.

On discrete scales every operator works on exact values: derivatives are
difference quotients at scattered points and integrals are finite sums
weighted by the graininess. On the real line derivatives come from an
attached closed form, or from central differences when none is attached,
and integrals come from adaptive quadrature.
"""
import cmath
import functools
import logging
import math
import numbers
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Callable, Optional

from scipy import integrate

from timescales._scale import TimeScale, base_scale, trim
from timescales._settings import get_settings
from timescales.errors import DomainError
from timescales.util import as_rational, is_exact

ZERO = Fraction(0)


@dataclass(frozen=True)
class DerivKind:
    """Derivative direction as a diamond weight: 1 is delta, 0 is nabla."""

    alpha: Fraction

    def __post_init__(self):
        alpha = as_rational(self.alpha)
        if not 0 <= alpha <= 1:
            raise DomainError("alpha must lie in [0, 1], got {}".format(alpha))
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def diamond(cls, alpha):
        return cls(alpha)

    @classmethod
    def from_name(cls, name, alpha=None):
        name = name.lower()
        if name == "delta":
            return cls.DELTA
        if name == "nabla":
            return cls.NABLA
        if name == "diamond":
            if alpha is None:
                raise DomainError("the diamond derivative needs an alpha")
            return cls(alpha)
        raise DomainError("unknown derivative kind {!r}".format(name))

    @property
    def is_delta(self):
        return self.alpha == 1

    @property
    def is_nabla(self):
        return self.alpha == 0

    @property
    def name(self):
        if self.is_delta:
            return "delta"
        if self.is_nabla:
            return "nabla"
        return "diamond"

    def __str__(self):
        if self.name == "diamond":
            return "diamond({})".format(self.alpha)
        return self.name


DerivKind.DELTA = DerivKind(1)
DerivKind.NABLA = DerivKind(0)


@dataclass(frozen=True)
class Estimate:
    """A derivative value and how it was obtained.

    ``exact`` says the value is a rational number, real or complex with rational parts;
    ``closed_form`` that it came from a derivative attached to the function
    rather than from quotients of its values.
    """

    value: Any
    exact: bool
    fallback: bool = False
    closed_form: bool = False


@dataclass(frozen=True)
class GridFunction:
    """A function on a time scale.

    ``derivative`` is an optional closed-form derivative, only consulted on
    the real line, and ``differentiated`` an optional factory returning that
    derivative as a GridFunction with its own chain attached. ``exact``
    promises rational values for rational points; ``fallback`` marks values
    computed from a difference stencil.
    """

    domain: TimeScale
    evaluator: Callable
    exact: bool = True
    derivative: Optional[Callable] = None
    name: str = "f"
    differentiated: Optional[Callable[[], "GridFunction"]] = None
    fallback: bool = False

    def __call__(self, t):
        return self.evaluator(self.domain.point(t))

    def restrict(self, domain):
        return replace(self, domain=domain)

    def derivative_function(self):
        """The attached derivative as a GridFunction, or None."""
        if self.differentiated is not None:
            return self.differentiated()
        if self.derivative is None:
            return None
        return GridFunction(
            self.domain, self.derivative, exact=False, name="{}'".format(self.name)
        )

    @classmethod
    def from_samples(cls, domain, samples, name="table"):
        """Build a function from a mapping of grid points to values."""
        table = {as_rational(k): v for k, v in samples.items()}

        def lookup(t):
            try:
                return table[t]
            except KeyError:
                raise DomainError("no sample for t={}".format(t), t)

        exact = all(isinstance(v, numbers.Rational) for v in table.values())
        return cls(domain, lookup, exact=exact, name=name)

    @classmethod
    def constant(cls, domain, value):
        return cls(
            domain,
            lambda t: value,
            exact=True,
            derivative=lambda t: 0,
            name=str(value),
            differentiated=lambda: cls.constant(domain, 0),
        )

    def _combine(self, other, op, symbol):
        if not isinstance(other, GridFunction):
            return NotImplemented
        derivative = differentiated = None
        if self.derivative is not None and other.derivative is not None:
            derivative = lambda t: op(  # noqa: E731
                self.derivative(t), other.derivative(t)
            )
        if self.differentiated is not None and other.differentiated is not None:
            differentiated = lambda: self.differentiated()._combine(  # noqa: E731
                other.differentiated(), op, symbol
            )
        return GridFunction(
            self.domain,
            lambda t: op(self(t), other(t)),
            exact=self.exact and other.exact,
            derivative=derivative,
            name="({} {} {})".format(self.name, symbol, other.name),
            differentiated=differentiated,
        )

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y, "+")

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y, "-")

    def __mul__(self, scalar):
        if isinstance(scalar, GridFunction):
            return NotImplemented
        derivative = differentiated = None
        if self.derivative is not None:
            derivative = lambda t: scalar * self.derivative(t)  # noqa: E731
        if self.differentiated is not None:
            differentiated = lambda: scalar * self.differentiated()  # noqa: E731
        return GridFunction(
            self.domain,
            lambda t: scalar * self(t),
            exact=self.exact and isinstance(scalar, numbers.Rational),
            derivative=derivative,
            name="{}*{}".format(scalar, self.name),
            differentiated=differentiated,
        )

    __rmul__ = __mul__


def _finite(value):
    return cmath.isfinite(complex(value))


def _central_difference(f, t, order):
    """``order``-th derivative from one central stencil of ``order + 1`` samples.

    The spacing widens with the order, starting from the configured step
    for the first derivative.
    """
    h = get_settings().fallback_step ** (3 / (order + 2))
    total = 0
    for j in range(order + 1):
        total = total + (-1) ** j * math.comb(order, j) * f(t + (order - 2 * j) * h)
    return total / (2 * h) ** order


def _real_estimate(f, t):
    if f.derivative is not None:
        return Estimate(f.derivative(t), exact=False, closed_form=True)
    value = _central_difference(f, t, 1)
    logging.warning(
        "no closed-form derivative for %s, using a central difference at t=%r",
        f.name,
        t,
    )
    if not _finite(value):
        logging.warning("central difference of %s at t=%r is not finite", f.name, t)
    return Estimate(value, exact=False, fallback=True)


def _delta_quotient(f, t):
    s = f.domain.sigma(t)
    if s == t:
        raise DomainError(
            "t={} is the maximum of {}; the delta derivative needs a point "
            "above".format(t, f.domain),
            t,
        )
    return (f(s) - f(t)) / (s - t)


def _nabla_quotient(f, t):
    r = f.domain.rho(t)
    if r == t:
        raise DomainError(
            "t={} is the minimum of {}; the nabla derivative needs a point "
            "below".format(t, f.domain),
            t,
        )
    return (f(t) - f(r)) / (t - r)


def differentiate(f, t, kind):
    """Derivative of ``f`` at ``t`` in direction ``kind``, as an Estimate."""
    t = f.domain.point(t)
    if not f.domain.exact:
        # sigma and rho are the identity, every direction is the ordinary derivative
        return _real_estimate(f, t)
    if kind.is_delta:
        value = _delta_quotient(f, t)
    elif kind.is_nabla:
        value = _nabla_quotient(f, t)
    else:
        alpha = kind.alpha
        value = alpha * _delta_quotient(f, t) + (1 - alpha) * _nabla_quotient(f, t)
    return Estimate(value, exact=f.exact and is_exact(value))


def delta_derivative(f, t):
    return differentiate(f, t, DerivKind.DELTA).value


def nabla_derivative(f, t):
    return differentiate(f, t, DerivKind.NABLA).value


def diamond_derivative(f, t, alpha):
    """``alpha * f^delta(t) + (1 - alpha) * f^nabla(t)``.

    Both one-sided derivatives must exist unless alpha is 0 or 1.
    """
    return differentiate(f, t, DerivKind(alpha)).value


def cross_relation_check(f, t):
    """Check ``f^nabla(t) == f^delta(rho(t))`` and ``f^delta(t) == f^nabla(sigma(t))``.

    A side that cannot be evaluated at t counts as a failed check.
    """
    T = f.domain
    t = T.point(t)

    def holds(lhs, rhs):
        try:
            return lhs() == rhs()
        except DomainError:
            return False

    return (
        holds(lambda: nabla_derivative(f, t), lambda: delta_derivative(f, T.rho(t))),
        holds(lambda: delta_derivative(f, t), lambda: nabla_derivative(f, T.sigma(t))),
    )


def _quad(f, a, b):
    tol = get_settings().quad_abs_tol
    first = f(a)
    real, _ = integrate.quad(lambda x: complex(f(x)).real, a, b, epsabs=tol)
    if isinstance(first, complex):
        imag, _ = integrate.quad(lambda x: complex(f(x)).imag, a, b, epsabs=tol)
        return complex(real, imag)
    return real


def _weighted_sum(f, a, b, forward):
    T = base_scale(f.domain)
    a, b = T.point(a), T.point(b)
    if a == b:
        return ZERO if T.exact else 0.0
    if not T.exact:
        return _quad(f, a, b)
    sign = 1 if a < b else -1
    points = T.points_between(a, b)
    total = ZERO
    for left, right in zip(points, points[1:]):
        total = total + (right - left) * f(left if forward else right)
    return sign * total


def delta_integral(f, a, b):
    """Sum of ``mu(t) * f(t)`` over ``[a, b)``; oriented when ``a > b``."""
    return _weighted_sum(f, a, b, forward=True)


def nabla_integral(f, a, b):
    """Sum of ``nu(t) * f(t)`` over ``(a, b]``; oriented when ``a > b``."""
    return _weighted_sum(f, a, b, forward=False)


def diamond_integral(f, a, b, alpha):
    kind = DerivKind(alpha)
    if kind.is_delta:
        return delta_integral(f, a, b)
    if kind.is_nabla:
        return nabla_integral(f, a, b)
    alpha = kind.alpha
    return alpha * delta_integral(f, a, b) + (1 - alpha) * nabla_integral(f, a, b)


def integrate_kind(f, a, b, kind):
    return diamond_integral(f, a, b, kind.alpha)


def diamond_antiderivative(f, t0, alpha):
    """``F(t) = integral of f from t0 to t`` for the diamond-alpha weight.

    The diamond derivative of F is in general not f; see the non-inversion
    tests.
    """
    kind = DerivKind(alpha)
    domain = base_scale(f.domain)
    t0 = domain.point(t0)
    return GridFunction(
        domain,
        functools.lru_cache(maxsize=None)(lambda t: integrate_kind(f, t0, t, kind)),
        exact=f.exact,
        name="int({})".format(f.name),
    )


def _delta_stencil(points, values):
    return [
        (values[j + 1] - values[j]) / (points[j + 1] - points[j])
        for j in range(len(values) - 1)
    ]


def _iterate_discrete(f, kind, n):
    alpha = kind.alpha

    def evaluate(t):
        if kind.is_delta:
            points = f.domain.walk(t, n, forward=True)
        elif kind.is_nabla:
            points = list(reversed(f.domain.walk(t, n, forward=False)))
        else:
            below = list(reversed(f.domain.walk(t, n, forward=False)))
            points = below + f.domain.walk(t, n, forward=True)[1:]
        values = [f(p) for p in points]
        for _ in range(n):
            quotients = _delta_stencil(points, values)
            if kind.is_delta:
                values, points = quotients, points[:-1]
            elif kind.is_nabla:
                values, points = quotients, points[1:]
            else:
                # quotients[j] is the delta quotient at points[j] and the
                # nabla quotient at points[j + 1]
                values = [
                    alpha * quotients[j + 1] + (1 - alpha) * quotients[j]
                    for j in range(len(quotients) - 1)
                ]
                points = points[1:-1]
        return values[0]

    upper = 0 if kind.is_nabla else n
    lower = 0 if kind.is_delta else n
    return GridFunction(
        trim(f.domain, upper=upper, lower=lower),
        functools.lru_cache(maxsize=None)(evaluate),
        exact=f.exact,
        name="{}^({}^{})".format(f.name, kind, n),
    )


def _fallback_derivative(f, order):
    logging.warning(
        "differentiating %s by central differences of order %d", f.name, order
    )
    return GridFunction(
        f.domain,
        lambda t: _central_difference(f, t, order),
        exact=False,
        name="{}^({})".format(f.name, order),
        fallback=True,
    )


def iterated_derivative(f, kind, n):
    """The n-th derivative of f in direction ``kind`` on the trimmed scale.

    On the real line attached derivatives are followed as far as they go;
    the remaining orders come from a single central stencil on the last
    closed form and the result is marked as a fallback.
    """
    if n < 0:
        raise DomainError("derivative order must be non-negative, got {}".format(n))
    if n == 0:
        return f
    if f.domain.exact:
        return _iterate_discrete(f, kind, n)
    depth = 0
    while depth < n:
        derivative = f.derivative_function()
        if derivative is None:
            break
        f, depth = derivative, depth + 1
    if depth == n:
        return f
    return _fallback_derivative(f, n - depth)


def derivative_sequence(f, kind, t0, n):
    """``[f(t0), f^kind(t0), ..., f^(kind^n)(t0)]`` from one stencil sweep.

    ``kind`` is delta or nabla.
    """
    if kind.is_delta == kind.is_nabla:
        raise DomainError("derivative sequences run in the delta or nabla direction")
    if not f.domain.exact:
        return [iterated_derivative(f, kind, k)(t0) for k in range(n + 1)]
    if kind.is_delta:
        points = f.domain.walk(t0, n, forward=True)
    else:
        points = list(reversed(f.domain.walk(t0, n, forward=False)))
    values = [f(p) for p in points]
    sequence = [values[0] if kind.is_delta else values[-1]]
    for _ in range(n):
        values = _delta_stencil(points, values)
        if kind.is_delta:
            points = points[:-1]
            sequence.append(values[0])
        else:
            points = points[1:]
            sequence.append(values[-1])
    return sequence
