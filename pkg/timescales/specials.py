# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Exponential, trigonometric and hyperbolic functions on time scales.

The delta exponential ``e_p(t, t0)`` solves ``y^delta = p y`` and the nabla
exponential ``hat e_p(t, t0)`` solves ``y^nabla = p y``, both equal to 1 at
t0. On ``c*Z`` with constant p they are ``(1 + c p)**n`` and
``(1 - c p)**-n`` with ``n = (t - t0) / c``; elsewhere on discrete scales
they are finite products of graininess factors.
"""
import cmath
import enum
import math
import numbers
from dataclasses import dataclass, field
from typing import Any

import sympy

from timescales._calculus import GridFunction, delta_integral
from timescales._scale import TimeScale, UniformGrid
from timescales.errors import DomainError, SingularityError
from timescales.util import as_rational, exact_complex, from_sympy, is_exact


class ExpKind(enum.Enum):
    DELTA = "delta"
    NABLA = "nabla"


def _coefficient(p):
    if isinstance(p, (str, numbers.Rational)):
        return as_rational(p)
    if isinstance(p, (sympy.Basic, float, complex)) or callable(p):
        return p
    raise DomainError("{!r} is not a usable exponential coefficient".format(p))


@dataclass(frozen=True)
class ExpParams:
    """Coefficient p (constant or callable on grid points), kind and origin."""

    p: Any
    kind: ExpKind = ExpKind.DELTA
    t0: Any = 0
    scale: TimeScale = field(default_factory=UniformGrid)

    def __post_init__(self):
        object.__setattr__(self, "p", _coefficient(self.p))
        object.__setattr__(self, "kind", ExpKind(self.kind))
        object.__setattr__(self, "t0", self.scale.point(self.t0))

    @property
    def constant(self):
        return not callable(self.p)

    def coefficient(self, t):
        return self.p(t) if callable(self.p) else self.p

    @property
    def exact(self):
        return self.scale.exact and self.constant and is_exact(self.p)


def _collapse(value):
    if isinstance(value, sympy.Basic):
        return from_sympy(value)
    return value


def _nonzero(factor, what, t):
    if factor == 0:
        raise SingularityError(
            "exponential is not regressive at t={}: {} vanishes".format(t, what)
        )
    return factor


def _product_exp(params, t):
    T = params.scale
    t0 = params.t0
    points = T.points_between(t, t0)
    value = 1
    if params.kind is ExpKind.DELTA:
        # factors (1 + mu p) over [min, max)
        for left, right in zip(points, points[1:]):
            factor = 1 + (right - left) * params.coefficient(left)
            value = _collapse(value * _nonzero(factor, "1 + mu*p", left))
        return value if t >= t0 else 1 / value
    # factors (1 - nu p) over (min, max]
    for left, right in zip(points, points[1:]):
        factor = 1 - (right - left) * params.coefficient(right)
        value = _collapse(value * _nonzero(factor, "1 - nu*p", right))
    return 1 / value if t >= t0 else value


def exp_eval(params, t):
    """Evaluate ``e_p(t, t0)`` or ``hat e_p(t, t0)``."""
    T = params.scale
    t = T.point(t)
    t0 = params.t0
    if t == t0:
        return as_rational(1) if T.exact else 1.0
    if not T.exact:
        if params.constant:
            p = complex(params.p) if isinstance(params.p, sympy.Basic) else params.p
            exponent = p * (t - t0)
        else:
            exponent = delta_integral(GridFunction(T, params.p, exact=False), t0, t)
        if isinstance(exponent, complex):
            return cmath.exp(exponent)
        return math.exp(exponent)
    c = T.graininess
    if c is None or not params.constant:
        return _collapse(_product_exp(params, t))
    p = params.p
    n = (t - t0) / c
    if params.kind is ExpKind.DELTA:
        base = _nonzero(1 + c * p, "1 + c*p", t)
        return _collapse(base ** int(n))
    base = _nonzero(1 - c * p, "1 - c*p", t)
    return _collapse(base ** int(-n))


def exp_function(params):
    """``e_p(., t0)`` as a GridFunction; on the real line ``p e_p`` is attached."""
    derivative = differentiated = None
    if not params.scale.exact and params.constant:
        derivative = lambda t: params.p * exp_eval(params, t)  # noqa: E731
        differentiated = lambda: params.p * exp_function(params)  # noqa: E731
    name = "{}exp_{}(t,{})".format(
        "hat" if params.kind is ExpKind.NABLA else "", params.p, params.t0
    )
    return GridFunction(
        params.scale,
        lambda t: exp_eval(params, t),
        exact=params.exact,
        derivative=derivative,
        name=name,
        differentiated=differentiated,
    )


def _require_homogeneous_point(T, t):
    if T.sigma(T.rho(t)) != t or T.rho(T.sigma(t)) != t:
        raise DomainError(
            "t={} needs points on both sides with "
            "sigma(rho(t)) = rho(sigma(t)) = t".format(t),
            t,
        )
    if T.sigma(t) == t or T.rho(t) == t:
        raise DomainError("t={} is an end point of {}".format(t, T), t)


def exp_diamond_derivative(params, t, alpha):
    """Direct diamond-alpha derivative of an exponential.

    ``e_p``: ``[alpha p + (1-alpha) p_rho / (1 + nu p_rho)] e_p``;
    ``hat e_p``: ``[(1-alpha) p + alpha p_sigma / (1 - mu p_sigma)] hat e_p``.
    """
    T = params.scale
    t = T.point(t)
    alpha = as_rational(alpha)
    if not 0 <= alpha <= 1:
        raise DomainError("alpha must lie in [0, 1], got {}".format(alpha))
    if T.exact:
        _require_homogeneous_point(T, t)
    p = params.coefficient(t)
    if params.kind is ExpKind.DELTA:
        own, other_weight = alpha, 1 - alpha
        if other_weight:
            p_rho = params.coefficient(T.rho(t))
            denominator = 1 + T.nu(t) * p_rho
            if denominator == 0:
                raise SingularityError("1 + nu*p(rho(t)) vanishes at t={}".format(t))
            other = p_rho / denominator
        else:
            other = 0
    else:
        own, other_weight = 1 - alpha, alpha
        if other_weight:
            p_sigma = params.coefficient(T.sigma(t))
            denominator = 1 - T.mu(t) * p_sigma
            if denominator == 0:
                raise SingularityError("1 - mu*p(sigma(t)) vanishes at t={}".format(t))
            other = p_sigma / denominator
        else:
            other = 0
    factor = own * p + other_weight * other
    return _collapse(factor * exp_eval(params, t))


class TrigKind(enum.Enum):
    SIN = "sin"
    COS = "cos"
    SINH = "sinh"
    COSH = "cosh"

    @property
    def partner(self):
        return {
            TrigKind.SIN: TrigKind.COS,
            TrigKind.COS: TrigKind.SIN,
            TrigKind.SINH: TrigKind.COSH,
            TrigKind.COSH: TrigKind.SINH,
        }[self]

    @property
    def hyperbolic(self):
        return self in (TrigKind.SINH, TrigKind.COSH)


@dataclass(frozen=True)
class TrigFamily:
    kind: TrigKind
    p: Any
    hatted: bool = False
    scale: TimeScale = field(default_factory=UniformGrid)

    def __post_init__(self):
        object.__setattr__(self, "kind", TrigKind(self.kind))
        object.__setattr__(self, "p", as_rational(self.p))
        if self.scale.graininess is None:
            raise DomainError("trigonometric functions need a homogeneous scale")

    @property
    def name(self):
        return "{}{}_{}".format("hat" if self.hatted else "", self.kind.value, self.p)

    def partner(self):
        return TrigFamily(self.kind.partner, self.p, self.hatted, self.scale)


_REAL_LINE = {
    TrigKind.SIN: math.sin,
    TrigKind.COS: math.cos,
    TrigKind.SINH: math.sinh,
    TrigKind.COSH: math.cosh,
}


def trig_eval(family, t, t0):
    """sin/cos from ``e_{+-ip}``, sinh/cosh from ``e_{+-p}`` (hatted: ``hat e``)."""
    T = family.scale
    t, t0 = T.point(t), T.point(t0)
    p = family.p
    if not T.exact:
        return _REAL_LINE[family.kind](float(p) * (t - t0))
    kind = ExpKind.NABLA if family.hatted else ExpKind.DELTA
    q = p if family.kind.hyperbolic else exact_complex(0, p)
    plus = exp_eval(ExpParams(q, kind, t0, T), t)
    minus = exp_eval(ExpParams(-q, kind, t0, T), t)
    if family.kind is TrigKind.SIN:
        value = (plus - minus) / exact_complex(0, 2)
    elif family.kind is TrigKind.COS:
        value = (plus + minus) / 2
    elif family.kind is TrigKind.SINH:
        value = (plus - minus) / 2
    else:
        value = (plus + minus) / 2
    return _collapse(value)


def trig_function(family, t0):
    T = family.scale
    t0 = T.point(t0)
    derivative = differentiated = None
    if not T.exact:
        p = float(family.p)
        sign = -1 if family.kind is TrigKind.COS else 1
        partner = _REAL_LINE[family.kind.partner]
        derivative = lambda t: sign * p * partner(p * (t - t0))  # noqa: E731
        differentiated = lambda: sign * family.p * trig_function(  # noqa: E731
            family.partner(), t0
        )
    return GridFunction(
        T,
        lambda t: trig_eval(family, t, t0),
        exact=T.exact,
        derivative=derivative,
        name="{}(t,{})".format(family.name, t0),
        differentiated=differentiated,
    )


def trig_diamond_derivative(family, t, t0, alpha):
    """Closed-form diamond-alpha derivative of a trigonometric function.

    Unhatted families use nu, hatted families use mu. Hyperbolic families
    need ``1 - g**2 p**2 != 0`` for the graininess g in use.
    """
    T = family.scale
    t, t0 = T.point(t), T.point(t0)
    alpha = as_rational(alpha)
    if T.exact:
        _require_homogeneous_point(T, t)
    p = family.p if T.exact else float(family.p)
    g = T.mu(t) if family.hatted else T.nu(t)
    q = g * g * p * p
    own = trig_eval(family, t, t0)
    partner = trig_eval(family.partner(), t, t0)
    if family.kind.hyperbolic:
        denominator = 1 - q
    else:
        denominator = 1 + q
    if denominator == 0:
        raise SingularityError(
            "{} derivative is singular at t={}: 1 - g^2 p^2 vanishes".format(
                family.name, t
            )
        )

    if not family.hatted:
        weight, cross = alpha, (1 - alpha) * g * p
        if family.kind is TrigKind.SIN:
            return p / denominator * ((1 + weight * q) * partner + cross * own)
        if family.kind is TrigKind.COS:
            return -p / denominator * ((1 + weight * q) * partner - cross * own)
        return p / denominator * ((1 - weight * q) * partner - cross * own)

    weight, cross = 1 - alpha, alpha * g * p
    if family.kind is TrigKind.SIN:
        return p / denominator * ((1 + weight * q) * partner - cross * own)
    if family.kind is TrigKind.COS:
        return -p / denominator * ((1 + weight * q) * partner + cross * own)
    return p / denominator * ((1 - weight * q) * partner + cross * own)
