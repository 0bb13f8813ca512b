# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Generalized monomials ``h_k`` (forward) and ``hat h_k`` (backward).

``h_0 = 1`` and ``h_{k+1}(t, t0)`` is the delta integral of ``h_k`` from t0
to t; the backward family uses nabla integrals. On ``c*Z`` both have closed
forms through falling and rising factorials; on the real line both reduce
to ``(t - t0)**k / k!``; on finite grids they are built by integration
sweeps and memoized.
"""
import bisect
import enum
import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import sympy

from timescales._calculus import GridFunction
from timescales._scale import base_scale
from timescales._settings import get_settings
from timescales.errors import DomainError, SingularityError
from timescales.util import as_rational, to_sympy

ONE = Fraction(1)
ZERO = Fraction(0)


class MonomialKind(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError("unknown monomial kind {!r}".format(value))


class Direction(enum.Enum):
    FALLING = "falling"
    RISING = "rising"


@dataclass(frozen=True)
class FactorialValue:
    base: Fraction
    order: int
    direction: Direction
    value: Fraction


def _check_order(k, capped=True):
    if k < 0:
        raise DomainError("order must be non-negative, got {}".format(k))
    cap = get_settings().max_order
    if capped and k > cap:
        raise DomainError("order {} exceeds the configured maximum {}".format(k, cap))


def _check_factorial_order(k):
    if k < 0:
        raise DomainError("factorial order must be non-negative, got {}".format(k))


def falling_factorial(t, k):
    """``t (t-1) ... (t-k+1)``, 1 when k is 0."""
    _check_factorial_order(k)
    return as_rational(sympy.ff(to_sympy(as_rational(t)), k))


def rising_factorial(t, k):
    """``t (t+1) ... (t+k-1)``, 1 when k is 0."""
    _check_factorial_order(k)
    return as_rational(sympy.rf(to_sympy(as_rational(t)), k))


def factorial_value(t, k, direction):
    direction = Direction(direction)
    if direction is Direction.FALLING:
        value = falling_factorial(t, k)
    else:
        value = rising_factorial(t, k)
    return FactorialValue(as_rational(t), k, direction, value)


def _sign(kind):
    return -1 if kind is MonomialKind.FORWARD else 1


def _closed_form(kind, k, t, t0, c):
    diff = t - t0
    if not isinstance(diff, Fraction):
        # (t - t0)**k / k! on the real line, kept in log space for large k
        if k == 0:
            return 1.0
        if diff == 0:
            return 0.0
        magnitude = math.exp(k * math.log(abs(diff)) - math.lgamma(k + 1))
        return -magnitude if diff < 0 and k % 2 else magnitude
    # c**k * falling(n, k) / k! forward, rising(n, k) backward, n = (t - t0) / c
    n = diff / c
    if kind is MonomialKind.FORWARD:
        product = falling_factorial(n, k)
    else:
        product = rising_factorial(n, k)
    return c**k * product / math.factorial(k)


def _table_points(T, t, t0, window):
    if window is not None:
        return tuple(T.point(p) for p in window)
    points = getattr(T, "points", None)
    if points is not None:
        return tuple(points)
    return tuple(T.points_between(t, t0))


def _position(points, t):
    i = bisect.bisect_left(points, t)
    if i < len(points) and points[i] == t:
        return i
    return None


class _MonomialTables:
    """Append-only memo of monomial rows over a whole grid, per (grid, kind, t0).

    Each row holds one order of the monomial at every grid point, so all
    evaluation points share the table of their origin.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._tables = {}

    def row(self, points, kind, t0, k):
        key = (points, kind, t0)
        with self._lock:
            rows = self._tables.setdefault(key, [(ONE,) * len(points)])
            i0 = _position(points, t0)
            if len(rows) <= k:
                logging.debug(
                    "extending %s monomial table on %d points from order %d to %d",
                    kind.value,
                    len(points),
                    len(rows) - 1,
                    k,
                )
            while len(rows) <= k:
                rows.append(_integrate_row(points, kind, i0, rows[-1]))
            return rows[k]

    def __len__(self):
        with self._lock:
            return len(self._tables)

    def clear(self):
        with self._lock:
            self._tables.clear()


def _integrate_row(points, kind, i0, previous):
    n = len(points)
    row = [ZERO] * n
    forward = kind is MonomialKind.FORWARD
    for i in range(i0 + 1, n):
        step = points[i] - points[i - 1]
        row[i] = row[i - 1] + step * previous[i - 1 if forward else i]
    for i in range(i0 - 1, -1, -1):
        step = points[i + 1] - points[i]
        row[i] = row[i + 1] - step * previous[i if forward else i + 1]
    return tuple(row)


_tables = _MonomialTables()


def clear_tables():
    _tables.clear()


def monomial_by_recursion(kind, k, t, t0, T, window=None):
    """Evaluate a monomial on a discrete scale by repeated integration.

    ``window`` is an ascending sequence of scale points containing t and t0;
    by default the whole grid of a finite scale is used, so every t with the
    same origin reads from one table.
    """
    kind = MonomialKind.coerce(kind)
    _check_order(k)
    T = base_scale(T)
    if not T.exact:
        raise DomainError("recursive monomials need a discrete scale")
    t, t0 = T.point(t), T.point(t0)
    points = _table_points(T, t, t0, window)
    i = _position(points, t)
    if i is None or _position(points, t0) is None:
        raise DomainError("window must contain both t={} and t0={}".format(t, t0))
    return _tables.row(points, kind, t0, k)[i]


def monomial(kind, k, t, t0, T):
    """``h_k(t, t0)`` for FORWARD, ``hat h_k(t, t0)`` for BACKWARD."""
    kind = MonomialKind.coerce(kind)
    _check_order(k)
    T = base_scale(T)
    t, t0 = T.point(t), T.point(t0)
    c = T.graininess
    if c is None:
        return monomial_by_recursion(kind, k, t, t0, T)
    return _closed_form(kind, k, t, t0, c)


def monomial_function(kind, k, t0, T):
    kind = MonomialKind.coerce(kind)
    T = base_scale(T)
    t0 = T.point(t0)
    name = "{}{}(t,{})".format("h" if kind is MonomialKind.FORWARD else "hath", k, t0)
    derivative = differentiated = None
    if not T.exact:
        # (t - t0)**k / k! for both kinds
        if k == 0:
            derivative = lambda t: 0.0  # noqa: E731
            differentiated = lambda: GridFunction.constant(T, 0.0)  # noqa: E731
        else:
            derivative = lambda t: monomial(kind, k - 1, t, t0, T)  # noqa: E731
            differentiated = lambda: monomial_function(  # noqa: E731
                kind, k - 1, t0, T
            )
    return GridFunction(
        T,
        lambda t: monomial(kind, k, t, t0, T),
        exact=T.exact,
        derivative=derivative,
        name=name,
        differentiated=differentiated,
    )


def iter_monomials(kind, t, t0, T):
    """Yield ``h_0(t, t0), h_1(t, t0), ...`` without an order cap."""
    kind = MonomialKind.coerce(kind)
    T = base_scale(T)
    t, t0 = T.point(t), T.point(t0)
    c = T.graininess
    if c is None:
        points = _table_points(T, t, t0, None)
        i = _position(points, t)
        k = 0
        while True:
            yield _tables.row(points, kind, t0, k)[i]
            k += 1
    value = ONE if T.exact else 1.0
    k = 0
    while True:
        yield value
        value = value * (t - t0 + _sign(kind) * c * k) / (k + 1)
        k += 1


def finite_term_count(kind, t, t0, T):
    """Number of leading monomials that can be nonzero, or None if unbounded.

    Forward monomials vanish for ``t >= t0`` once k exceeds the number of
    grid steps between t0 and t; backward ones likewise for ``t <= t0``.
    """
    kind = MonomialKind.coerce(kind)
    T = base_scale(T)
    t, t0 = T.point(t), T.point(t0)
    if t == t0:
        return 1
    if not T.exact:
        return None
    if (kind is MonomialKind.FORWARD) != (t > t0):
        return None
    return len(T.points_between(t, t0))


def monomial_ratio(kind, k, t, t0, T):
    """Exact ``h_{k+1}(t, t0) / h_k(t, t0)``.

    Raises SingularityError where ``h_k`` vanishes.
    """
    kind = MonomialKind.coerce(kind)
    _check_order(k, capped=False)
    T = base_scale(T)
    t, t0 = T.point(t), T.point(t0)
    count = finite_term_count(kind, t, t0, T)
    if count is not None and k >= count:
        raise SingularityError(
            "{} monomial of order {} vanishes at t={}, t0={}".format(
                kind.value, k, t, t0
            )
        )
    c = T.graininess
    if c is None:
        return monomial_by_recursion(kind, k + 1, t, t0, T) / monomial_by_recursion(
            kind, k, t, t0, T
        )
    return (t - t0 + _sign(kind) * c * k) / (k + 1)


def duality(k, t, t0, T):
    """Both sides of ``hat h_k(t, t0) == (-1)**k * h_k(t0, t)``."""
    return (
        monomial(MonomialKind.BACKWARD, k, t, t0, T),
        (-1) ** k * monomial(MonomialKind.FORWARD, k, t0, t, T),
    )


def monomial_derivative(kind, k, t, t0, T, dkind):
    """Derivative of a monomial in ``t`` for a delta, nabla or diamond kind.

    Forward: ``h_{k-1} + (1-alpha) * sum_{j>=1} (-nu)**j h_{k-1-j}``.
    Backward: ``hat h_{k-1} + alpha * sum_{j>=1} mu**j hat h_{k-1-j}``.
    """
    kind = MonomialKind.coerce(kind)
    _check_order(k)
    T = base_scale(T)
    t, t0 = T.point(t), T.point(t0)
    alpha = dkind.alpha
    if k == 0:
        return ZERO if T.exact else 0.0
    if T.exact:
        if alpha != 0 and T.sigma(t) == t:
            raise DomainError("t={} has no point above it on {}".format(t, T), t)
        if alpha != 1 and T.rho(t) == t:
            raise DomainError("t={} has no point below it on {}".format(t, T), t)

    values = [monomial(kind, j, t, t0, T) for j in range(k)]
    value = values[k - 1]
    if kind is MonomialKind.FORWARD:
        weight, step = 1 - alpha, -T.nu(t)
    else:
        weight, step = alpha, T.mu(t)
    if weight == 0 or step == 0:
        return value
    tail = ZERO
    power = ONE
    for j in range(1, k):
        power = power * step
        tail = tail + power * values[k - 1 - j]
    return value + weight * tail
