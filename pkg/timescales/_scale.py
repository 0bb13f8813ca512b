# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Time scales, their jump operators, graininess and trimming.

Three kinds of time scale are modelled: the real line, a uniform grid
``offset + c*Z`` and a finite strictly increasing grid. Points on the
discrete scales are exact :class:`fractions.Fraction` values; points on the
real line are floats.
"""
import bisect
import enum
import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import yaml

from timescales._validation import SCALE_SCHEMA, check
from timescales.errors import DomainError, EmptyDomainError
from timescales.util import as_rational


class Density(enum.Enum):
    DENSE = "dense"
    SCATTERED = "scattered"


@dataclass(frozen=True)
class PointClass:
    left: Density
    right: Density


class TimeScale:
    """A nonempty closed subset of the real line."""

    exact = True

    @property
    def inf(self):
        """Smallest point, or None when unbounded below."""
        return None

    @property
    def sup(self):
        """Largest point, or None when unbounded above."""
        return None

    @property
    def graininess(self):
        """Constant graininess of a homogeneous scale, else None."""
        return None

    def point(self, t):
        """Coerce t to this scale's point type, raising DomainError off-scale."""
        raise NotImplementedError

    def __contains__(self, t):
        try:
            self.point(t)
        except (DomainError, TypeError):
            return False
        return True

    def sigma(self, t):
        raise NotImplementedError

    def rho(self, t):
        raise NotImplementedError

    def mu(self, t):
        t = self.point(t)
        return self.sigma(t) - t

    def nu(self, t):
        t = self.point(t)
        return t - self.rho(t)

    def classify(self, t):
        t = self.point(t)
        left = Density.SCATTERED if self.rho(t) < t else Density.DENSE
        right = Density.SCATTERED if self.sigma(t) > t else Density.DENSE
        return PointClass(left, right)

    def points_between(self, a, b):
        """All points in [min(a, b), max(a, b)], ascending."""
        raise DomainError("{} has no enumerable points".format(self))

    def walk(self, t, steps, forward=True):
        """Return ``[t, sigma(t), ..., sigma^steps(t)]`` (or rho when backward).

        Raises DomainError if the walk runs into the end of the scale.
        """
        raise DomainError("{} has no enumerable points".format(self))

    def to_config(self):
        raise NotImplementedError


@dataclass(frozen=True)
class RealLine(TimeScale):
    exact = False

    @property
    def graininess(self):
        return 0

    def point(self, t):
        if isinstance(t, str):
            try:
                t = as_rational(t)
            except ValueError as e:
                raise DomainError(str(e), t)
        try:
            value = float(t)
        except (TypeError, ValueError, OverflowError):
            raise DomainError("{!r} is not a real number".format(t), t)
        if not math.isfinite(value):
            raise DomainError("{!r} is not a finite real number".format(t), t)
        return value

    def sigma(self, t):
        return self.point(t)

    def rho(self, t):
        return self.point(t)

    def mu(self, t):
        self.point(t)
        return 0.0

    def nu(self, t):
        self.point(t)
        return 0.0

    def to_config(self):
        return {"type": "real"}

    def __str__(self):
        return "R"


def _rational_point(t):
    try:
        return as_rational(t)
    except (ValueError, TypeError) as e:
        raise DomainError(str(e), t)


@dataclass(frozen=True)
class UniformGrid(TimeScale):
    """The grid ``offset + step*Z``."""

    offset: Fraction = Fraction(0)
    step: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "offset", _rational_point(self.offset))
        object.__setattr__(self, "step", _rational_point(self.step))
        if self.step <= 0:
            raise DomainError(
                "uniform grid step must be positive, got {}".format(self.step)
            )

    @property
    def graininess(self):
        return self.step

    def index(self, t):
        """Integer n with ``t == offset + n*step``."""
        n = (self.point(t) - self.offset) / self.step
        return n.numerator

    def point(self, t):
        value = _rational_point(t)
        if ((value - self.offset) / self.step).denominator != 1:
            raise DomainError("{} is not a point of {}".format(value, self), value)
        return value

    def sigma(self, t):
        return self.point(t) + self.step

    def rho(self, t):
        return self.point(t) - self.step

    def points_between(self, a, b):
        lo, hi = sorted((self.index(a), self.index(b)))
        return [self.offset + n * self.step for n in range(lo, hi + 1)]

    def walk(self, t, steps, forward=True):
        t = self.point(t)
        step = self.step if forward else -self.step
        return [t + j * step for j in range(steps + 1)]

    def to_config(self):
        return {"type": "uniform", "offset": str(self.offset), "step": str(self.step)}

    def __str__(self):
        if self.offset:
            return "{}+{}Z".format(self.offset, self.step)
        return "{}Z".format(self.step) if self.step != 1 else "Z"


@dataclass(frozen=True)
class _PointSet(TimeScale):
    points: tuple

    def __post_init__(self):
        points = tuple(_rational_point(p) for p in self.points)
        if not points:
            raise EmptyDomainError("a time scale needs at least one point")
        for lower, upper in zip(points, points[1:]):
            if not lower < upper:
                raise DomainError(
                    "grid points must be strictly increasing: {} then {}".format(
                        lower, upper
                    )
                )
        object.__setattr__(self, "points", points)

    @property
    def inf(self):
        return self.points[0]

    @property
    def sup(self):
        return self.points[-1]

    def index(self, t):
        value = _rational_point(t)
        i = bisect.bisect_left(self.points, value)
        if i < len(self.points) and self.points[i] == value:
            return i
        raise DomainError("{} is not a point of {}".format(value, self), value)

    def point(self, t):
        return self.points[self.index(t)]

    def sigma(self, t):
        i = self.index(t)
        return self.points[min(i + 1, len(self.points) - 1)]

    def rho(self, t):
        i = self.index(t)
        return self.points[max(i - 1, 0)]

    def points_between(self, a, b):
        lo, hi = sorted((self.index(a), self.index(b)))
        return list(self.points[lo : hi + 1])

    def walk(self, t, steps, forward=True):
        i = self.index(t)
        j = i + steps if forward else i - steps
        if not 0 <= j < len(self.points):
            raise DomainError(
                "{} needs {} more points {} {} on {}".format(
                    "operation", steps, "above" if forward else "below", t, self
                ),
                t,
            )
        if forward:
            return list(self.points[i : j + 1])
        return list(reversed(self.points[j : i + 1]))

    def to_config(self):
        return {"type": "finite", "points": [str(p) for p in self.points]}

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.points) + "}"


@dataclass(frozen=True)
class FiniteGrid(_PointSet):
    def __post_init__(self):
        super().__post_init__()
        if len(self.points) < 2:
            raise DomainError("a finite grid needs at least two points")


@dataclass(frozen=True)
class TrimmedScale(TimeScale):
    """``T^{k^upper}`` intersected with ``T_{k^lower}``."""

    base: TimeScale
    upper: int = 0
    lower: int = 0

    def __post_init__(self):
        if self.upper < 0 or self.lower < 0:
            raise DomainError("trim counts must be non-negative")
        if isinstance(self.base, TrimmedScale):
            object.__setattr__(self, "upper", self.upper + self.base.upper)
            object.__setattr__(self, "lower", self.lower + self.base.lower)
            object.__setattr__(self, "base", self.base.base)
        if isinstance(self.base, _PointSet):
            remaining = len(self.base.points) - self.upper - self.lower
            if remaining < 1:
                raise EmptyDomainError(
                    "trimming {} top and {} bottom points leaves {} empty".format(
                        self.upper, self.lower, self.base
                    )
                )

    @cached_property
    def _view(self):
        if isinstance(self.base, _PointSet):
            end = len(self.base.points) - self.upper
            return _PointSet(self.base.points[self.lower : end])
        # unbounded sides are not trimmed
        return self.base

    @property
    def exact(self):
        return self.base.exact

    @property
    def inf(self):
        return self._view.inf

    @property
    def sup(self):
        return self._view.sup

    @property
    def graininess(self):
        return self.base.graininess

    @property
    def points(self):
        return self._view.points

    def point(self, t):
        return self._view.point(t)

    def sigma(self, t):
        return self._view.sigma(t)

    def rho(self, t):
        return self._view.rho(t)

    def mu(self, t):
        return self._view.mu(t)

    def nu(self, t):
        return self._view.nu(t)

    def points_between(self, a, b):
        return self._view.points_between(a, b)

    def walk(self, t, steps, forward=True):
        return self._view.walk(t, steps, forward)

    def to_config(self):
        return self._view.to_config()

    def __str__(self):
        return "{}^(k^{})_(k^{})".format(self.base, self.upper, self.lower)


def sigma(scale, t):
    """Forward jump operator."""
    return scale.sigma(t)


def rho(scale, t):
    """Backward jump operator."""
    return scale.rho(t)


def mu(scale, t):
    return scale.mu(t)


def nu(scale, t):
    return scale.nu(t)


def classify(scale, t):
    return scale.classify(t)


def trim(scale, upper=0, lower=0):
    """Remove ``upper`` top and ``lower`` bottom points from bounded sides."""
    return TrimmedScale(scale, upper, lower)


def is_discrete(scale):
    return scale.exact


def base_scale(scale):
    if isinstance(scale, TrimmedScale):
        return scale.base
    return scale


def integer_points(scale):
    """Whether every point of a discrete scale is an integer."""
    scale = base_scale(scale)
    if isinstance(scale, UniformGrid):
        return scale.offset.denominator == 1 and scale.step.denominator == 1
    if isinstance(scale, _PointSet):
        return all(p.denominator == 1 for p in scale.points)
    return False


def scale_from_config(config):
    """Build a TimeScale from its JSON description."""
    check(config, SCALE_SCHEMA)
    kind = config["type"]
    if kind == "real":
        return RealLine()
    if kind == "uniform":
        return UniformGrid(config.get("offset", 0), config.get("step", 1))
    if "points" not in config:
        raise DomainError("finite scale description needs 'points'")
    return FiniteGrid(tuple(config["points"]))


def scale_from_string(text):
    """Parse the CLI shorthand for a scale.

    Accepted forms: ``r``/``real``, ``z``, ``<rational>z`` (``3z``, ``1/2z``),
    ``finite:<p>,<p>,...``, an inline JSON object, or a path to a JSON/YAML file.
    """
    text = text.strip()
    lowered = text.lower()
    if lowered in ("r", "real"):
        return RealLine()
    if lowered == "z":
        return UniformGrid(0, 1)
    if lowered.endswith("z") and not os.path.exists(text):
        return UniformGrid(0, _rational_point(text[:-1]))
    if lowered.startswith("finite:"):
        return FiniteGrid(tuple(p for p in text[len("finite:") :].split(",") if p))
    if text.startswith("{"):
        return scale_from_config(json.loads(text))
    if os.path.exists(text):
        with open(text) as f:
            return scale_from_config(yaml.safe_load(f))
    raise DomainError("cannot understand scale {!r}".format(text))
