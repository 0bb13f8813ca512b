# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Function specs accepted on the command line.

    exp:p=<rat>[,t0=<rat>]          delta exponential e_p(t, t0)
    hatexp:p=<rat>[,t0=<rat>]       nabla exponential
    sin:p=<rat>[,t0=<rat>]          also cos, sinh, cosh and hatsin ... hatcosh
    pow2                            2**t
    mono:k=<int>[,t0=<rat>][,kind=forward|backward]
    poly:<c0>,<c1>,...              c0 + c1*t + c2*t**2 + ...
    table:<path>                    two-column CSV of t,value samples
"""
import csv
import math

from timescales._calculus import GridFunction
from timescales._scale import integer_points
from timescales.errors import DomainError
from timescales.monomials import MonomialKind, monomial_function
from timescales.specials import (
    ExpKind,
    ExpParams,
    TrigFamily,
    TrigKind,
    exp_function,
    trig_function,
)
from timescales.util import as_rational


def _parameters(text, allowed):
    params = {}
    if not text:
        return params
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise DomainError(
                "bad parameter {!r}; expected one of {}".format(
                    item, ", ".join(sorted(allowed))
                )
            )
        params[key] = value.strip()
    return params


def _rational(params, key, default=None):
    if key not in params:
        if default is None:
            raise DomainError("missing parameter {}=".format(key))
        return default
    try:
        return as_rational(params[key])
    except ValueError as e:
        raise DomainError(str(e))


def pow2(scale):
    """``2**t``; exact when every point of the scale is an integer."""

    def evaluate(t):
        if not isinstance(t, float) and t.denominator == 1:
            return as_rational(2) ** int(t)
        return 2.0 ** float(t)

    derivative = differentiated = None
    if not scale.exact:
        derivative = lambda t: math.log(2) * 2.0**t  # noqa: E731
        differentiated = lambda: math.log(2) * pow2(scale)  # noqa: E731
    return GridFunction(
        scale,
        evaluate,
        exact=integer_points(scale),
        derivative=derivative,
        name="2^t",
        differentiated=differentiated,
    )


def polynomial(scale, coefficients):
    coefficients = tuple(coefficients)

    def evaluate(t):
        value = 0
        for c in reversed(coefficients):
            value = value * t + c
        return value

    def derivative(t):
        value = 0
        for k in range(len(coefficients) - 1, 0, -1):
            value = value * t + k * coefficients[k]
        return value

    differentiated = None
    if not scale.exact:
        lowered = [k * c for k, c in enumerate(coefficients)][1:] or [0]
        differentiated = lambda: polynomial(scale, lowered)  # noqa: E731
    return GridFunction(
        scale,
        evaluate,
        exact=scale.exact,
        derivative=None if scale.exact else derivative,
        name="poly({})".format(",".join(str(c) for c in coefficients)),
        differentiated=differentiated,
    )


def load_table(path, scale):
    """Read ``t,value`` rows of rational strings into a GridFunction.

    A first row that does not parse is taken as a header.
    """
    samples = {}
    with open(path, newline="") as f:
        for lineno, row in enumerate(csv.reader(f), 1):
            if not row or not "".join(row).strip():
                continue
            if len(row) != 2:
                raise DomainError("{}:{}: expected two columns".format(path, lineno))
            try:
                t, value = as_rational(row[0]), as_rational(row[1])
            except ValueError:
                if lineno == 1:
                    continue
                raise DomainError(
                    "{}:{}: not a pair of rationals: {}".format(path, lineno, row)
                )
            samples[scale.point(t)] = value
    if not samples:
        raise DomainError("{} holds no samples".format(path))
    return GridFunction.from_samples(scale, samples, name="table({})".format(path))


_TRIG = {
    "sin": (TrigKind.SIN, False),
    "cos": (TrigKind.COS, False),
    "sinh": (TrigKind.SINH, False),
    "cosh": (TrigKind.COSH, False),
    "hatsin": (TrigKind.SIN, True),
    "hatcos": (TrigKind.COS, True),
    "hatsinh": (TrigKind.SINH, True),
    "hatcosh": (TrigKind.COSH, True),
}


def parse_function(text, scale):
    """Turn a function spec into a GridFunction on ``scale``."""
    name, _, rest = text.strip().partition(":")
    name = name.lower()
    if name in ("exp", "hatexp"):
        params = _parameters(rest, {"p", "t0"})
        kind = ExpKind.NABLA if name == "hatexp" else ExpKind.DELTA
        return exp_function(
            ExpParams(_rational(params, "p"), kind, _rational(params, "t0", 0), scale)
        )
    if name in _TRIG:
        params = _parameters(rest, {"p", "t0"})
        kind, hatted = _TRIG[name]
        family = TrigFamily(kind, _rational(params, "p"), hatted, scale)
        return trig_function(family, _rational(params, "t0", 0))
    if name == "pow2":
        if rest:
            raise DomainError("pow2 takes no parameters")
        return pow2(scale)
    if name == "mono":
        params = _parameters(rest, {"k", "t0", "kind"})
        k = _rational(params, "k")
        if k.denominator != 1 or k < 0:
            raise DomainError("monomial order must be a non-negative integer")
        kind = MonomialKind.coerce(params.get("kind", "forward"))
        return monomial_function(kind, int(k), _rational(params, "t0", 0), scale)
    if name == "poly":
        try:
            coefficients = [as_rational(c) for c in rest.split(",") if c.strip()]
        except ValueError as e:
            raise DomainError(str(e))
        if not coefficients:
            raise DomainError("poly needs at least one coefficient")
        return polynomial(scale, coefficients)
    if name == "table":
        if not rest:
            raise DomainError("table needs a file path")
        return load_table(rest, scale)
    raise DomainError("unknown function spec {!r}".format(text))
