# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Check the closed-form trigonometric derivatives against the operators.

Every family (sin, cos, sinh, cosh and their hatted forms) is differentiated
twice at each grid point: once by applying the diamond-alpha operator to the
function values and once through the closed form in
:func:`timescales.specials.trig_diamond_derivative`. The operator value is
always computed first and is the reference.
"""
import itertools
from collections import Counter
from enum import IntEnum

import yaml

from timescales._calculus import diamond_derivative
from timescales._scale import UniformGrid
from timescales.errors import DomainError, SingularityError
from timescales.specials import (
    TrigFamily,
    TrigKind,
    trig_diamond_derivative,
    trig_function,
)
from timescales.util import as_rational, format_value

DEFAULT_P = ("1", "1/2")
DEFAULT_ALPHA = ("0", "1/2", "1")
DEFAULT_WINDOW = (-3, 3)


class FindingLevel(IntEnum):
    AGREEMENT = 0
    SINGULAR = 1
    DEVIATION = 2


# shortcuts
AGREEMENT = FindingLevel.AGREEMENT
SINGULAR = FindingLevel.SINGULAR
DEVIATION = FindingLevel.DEVIATION


class Finding:
    """One closed form compared with the operator at one point."""

    level = None

    def __init__(self, family, t, alpha, oracle=None, printed=None, msg=""):
        self.family = family
        self.t = t
        self.alpha = alpha
        self.oracle = oracle
        self.printed = printed
        self.msg = msg

    def __str__(self):
        output = "{}: {} at t={} alpha={}".format(
            self.level.name.title(), self.family.name, self.t, self.alpha
        )
        if self.level is SINGULAR:
            return "{}: {}".format(output, self.msg)
        return "{}: closed form {}, operator {}".format(
            output, format_value(self.printed), format_value(self.oracle)
        )

    def _to_dict(self):
        return {
            "level": self.level.name,
            "family": self.family.name,
            "p": format_value(self.family.p),
            "alpha": format_value(self.alpha),
            "t": format_value(self.t),
            "oracle": None if self.oracle is None else format_value(self.oracle),
            "printed": None if self.printed is None else format_value(self.printed),
            "message": self.msg,
        }


class Agreement(Finding):
    level = AGREEMENT


class Singular(Finding):
    level = SINGULAR


class Deviation(Finding):
    level = DEVIATION


def families(p_values, scale):
    for hatted, kind, p in itertools.product((False, True), TrigKind, p_values):
        yield TrigFamily(kind, p, hatted, scale)


def check_point(family, t, t0, alpha):
    """Compare the closed form with the operator for one family and point."""
    f = trig_function(family, t0)
    try:
        oracle = diamond_derivative(f, t, alpha)
    except (SingularityError, DomainError) as e:
        return Singular(family, t, alpha, msg="operator: {}".format(e))
    try:
        printed = trig_diamond_derivative(family, t, t0, alpha)
    except (SingularityError, DomainError) as e:
        msg = "closed form: {}".format(e)
        return Singular(family, t, alpha, oracle=oracle, msg=msg)
    if printed == oracle:
        return Agreement(family, t, alpha, oracle, printed)
    return Deviation(family, t, alpha, oracle, printed, msg="values differ")


def corollary_audit(
    p_values=DEFAULT_P, alphas=DEFAULT_ALPHA, window=DEFAULT_WINDOW, t0=0, scale=None
):
    """Yield a Finding for every family, p, alpha and point of the window.

    The window end points are excluded; both neighbours of t must be on the
    scale.
    """
    if scale is None:
        scale = UniformGrid()
    p_values = [as_rational(p) for p in p_values]
    alphas = [as_rational(a) for a in alphas]
    lo, hi = (scale.point(w) for w in window)
    if not lo < hi:
        raise DomainError("audit window must be increasing, got {}..{}".format(lo, hi))
    t0 = scale.point(t0)
    points = scale.points_between(lo, hi)[1:-1]
    for family in families(p_values, scale):
        for alpha, t in itertools.product(alphas, points):
            yield check_point(family, t, t0, alpha)


def summary(findings):
    counts = Counter(finding.level for finding in findings)
    return [(level.name, counts.get(level, 0)) for level in FindingLevel]


def render_markdown(findings, template, **context):
    findings = list(findings)
    return template.render(
        findings=[finding._to_dict() for finding in findings],
        counts=summary(findings),
        **context
    )


def dump_yaml(findings, stream=None, **context):
    findings = list(findings)
    document = dict(context)
    document["counts"] = dict(summary(findings))
    document["findings"] = [finding._to_dict() for finding in findings]
    return yaml.safe_dump(document, stream, default_flow_style=False, sort_keys=False)
