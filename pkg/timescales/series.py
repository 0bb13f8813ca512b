# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Delta-, nabla- and combined-polynomial series.

A combined series originated at t0 is

    alpha * sum_k a_k h_k(t, t0) + (1 - alpha) * sum_k b_k hat h_k(t, t0)

Each branch is summed on its own. On ``c*Z`` the delta branch is a finite
sum for ``t >= t0`` and the nabla branch for ``t <= t0``; otherwise terms
are added until the truncation policy is satisfied, and the term ratios
seen on the way decide the convergence verdict.
"""
import enum
import logging
import math
import numbers
import statistics
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Tuple

from timescales._calculus import (
    DerivKind,
    GridFunction,
    delta_integral,
    derivative_sequence,
    iterated_derivative,
    nabla_integral,
)
from timescales._scale import TimeScale, UniformGrid, base_scale, scale_from_config
from timescales._settings import get_settings
from timescales._validation import POLICY_SCHEMA, SERIES_SCHEMA, check
from timescales.errors import DivergenceError, DomainError, RegionError, TimeScaleError
from timescales.monomials import (
    MonomialKind,
    finite_term_count,
    iter_monomials,
    monomial,
)
from timescales.specials import ExpKind
from timescales.util import as_rational, format_value, is_exact

ZERO = Fraction(0)


class Branch(enum.Enum):
    DELTA = "delta"
    NABLA = "nabla"

    @property
    def monomial_kind(self):
        return MonomialKind.FORWARD if self is Branch.DELTA else MonomialKind.BACKWARD


class Verdict(enum.Enum):
    CONVERGENT = "Convergent"
    FINITE_SUM = "FiniteSum"
    DIVERGENT = "Divergent"
    INCONCLUSIVE = "Inconclusive"


def _magnitude(value):
    try:
        return float(abs(value))
    except OverflowError:
        return math.inf


def _coerce_value(value):
    if isinstance(value, (str, numbers.Rational)):
        return as_rational(value)
    return value


class CoefficientRule:
    """A coefficient sequence ``(a_k)`` for k >= 0."""

    def coefficient(self, k):
        raise NotImplementedError

    def shifted(self):
        """The rule ``k -> a_{k+1}``."""
        return Custom(lambda k: self.coefficient(k + 1), name="shift({})".format(self))

    def scaled(self, factor):
        return Custom(
            lambda k: factor * self.coefficient(k), name="{}*{}".format(factor, self)
        )

    @property
    def support(self):
        """Number of possibly nonzero leading coefficients, None if unbounded."""
        return None

    def to_config(self):
        return {"rule": "custom", "name": str(self)}


@dataclass(frozen=True)
class Explicit(CoefficientRule):
    """A finite list, extended by zeros."""

    values: Tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_coerce_value(v) for v in self.values))

    def coefficient(self, k):
        if k < len(self.values):
            return self.values[k]
        return ZERO

    def shifted(self):
        return Explicit(self.values[1:])

    def scaled(self, factor):
        return Explicit(tuple(factor * v for v in self.values))

    @property
    def support(self):
        return len(self.values)

    def to_config(self):
        return {"rule": "explicit", "values": [format_value(v) for v in self.values]}

    def __str__(self):
        return "explicit[{}]".format(", ".join(format_value(v) for v in self.values))


ZERO_RULE = Explicit(())


@dataclass(frozen=True)
class Geometric(CoefficientRule):
    """``a_k = factor * p**k``."""

    p: Any
    factor: Any = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "p", _coerce_value(self.p))
        object.__setattr__(self, "factor", _coerce_value(self.factor))

    def coefficient(self, k):
        return self.factor * self.p**k

    def shifted(self):
        return Geometric(self.p, self.factor * self.p)

    def scaled(self, factor):
        return Geometric(self.p, factor * self.factor)

    @property
    def support(self):
        return 0 if self.factor == 0 else None

    def to_config(self):
        return {
            "rule": "geometric",
            "p": format_value(self.p),
            "factor": format_value(self.factor),
        }

    def __str__(self):
        if self.factor == 1:
            return "geometric({})".format(format_value(self.p))
        return "{}*geometric({})".format(
            format_value(self.factor), format_value(self.p)
        )


class Custom(CoefficientRule):
    """Coefficients from a callable ``k -> a_k``, memoized."""

    def __init__(self, fn, name="custom"):
        self.fn = fn
        self.name = name
        self._memo = {}
        self._lock = threading.Lock()

    def coefficient(self, k):
        with self._lock:
            if k in self._memo:
                return self._memo[k]
        value = self.fn(k)
        with self._lock:
            return self._memo.setdefault(k, value)

    def __str__(self):
        return self.name

    def __repr__(self):
        return "Custom({!r})".format(self.name)


def add_rules(left, right):
    if left.support == 0:
        return right
    if right.support == 0:
        return left
    if isinstance(left, Explicit) and isinstance(right, Explicit):
        n = max(len(left.values), len(right.values))
        return Explicit(
            tuple(left.coefficient(k) + right.coefficient(k) for k in range(n))
        )
    geometric = isinstance(left, Geometric) and isinstance(right, Geometric)
    if geometric and left.p == right.p:
        return Geometric(left.p, left.factor + right.factor)
    return Custom(
        lambda k: left.coefficient(k) + right.coefficient(k),
        name="({} + {})".format(left, right),
    )


def rule_from_config(config):
    if config["rule"] == "explicit":
        return Explicit(tuple(config.get("values", ())))
    if "p" not in config:
        raise DomainError("a geometric rule needs 'p'")
    return Geometric(config["p"], config.get("factor", 1))


@dataclass(frozen=True)
class TruncationPolicy:
    """Truncation limits; unset fields come from the current settings."""

    max_terms: Optional[int] = None
    abs_tol: Optional[float] = None
    consecutive_small: Optional[int] = None
    ratio_window: Optional[int] = None
    ratio_margin: Optional[float] = None

    def __post_init__(self):
        settings = get_settings()
        for name in (
            "max_terms",
            "abs_tol",
            "consecutive_small",
            "ratio_window",
            "ratio_margin",
        ):
            if getattr(self, name) is None:
                object.__setattr__(self, name, getattr(settings, name))
        if self.max_terms < 1 or self.consecutive_small < 1 or self.ratio_window < 2:
            raise DomainError("truncation counts must be positive")
        if not self.abs_tol > 0 or self.ratio_margin < 0:
            raise DomainError("truncation tolerance must be positive")

    @classmethod
    def from_config(cls, config):
        check(config, POLICY_SCHEMA)
        return cls(**config)

    def to_config(self):
        return {
            "max_terms": self.max_terms,
            "abs_tol": self.abs_tol,
            "consecutive_small": self.consecutive_small,
            "ratio_window": self.ratio_window,
            "ratio_margin": self.ratio_margin,
        }


@dataclass(frozen=True)
class SeriesSpec:
    alpha: Any = Fraction(1)
    t0: Any = 0
    a: CoefficientRule = ZERO_RULE
    b: CoefficientRule = ZERO_RULE
    scale: TimeScale = field(default_factory=UniformGrid)
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)

    def __post_init__(self):
        alpha = as_rational(self.alpha)
        if not 0 <= alpha <= 1:
            raise DomainError("alpha must lie in [0, 1], got {}".format(alpha))
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "t0", self.scale.point(self.t0))

    @classmethod
    def from_config(cls, config):
        """Build a spec from its JSON document, validated first."""
        check(config, SERIES_SCHEMA)
        return cls(
            alpha=config.get("alpha", 1),
            t0=config.get("t0", 0),
            a=rule_from_config(config["a"]) if "a" in config else ZERO_RULE,
            b=rule_from_config(config["b"]) if "b" in config else ZERO_RULE,
            scale=scale_from_config(config["scale"]),
            policy=TruncationPolicy.from_config(config.get("policy", {})),
        )

    def to_config(self):
        return {
            "alpha": format_value(self.alpha),
            "t0": format_value(self.t0),
            "scale": self.scale.to_config(),
            "a": self.a.to_config(),
            "b": self.b.to_config(),
            "policy": self.policy.to_config(),
        }

    def weights(self):
        """(branch, weight, rule) for every branch that contributes."""
        result = []
        if self.alpha != 0:
            result.append((Branch.DELTA, self.alpha, self.a))
        if self.alpha != 1:
            result.append((Branch.NABLA, 1 - self.alpha, self.b))
        return result

    def rule(self, branch):
        return self.a if branch is Branch.DELTA else self.b

    def __add__(self, other):
        if not isinstance(other, SeriesSpec):
            return NotImplemented
        if (self.alpha, self.t0, self.scale) != (other.alpha, other.t0, other.scale):
            raise DomainError(
                "only series with the same alpha, origin and scale can be added"
            )
        return SeriesSpec(
            self.alpha,
            self.t0,
            add_rules(self.a, other.a),
            add_rules(self.b, other.b),
            self.scale,
            self.policy,
        )

    def scaled(self, factor):
        factor = _coerce_value(factor)
        return SeriesSpec(
            self.alpha,
            self.t0,
            self.a.scaled(factor),
            self.b.scaled(factor),
            self.scale,
            self.policy,
        )


@dataclass(frozen=True)
class Region:
    """``I`` (after t0) or ``J`` (before t0) where a cross derivative converges."""

    name: str
    description: str
    t0: Any
    bound_M: Any
    scale: TimeScale

    def __contains__(self, t):
        T = self.scale
        t = T.point(t)
        if self.bound_M is None:
            return False
        if self.name == "I":
            return T.rho(t) >= self.t0 and T.nu(t) * self.bound_M < 1
        return T.sigma(t) <= self.t0 and T.mu(t) * self.bound_M < 1


def regions(t0, bound_M, scale):
    return (
        Region("I", "{t : rho(t) >= t0 and nu(t)*M < 1}", t0, bound_M, scale),
        Region("J", "{t : sigma(t) <= t0 and mu(t)*M < 1}", t0, bound_M, scale),
    )


@dataclass(frozen=True)
class BranchReport:
    branch: Branch
    verdict: Verdict
    terms_used: int = 0
    term_ratio: Optional[float] = None
    coeff_ratio: Optional[float] = None


@dataclass(frozen=True)
class ConvergenceReport:
    verdict: Verdict
    coeff_ratio_a: Optional[float]
    coeff_ratio_b: Optional[float]
    monomial_ratio: Any
    bound_M: Any
    region_I: Region
    region_J: Region
    branches: Tuple[BranchReport, ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def terms_used(self):
        return sum(b.terms_used for b in self.branches)


def _overall(verdicts):
    verdicts = list(verdicts)
    if Verdict.DIVERGENT in verdicts:
        return Verdict.DIVERGENT
    if Verdict.INCONCLUSIVE in verdicts:
        return Verdict.INCONCLUSIVE
    if verdicts and all(v is Verdict.FINITE_SUM for v in verdicts):
        return Verdict.FINITE_SUM
    return Verdict.CONVERGENT


def _richardson(samples):
    # ratio_k ~ L + A/k, eliminated between the first and last sample
    (k1, r1), (k2, r2) = samples[0], samples[-1]
    return (k2 * r2 - k1 * r1) / (k2 - k1)


def coefficient_ratio(rule, policy):
    """Estimate ``lim |a_{k+1} / a_k|`` over the tail window of the policy.

    Ratios that approach their limit like ``L + A/k`` (polynomial factors
    such as ``r**k / (k + 1)**2``) are extrapolated to L. Returns
    ``math.inf`` when the extrapolated limit itself keeps growing across the
    window and None when no two consecutive coefficients are nonzero.
    """
    if rule.support is not None:
        return 0.0
    if isinstance(rule, Geometric):
        return _magnitude(rule.p)
    window = policy.ratio_window
    samples = []
    for k in range(window // 2, window):
        try:
            current, following = rule.coefficient(k), rule.coefficient(k + 1)
        except DomainError:
            # the coefficients run out, e.g. derivatives on a short finite grid
            break
        if current == 0:
            continue
        samples.append((k, _magnitude(following / current)))
    if not samples:
        return None
    ratios = [r for _, r in samples]
    if math.inf in ratios:
        return math.inf
    if len(samples) < 4:
        return max(ratios)
    half = len(samples) // 2
    early, late = samples[:half], samples[half:]
    early_limit, late_limit = _richardson(early), _richardson(late)
    early_ratios, late_ratios = ratios[:half], ratios[half:]
    if (
        min(late_ratios) > max(early_ratios)
        and late_limit > early_limit * 1.1 + 0.01
    ):
        return math.inf
    return max(late_limit, max(late_ratios))


def _bound(ratios):
    known = [r for r in ratios if r is not None]
    if not known:
        return None
    return max(known)


def _ratio_verdict(ratio, c, margin):
    if ratio is None or ratio == math.inf:
        return Verdict.INCONCLUSIVE
    product = ratio * float(c)
    if product < 1 - margin:
        return Verdict.CONVERGENT
    return Verdict.INCONCLUSIVE


_TRANSFER_NOTE = (
    "a real power series with these coefficients that converges at t* >= t0 "
    "makes the series converge for t0 < t < t*"
)


def combined_convergence(spec, t=None):
    """Judge convergence from coefficient ratios, without summing.

    With ``t`` given, a branch in its finite region is reported as FiniteSum.
    """
    T = spec.scale
    c = T.graininess
    policy = spec.policy
    ratio_a = coefficient_ratio(spec.a, policy)
    ratio_b = coefficient_ratio(spec.b, policy)
    bound_M = _bound([ratio_a, ratio_b])
    branches = []
    for branch, _, rule in spec.weights():
        ratio = ratio_a if branch is Branch.DELTA else ratio_b
        finite = t is not None and (
            finite_term_count(branch.monomial_kind, t, spec.t0, T) is not None
        )
        if finite:
            verdict = Verdict.FINITE_SUM
        elif rule.support is not None:
            verdict = Verdict.CONVERGENT
        elif c is None:
            verdict = Verdict.INCONCLUSIVE
        else:
            verdict = _ratio_verdict(ratio, c, policy.ratio_margin)
        branches.append(BranchReport(branch, verdict, coeff_ratio=ratio))
    region_I, region_J = regions(spec.t0, bound_M, T)
    return ConvergenceReport(
        verdict=_overall(b.verdict for b in branches),
        coeff_ratio_a=ratio_a,
        coeff_ratio_b=ratio_b,
        monomial_ratio=c,
        bound_M=bound_M,
        region_I=region_I,
        region_J=region_J,
        branches=tuple(branches),
        notes=(_TRANSFER_NOTE,),
    )


def _tail_ratio(ratios, window):
    tail = ratios[-max(1, window // 2) :]
    return max(tail) if tail else None


def _term_ratio_limit(coeff_ratio, c):
    """``lim |term_{k+1} / term_k|``: the coefficient ratio times c on c*Z."""
    if coeff_ratio is None or coeff_ratio == math.inf or c is None:
        return None
    return coeff_ratio * float(c)


def _diverging(ratios, policy, limit):
    """Whether the term ratios seen so far show a branch growing without bound.

    A limit below one rules divergence out however large the early terms
    get. Without a usable limit the whole tail must exceed one and must not
    be falling.
    """
    half = max(1, policy.ratio_window // 2)
    recent = ratios[-half:]
    if not recent:
        return False
    margin = policy.ratio_margin
    if limit is not None:
        if limit < 1 - margin:
            return False
        if limit > 1 + margin:
            return max(recent) > 1 + margin
    if min(recent) <= 1 + margin:
        return False
    earlier = ratios[-2 * half : -half]
    if not earlier:
        return True
    return statistics.fmean(recent) >= statistics.fmean(earlier) * (1 - margin)


def _sum_branch(spec, branch, rule, t, limit=None):
    T = spec.scale
    policy = spec.policy
    kind = branch.monomial_kind
    monomials = iter_monomials(kind, t, spec.t0, T)
    count = finite_term_count(kind, t, spec.t0, T)
    if count is not None or rule.support is not None:
        verdict = Verdict.FINITE_SUM if count is not None else Verdict.CONVERGENT
        terms = min(n for n in (count, rule.support) if n is not None)
        logging.debug(
            "%s branch at t=%s is a finite sum of %d terms", branch.value, t, terms
        )
        total = ZERO
        for k in range(terms):
            total = total + rule.coefficient(k) * next(monomials)
        return total, BranchReport(branch, verdict, terms_used=terms)

    total = ZERO
    ratios = []
    previous = None
    small = 0
    verdict = None
    k = 0
    for k, h in enumerate(monomials):
        if k >= policy.max_terms:
            break
        term = rule.coefficient(k) * h
        total = total + term
        size = _magnitude(term)
        if previous:
            ratios.append(size / previous)
        elif previous == 0 and size == 0:
            ratios.append(0.0)
        previous = size
        small = small + 1 if size < policy.abs_tol else 0
        recent = ratios[-policy.consecutive_small :]
        if small >= policy.consecutive_small and recent and max(recent) < 1:
            verdict = Verdict.CONVERGENT
            k += 1
            break
        at_checkpoint = k and k % policy.ratio_window == 0 and size >= 1
        if at_checkpoint and _diverging(ratios, policy, limit):
            verdict = Verdict.DIVERGENT
            k += 1
            break
    if verdict is None:
        if _diverging(ratios, policy, limit):
            verdict = Verdict.DIVERGENT
        else:
            verdict = Verdict.INCONCLUSIVE
            logging.warning(
                "%s branch at t=%s did not settle within %d terms",
                branch.value,
                t,
                policy.max_terms,
            )
    return total, BranchReport(
        branch,
        verdict,
        terms_used=k,
        term_ratio=_tail_ratio(ratios, policy.ratio_window),
    )


def series_eval(spec, t, force=False):
    """Evaluate a combined series at t, returning ``(value, report)``.

    Raises DivergenceError, carrying the report, when a branch diverges and
    ``force`` is not set.
    """
    T = spec.scale
    t = T.point(t)
    base = combined_convergence(spec, t)
    value = ZERO if T.exact else 0.0
    branches = []
    for (branch, weight, rule), estimated in zip(spec.weights(), base.branches):
        limit = _term_ratio_limit(estimated.coeff_ratio, T.graininess)
        total, summed = _sum_branch(spec, branch, rule, t, limit)
        value = value + weight * total
        branches.append(
            BranchReport(
                branch,
                summed.verdict,
                terms_used=summed.terms_used,
                term_ratio=summed.term_ratio,
                coeff_ratio=estimated.coeff_ratio,
            )
        )
    report = ConvergenceReport(
        verdict=_overall(b.verdict for b in branches),
        coeff_ratio_a=base.coeff_ratio_a,
        coeff_ratio_b=base.coeff_ratio_b,
        monomial_ratio=base.monomial_ratio,
        bound_M=base.bound_M,
        region_I=base.region_I,
        region_J=base.region_J,
        branches=tuple(branches),
        notes=base.notes,
    )
    if report.verdict is Verdict.DIVERGENT and not force:
        raise DivergenceError(
            "series diverges at t={}; value withheld".format(t), report
        )
    return value, report


def series_function(spec, force=False):
    return GridFunction(
        spec.scale,
        lambda t: series_eval(spec, t, force=force)[0],
        exact=spec.scale.exact,
        name="series",
    )


def series_shift_derivative(spec, branch):
    """Derivative of one branch in its own direction, as a single-branch spec."""
    branch = Branch(branch)
    shifted = spec.rule(branch).shifted()
    if branch is Branch.DELTA:
        return SeriesSpec(1, spec.t0, shifted, ZERO_RULE, spec.scale, spec.policy)
    return SeriesSpec(0, spec.t0, ZERO_RULE, shifted, spec.scale, spec.policy)


def _inner_sum(rule, k, step, policy):
    # sum_j step**j a_{j+k+1}, truncated like a series branch
    total = ZERO
    power = Fraction(1)
    small = 0
    for j in range(policy.max_terms):
        term = power * rule.coefficient(j + k + 1)
        total = total + term
        small = small + 1 if _magnitude(term) < policy.abs_tol else 0
        if small >= policy.consecutive_small:
            break
        power = power * step
    return total


def series_cross_derivative(spec, branch):
    """Derivative of one branch in the opposite direction.

    The nabla derivative of the delta branch is a delta series with
    coefficients ``sum_j (-c)**j a_{j+k+1}``; the delta derivative of the
    nabla branch is a nabla series with ``sum_j c**j b_{j+k+1}``.
    """
    branch = Branch(branch)
    T = spec.scale
    c = T.graininess
    if c is None:
        raise DomainError("cross derivatives of series need a homogeneous scale")
    rule = spec.rule(branch)
    step = -c if branch is Branch.DELTA else c
    if rule.support == 0:
        derived = ZERO_RULE
    else:
        bound_M = coefficient_ratio(rule, spec.policy)
        if bound_M is None or bound_M * float(c) >= 1:
            raise RegionError(
                "cross derivative needs c*M < 1, got c={} and M={}".format(c, bound_M)
            )
        if isinstance(rule, Explicit):
            values = rule.values
            derived = Explicit(
                tuple(
                    sum(
                        (
                            step**j * values[j + k + 1]
                            for j in range(len(values) - k - 1)
                        ),
                        ZERO,
                    )
                    for k in range(len(values) - 1)
                )
            )
        elif isinstance(rule, Geometric):
            derived = Geometric(rule.p, rule.factor * rule.p / (1 - step * rule.p))
        else:
            policy = spec.policy
            derived = Custom(
                lambda k: _inner_sum(rule, k, step, policy),
                name="cross({})".format(rule),
            )
    if branch is Branch.DELTA:
        return SeriesSpec(1, spec.t0, derived, ZERO_RULE, T, spec.policy)
    return SeriesSpec(0, spec.t0, ZERO_RULE, derived, T, spec.policy)


def exp_series(params):
    """The series ``sum_k p**k h_k`` (or ``hat h_k``) of a constant-p exponential."""
    if not params.constant:
        raise DomainError("exponential series need a constant p")
    rule = Geometric(params.p)
    if params.kind is ExpKind.DELTA:
        return SeriesSpec(1, params.t0, rule, ZERO_RULE, params.scale)
    return SeriesSpec(0, params.t0, ZERO_RULE, rule, params.scale)


class TaylorDirection(enum.Enum):
    DELTA = "delta"
    NABLA = "nabla"
    COMBINED = "combined"


@dataclass(frozen=True)
class TaylorExpansion:
    direction: TaylorDirection
    order: int
    t0: Any
    t: Any
    coefficients: Tuple
    partial_sum: Any
    remainder: Any
    reconstructed: Any
    alpha: Any = None
    nabla_coefficients: Tuple = ()
    exact: bool = True
    degraded: bool = False
    fallback: bool = False


def _one_sided(f, branch, n, t0, t):
    T = base_scale(f.domain)
    kind = DerivKind.DELTA if branch is Branch.DELTA else DerivKind.NABLA
    mono = branch.monomial_kind
    coefficients = derivative_sequence(f, kind, t0, n)
    partial = ZERO if T.exact else 0.0
    for k, coefficient in enumerate(coefficients):
        partial = partial + coefficient * monomial(mono, k, t, t0, T)
    top = iterated_derivative(f, kind, n + 1)
    if branch is Branch.DELTA:
        shift, integral = T.sigma, delta_integral
    else:
        shift, integral = T.rho, nabla_integral

    def kernel(tau):
        return top(tau) * monomial(mono, n, t, shift(tau), T)

    remainder = integral(GridFunction(T, kernel, exact=f.exact), t0, t)
    return tuple(coefficients), partial, remainder, top.fallback


def taylor(f, direction, n, t0, t, alpha=None):
    """Taylor expansion of f about t0 evaluated at t, with its exact remainder.

    The delta remainder is the delta integral of ``f^(delta^(n+1))(tau)
    h_n(t, sigma(tau))``; the nabla remainder is the nabla integral of
    ``f^(nabla^(n+1))(tau) hat h_n(t, rho(tau))``.
    """
    direction = TaylorDirection(direction)
    if n < 0:
        raise DomainError("Taylor order must be non-negative, got {}".format(n))
    T = base_scale(f.domain)
    t0, t = T.point(t0), T.point(t)
    if direction is TaylorDirection.COMBINED:
        if alpha is None:
            raise DomainError("a combined expansion needs an alpha")
        alpha = as_rational(alpha)
        if not 0 <= alpha <= 1:
            raise DomainError("alpha must lie in [0, 1], got {}".format(alpha))
    elif direction is TaylorDirection.DELTA:
        alpha = Fraction(1)
    else:
        alpha = Fraction(0)

    sides = {}
    failures = {}
    for branch, weight in ((Branch.DELTA, alpha), (Branch.NABLA, 1 - alpha)):
        if weight == 0:
            continue
        try:
            sides[branch] = _one_sided(f, branch, n, t0, t)
        except DomainError as e:
            failures[branch] = e
    if not sides:
        raise next(iter(failures.values()))
    degraded = bool(failures)
    if degraded:
        logging.warning(
            "t0=%s is not interior for the %s direction; using %s only",
            t0,
            " and ".join(b.value for b in failures),
            " and ".join(b.value for b in sides),
        )
        alpha = Fraction(1) if Branch.DELTA in sides else Fraction(0)

    partial = remainder = ZERO if T.exact else 0.0
    for branch, (_, side_partial, side_remainder, _) in sides.items():
        weight = alpha if branch is Branch.DELTA else 1 - alpha
        partial = partial + weight * side_partial
        remainder = remainder + weight * side_remainder
    reconstructed = partial + remainder
    coefficient_values = [c for side in sides.values() for c in side[0]]
    exact = is_exact([partial, remainder, *coefficient_values])
    target = f(t)
    if exact and is_exact(target) and reconstructed != target:
        raise TimeScaleError(
            "Taylor identity does not close at t={}: {} != {}".format(
                t, reconstructed, target
            )
        )
    fallback = any(side[3] for side in sides.values())
    if fallback:
        logging.warning(
            "Taylor expansion of %s about t0=%s used difference stencils", f.name, t0
        )
    coefficients = nabla_coefficients = ()
    if Branch.DELTA in sides:
        coefficients = sides[Branch.DELTA][0]
    if Branch.NABLA in sides:
        if direction is TaylorDirection.COMBINED:
            nabla_coefficients = sides[Branch.NABLA][0]
        else:
            coefficients = sides[Branch.NABLA][0]
    return TaylorExpansion(
        direction=direction,
        order=n,
        t0=t0,
        t=t,
        coefficients=coefficients,
        partial_sum=partial,
        remainder=remainder,
        reconstructed=reconstructed,
        alpha=alpha if direction is TaylorDirection.COMBINED else None,
        nabla_coefficients=nabla_coefficients,
        exact=exact,
        degraded=degraded,
        fallback=fallback,
    )


class _DerivativeTable:
    """Grows ``f^(kind^k)(t0)`` in doubling sweeps."""

    def __init__(self, f, kind, t0):
        self.f = f
        self.kind = kind
        self.t0 = t0
        self.values = []
        self._lock = threading.Lock()

    def __call__(self, k):
        with self._lock:
            if k >= len(self.values):
                n = max(k, 2 * len(self.values), 8)
                self.values = derivative_sequence(self.f, self.kind, self.t0, n)
            return self.values[k]


def taylor_series_of(f, direction, t0):
    """The delta (or nabla) Taylor series of f about t0 as a SeriesSpec."""
    branch = Branch(direction)
    T = base_scale(f.domain)
    t0 = T.point(t0)
    kind = DerivKind.DELTA if branch is Branch.DELTA else DerivKind.NABLA
    rule = Custom(
        _DerivativeTable(f, kind, t0),
        name="{}-taylor({})".format(branch.value, f.name),
    )
    if branch is Branch.DELTA:
        return SeriesSpec(1, t0, rule, ZERO_RULE, T)
    return SeriesSpec(0, t0, ZERO_RULE, rule, T)
