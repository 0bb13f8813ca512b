# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).


from ._calculus import (  # NOQA
    DerivKind,
    Estimate,
    GridFunction,
    cross_relation_check,
    delta_derivative,
    delta_integral,
    derivative_sequence,
    diamond_antiderivative,
    diamond_derivative,
    diamond_integral,
    differentiate,
    iterated_derivative,
    nabla_derivative,
    nabla_integral,
)
from ._scale import (  # NOQA
    FiniteGrid,
    PointClass,
    RealLine,
    TimeScale,
    UniformGrid,
    classify,
    mu,
    nu,
    rho,
    scale_from_config,
    scale_from_string,
    sigma,
    trim,
)
from ._settings import clear_settings, configure, get_settings  # NOQA
from ._validation import ConfigValidationError  # NOQA
from .errors import (  # NOQA
    DivergenceError,
    DomainError,
    EmptyDomainError,
    RegionError,
    SingularityError,
    TimeScaleError,
)

__all__ = [
    "ConfigValidationError",
    "DerivKind",
    "DivergenceError",
    "DomainError",
    "EmptyDomainError",
    "Estimate",
    "FiniteGrid",
    "GridFunction",
    "PointClass",
    "RealLine",
    "RegionError",
    "SingularityError",
    "TimeScale",
    "TimeScaleError",
    "UniformGrid",
    "classify",
    "clear_settings",
    "configure",
    "cross_relation_check",
    "delta_derivative",
    "delta_integral",
    "derivative_sequence",
    "diamond_antiderivative",
    "diamond_derivative",
    "diamond_integral",
    "differentiate",
    "get_settings",
    "iterated_derivative",
    "mu",
    "nabla_derivative",
    "nabla_integral",
    "nu",
    "rho",
    "scale_from_config",
    "scale_from_string",
    "sigma",
    "trim",
]
