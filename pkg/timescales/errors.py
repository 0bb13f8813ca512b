# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).


class TimeScaleError(Exception):
    """Base class for all timescales errors."""


class DomainError(TimeScaleError, ValueError):
    """A point or an order is outside the domain an operation needs."""

    def __init__(self, msg, point=None):
        super().__init__(msg)
        self.point = point


class EmptyDomainError(DomainError):
    pass


class SingularityError(TimeScaleError, ZeroDivisionError):
    """A regressivity condition or a formula denominator vanished."""


class RegionError(SingularityError):
    pass


class DivergenceError(TimeScaleError, ArithmeticError):
    """Raised when a series value is withheld because it diverges."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report
