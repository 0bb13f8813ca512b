# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Process-wide tunables: tolerances, fallback step and truncation limits."""
import dataclasses
import logging
import os
from dataclasses import dataclass

import yaml

from timescales._validation import SETTINGS_SCHEMA, ConfigValidationError, check

ABS_TOL_ENV = "TIMESCALES_ABS_TOL"


@dataclass(frozen=True)
class Settings:
    fallback_step: float = 2.0**-20
    quad_abs_tol: float = 1e-10
    max_order: int = 4096
    abs_tol: float = 1e-12
    max_terms: int = 10000
    consecutive_small: int = 3
    ratio_window: int = 256
    ratio_margin: float = 1e-9

    @classmethod
    def from_environ(cls, environ=None):
        if environ is None:
            environ = os.environ
        raw = environ.get(ABS_TOL_ENV)
        if raw is None:
            return cls()
        try:
            abs_tol = float(raw)
        except ValueError:
            raise ConfigValidationError(
                ["{}={!r} is not a number".format(ABS_TOL_ENV, raw)]
            )
        if not abs_tol > 0:
            raise ConfigValidationError(["{} must be positive".format(ABS_TOL_ENV)])
        return cls(abs_tol=abs_tol)

    def replace(self, **overrides):
        check(overrides, SETTINGS_SCHEMA)
        return dataclasses.replace(self, **overrides)


_settings = None


def get_settings():
    global _settings
    if _settings is None:
        _settings = Settings.from_environ()
    return _settings


def clear_settings():
    global _settings
    _settings = None


def configure(**overrides):
    """Replace selected settings for the rest of the process."""
    global _settings
    _settings = get_settings().replace(**overrides)
    return _settings


def load_settings(stream):
    """Load a YAML or JSON config file from an opened stream and apply it."""
    try:
        data = yaml.safe_load(stream)
    except yaml.YAMLError as e:
        name = getattr(stream, "name", "<config>")
        raise ConfigValidationError(["Error parsing {}: {}".format(name, e)]) from e
    finally:
        stream.close()

    if data is None:
        data = {}
    logging.debug("applying config overrides %r", sorted(data))
    return configure(**check(data, SETTINGS_SCHEMA))
