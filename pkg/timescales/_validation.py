# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
import jsonschema

from timescales.errors import TimeScaleError

RATIONAL_PATTERN = r"^\s*[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?(/\d+)?\s*$"

RATIONAL_SCHEMA = {
    "type": ["string", "number"],
    "pattern": RATIONAL_PATTERN,
    "description": "A rational as a JSON number, a decimal string or a 'p/q' string.",
}

SCALE_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"enum": ["real", "uniform", "finite"]},
        "offset": RATIONAL_SCHEMA,
        "step": RATIONAL_SCHEMA,
        "points": {"type": "array", "items": RATIONAL_SCHEMA, "minItems": 2},
    },
    "required": ["type"],
    "additionalProperties": False,
}

RULE_SCHEMA = {
    "type": "object",
    "properties": {
        "rule": {"enum": ["explicit", "geometric"]},
        "values": {"type": "array", "items": RATIONAL_SCHEMA},
        "p": RATIONAL_SCHEMA,
        "factor": RATIONAL_SCHEMA,
    },
    "required": ["rule"],
    "additionalProperties": False,
}

POLICY_SCHEMA = {
    "type": "object",
    "properties": {
        "max_terms": {"type": "integer", "minimum": 1},
        "abs_tol": {"type": "number", "exclusiveMinimum": True, "minimum": 0},
        "consecutive_small": {"type": "integer", "minimum": 1},
        "ratio_window": {"type": "integer", "minimum": 2},
        "ratio_margin": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}

SERIES_SCHEMA = {
    "type": "object",
    "properties": {
        "alpha": RATIONAL_SCHEMA,
        "t0": RATIONAL_SCHEMA,
        "scale": SCALE_SCHEMA,
        "a": RULE_SCHEMA,
        "b": RULE_SCHEMA,
        "policy": POLICY_SCHEMA,
    },
    "required": ["scale"],
    "additionalProperties": False,
}

SETTINGS_SCHEMA = {
    "type": "object",
    "properties": {
        "fallback_step": {"type": "number", "exclusiveMinimum": True, "minimum": 0},
        "quad_abs_tol": {"type": "number", "exclusiveMinimum": True, "minimum": 0},
        "max_order": {"type": "integer", "minimum": 1},
        "abs_tol": {"type": "number", "exclusiveMinimum": True, "minimum": 0},
        "max_terms": {"type": "integer", "minimum": 1},
        "consecutive_small": {"type": "integer", "minimum": 1},
        "ratio_window": {"type": "integer", "minimum": 2},
        "ratio_margin": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}


class ConfigValidationError(TimeScaleError):
    """Raised when a scale, series or config document fails validation."""

    def __init__(self, error_list):
        super().__init__(error_list)
        self.error_list = error_list

    def __repr__(self):
        return "ConfigValidationError: %s" % ", ".join(self.error_list)

    def __str__(self):
        return repr(self)


def validate(payload, schema):
    """Validate `payload` against `schema`, returning an error list.

    jsonschema provides lots of information in it's errors, but it can be a bit
    of work to extract all the information.
    """
    v = jsonschema.Draft4Validator(schema, format_checker=jsonschema.FormatChecker())
    error_list = []
    for error in v.iter_errors(payload):
        message = error.message
        location = "/" + "/".join([str(c) for c in error.absolute_path])
        error_list.append(message + " at " + location)
    return error_list


def check(payload, schema):
    """Raise ConfigValidationError unless `payload` satisfies `schema`."""
    error_list = validate(payload, schema)
    if error_list:
        raise ConfigValidationError(error_list)
    return payload


def validate_schema(schema):
    """Validate that 'schema' is correct.

    This validates against the jsonschema v4 draft.

    :raises jsonschema.SchemaError: if the schema is invalid.
    """
    jsonschema.Draft4Validator.check_schema(schema)
