# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
"""Command results as plain data, written as JSON lines, YAML or CSV."""
import csv
import dataclasses
import enum
import json
import numbers
from dataclasses import dataclass, field
from typing import Any, Optional

import sympy
import yaml

from timescales._scale import TimeScale
from timescales.util import format_value, is_exact

SWEEP_COLUMNS = ("t", "value", "verdict", "terms_used")


@dataclass
class OutputRecord:
    command: str
    inputs: dict = field(default_factory=dict)
    result: Any = None
    exact: Optional[bool] = None
    diagnostics: Any = None

    def __post_init__(self):
        if self.exact is None:
            self.exact = is_exact(self.result)

    def _to_dict(self):
        result = {
            "command": self.command,
            "inputs": _to_dict(self.inputs),
            "result": _to_dict(self.result),
            "exact": self.exact,
        }
        if self.diagnostics is not None:
            result["diagnostics"] = _to_dict(self.diagnostics)
        return result


def _to_dict(source: Any):
    if hasattr(source, "_to_dict"):
        return source._to_dict()  # noqa
    elif isinstance(source, TimeScale):
        return source.to_config()
    elif isinstance(source, enum.Enum):
        return source.value
    elif source is None or isinstance(source, (bool, str)):
        return source
    elif isinstance(source, int):
        return source
    elif isinstance(source, (numbers.Number, sympy.Basic)):
        return format_value(source)
    elif isinstance(source, dict):
        return {str(key): _to_dict(value) for key, value in source.items()}
    elif isinstance(source, (list, tuple)):
        return [_to_dict(value) for value in source]
    elif hasattr(source, "to_config"):
        return source.to_config()
    elif dataclasses.is_dataclass(source):
        fields = dataclasses.fields(source)
        return {f.name: _to_dict(getattr(source, f.name)) for f in fields}
    else:
        return str(source)


def dumps(record):
    """One JSON line for a record."""
    return json.dumps(_to_dict(record), ensure_ascii=False)


def write_json_lines(records, stream):
    for record in records:
        stream.write(dumps(record))
        stream.write("\n")


def write_yaml(records, stream):
    yaml.safe_dump_all(
        [_to_dict(record) for record in records],
        stream,
        default_flow_style=False,
        sort_keys=False,
    )


def sweep_row(t, value, report):
    return {
        "t": format_value(t),
        "value": "" if value is None else format_value(value),
        "verdict": report.verdict.value,
        "terms_used": report.terms_used,
    }


def write_csv(rows, stream):
    writer = csv.DictWriter(stream, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
