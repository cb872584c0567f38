"""Deterministic reports: versioned JSON, a plain-text rendering and helpers
for describing modules."""
from __future__ import annotations

import hashlib
import json
import math

from . import __version__

SCHEMA_VERSION = 1
TOOL = "gorenstein-quivers"


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def jsonable(value):
    if isinstance(value, float) and math.isinf(value):
        return "infinite"
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def make_report(command: str, input_digest: str | None, result: dict, status: str = "ok") -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "input_digest": input_digest,
        "status": status,
        "result": jsonable(result),
    }


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _human_lines(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_human_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_human_lines(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (dict, list)):
        return "none"
    return str(v)


def render_human(report: dict) -> str:
    head = f"{report['tool']} {report['version']} :: {report['command']} [{report['status']}]"
    return "\n".join([head] + _human_lines(report["result"])) + "\n"


def describe_module(m) -> dict:
    return {
        "dimension_vector": {v: d for v, d in m.dims.items() if d},
        "dimension": m.dimension,
    }
