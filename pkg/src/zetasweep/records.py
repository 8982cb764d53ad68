"""Result records: newline-delimited structured text, one value per line.

Every record starts with a self-describing header (schema version, library
version, the full config echo, kernel precision, grid resolution), followed
by payload lines.  Sample rows are arrays [tau, E, status]; report payloads
are small objects with a "kind" discriminator.  Reals are always written with
17 significant digits so that re-parsing reproduces the exact doubles.

Records are reproducible byte for byte: the only environment-dependent field
is the timestamp, which honours SOURCE_DATE_EPOCH (the reproducible-builds
convention) and falls back to wall-clock time when unset.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from dataclasses import dataclass
from datetime import datetime, timezone

from .errors import ConfigError

RECORD_SCHEMA_VERSION = 1


def _fmt_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        return format(value, ".17g")
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt_value(v) for v in value) + "]"
    if isinstance(value, dict):
        parts = (f"{json.dumps(str(k), ensure_ascii=False)}: {_fmt_value(v)}"
                 for k, v in value.items())
        return "{" + ", ".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__} into a record")


def timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    seconds = int(epoch) if epoch is not None else int(time.time())
    return datetime.fromtimestamp(seconds, tz=timezone.utc).strftime(
        "%Y-%m-%dT%H:%M:%SZ")


def config_digest(config_text: str) -> str:
    return hashlib.sha256(config_text.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class ResultRecord:
    header: dict
    rows: tuple

    @property
    def command(self) -> str:
        return self.header.get("command", "")

    def config_text(self) -> str:
        return self.header["config_text"]

    def sample_rows(self) -> list[list]:
        return [r for r in self.rows if isinstance(r, list)]

    def payload_objects(self, kind: str | None = None) -> list[dict]:
        out = [r for r in self.rows if isinstance(r, dict)]
        if kind is not None:
            out = [r for r in out if r.get("kind") == kind]
        return out


def make_header(command: str, config_text: str, precision, grid_step,
                library_version: str) -> dict:
    return {
        "kind": "result_record",
        "schema_version": RECORD_SCHEMA_VERSION,
        "library_version": library_version,
        "timestamp": timestamp(),
        "command": command,
        "config_digest": config_digest(config_text),
        "config_text": config_text,
        "kernel_precision": {
            "shift_terms": precision.shift_terms,
            "bernoulli_order": precision.bernoulli_order,
            "target_tol": precision.target_tol,
        },
        "grid_step": grid_step,
    }


def dumps_record(record: ResultRecord) -> str:
    lines = [_fmt_value(record.header)]
    lines.extend(_fmt_value(row) for row in record.rows)
    lines.append(_fmt_value({"kind": "end", "rows": len(record.rows)}))
    return "\n".join(lines) + "\n"


def write_record(record: ResultRecord, path: str) -> None:
    text = dumps_record(record)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def loads_record(text: str) -> ResultRecord:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ConfigError("empty record")
    try:
        parsed = [json.loads(line) for line in lines]
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed record line: {exc}") from None
    header = parsed[0]
    if not isinstance(header, dict) or header.get("kind") != "result_record":
        raise ConfigError("record does not start with a result_record header")
    rows = parsed[1:]
    if rows and isinstance(rows[-1], dict) and rows[-1].get("kind") == "end":
        rows = rows[:-1]
    return ResultRecord(header, tuple(rows))


def read_record(path: str) -> ResultRecord:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_record(fh.read())
