"""Line-delimited JSON reading/writing and percent/fraction unit handling."""

from __future__ import annotations

import json
import os
from typing import Any, Iterator, Optional

from .errors import IoFailure, MalformedRecord, UnitMismatch

UNITS = ("percent", "fraction")


def iter_records(path: str | os.PathLike) -> Iterator[tuple[int, dict]]:
    """Yield ``(line_number, record)`` pairs; blank lines are skipped."""
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc.strerror or exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecord(lineno, f"invalid JSON ({exc.msg})", path) from None
            if not isinstance(record, dict):
                raise MalformedRecord(lineno, "record is not an object", path)
            yield lineno, record


def require_str(record: dict, key: str, lineno: int, path=None, allow_empty=False) -> str:
    value = record.get(key)
    if not isinstance(value, str):
        raise MalformedRecord(lineno, f"missing or non-string field {key!r}", path)
    if not allow_empty and not value.strip():
        raise MalformedRecord(lineno, f"empty field {key!r}", path)
    return value


def require_number(record: dict, key: str, lineno: int, path=None) -> float:
    value = record.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedRecord(lineno, f"missing or non-numeric field {key!r}", path)
    return float(value)


def is_units_header(record: dict) -> bool:
    return set(record) == {"units"}


def resolve_units(declared: Optional[str], requested: Optional[str], path=None) -> str:
    """Combine a file's header flag with the command-line unit flag."""
    for u in (declared, requested):
        if u is not None and u not in UNITS:
            raise UnitMismatch(f"unknown units {u!r}")
    if declared and requested and declared != requested:
        raise UnitMismatch(f"{path or 'input'} declares units {declared!r} but {requested!r} was requested")
    return declared or requested or "fraction"


def to_fraction(value: float, units: str) -> float:
    return value / 100.0 if units == "percent" else value


def from_fraction(value: float, units: str) -> float:
    return value * 100.0 if units == "percent" else value


class JsonlWriter:
    """Write records one per line; wraps OS errors in :class:`IoFailure`."""

    def __init__(self, path: str | os.PathLike):
        self.path = path
        try:
            self._fh = open(path, "w", encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc

    def write(self, record: Any) -> None:
        self._fh.write(json.dumps(record, ensure_ascii=False))
        self._fh.write("\n")

    def close(self) -> None:
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def write_text(path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc.strerror or exc}") from exc
