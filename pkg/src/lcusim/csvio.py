"""Deterministic CSV and manifest writing.

Floats are rendered with 17 significant digits so parsing the file recovers
the exact double; identical inputs therefore produce identical bytes. The
manifest (config hash, per-file checksums, wall-clock, parameter echo) is
written only after every CSV of a run has been flushed, so its presence marks
a complete run.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

MANIFEST_NAME = "manifest.json"


def format_value(value) -> str:
    if isinstance(value, bool):
        raise TypeError("boolean CSV fields are not part of any schema")
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, str):
        if "," in value or "\n" in value:
            raise ValueError(f"CSV field would need quoting: {value!r}")
        return value
    raise TypeError(f"unsupported CSV field type {type(value).__name__}")


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"row width {len(row)} does not match header "
                                 f"width {len(header)}")
            handle.write(",".join(format_value(field) for field in row) + "\n")


def sha256_bytes(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


def sha256_file(path: str) -> str:
    with open(path, "rb") as handle:
        return sha256_bytes(handle.read())


@dataclass(frozen=True)
class RunManifest:
    """Checksums and provenance of one completed run."""

    config_sha256: str
    files: dict[str, str]  # basename -> sha256
    wall_clock_seconds: float
    experiments: list[dict]


def write_manifest(out_dir: str, manifest: RunManifest) -> str:
    path = os.path.join(out_dir, MANIFEST_NAME)
    payload = {
        "config_sha256": manifest.config_sha256,
        "files": dict(sorted(manifest.files.items())),
        "wall_clock_seconds": manifest.wall_clock_seconds,
        "experiments": manifest.experiments,
    }
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path
