"""Append-only JSONL catalog of verified certificates."""

from __future__ import annotations

import json
import os
from datetime import datetime, timezone

from . import __version__
from .certification import Certificate, certificate_problems
from .diagram import canonical_json


def catalog_record(cert: Certificate) -> dict:
    return {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "p": cert.p,
        "S": list(cert.S),
        "certificate": cert.to_dict(),
        "tool_version": __version__,
    }


def append_certificate(path: str | os.PathLike, cert: Certificate) -> dict:
    """Verify ``cert`` and append one canonical JSON line to ``path``.

    A single ``os.write`` on an ``O_APPEND`` descriptor keeps concurrent
    appends from interleaving within a line.
    """
    problems = certificate_problems(cert)
    if problems:
        raise ValueError(f"refusing to catalog an invalid certificate: {problems}")
    record = catalog_record(cert)
    line = (canonical_json(record) + "\n").encode("utf-8")
    fd = os.open(os.fspath(path), os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
    try:
        os.write(fd, line)
    finally:
        os.close(fd)
    return record


def read_catalog(path: str | os.PathLike) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
