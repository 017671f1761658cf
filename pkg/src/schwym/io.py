"""Delimited/JSON emission helpers: 17-significant-digit floats, self-
describing headers with a config echo and content hash."""
from __future__ import annotations

import hashlib
import json
from pathlib import Path


def fmt(x) -> str:
    """IEEE-754 round-trip decimal formatting."""
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def header_comment(config: dict) -> list[str]:
    echo = " ".join(f"{k}={config[k]}" for k in sorted(config))
    return [f"# config: {echo}", f"# content-hash: {config_hash(config)}"]


def write_csv(path: Path, columns: list[str], rows, config: dict | None = None):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    if config is not None:
        lines.extend(header_comment(config))
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def write_json(path: Path, obj: dict):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2) + "\n")


def read_config_file(path: Path) -> dict[str, str]:
    """Flat KEY=VALUE config file; '#' starts a comment."""
    out: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line: {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out
