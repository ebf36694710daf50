"""Command-line front end: config parsing, trace CSVs, run bundles.

Configs are flat ``key = value`` files whose keys mirror SimConfig
fields; ``#`` starts a comment.  A run writes one bundle per scheme
under the output directory: per-server trace CSVs, the across-server
aggregate CSV, and a manifest of the resolved configuration.  Bundles
contain no timestamps, so rerunning with the same inputs reproduces
them byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import enum
import os
import sys
from dataclasses import fields, replace
from pathlib import Path
from typing import get_type_hints

from .selection import SchemeKind
from .simulator import (
    TRACE_FIELDS,
    ConfigError,
    ExperimentResult,
    SimConfig,
    run_experiment,
)

AGGREGATE_FIELDS = tuple(f for f in TRACE_FIELDS if f != "server_id")

_FIELD_TYPES = get_type_hints(SimConfig)


def _cast(key: str, raw: str):
    """Parse one config value according to its SimConfig field type."""
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown config key {key!r}")
    target = _FIELD_TYPES[key]
    raw = raw.strip()
    try:
        if target is bool:
            lowered = raw.lower()
            if lowered in ("true", "yes", "on", "1"):
                return True
            if lowered in ("false", "no", "off", "0"):
                return False
            raise ValueError(raw)
        if target is int:
            return int(raw)
        if target is float:
            return float(raw)
        if target is SchemeKind:
            return SchemeKind(raw)
        return raw
    except ValueError as err:
        raise ConfigError(f"bad value for {key}: {raw!r}") from err


def parse_config(path: str | Path | None = None,
                 overrides: dict | None = None) -> SimConfig:
    """Build a validated SimConfig from an optional file plus overrides.

    Overrides win over the file; string override values go through the
    same casting as file values, already-typed ones pass straight in.
    Unknown keys and constraint violations raise ConfigError.
    """
    values: dict = {}
    if path is not None:
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(
                    f"{path}:{lineno}: expected 'key = value', got {line!r}"
                )
            key, _, raw = line.partition("=")
            values[key.strip()] = _cast(key.strip(), raw)
    for key, value in (overrides or {}).items():
        values[key] = _cast(key, value) if isinstance(value, str) else value
    unknown = set(values) - set(_FIELD_TYPES)
    if unknown:
        raise ConfigError(f"unknown config key {sorted(unknown)[0]!r}")
    cfg = SimConfig(**values)
    cfg.validate()
    return cfg


def _fmt(value) -> str:
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)  # shortest round-trip decimal
    return str(value)


def write_trace(path: Path, rows) -> None:
    """Write one per-server trace CSV (full column set)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_FIELDS)
        for row in rows:
            writer.writerow([_fmt(getattr(row, name)) for name in TRACE_FIELDS])


def write_aggregate(path: Path, rows) -> None:
    """Write the across-server aggregate CSV (no server_id column)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(AGGREGATE_FIELDS)
        for row in rows:
            writer.writerow([_fmt(getattr(row, name)) for name in AGGREGATE_FIELDS])


def write_bundle(out_dir: Path, result: ExperimentResult) -> Path:
    """Write one scheme's bundle and return its directory."""
    scheme_dir = Path(out_dir) / result.config.scheme.value
    scheme_dir.mkdir(parents=True, exist_ok=True)
    for i, trace in enumerate(result.traces):
        write_trace(scheme_dir / f"server_{i:02d}.csv", trace)
    write_aggregate(scheme_dir / "aggregate.csv", result.aggregate)
    manifest = "".join(
        f"{f.name} = {_fmt(getattr(result.config, f.name))}\n"
        for f in fields(SimConfig)
    )
    (scheme_dir / "manifest.txt").write_text(manifest)
    return scheme_dir


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="feelsim",
        description="Slot-based simulator of vehicle selection for "
                    "federated edge learning at roadside servers.",
    )
    parser.add_argument("--config", type=Path, default=None,
                        help="flat 'key = value' config file; # starts a comment")
    parser.add_argument("--scheme", choices=[s.value for s in SchemeKind],
                        default=None, help="selection scheme to simulate")
    parser.add_argument("--seed", type=int, default=None,
                        help="master seed (falls back to env FEEL_SEED, then config)")
    parser.add_argument("--slots", type=int, default=None,
                        help="maximum slots per server")
    parser.add_argument("--servers", type=int, default=None,
                        help="number of independent servers")
    parser.add_argument("--out", type=Path, default=Path("runs"),
                        help="output directory for run bundles")
    parser.add_argument("--compare", action="store_true",
                        help="run all four schemes against identical fleets")
    return parser


def run_cli(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides: dict = {}
    if args.scheme is not None:
        overrides["scheme"] = SchemeKind(args.scheme)
    seed = args.seed
    if seed is None and os.environ.get("FEEL_SEED"):
        raw = os.environ["FEEL_SEED"]
        try:
            seed = int(raw)
        except ValueError:
            print(f"feelsim: FEEL_SEED must be an integer, got {raw!r}",
                  file=sys.stderr)
            return 2
    if seed is not None:
        overrides["master_seed"] = seed
    if args.slots is not None:
        overrides["max_slots"] = args.slots
    if args.servers is not None:
        overrides["num_servers"] = args.servers

    try:
        cfg = parse_config(args.config, overrides)
    except ConfigError as err:
        print(f"feelsim: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"feelsim: cannot read config: {err}", file=sys.stderr)
        return 2

    schemes = list(SchemeKind) if args.compare else [cfg.scheme]
    for scheme in schemes:
        result = run_experiment(replace(cfg, scheme=scheme))
        bundle = write_bundle(args.out, result)
        last = result.aggregate[-1]
        print(
            f"{scheme.value}: {len(result.aggregate)} slots, "
            f"final backlog {last.queue_backlog_mb:.1f} MB, "
            f"selections {last.cumulative_selected:.1f}, "
            f"accuracy {last.accuracy:.4f} -> {bundle}"
        )
    return 0


def main() -> None:
    raise SystemExit(run_cli())


if __name__ == "__main__":
    main()
