"""Command-line entry point: run a sweep and write its artifacts."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import (
    SweepResult,
    allocations_filename,
    default_config,
    emit_allocations,
    emit_csv,
    emit_plot,
    load_config,
    run_sweep,
)
from .errors import ConfigError
from .rates import SchemeKind


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="semsec",
        description=(
            "Maximize the ergodic secrecy rate of a semantic-assisted wiretap "
            "link over simulated Rayleigh fading and compare schemes."
        ),
    )
    parser.add_argument("--config", type=Path, default=None, help="JSON experiment file")
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None, help="override the RNG seed")
    parser.add_argument(
        "--schemes",
        type=str,
        default=None,
        help="comma-separated scheme tags to run (default: all)",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress progress output")
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else default_config()
        if args.out is not None:
            cfg = dataclasses.replace(cfg, output_dir=str(args.out))
        if args.seed is not None:
            cfg = dataclasses.replace(
                cfg, channel=dataclasses.replace(cfg.channel, seed=args.seed)
            )
        if args.schemes is not None:
            tags = [t.strip() for t in args.schemes.split(",") if t.strip()]
            try:
                schemes = tuple(SchemeKind(t) for t in tags)
            except ValueError:
                bad = next(t for t in tags if t not in SchemeKind._value2member_map_)
                raise ConfigError(f"unknown scheme tag {bad!r} in --schemes")
            cfg = dataclasses.replace(cfg, schemes=schemes)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    try:
        result = run_sweep(cfg, quiet=args.quiet)
    except Exception as exc:
        print(f"sweep failed: {exc}", file=sys.stderr)
        return 1

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    emit_csv(result, out / "sweep.csv")
    base_k = cfg.semantic.k
    for row in result.rows:
        emit_allocations(
            row, out / allocations_filename(row.scheme, row.p_bar_w, row.k, base_k)
        )

    base_rows = [r for r in result.rows if r.k == base_k or r.scheme != "sc_sca"]
    if base_rows:
        emit_plot(dataclasses.replace(result, rows=base_rows), out / "fig2.svg")
    sca_rows = [r for r in result.rows if r.scheme == "sc_sca"]
    if sca_rows:
        emit_plot(dataclasses.replace(result, rows=sca_rows), out / "fig3.svg")

    if not args.quiet:
        print(f"wrote {out / 'sweep.csv'} ({len(result.rows)} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
