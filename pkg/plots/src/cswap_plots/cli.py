"""plots command line: render figures from cswap-lab CSV directories."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import RenderError, render, render_all
from .specs import FIGURE_SPECS


def _parse_formats(raw: str) -> tuple[str, ...]:
    formats = tuple(f.strip() for f in raw.split(",") if f.strip())
    bad = set(formats) - {"svg", "png"}
    if bad or not formats:
        raise ValueError(f"unsupported formats: {sorted(bad) or raw!r}")
    return formats


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render figures from cswap-lab CSV output.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_all = sub.add_parser("render-all",
                           help="render every spec with data present")
    p_all.add_argument("--csv-dir", required=True)
    p_all.add_argument("--out-dir", required=True)
    p_all.add_argument("--format", default="svg,png")

    p_one = sub.add_parser("render", help="render a single experiment")
    p_one.add_argument("--experiment", required=True)
    p_one.add_argument("--csv", required=True)
    p_one.add_argument("--out-dir", required=True)
    p_one.add_argument("--format", default="svg,png")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        formats = _parse_formats(args.format)
        if args.command == "render-all":
            manifest = render_all(args.csv_dir, args.out_dir, formats)
            print(f"wrote {len(manifest['written'])} files, "
                  f"skipped {len(manifest['skipped'])}, "
                  f"{len(manifest['tabular_only'])} tabular-only")
            for entry in manifest["skipped"]:
                print(f"  skipped {entry['experiment_id']}: {entry['reason']}")
            return 0
        spec = FIGURE_SPECS.get(args.experiment)
        if spec is None:
            print(f"unknown experiment {args.experiment!r}", file=sys.stderr)
            return 2
        files = render(spec, Path(args.csv), args.out_dir, formats)
        for f in files:
            print(f)
        return 0
    except (RenderError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
