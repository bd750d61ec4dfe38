"""Command line for rendering simulator CSV output into figures.

Exit codes: 0 success, 2 bad arguments or malformed input schema, 4 I/O
failure (missing files, unwritable output).
"""

from __future__ import annotations

import argparse
import sys

from .figures import FigureSpec, preset_figure, render
from .reading import EmptyInput, SchemaError

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergoplot", description="Render ergokit trajectory CSVs into multi-panel figures."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_render = sub.add_parser("render", help="render a preset figure from a directory of CSVs")
    p_render.add_argument(
        "--preset", required=True, choices=("fig2", "fig3", "fig4", "fig5"),
        help="which simulator preset's outputs to draw",
    )
    p_render.add_argument("--in-dir", required=True, help="directory holding the preset's CSVs")
    p_render.add_argument("--out", required=True, help="output image path (png, pdf, svg, ...)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec: FigureSpec = preset_figure(args.preset, args.in_dir, args.out)
        render(spec)
    except (SchemaError, EmptyInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
