"""``ahg`` command line.

    ahg compute --input job.json [--format json|text] [--orientation ccw|cw] [--allow-non-generating]
    ahg verify --input job.json --catalog {power,hermite,kummer_square}
    ahg check-nondegeneracy --input job.json

Exit codes: 0 success, 2 invalid input, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

from . import __version__
from . import reporting as rp
from .ode_oracle import CATALOG_IDS


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ahg", description=__doc__.splitlines()[0] if __doc__ else None)
    parser.add_argument("--version", action="version", version=f"ahg {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", "-i", required=True, help="job JSON file ('-' for stdin)")
        p.add_argument("--format", choices=["json", "text"], default=None)
        p.add_argument("--output", "-o", default="-", help="output file ('-' for stdout)")

    p = sub.add_parser("compute", help="characteristic polynomial of the monodromy at infinity")
    common(p)
    p.add_argument("--orientation", choices=["ccw", "cw"], default=None)
    p.add_argument("--allow-non-generating", action="store_true",
                   help="evaluate a full-dimensional A that spans a proper sublattice (result is flagged)")

    p = sub.add_parser("verify", help="compare the engine against numeric loop monodromy")
    common(p)
    p.add_argument("--catalog", choices=CATALOG_IDS, required=True)
    p.add_argument("--orientation", choices=["ccw", "cw"], default=None)

    p = sub.add_parser("check-nondegeneracy", help="face-by-face non-degeneracy of h_z (needs z)")
    common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = rp.load_config(args.input, catalog=getattr(args, "catalog", None))
        if getattr(args, "orientation", None):
            config = dataclasses.replace(config, orientation=args.orientation)
        if args.command == "check-nondegeneracy":
            if config.z is None:
                raise rp.ConfigError("check-nondegeneracy requires z", "/z")
            result = rp.run(dataclasses.replace(config, verify=None), with_reports=False)
        elif args.command == "verify":
            result = rp.run(config)
        else:
            result = rp.run(dataclasses.replace(config, verify=None), strict=not args.allow_non_generating)
    except rp.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return rp.EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return rp.EXIT_INVALID

    fmt = args.format or config.format
    text = rp.render_text(result) if fmt == "text" else rp.render_json(result)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if result.exit_code == rp.EXIT_MISMATCH:
        print("error: verification mismatch", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
