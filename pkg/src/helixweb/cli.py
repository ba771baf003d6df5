"""Command-line frontend.

Exit codes: 0 on success, 1 when validation fails (invalid or
non-geometric input, invariant breach), 2 on input errors (malformed
JSON, unknown seed, bad arguments).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import HelixwebError, InputError, InvariantBreach
from .helices import (
    Helix,
    enumerate_height_functions,
    geometric_failure,
    strongness_failure,
    tilt,
)
from .jsonio import (
    collection_to_json,
    dumps,
    helix_from_json,
    helix_to_json,
    loads,
    quiver_to_dot,
    quiver_to_json,
)
from .exceptional import dual_collection
from .quivers import cross_check_tilt, helix_quiver
from .seeds import SEED_NAMES, seed_helix
from .web import web_bfs

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INPUT = 2


def _load_helix(args) -> Helix:
    if getattr(args, "seed", None):
        return seed_helix(args.seed)
    if not args.file:
        raise InputError("provide a helix file or --seed NAME")
    path = Path(args.file)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    return helix_from_json(loads(path.read_text(encoding="utf-8")))


def _cmd_validate(args) -> int:
    h = _load_helix(args)
    failure = strongness_failure(h)
    if failure is not None:
        print(f"not strong: {failure}")
        return EXIT_INVALID
    failure = geometric_failure(h)
    if failure is not None:
        print(f"not geometric: {failure}")
        return EXIT_INVALID
    print(f"ok: geometric helix of type ({h.n}, 3) on {h.surface.kind}")
    return EXIT_OK


def _cmd_quiver(args) -> int:
    h = _load_helix(args)
    q = helix_quiver(h)
    if args.format == "dot":
        sys.stdout.write(quiver_to_dot(q))
    else:
        sys.stdout.write(dumps(quiver_to_json(q)))
    return EXIT_OK


def _cmd_dual(args) -> int:
    h = _load_helix(args)
    sys.stdout.write(dumps(collection_to_json(dual_collection(h.thread))))
    return EXIT_OK


def _cmd_tilt(args) -> int:
    h = _load_helix(args)
    if not 0 <= args.vertex < h.n:
        raise InputError(f"vertex {args.vertex} out of range 0..{h.n - 1}")
    report = cross_check_tilt(h, args.vertex, args.direction)
    if not report.match:
        print("tilt/mutation cross-check failed", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(dumps(helix_to_json(report.tilted)))
    return EXIT_OK


def _cmd_height(args) -> int:
    h = _load_helix(args)
    if not 0 <= args.vertex < h.n:
        raise InputError(f"vertex {args.vertex} out of range 0..{h.n - 1}")
    levellings = enumerate_height_functions(h.thread, args.vertex, args.bound)
    sys.stdout.write(
        dumps(
            {
                "vertex": args.vertex,
                "bound": args.bound,
                "height_functions": [list(v) for v in levellings],
            }
        )
    )
    return EXIT_OK


def _cmd_web(args) -> int:
    h = _load_helix(args)
    graph = web_bfs(h, args.depth)
    if args.format == "dot":
        sys.stdout.write(graph.to_dot())
    else:
        sys.stdout.write(dumps(graph.to_json()))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    port = args.port or int(os.environ.get("HELIX_PORT", "8350"))
    app = create_app(state_dir=args.state_dir)
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return EXIT_OK


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help="helix JSON file")
    p.add_argument("--seed", choices=SEED_NAMES, help="use a builtin seed instead")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helixweb",
        description="exceptional collections, helices and CY3 quiver mutation "
        "on del Pezzo surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a helix file is geometric")
    _add_source(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("quiver", help="rolled-up quiver of a helix")
    _add_source(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=_cmd_quiver)

    p = sub.add_parser("dual", help="dual collection of the thread")
    _add_source(p)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("tilt", help="tilt at a vertex")
    _add_source(p)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--direction", choices=("left", "right"), default="left")
    p.set_defaults(func=_cmd_tilt)

    p = sub.add_parser("height", help="enumerate height functions for a vertex")
    _add_source(p)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--bound", type=int, default=3)
    p.set_defaults(func=_cmd_height)

    p = sub.add_parser("web", help="breadth-first tilt web")
    _add_source(p)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=_cmd_web)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--state-dir", default=None, help="snapshot sessions as JSON here")
    p.set_defaults(func=_cmd_serve)

    return parser


def cli_run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except HelixwebError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(cli_run())


if __name__ == "__main__":
    main()
