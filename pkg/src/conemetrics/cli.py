"""Command-line client.

    conemetrics check '[0.5, 0.5, 0.5]'
    conemetrics realize '["1/2", "1/2", "1/2"]' --seed 3
    conemetrics path '[...]' '[...]'
    conemetrics --batch < requests.jsonl

Requests run in-process unless ``--url`` points at a running service.
Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from .api import DOMAIN, OK, USAGE, handle

COMMANDS = ("check", "reduce", "realize", "plan", "cover", "path")
HTTP_EXIT = {200: OK, 422: DOMAIN, 400: USAGE}


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tolerance", type=float, default=default(None),
                        help="float comparison tolerance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=default(None), help="seed for the realizer")
    parser.add_argument("--unit", choices=("pi", "two_pi"), default=default(None),
                        help="unit of the input angles (default: two_pi, cover: pi)")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="style", action="store_const", const="json", default=default("json"),
                     help="one compact JSON document per response (default)")
    fmt.add_argument("--pretty", dest="style", action="store_const", const="pretty", default=default(None),
                     help="indented JSON")
    parser.add_argument("--url", default=default(None), help="send requests to a running service")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conemetrics", description=__doc__.split("\n\n")[0])
    _global_flags(parser, suppress=False)
    parser.add_argument("--batch", action="store_true",
                        help="read one JSON request per line from stdin")
    parser.add_argument("--workers", type=int, default=1, help="concurrent requests in batch mode")
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        _global_flags(p, suppress=True)
        p.add_argument("theta", help="JSON list of angles; use \"p/q\" strings for exact input")
        if name == "path":
            p.add_argument("theta_b", help="second endpoint")
            p.add_argument("--samples", type=int, default=None, help="checks per segment")
        if name == "reduce":
            p.add_argument("--stop-at", type=int, choices=(3, 4), default=None)
        if name == "cover":
            p.add_argument("--cube", default=None, help="JSON list: half-integral cube centre")
    return parser


def _options(args) -> dict:
    opts = {}
    for key in ("tolerance", "seed", "unit", "samples"):
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    if getattr(args, "stop_at", None) is not None:
        opts["stop_at"] = args.stop_at
    return opts


def _run(payload, url: Optional[str]) -> tuple:
    if url is None:
        return handle(payload)
    import httpx

    resp = httpx.post(url.rstrip("/") + "/v1/run", json=payload, timeout=120)
    return resp.json(), HTTP_EXIT.get(resp.status_code, DOMAIN)


def _emit(body: dict, style: str):
    if style == "pretty":
        print(json.dumps(body, indent=2))
    else:
        print(json.dumps(body, separators=(",", ":")))


def _usage(message: str, command=None) -> tuple:
    return {"command": command, "options": {},
            "error": {"code": "usage_error", "kind": "usage", "message": message}}, USAGE


def _single(args) -> tuple:
    payload = {"command": args.command, "options": _options(args)}
    try:
        payload["theta"] = json.loads(args.theta)
        if args.command == "path":
            payload["theta_b"] = json.loads(args.theta_b)
        if getattr(args, "cube", None) is not None:
            payload["options"]["cube"] = json.loads(args.cube)
    except json.JSONDecodeError as exc:
        return _usage(f"malformed JSON: {exc}", args.command)
    return _run(payload, args.url)


def _batch_line(line: str, defaults: dict, url) -> tuple:
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as exc:
        return _usage(f"malformed JSON: {exc}")
    if not isinstance(payload, dict):
        return _usage("each line must be a JSON object")
    if isinstance(payload.get("options", {}), dict):
        payload["options"] = {**defaults, **payload.get("options", {})}
    return _run(payload, url)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.batch:
        if args.command:
            parser.error("--batch takes requests from stdin, not a subcommand")
        lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
        defaults = _options(args)
        with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
            results = list(pool.map(lambda ln: _batch_line(ln, defaults, args.url), lines))
        worst = OK
        for body, code in results:
            _emit(body, args.style)
            worst = max(worst, code)
        return worst
    if not args.command:
        parser.print_usage(sys.stderr)
        return USAGE
    body, code = _single(args)
    _emit(body, args.style)
    if code:
        print(f"conemetrics: {body['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
