"""Command-line front end.

Every subcommand is a thin client of the HTTP service: by default the
request runs against the app in-process over an ASGI transport (no
server needed); `--server URL` targets a running instance instead.

Exit codes: 0 success, 2 flag or validation errors, 3 numerical
failures (the failing component is named on stderr).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
import tempfile
from typing import Any

import httpx

from .service import create_app
from .sweeps import _VERSION

__all__ = ["main", "build_parser"]

_EXIT_OK = 0
_EXIT_USAGE = 2
_EXIT_NUMERICAL = 3


def _add_format_args(p: argparse.ArgumentParser, *, required: bool = True) -> None:
    p.add_argument(
        "--precision", "--p", dest="precision", type=int, required=required,
        help="mantissa precision p (p-1 explicit bits)",
    )
    p.add_argument(
        "--exponent-bits", "--E", dest="exponent_bits", type=int,
        required=required, help="exponent field width E",
    )


def _add_common_args(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument(
        "--format", choices=("csv", "json"), default=default_format,
        help=f"output format (default {default_format})",
    )
    p.add_argument(
        "--server", default=None,
        help="base URL of a running service (default: run in-process)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpentropy",
        description=(
            "Exact and approximate entropy of random variables quantized "
            "onto idealized floating-point formats"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_grid = sub.add_parser("grid", help="dump the representable grid")
    _add_format_args(p_grid)
    _add_common_args(p_grid, "csv")

    p_ent = sub.add_parser("entropy", help="entropy report for one distribution")
    p_ent.add_argument("--dist", required=True, help="e.g. gaussian:sigma=1")
    _add_format_args(p_ent)
    _add_common_args(p_ent, "json")

    p_sweep = sub.add_parser("sweep", help="sweep scale, precision, or exponent")
    p_sweep.add_argument(
        "--dist", action="append", required=True,
        help="distribution spec; repeat for a multi-distribution sweep",
    )
    p_sweep.add_argument(
        "--mode", choices=("scale", "precision", "exponent"), required=True,
    )
    _add_format_args(p_sweep, required=False)
    p_sweep.add_argument("--points", type=int, default=0,
                         help="sample count (scale mode)")
    p_sweep.add_argument("--min", dest="lo", type=float, default=None,
                         help="smallest scale (scale mode)")
    p_sweep.add_argument("--max", dest="hi", type=float, default=None,
                         help="largest scale (scale mode)")
    p_sweep.add_argument("--p-min", type=int, default=None)
    p_sweep.add_argument("--p-max", type=int, default=None)
    p_sweep.add_argument("--E-min", dest="E_min", type=int, default=None)
    p_sweep.add_argument("--E-max", dest="E_max", type=int, default=None)
    _add_common_args(p_sweep, "csv")

    p_bounds = sub.add_parser("bounds", help="certified divergence and smoothing bounds")
    p_bounds.add_argument("--dist", required=True)
    p_bounds.add_argument("--abs-tol", type=float, default=1e-9)
    _add_format_args(p_bounds)
    _add_common_args(p_bounds, "json")

    p_mc = sub.add_parser("mc", help="Monte Carlo entropy estimate")
    p_mc.add_argument("--dist", default=None)
    p_mc.add_argument("--cov", default=None,
                      help="covariance rows as JSON, e.g. [[1,0.5],[0.5,1]]")
    p_mc.add_argument("--samples", "--n", dest="samples", type=int, required=True)
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.add_argument("--chunk-size", type=int, default=1_000_000)
    p_mc.add_argument("--miller-madow", action=argparse.BooleanOptionalAction,
                      default=True)
    _add_format_args(p_mc)
    _add_common_args(p_mc, "json")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    return parser


def _sweep_payload(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict:
    mode = args.mode
    if mode == "scale":
        missing = [
            flag for flag, val in (
                ("--precision/--p", args.precision),
                ("--exponent-bits/--E", args.exponent_bits),
                ("--min", args.lo),
                ("--max", args.hi),
            ) if val is None
        ]
        if missing or args.points < 1:
            parser.error(
                "scale mode needs " + ", ".join(missing + (
                    ["--points >= 1"] if args.points < 1 else []))
            )
        lo, hi = args.lo, args.hi
        precision, exponent_bits = args.precision, args.exponent_bits
    elif mode == "precision":
        if args.exponent_bits is None or args.p_min is None or args.p_max is None:
            parser.error("precision mode needs --exponent-bits/--E, --p-min, --p-max")
        lo, hi = float(args.p_min), float(args.p_max)
        precision, exponent_bits = 0, args.exponent_bits
    else:
        if args.precision is None or args.E_min is None or args.E_max is None:
            parser.error("exponent mode needs --precision/--p, --E-min, --E-max")
        lo, hi = float(args.E_min), float(args.E_max)
        precision, exponent_bits = args.precision, 0
    return {
        "dists": args.dist,
        "mode": mode,
        "precision": precision,
        "exponent_bits": exponent_bits,
        "lo": lo,
        "hi": hi,
        "num_points": args.points,
    }


def _request_payload(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "grid":
        return "/grid", {
            "precision": args.precision, "exponent_bits": args.exponent_bits,
        }
    if cmd == "entropy":
        return "/entropy", {
            "dist": args.dist,
            "precision": args.precision, "exponent_bits": args.exponent_bits,
        }
    if cmd == "bounds":
        return "/bounds", {
            "dist": args.dist, "abs_tol": args.abs_tol,
            "precision": args.precision, "exponent_bits": args.exponent_bits,
        }
    if cmd == "mc":
        if (args.dist is None) == (args.cov is None):
            parser.error("provide exactly one of --dist or --cov")
        cov = None
        if args.cov is not None:
            try:
                cov = json.loads(args.cov)
            except json.JSONDecodeError as exc:
                parser.error(f"--cov is not valid JSON: {exc}")
        return "/mc", {
            "dist": args.dist, "cov": cov,
            "n_samples": args.samples, "seed": args.seed,
            "chunk_size": args.chunk_size, "miller_madow": args.miller_madow,
            "precision": args.precision, "exponent_bits": args.exponent_bits,
        }
    if cmd == "sweep":
        return "/sweep", _sweep_payload(args, parser)
    raise AssertionError(f"unhandled command {cmd}")


async def _post(server: str | None, path: str, payload: dict) -> tuple[int, Any]:
    if server is None:
        transport = httpx.ASGITransport(app=create_app())
        base_url = "http://fpentropy.internal"
    else:
        transport = None
        base_url = server
    async with httpx.AsyncClient(
        transport=transport, base_url=base_url, timeout=None
    ) as client:
        resp = await client.post(path, json=payload)
        return resp.status_code, resp.json()


def _field(v: Any) -> str:
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def _flatten(d: dict, prefix: str = "") -> dict:
    flat: dict[str, Any] = {}
    for k, v in d.items():
        if isinstance(v, dict):
            flat.update(_flatten(v, f"{prefix}{k}_"))
        elif isinstance(v, list):
            flat[f"{prefix}{k}"] = json.dumps(v)
        else:
            flat[f"{prefix}{k}"] = v
    return flat


def _grid_csv(body: dict) -> str:
    lines = [
        f"# version={_VERSION}",
        f"# precision={body['precision']}",
        f"# exponent_bits={body['exponent_bits']}",
        "index,value,lower,upper,width",
    ]
    for i in body["index"]:
        lines.append(",".join((
            str(body["index"][i]),
            _field(body["value"][i]),
            _field(body["lower"][i]),
            _field(body["upper"][i]),
            _field(body["width"][i]),
        )))
    return "\n".join(lines) + "\n"


def _render(command: str, fmt: str, body: Any) -> str:
    if fmt == "json":
        if command == "sweep":
            body = body["rows"]
        return json.dumps(body, indent=2) + "\n"
    if command == "sweep":
        return body["csv"]
    if command == "grid":
        return _grid_csv(body)
    flat = _flatten(body)
    import csv as _csv
    import io as _io
    buf = _io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(flat.keys())
    writer.writerow([_field(v) for v in flat.values()])
    return buf.getvalue()


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return _EXIT_OK

    path, payload = _request_payload(args, parser)
    try:
        status, body = asyncio.run(_post(args.server, path, payload))
    except httpx.HTTPError as exc:
        print(f"numerical failure in transport: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL

    if status == 200:
        _write_out(_render(args.command, args.format, body), args.out)
        return _EXIT_OK
    if status in (400, 422):
        detail = body.get("detail", body)
        print(f"error: {detail}", file=sys.stderr)
        return _EXIT_USAGE
    component = body.get("component", "service") if isinstance(body, dict) else "service"
    message = body.get("message", body) if isinstance(body, dict) else body
    print(f"numerical failure in {component}: {message}", file=sys.stderr)
    return _EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
