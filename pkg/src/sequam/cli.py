"""Thin command-line client for the bounds service.

By default every command talks to an in-process instance of the FastAPI
app over an ASGI transport, so no server has to be running; ``--server``
points the same commands at a remote instance instead.  ``serve`` starts
the service under uvicorn.

Exit codes: 0 success, 2 parse error (bad arguments or malformed input
files), 3 validation failure, 4 dimension mismatch, 5 inequality
violation.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

import httpx

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_DIMENSION = 4
EXIT_INEQUALITY = 5

_CATEGORY_EXIT_CODES = {
    "parse": EXIT_PARSE,
    "validation": EXIT_VALIDATION,
    "dimension": EXIT_DIMENSION,
}


class CliError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


class ServiceClient:
    """POSTs JSON to the service, in-process unless a base URL is given."""

    def __init__(self, base_url: str | None = None, timeout: float = 600.0):
        self._base_url = base_url
        self._timeout = timeout

    def post(self, path: str, payload: dict) -> tuple[int, dict]:
        if self._base_url is None:
            return asyncio.run(self._post_in_process(path, payload))
        try:
            with httpx.Client(base_url=self._base_url, timeout=self._timeout) as client:
                response = client.post(path, json=payload)
        except httpx.HTTPError as exc:
            raise CliError(EXIT_PARSE, f"cannot reach service: {exc}")
        return response.status_code, response.json()

    async def _post_in_process(self, path: str, payload: dict) -> tuple[int, dict]:
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://sequam.internal", timeout=self._timeout
        ) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()


def _raise_for_error(status: int, body: dict) -> None:
    if status < 400:
        return
    detail = body.get("detail")
    if isinstance(detail, dict) and "category" in detail:
        category = detail["category"]
        message = detail.get("message", "")
        code = _CATEGORY_EXIT_CODES.get(category, EXIT_PARSE)
        raise CliError(code, f"{category} error: {message}")
    # FastAPI's own request validation (shape/range problems) lands here
    raise CliError(EXIT_PARSE, f"request rejected (HTTP {status}): {json.dumps(detail)}")


def _load_json_file(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_PARSE, f"malformed JSON in {path}: {exc}")
    if not isinstance(data, dict):
        raise CliError(EXIT_PARSE, f"{path}: expected a JSON object")
    return data


def _emit_table(body: dict, as_json: bool, out: str | None) -> None:
    header = body["header"]
    rows = body["rows"]
    if as_json:
        records = [dict(zip(header, row)) for row in rows]
        text = json.dumps(records, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        lines.extend(",".join(repr(float(v)) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--server", default=None, help="base URL of a running service; default is in-process")
    parser.add_argument("--threads", type=int, default=1, help="worker threads; results are identical for any value")


def _add_table_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="write output to this file instead of stdout")
    parser.add_argument("--json", action="store_true", help="emit a JSON array of records instead of CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sequam",
        description="Entropic uncertainty bounds for successive generalized measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fig2 = sub.add_parser("fig2", help="angle sweep of the D1 and c lower bounds (CSV)")
    group = fig2.add_mutually_exclusive_group()
    group.add_argument("--preset", choices=("a", "b", "c"), help="a: s=t=1, b: s=1/sqrt2 t=1, c: s=t=1/sqrt2")
    group.add_argument("--s", type=float, help="unsharpness of the first observable, in [0, 1]")
    fig2.add_argument("--t", type=float, help="unsharpness of the second observable, in [0, 1]")
    fig2.add_argument("--points", type=int, default=181)
    fig2.add_argument("--theta-max", type=float, default=math.pi / 2, help="sweep end angle, at most pi")
    _add_table_output(fig2)
    _add_common(fig2)

    fig3 = sub.add_parser("fig3", help="unsharpness trade-off sweep over s (CSV)")
    fig3.add_argument("--points", type=int, default=101)
    _add_table_output(fig3)
    _add_common(fig3)

    report = sub.add_parser("report", help="entropies and every lower bound for two observables")
    report.add_argument("--a", required=True, metavar="FILE", help="POVM JSON for the first observable")
    report.add_argument("--b", required=True, metavar="FILE", help="POVM JSON for the second observable")
    report.add_argument(
        "--instrument",
        default="luders",
        metavar="luders|process=FILE",
        help="first-measurement instrument (default: luders)",
    )
    report.add_argument(
        "--state",
        default="mixed",
        metavar="mixed|file=F|random=SEED",
        help="input state (default: maximally mixed)",
    )
    _add_common(report)

    verify = sub.add_parser("verify", help="randomized check of every inequality chain")
    verify.add_argument("--trials", type=int, required=True)
    verify.add_argument("--dim", type=int, choices=(2, 3, 4), required=True)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--json", action="store_true", help="emit the raw JSON summary")
    _add_common(verify)

    serve = sub.add_parser("serve", help="run the HTTP service under uvicorn")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _check_unit_arg(name: str, value: float | None) -> None:
    if value is not None and not 0.0 <= value <= 1.0:
        raise CliError(EXIT_PARSE, f"--{name} must lie in [0, 1], got {value}")


def cmd_fig2(args: argparse.Namespace) -> int:
    if args.preset is None and (args.s is None or args.t is None):
        raise CliError(EXIT_PARSE, "fig2 needs --preset or both --s and --t")
    if args.preset is not None and args.t is not None:
        raise CliError(EXIT_PARSE, "--preset already fixes s and t; drop --t")
    _check_unit_arg("s", args.s)
    _check_unit_arg("t", args.t)
    payload: dict[str, Any] = {
        "points": args.points,
        "theta_max": args.theta_max,
        "threads": args.threads,
    }
    if args.preset is not None:
        payload["preset"] = args.preset
    else:
        payload["s"] = args.s
        payload["t"] = args.t
    status, body = ServiceClient(args.server).post("/fig2", payload)
    _raise_for_error(status, body)
    _emit_table(body, args.json, args.out)
    return EXIT_OK


def cmd_fig3(args: argparse.Namespace) -> int:
    status, body = ServiceClient(args.server).post(
        "/fig3", {"points": args.points, "threads": args.threads}
    )
    _raise_for_error(status, body)
    _emit_table(body, args.json, args.out)
    return EXIT_OK


def _instrument_spec(arg: str) -> dict:
    if arg == "luders":
        return {"kind": "luders"}
    if arg.startswith("process="):
        return {"kind": "process", "process": _load_json_file(arg[len("process="):])}
    raise CliError(EXIT_PARSE, f"--instrument must be 'luders' or 'process=FILE', got {arg!r}")


def _state_spec(arg: str) -> dict:
    if arg == "mixed":
        return {"kind": "maximally-mixed"}
    if arg.startswith("random="):
        seed_text = arg[len("random="):]
        try:
            seed = int(seed_text)
        except ValueError:
            raise CliError(EXIT_PARSE, f"--state random seed must be an integer, got {seed_text!r}")
        return {"kind": "random", "seed": seed}
    if arg.startswith("file="):
        data = _load_json_file(arg[len("file="):])
        if "dim" not in data or "matrix" not in data:
            raise CliError(EXIT_PARSE, "state file needs keys 'dim' and 'matrix'")
        return {"kind": "matrix", "dim": data["dim"], "matrix": data["matrix"]}
    raise CliError(EXIT_PARSE, f"--state must be 'mixed', 'file=F' or 'random=SEED', got {arg!r}")


def cmd_report(args: argparse.Namespace) -> int:
    payload = {
        "a": _load_json_file(args.a),
        "b": _load_json_file(args.b),
        "instrument": _instrument_spec(args.instrument),
        "state": _state_spec(args.state),
    }
    status, body = ServiceClient(args.server).post("/report", payload)
    _raise_for_error(status, body)
    sys.stdout.write(json.dumps(body, indent=2) + "\n")
    if body.get("violations"):
        print("inequality violation detected", file=sys.stderr)
        return EXIT_INEQUALITY
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise CliError(EXIT_PARSE, f"--trials must be >= 1, got {args.trials}")
    payload = {
        "trials": args.trials,
        "dim": args.dim,
        "seed": args.seed,
        "threads": args.threads,
    }
    status, body = ServiceClient(args.server).post("/verify", payload)
    _raise_for_error(status, body)
    if args.json:
        sys.stdout.write(json.dumps(body, indent=2) + "\n")
    else:
        print(f"verify: trials={body['trials']} dim={body['dim']} seed={body['seed']}")
        for check in body["checks"]:
            status_word = "PASS" if check["passed"] else "FAIL"
            print(f"{status_word}  worst_slack={check['worst_slack']:+.6e}  {check['name']}")
    if not body["passed"]:
        print("INEQUALITY VIOLATION", file=sys.stderr)
        return EXIT_INEQUALITY
    if not args.json:
        print("all inequalities hold")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "fig2": cmd_fig2,
        "fig3": cmd_fig3,
        "report": cmd_report,
        "verify": cmd_verify,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
