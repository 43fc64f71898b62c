"""Command-line front-end, a thin client of the HTTP service.

    spinchain spectrum  <config> --dp-min HZ --dp-max HZ --points N --out CSV
    spinchain metrics   <config> --dp HZ --omega-min HZ --omega-max HZ \
                        --points N --mode {ef,gd,tau} --out CSV
    spinchain reproduce <figure-id> --out-dir DIR

The config file is parsed locally; the resolved configuration is posted to
the service, which does all solving.  By default the service app runs
in-process (no daemon needed); set ``--server URL`` or the
``SPINCHAIN_SERVER`` environment variable to target a running instance.

Every CSV is written atomically (temp file + rename; no partial output on
error) with full round-trip numeric precision, and is accompanied by a
``<name>.manifest.json`` recording the command, flags, resolved config,
grid, tolerances, tool version and wall-clock duration.  Re-running a
command with the inputs recorded in a manifest reproduces the CSV
byte-identically.

Exit codes: 0 success, 1 configuration/usage error (the message names the
offending key or line), 2 solver failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
import time

import httpx

from . import __version__
from .configio import config_to_dict, load_config
from .errors import ConfigError, SpinchainError
from .presets import FIGURE_IDS
from .steady import DEFAULT_MAX_ITER, DEFAULT_TOL

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SOLVER = 2
EXIT_IO = 3

SERVER_ENV = "SPINCHAIN_SERVER"

SPECTRUM_COLUMNS = ("delta_p_hz", "T", "phase_rad", "tau_g_s")
METRICS_COLUMNS = ("omega_hz", "value")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # accept scientific notation ("-5e6") as a negative-number value
        self._negative_number_matcher = re.compile(
            r"^-(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$"
        )

    def error(self, message: str):  # exit 1, not argparse's default 2
        raise _UsageError(message)


class _HttpFailure(Exception):
    def __init__(self, exit_code: int, detail: str):
        self.exit_code = exit_code
        self.detail = detail
        super().__init__(detail)


def _build_parser() -> _Parser:
    parser = _Parser(prog="spinchain", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--server",
        default=None,
        help=f"service base URL (default: in-process; env {SERVER_ENV})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="sweep probe transmission over detuning")
    sp.add_argument("config_path")
    sp.add_argument("--dp-min", type=float, required=True, help="grid start [Hz]")
    sp.add_argument("--dp-max", type=float, required=True, help="grid end [Hz]")
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--out", required=True, help="output CSV path")

    mt = sub.add_parser("metrics", help="sweep metrics over spin-rate magnitude")
    mt.add_argument("config_path")
    mt.add_argument("--dp", type=float, required=True, help="probe detuning [Hz]")
    mt.add_argument("--omega-min", type=float, required=True)
    mt.add_argument("--omega-max", type=float, required=True)
    mt.add_argument("--points", type=int, required=True)
    mt.add_argument("--mode", choices=("ef", "gd", "tau"), required=True)
    mt.add_argument("--out", required=True)

    rp = sub.add_parser("reproduce", help="emit a bundled figure preset")
    rp.add_argument("figure_id")
    rp.add_argument("--out-dir", required=True)
    return parser


def _client(server: str | None) -> httpx.Client:
    base = server or os.environ.get(SERVER_ENV)
    if base:
        return httpx.Client(base_url=base, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _post(client: httpx.Client, path: str, body: dict) -> dict:
    try:
        response = client.post(path, json=body)
    except httpx.HTTPError as exc:
        raise _HttpFailure(EXIT_IO, f"service request failed: {exc}") from exc
    if response.status_code == 200:
        return response.json()
    try:
        payload = response.json()
    except ValueError:
        payload = {}
    detail = payload.get("detail", response.text)
    kind = payload.get("error")
    if kind == "solver" or response.status_code >= 500:
        raise _HttpFailure(EXIT_SOLVER, str(detail))
    raise _HttpFailure(EXIT_CONFIG, str(detail))


def _format_value(value: float) -> str:
    return repr(float(value))


def _write_csv_atomic(path: str, columns: tuple[str, ...], rows: list[list[float]]) -> None:
    text = ",".join(columns) + "\n"
    text += "\n".join(",".join(_format_value(v) for v in row) for row in rows)
    text += "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_manifest(path: str, manifest: dict) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _manifest(command: str, flags: dict, config_dict, output: str, started: float, server: str | None) -> dict:
    return {
        "tool": "spinchain",
        "version": __version__,
        "command": command,
        "flags": flags,
        "config": config_dict,
        "tolerances": {"steady_tol": DEFAULT_TOL, "steady_max_iter": DEFAULT_MAX_ITER},
        "output": os.path.basename(output),
        "server": server or "in-process",
        "duration_s": time.perf_counter() - started,
    }


def _config_body(config) -> dict:
    d = config_to_dict(config)
    return {
        "resonators": d["resonators"],
        "coupling_j_hz": d["coupling_j_hz"],
        "drive": d["drive"],
    }


def _cmd_spectrum(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    config = load_config(args.config_path)
    if args.points < 3:
        raise _UsageError("--points must be at least 3")
    body = {
        "config": _config_body(config),
        "dp_min_hz": args.dp_min,
        "dp_max_hz": args.dp_max,
        "points": args.points,
    }
    with _client(args.server) as client:
        payload = _post(client, "/v1/spectrum", body)
    rows = [
        [dp, t, ph, tau]
        for dp, t, ph, tau in zip(
            payload["delta_p_hz"],
            payload["transmission"],
            payload["phase_rad"],
            payload["tau_g_s"],
        )
    ]
    _write_csv_atomic(args.out, SPECTRUM_COLUMNS, rows)
    flags = {
        "dp_min": args.dp_min,
        "dp_max": args.dp_max,
        "points": args.points,
        "out": args.out,
    }
    manifest = _manifest("spectrum", flags, config_to_dict(config), args.out, started, args.server)
    manifest["grid"] = {"dp_min_hz": args.dp_min, "dp_max_hz": args.dp_max, "points": args.points}
    _write_manifest(args.out + ".manifest.json", manifest)
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    config = load_config(args.config_path)
    body = {
        "config": _config_body(config),
        "delta_p_hz": args.dp,
        "omega_min_hz": args.omega_min,
        "omega_max_hz": args.omega_max,
        "points": args.points,
        "mode": args.mode,
    }
    with _client(args.server) as client:
        payload = _post(client, "/v1/metrics", body)
    rows = [[om, val] for om, val in zip(payload["omega_hz"], payload["value"])]
    _write_csv_atomic(args.out, METRICS_COLUMNS, rows)
    flags = {
        "dp": args.dp,
        "omega_min": args.omega_min,
        "omega_max": args.omega_max,
        "points": args.points,
        "mode": args.mode,
        "out": args.out,
    }
    manifest = _manifest("metrics", flags, config_to_dict(config), args.out, started, args.server)
    manifest["grid"] = {
        "omega_min_hz": args.omega_min,
        "omega_max_hz": args.omega_max,
        "points": args.points,
        "delta_p_hz": args.dp,
    }
    _write_manifest(args.out + ".manifest.json", manifest)
    return EXIT_OK


def _cmd_reproduce(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    if args.figure_id not in FIGURE_IDS:
        raise _UsageError(
            f"unknown figure id {args.figure_id!r}; valid ids: {', '.join(FIGURE_IDS)}"
        )
    with _client(args.server) as client:
        payload = _post(client, "/v1/reproduce", {"figure_id": args.figure_id})
    os.makedirs(args.out_dir, exist_ok=True)
    for curve in payload["curves"]:
        columns = tuple(curve["columns"])
        axis = curve["data"][columns[0]]
        rows = [[curve["data"][c][i] for c in columns] for i in range(len(axis))]
        out = os.path.join(args.out_dir, f"{args.figure_id}_{curve['label']}.csv")
        _write_csv_atomic(out, columns, rows)
        manifest = _manifest(
            "reproduce",
            {"figure_id": args.figure_id, "out_dir": args.out_dir, "curve": curve["label"]},
            curve["config"],
            out,
            started,
            args.server,
        )
        manifest["grid"] = {
            "axis": columns[0],
            "min": min(axis),
            "max": max(axis),
            "points": len(axis),
        }
        _write_manifest(out + ".manifest.json", manifest)
    return EXIT_OK


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "metrics": _cmd_metrics,
    "reproduce": _cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"spinchain: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"spinchain: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"spinchain: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _HttpFailure as exc:
        print(f"spinchain: error: {exc.detail}", file=sys.stderr)
        return exc.exit_code
    except SpinchainError as exc:
        print(f"spinchain: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"spinchain: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
