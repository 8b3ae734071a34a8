"""Command-line frontend: validate maps, replay sessions, score, serve.

Exit codes: 0 success, 1 domain failure (invalid map, malformed log,
degenerate statistics), 2 usage error (bad flags, unreadable files).
"""
from __future__ import annotations

import argparse
import json
import socket
import sys
import time
from pathlib import Path

from . import sus
from ._fmt import fmt_num
from .engine import EngineConfig, ReplayError, run_replay
from .gestures import GestureParams, StreamError
from .mapmodel import MapError, parse_map, validate_map
from .sessionlog import LogFormatError, parse_session_log

DEFAULT_PORT = 8700


def _read_bytes(path: str) -> bytes:
    return Path(path).read_bytes()


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        data = _read_bytes(args.map)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        doc = parse_map(data)
    except MapError as exc:
        print(f"invalid map: {exc}", file=sys.stderr)
        return 1
    violations = validate_map(doc)
    counts = doc.count_by_kind()
    n = len(doc.elements) - counts.get("frame", 0)
    if args.json:
        print(
            json.dumps(
                {
                    "elements": n,
                    "by_kind": counts,
                    "violations": [
                        {"severity": v.severity, "element_id": v.element_id, "message": v.message}
                        for v in violations
                    ],
                },
                ensure_ascii=False,
            )
        )
        return 0
    for v in violations:
        where = f" [{v.element_id}]" if v.element_id else ""
        print(f"{v.severity}{where}: {v.message}")
    print(
        f"{n} elements ({counts.get('street', 0)} street, "
        f"{counts.get('poi', 0)} poi, {counts.get('river', 0)} river)"
    )
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    try:
        map_bytes = _read_bytes(args.map)
        log_text = _read_text(args.log)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        session = parse_session_log(log_text)
    except LogFormatError as exc:
        print(f"invalid log: {exc}", file=sys.stderr)
        return 1
    cfg = None
    if args.mode is not None:
        cfg = EngineConfig(interaction_mode=args.mode, gesture_params=session.params)
    try:
        announcements = run_replay(map_bytes, session, cfg)
    except (MapError, ReplayError, StreamError) as exc:
        print(f"replay failed: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(
            json.dumps(
                [{"t": a.t, "element_id": a.element_id, "text": a.text} for a in announcements],
                ensure_ascii=False,
            )
        )
        return 0
    prev_t = 0
    for a in announcements:
        if args.speed > 0:
            time.sleep(max(0, a.t - prev_t) / 1000.0 / args.speed)
            prev_t = a.t
        print(f"{a.t}\t{a.element_id}\t{a.text}")
    return 0


def cmd_sus(args: argparse.Namespace) -> int:
    try:
        text = _read_text(args.csv)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.subcommand == "score":
            return _sus_score(text, args.json)
        return _sus_stats(text, args.json)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _sus_score(text: str, as_json: bool) -> int:
    pairs = sus.load_responses(text)
    scored = [(user, sus.score(resp).value) for user, resp in pairs]
    if as_json:
        print(json.dumps([{"user": u, "score": v} for u, v in scored], ensure_ascii=False))
        return 0
    for user, value in scored:
        print(f"{user}\t{fmt_num(value)}")
    return 0


def _sus_stats(text: str, as_json: bool) -> int:
    records = sus.load_records(text)
    summary = sus.aggregate([r.sus_score for r in records])
    correlations = sus.record_correlations(records)
    crit = sus.critical_r(summary.n)
    if as_json:
        print(
            json.dumps(
                {
                    "n": summary.n,
                    "mean": summary.mean,
                    "sd": summary.sd_sample,
                    "min": summary.min,
                    "max": summary.max,
                    "critical_r": crit,
                    "correlations": {
                        name: {"r": r, "significant": abs(r) >= crit}
                        for name, r in correlations.items()
                    },
                },
                ensure_ascii=False,
            )
        )
        return 0
    print(
        f"n={summary.n} mean={summary.mean:.2f} sd={summary.sd_sample:.2f} "
        f"min={fmt_num(summary.min)} max={fmt_num(summary.max)}"
    )
    for name, r in correlations.items():
        verdict = "significant" if abs(r) >= crit else "not_significant"
        print(f"r({name})={r:.3f} critical={crit:.3f} verdict={verdict}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        map_bytes = _read_bytes(args.map)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        parse_map(map_bytes)
    except MapError as exc:
        print(f"invalid map: {exc}", file=sys.stderr)
        return 1
    cfg = EngineConfig(interaction_mode=args.mode, gesture_params=args.params)

    import uvicorn

    from .service import create_app

    app = create_app(map_bytes, cfg, log_dir=args.log_dir)
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return 1
    print(f"serving on ws://{args.host}:{args.port}/ws")
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])
    return 0


def _parse_params(text: str) -> GestureParams:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected dur_ms,drift,gap_ms,dist")
    try:
        return GestureParams(
            tap_max_duration_ms=int(parts[0]),
            tap_max_drift=float(parts[1]),
            doubletap_max_gap_ms=int(parts[2]),
            doubletap_max_dist=float(parts[3]),
        )
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tactimap",
        description="Audio-tactile map toolkit: validate, replay, score, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="parse a map file and report violations")
    p_validate.add_argument("map")
    p_validate.add_argument("--json", action="store_true")
    p_validate.set_defaults(func=cmd_validate)

    p_replay = sub.add_parser("replay", help="replay a session log against a map")
    p_replay.add_argument("map")
    p_replay.add_argument("log")
    p_replay.add_argument("--mode", choices=("single_tap", "double_tap"), default=None)
    p_replay.add_argument("--speed", type=float, default=0.0, help="0 = instant, 1 = real time")
    p_replay.add_argument("--json", action="store_true")
    p_replay.set_defaults(func=cmd_replay)

    p_sus = sub.add_parser("sus", help="questionnaire scoring and statistics")
    p_sus.add_argument("subcommand", choices=("score", "stats"))
    p_sus.add_argument("csv")
    p_sus.add_argument("--json", action="store_true")
    p_sus.set_defaults(func=cmd_sus)

    p_serve = sub.add_parser("serve", help="serve live sessions over WebSocket")
    p_serve.add_argument("map")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=DEFAULT_PORT)
    p_serve.add_argument("--mode", choices=("single_tap", "double_tap"), default="double_tap")
    p_serve.add_argument(
        "--params",
        type=_parse_params,
        default=GestureParams(),
        help="gesture thresholds as dur_ms,drift,gap_ms,dist",
    )
    p_serve.add_argument("--log-dir", default=".", help="directory for session log files")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
