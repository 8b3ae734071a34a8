"""Live session service: the JSON wire protocol over WebSocket.

One engine session per connection.  Clients supply their own millisecond
timestamps (a simulated clock), so sessions are deterministic and the
captured logs replay exactly.  Device coordinates over the wire are map
coordinates: the service applies the identity calibration.

    client -> server: {"type": "hello"}
                      {"type": "touch", "t", "id", "phase", "x", "y"}
                      {"type": "flush"}
    server -> client: {"type": "map", ...} on hello
                      {"type": "gesture", "kind", "x", "y", "t"}
                      {"type": "announcement", "text", "element_id", "t"}
                      {"type": "error", "message"}
"""
from __future__ import annotations

import json
import logging
from datetime import datetime
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .bus import MessageBus
from .engine import Engine, EngineConfig
from .geometry import IDENTITY
from .gestures import PHASES, TouchEvent
from .mapmodel import Geometry, MapDocument, Point, Polygon, parse_map
from .sessionlog import SessionLog

log = logging.getLogger(__name__)


def geometry_payload(g: Geometry) -> dict:
    if isinstance(g, Point):
        return {"type": "point", "x": g.x, "y": g.y}
    kind = "polygon" if isinstance(g, Polygon) else "polyline"
    return {"type": kind, "points": [[x, y] for x, y in g.vertices]}


def map_message(doc: MapDocument, cfg: EngineConfig) -> dict:
    elements = []
    for el in doc.elements:
        entry = {
            "id": el.id,
            "kind": el.kind,
            "name": el.name,
            "geometry": geometry_payload(el.geometry),
        }
        if el.description is not None:
            entry["description"] = el.description
        elements.append(entry)
    b = doc.bounds
    p = cfg.gesture_params
    return {
        "type": "map",
        "source": doc.source_name,
        "bounds": [b.x0, b.y0, b.x1, b.y1],
        "elements": elements,
        "mode": cfg.interaction_mode,
        "params": [
            p.tap_max_duration_ms,
            p.tap_max_drift,
            p.doubletap_max_gap_ms,
            p.doubletap_max_dist,
        ],
    }


def _parse_touch(msg: dict) -> TouchEvent:
    try:
        t = msg["t"]
        cid = msg["id"]
        phase = msg["phase"]
        x = msg["x"]
        y = msg["y"]
    except KeyError as exc:
        raise ValueError(f"touch message missing field {exc.args[0]!r}") from None
    if isinstance(t, float):
        if not t.is_integer():
            raise ValueError(f"t must be integral milliseconds, got {t!r}")
        t = int(t)
    if not isinstance(t, int) or isinstance(t, bool):
        raise ValueError(f"t must be integral milliseconds, got {t!r}")
    if not isinstance(cid, int) or isinstance(cid, bool):
        raise ValueError(f"id must be an integer, got {cid!r}")
    if phase not in PHASES:
        raise ValueError(f"phase must be one of {list(PHASES)}, got {phase!r}")
    if not isinstance(x, (int, float)) or not isinstance(y, (int, float)):
        raise ValueError("x and y must be numbers")
    return TouchEvent(t, cid, phase, float(x), float(y))


def create_app(
    map_bytes: bytes,
    cfg: EngineConfig | None = None,
    *,
    log_dir: str | Path | None = None,
) -> FastAPI:
    doc = parse_map(map_bytes)
    base_cfg = cfg if cfg is not None else EngineConfig()
    app = FastAPI()

    @app.websocket("/ws")
    async def session(ws: WebSocket) -> None:
        await ws.accept()
        # Outbox subscribers go on the bus before the engine's own handlers
        # so each gesture frame precedes the announcement it caused.
        bus = MessageBus()
        outbox: list[dict] = []
        bus.subscribe(
            "gesture.*",
            lambda m: outbox.append(
                {
                    "type": "gesture",
                    "kind": m.payload.kind,
                    "x": m.payload.pos[0],
                    "y": m.payload.pos[1],
                    "t": m.payload.t,
                }
            ),
        )
        bus.subscribe(
            "announce.text",
            lambda m: outbox.append(
                {
                    "type": "announcement",
                    "text": m.payload.text,
                    "element_id": m.payload.element_id,
                    "t": m.payload.t,
                }
            ),
        )
        engine = Engine(doc, IDENTITY, base_cfg, bus=bus)
        events: list[TouchEvent] = []
        try:
            while True:
                raw = await ws.receive_text()
                try:
                    msg = json.loads(raw)
                except json.JSONDecodeError as exc:
                    await ws.send_json({"type": "error", "message": f"bad JSON: {exc}"})
                    continue
                if not isinstance(msg, dict):
                    await ws.send_json({"type": "error", "message": "message must be an object"})
                    continue
                mtype = msg.get("type")
                if mtype == "hello":
                    await ws.send_json(map_message(doc, base_cfg))
                elif mtype == "touch":
                    try:
                        event = _parse_touch(msg)
                        engine.feed_touch(event)
                    except ValueError as exc:
                        await ws.send_json({"type": "error", "message": str(exc)})
                        continue
                    events.append(event)
                    for out in outbox:
                        await ws.send_json(out)
                    outbox.clear()
                elif mtype == "flush":
                    last_t = events[-1].t if events else 0
                    engine.flush(last_t + base_cfg.gesture_params.doubletap_max_gap_ms + 1)
                    for out in outbox:
                        await ws.send_json(out)
                    outbox.clear()
                else:
                    await ws.send_json(
                        {"type": "error", "message": f"unknown message type {mtype!r}"}
                    )
        except WebSocketDisconnect:
            pass
        finally:
            if log_dir is not None:
                _write_session_log(Path(log_dir), doc, base_cfg, events)

    return app


def _write_session_log(
    log_dir: Path, doc: MapDocument, cfg: EngineConfig, events: list[TouchEvent]
) -> None:
    session = SessionLog(
        map_name=doc.source_name,
        cal=IDENTITY,
        mode=cfg.interaction_mode,
        params=cfg.gesture_params,
        events=events,
    )
    stamp = datetime.now().strftime("%Y-%m-%dT%H-%M-%S-%f")
    path = log_dir / f"session-{stamp}.csv"
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
        path.write_text(session.to_csv(), encoding="utf-8")
        log.info("session log written to %s", path)
    except OSError as exc:
        log.error("could not write session log %s: %s", path, exc)
