"""Session engine: touch events in, spoken announcements out.

Modules are wired over the in-process bus, one engine per session:
`touch.event` carries device events, `gesture.<kind>` recognized gestures,
`announce.text` the announcements produced by hit-testing gesture
positions.  Single taps are recognized but announce nothing in the default
double-tap mode; reacting to every tap proved unusable for multi-finger
exploration, so it survives only as the opt-in single_tap mode.
"""
from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field
from typing import IO, Optional

from .bus import BusMessage, MessageBus
from .geometry import Calibration, HitTolerances, hit_test, to_map
from .gestures import Gesture, GestureParams, TapRecognizer, TouchEvent
from .mapmodel import MapDocument, parse_map
from .sessionlog import SessionLog

log = logging.getLogger(__name__)

MODES = ("single_tap", "double_tap")


class SpeechError(RuntimeError):
    """A speech adapter failed to render an announcement."""


class ReplayError(ValueError):
    """A session log cannot be replayed against the given map."""


@dataclass(frozen=True)
class Announcement:
    text: str
    element_id: Optional[str]
    t: int

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("announcement text must be non-empty")


@dataclass(frozen=True)
class EngineConfig:
    interaction_mode: str = "double_tap"
    announce_description: bool = False
    tolerances: HitTolerances = field(default_factory=HitTolerances)
    gesture_params: GestureParams = field(default_factory=GestureParams)

    def __post_init__(self) -> None:
        if self.interaction_mode not in MODES:
            raise ValueError(f"interaction_mode must be one of {MODES}")


def handle_gesture(doc: MapDocument, cfg: EngineConfig, g: Gesture) -> Optional[Announcement]:
    """Announcement for a gesture, or None for mode mismatch and misses."""
    if g.kind != cfg.interaction_mode:
        return None
    hit = hit_test(doc, g.pos, cfg.tolerances)
    if hit is None:
        return None
    el = doc.get(hit.element_id)
    text = el.name
    if cfg.announce_description and el.description:
        text = f"{el.name}. {el.description}"
    return Announcement(text=text, element_id=el.id, t=g.t)


class LineSpeech:
    """Default speech adapter: one `[t] text` line per announcement.

    A new announcement replaces whatever is still rendering; `current`
    tracks the one being spoken.
    """

    def __init__(self, out: IO[str] | None = None) -> None:
        self.out = out if out is not None else sys.stdout
        self.current: Announcement | None = None

    def render(self, a: Announcement) -> None:
        self.current = a
        self.out.write(f"[{a.t}] {a.text}\n")


def speak(adapter, a: Announcement) -> None:
    """Render a through the adapter; failures become SpeechError."""
    try:
        adapter.render(a)
    except Exception as exc:
        raise SpeechError(f"speech adapter failed: {exc}") from exc


class Engine:
    """One interactive session over a fixed map, calibration and config."""

    def __init__(
        self,
        doc: MapDocument,
        cal: Calibration,
        cfg: EngineConfig | None = None,
        *,
        bus: MessageBus | None = None,
        speech=None,
    ) -> None:
        self.doc = doc
        self.cal = cal
        self.cfg = cfg if cfg is not None else EngineConfig()
        self.bus = bus if bus is not None else MessageBus()
        self.speech = speech
        # In single_tap mode every tap must react immediately, so taps
        # are not held back waiting for a double-tap partner.
        self.recognizer = TapRecognizer(
            self.cfg.gesture_params,
            pair_taps=self.cfg.interaction_mode != "single_tap",
        )
        self.gestures: list[Gesture] = []
        self.announcements: list[Announcement] = []
        self.bus.subscribe("touch.event", self._on_touch)
        self.bus.subscribe("gesture.*", self._on_gesture)
        self.bus.subscribe("announce.text", self._on_announce)

    def feed_touch(self, e: TouchEvent) -> list[Announcement]:
        """Feed one device-space event; returns announcements it caused."""
        before = len(self.announcements)
        self.bus.publish(BusMessage("touch.event", e))
        return self.announcements[before:]

    def flush(self, now_ms: int) -> list[Announcement]:
        """Resolve taps still pending at now_ms (end of stream)."""
        before = len(self.announcements)
        for g in self.recognizer.flush(now_ms):
            self.bus.publish(BusMessage(f"gesture.{g.kind}", g))
        return self.announcements[before:]

    def _on_touch(self, msg: BusMessage) -> None:
        e: TouchEvent = msg.payload
        mx, my = to_map(self.cal, (e.x, e.y))
        mapped = TouchEvent(e.t, e.contact_id, e.phase, mx, my)
        for g in self.recognizer.feed(mapped):
            self.bus.publish(BusMessage(f"gesture.{g.kind}", g))

    def _on_gesture(self, msg: BusMessage) -> None:
        g: Gesture = msg.payload
        self.gestures.append(g)
        a = handle_gesture(self.doc, self.cfg, g)
        if a is not None:
            self.bus.publish(BusMessage("announce.text", a))

    def _on_announce(self, msg: BusMessage) -> None:
        a: Announcement = msg.payload
        self.announcements.append(a)
        if self.speech is not None:
            try:
                speak(self.speech, a)
            except SpeechError as exc:
                # Audio failure must never stall the session.
                log.warning("%s", exc)


def run_replay(
    map_bytes: bytes,
    session: SessionLog,
    cfg: EngineConfig | None = None,
) -> list[Announcement]:
    """Deterministically re-run a logged session against a map.

    The config defaults to the one recorded in the log header; passing cfg
    overrides it (the CLI uses this to flip the interaction mode).
    """
    doc = parse_map(map_bytes)
    if session.map_name != doc.source_name:
        raise ReplayError(
            f"log was recorded against map {session.map_name!r}, not {doc.source_name!r}"
        )
    if session.cal is None:
        raise ReplayError("log carries no calibration")
    if cfg is None:
        cfg = EngineConfig(interaction_mode=session.mode, gesture_params=session.params)
    engine = Engine(doc, session.cal, cfg)
    for e in session.events:
        engine.feed_touch(e)
    last_t = session.events[-1].t if session.events else 0
    engine.flush(last_t + cfg.gesture_params.doubletap_max_gap_ms + 1)
    return list(engine.announcements)
