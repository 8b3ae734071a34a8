"""Tap and double-tap recognition over a multi-touch event stream.

Blind users explore a tactile relief with several fingers at once, so most
contacts must never trigger anything.  A contact only counts as a tap when
its whole down-to-up life stays short and nearly still; everything else is
classified as a resting exploration finger, irreversibly.  Taps then either
pair into double taps or time out into single taps.

The recognizer is a sequential state machine: feed events in nondecreasing
time order, collect the gestures each call returns, and flush() at the end
of a stream to resolve taps still waiting for a partner.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

XY = tuple[float, float]

PHASES = ("down", "move", "up")


class StreamError(ValueError):
    """Raised when the event stream violates ordering or contact lifecycle."""


@dataclass(frozen=True)
class TouchEvent:
    t: int
    contact_id: int
    phase: str
    x: float
    y: float


@dataclass(frozen=True)
class GestureParams:
    tap_max_duration_ms: int = 300
    tap_max_drift: float = 8.0
    doubletap_max_gap_ms: int = 400
    doubletap_max_dist: float = 15.0

    def __post_init__(self) -> None:
        for name in (
            "tap_max_duration_ms",
            "tap_max_drift",
            "doubletap_max_gap_ms",
            "doubletap_max_dist",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class Gesture:
    kind: str
    pos: XY
    t: int


@dataclass
class _Track:
    """One alive contact, from its down event until its up event."""

    contact_id: int
    down_t: int
    down_pos: XY
    last_pos: XY
    max_drift: float = 0.0
    resting: bool = False
    # Running sum of every sample (down, moves, up) for the tap centroid.
    sum_x: float = 0.0
    sum_y: float = 0.0
    samples: int = 0

    def add_sample(self, x: float, y: float) -> None:
        self.sum_x += x
        self.sum_y += y
        self.samples += 1
        self.last_pos = (x, y)

    def centroid(self) -> XY:
        return (self.sum_x / self.samples, self.sum_y / self.samples)


@dataclass
class _PendingTap:
    up_t: int
    centroid: XY
    order: int


class TapRecognizer:
    """Turns touch events into single_tap / double_tap gestures.

    With pair_taps disabled every completed tap is emitted immediately as
    a single_tap; no pairing and no timeout bookkeeping happens.  That is
    the behavior wanted by an interaction mode that reacts to every tap.
    """

    def __init__(self, params: GestureParams | None = None, *, pair_taps: bool = True) -> None:
        self.params = params or GestureParams()
        self.pair_taps = pair_taps
        self._alive: dict[int, _Track] = {}
        self._pending: list[_PendingTap] = []
        self._last_t: int | None = None
        self._order = 0

    def feed(self, e: TouchEvent) -> list[Gesture]:
        """Advance the machine by one event; returns completed gestures."""
        if e.phase not in PHASES:
            raise StreamError(f"unknown phase {e.phase!r}")
        if e.t < 0:
            raise StreamError(f"negative timestamp {e.t}")
        if self._last_t is not None and e.t < self._last_t:
            raise StreamError(f"event at t={e.t} precedes t={self._last_t}")
        # Lifecycle checks happen before any mutation, so a rejected
        # event leaves the machine exactly as it was.
        if e.phase == "down" and e.contact_id in self._alive:
            raise StreamError(f"down on alive contact {e.contact_id} at t={e.t}")
        if e.phase != "down" and e.contact_id not in self._alive:
            raise StreamError(f"{e.phase} on unknown contact {e.contact_id} at t={e.t}")
        self._last_t = e.t

        out: list[Gesture] = []
        self._mark_resting_by_duration(e.t)
        out.extend(self._expire_pending(e.t))

        if e.phase == "down":
            track = _Track(e.contact_id, e.t, (e.x, e.y), (e.x, e.y))
            track.add_sample(e.x, e.y)
            self._alive[e.contact_id] = track
        elif e.phase == "move":
            track = self._alive[e.contact_id]
            track.add_sample(e.x, e.y)
            self._update_drift(track, e.x, e.y)
        else:
            track = self._alive.pop(e.contact_id)
            track.add_sample(e.x, e.y)
            self._update_drift(track, e.x, e.y)
            if e.t - track.down_t > self.params.tap_max_duration_ms:
                track.resting = True
            if not track.resting:
                out.extend(self._complete_tap(track.centroid(), track.down_t, e.t))
        return out

    def flush(self, now_ms: int) -> list[Gesture]:
        """Force-emit every pending tap older than the double-tap gap."""
        if self._last_t is not None and now_ms < self._last_t:
            raise StreamError(f"flush at t={now_ms} precedes t={self._last_t}")
        self._last_t = now_ms if self._last_t is None else max(self._last_t, now_ms)
        out: list[Gesture] = []
        keep: list[_PendingTap] = []
        for p in self._pending:
            if now_ms - p.up_t > self.params.doubletap_max_gap_ms:
                out.append(Gesture("single_tap", p.centroid, now_ms))
            else:
                keep.append(p)
        self._pending = keep
        return out

    def _update_drift(self, track: _Track, x: float, y: float) -> None:
        drift = math.hypot(x - track.down_pos[0], y - track.down_pos[1])
        track.max_drift = max(track.max_drift, drift)
        if track.max_drift > self.params.tap_max_drift:
            track.resting = True

    def _mark_resting_by_duration(self, now: int) -> None:
        for track in self._alive.values():
            if now - track.down_t > self.params.tap_max_duration_ms:
                track.resting = True

    def _expire_pending(self, now: int) -> list[Gesture]:
        """Emit pendings that can no longer be paired by anything.

        A pending older than the gap survives only while some alive
        candidate contact went down early enough to still pair with it.
        """
        out: list[Gesture] = []
        keep: list[_PendingTap] = []
        for p in self._pending:
            if now - p.up_t > self.params.doubletap_max_gap_ms and not self._has_candidate_for(p):
                out.append(Gesture("single_tap", p.centroid, now))
            else:
                keep.append(p)
        self._pending = keep
        return out

    def _has_candidate_for(self, p: _PendingTap) -> bool:
        return any(
            not t.resting and t.down_t - p.up_t <= self.params.doubletap_max_gap_ms
            for t in self._alive.values()
        )

    def _complete_tap(self, centroid: XY, down_t: int, up_t: int) -> list[Gesture]:
        if not self.pair_taps:
            return [Gesture("single_tap", centroid, up_t)]
        partner = self._find_partner(centroid, down_t)
        if partner is not None:
            self._pending.remove(partner)
            pos = (
                (partner.centroid[0] + centroid[0]) / 2.0,
                (partner.centroid[1] + centroid[1]) / 2.0,
            )
            return [Gesture("double_tap", pos, up_t)]
        self._pending.append(_PendingTap(up_t, centroid, self._order))
        self._order += 1
        return []

    def _find_partner(self, centroid: XY, down_t: int) -> _PendingTap | None:
        """Most recent matching pending tap; nearest wins an up-time tie."""
        best: _PendingTap | None = None
        best_key: tuple[float, float, float] | None = None
        for p in self._pending:
            if down_t - p.up_t > self.params.doubletap_max_gap_ms:
                continue
            dist = math.hypot(p.centroid[0] - centroid[0], p.centroid[1] - centroid[1])
            if dist > self.params.doubletap_max_dist:
                continue
            key = (p.up_t, -dist, p.order)
            if best_key is None or key > best_key:
                best, best_key = p, key
        return best
