"""Interactive audio-tactile map engine.

Parses simple SVG town maps, registers a touch surface onto them, turns
multi-touch streams into tap gestures, and announces the map element under
a double tap. Ships questionnaire scoring tools for usability studies and
a WebSocket service plus session-log replay for deterministic testing.
"""
from __future__ import annotations

from .engine import Announcement, Engine, EngineConfig, handle_gesture, run_replay
from .geometry import (
    Calibration,
    HitResult,
    HitTolerances,
    IDENTITY,
    fit_calibration,
    hit_test,
    to_map,
)
from .gestures import Gesture, GestureParams, TapRecognizer, TouchEvent
from .mapmodel import MapDocument, MapElement, parse_map, validate_map
from .sessionlog import SessionLog, parse_session_log

__version__ = "0.1.0"

__all__ = [
    "Announcement",
    "Calibration",
    "Engine",
    "EngineConfig",
    "Gesture",
    "GestureParams",
    "HitResult",
    "HitTolerances",
    "IDENTITY",
    "MapDocument",
    "MapElement",
    "SessionLog",
    "TapRecognizer",
    "TouchEvent",
    "fit_calibration",
    "handle_gesture",
    "hit_test",
    "parse_map",
    "parse_session_log",
    "run_replay",
    "to_map",
    "validate_map",
    "__version__",
]
