"""Shared fixtures: the bundled map, clean anchor points, session builders."""
from __future__ import annotations

import pytest

from tactimap.fixtures import fixture_map_bytes
from tactimap.geometry import IDENTITY
from tactimap.gestures import TouchEvent
from tactimap.mapmodel import parse_map
from tactimap.sessionlog import SessionLog

# One clean hit point per non-frame fixture element, in document order.
# Each anchor lies on its element and beats every competitor by a wide
# margin (verified by the brute-force scan in the geometry tests).
ANCHORS: list[tuple[str, tuple[float, float]]] = [
    ("avenue-de-la-gare", (120.0, 60.0)),
    ("rue-des-lilas", (60.0, 90.0)),
    ("rue-du-port", (140.0, 90.0)),
    ("boulevard-du-nord", (70.0, 30.0)),
    ("rue-basse", (100.0, 130.0)),
    ("allee-des-tilleuls", (190.0, 45.0)),
    ("gare", (40.0, 75.0)),
    ("musee", (90.0, 100.0)),
    ("mairie", (160.0, 90.0)),
    ("ecole", (50.0, 110.0)),
    ("parc", (200.0, 40.0)),
    ("eglise", (110.0, 25.0)),
    ("riviere-claire", (95.0, 147.5)),
]

# Where the two extra contacts sit: directly on elements, so they would
# announce if their suppression ever broke.
EXTRA_SPOTS = ((120.0, 60.0), (90.0, 100.0))


def tour_events(extra_lifetime_ms: int) -> list[TouchEvent]:
    """Two long-lived contacts plus one contact double-tapping every anchor.

    With extra_lifetime_ms large the extra contacts are resting fingers;
    shortened below the tap duration they become incidental touches.
    """
    events = [
        TouchEvent(0, 1, "down", *EXTRA_SPOTS[0]),
        TouchEvent(0, 2, "down", *EXTRA_SPOTS[1]),
        TouchEvent(extra_lifetime_ms, 1, "up", *EXTRA_SPOTS[0]),
        TouchEvent(extra_lifetime_ms, 2, "up", *EXTRA_SPOTS[1]),
    ]
    for k, (_, (x, y)) in enumerate(ANCHORS):
        base = 1100 + 1000 * k
        events.append(TouchEvent(base, 0, "down", x, y))
        events.append(TouchEvent(base + 100, 0, "up", x, y))
        events.append(TouchEvent(base + 250, 0, "down", x, y))
        events.append(TouchEvent(base + 350, 0, "up", x, y))
    events.sort(key=lambda e: e.t)
    return events


def tour_log(extra_lifetime_ms: int) -> SessionLog:
    return SessionLog(
        map_name="carte fictive",
        cal=IDENTITY,
        mode="double_tap",
        events=tour_events(extra_lifetime_ms),
    )


@pytest.fixture(scope="session")
def map_bytes() -> bytes:
    return fixture_map_bytes()


@pytest.fixture(scope="session")
def doc(map_bytes):
    return parse_map(map_bytes)
