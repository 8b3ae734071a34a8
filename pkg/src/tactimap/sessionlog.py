"""Session log files: a self-contained CSV capture of one touch session.

Format, bit-exact:

    # map=<source_name>
    # cal=a,b,c,d,e,f
    # mode=<single_tap|double_tap>
    # params=<tap_max_duration_ms>,<tap_max_drift>,<doubletap_max_gap_ms>,<doubletap_max_dist>
    timestamp_ms,contact_id,phase,x,y
    0,0,down,100,100
    ...

Coordinates are device-space.  The header makes replay need no external
state beyond the map file itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ._fmt import fmt_num
from .geometry import Calibration
from .gestures import PHASES, GestureParams, TouchEvent

COLUMNS = "timestamp_ms,contact_id,phase,x,y"


class LogFormatError(ValueError):
    """A malformed session log; carries the first offending line number."""

    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class SessionLog:
    map_name: str
    cal: Calibration | None = None
    mode: str = "double_tap"
    params: GestureParams = field(default_factory=GestureParams)
    events: list[TouchEvent] = field(default_factory=list)

    def to_csv(self) -> str:
        lines = [f"# map={self.map_name}"]
        if self.cal is not None:
            c = self.cal
            coeffs = ",".join(fmt_num(v) for v in (c.a, c.b, c.c, c.d, c.e, c.f))
            lines.append(f"# cal={coeffs}")
        lines.append(f"# mode={self.mode}")
        p = self.params
        lines.append(
            "# params="
            + ",".join(
                fmt_num(v)
                for v in (
                    p.tap_max_duration_ms,
                    p.tap_max_drift,
                    p.doubletap_max_gap_ms,
                    p.doubletap_max_dist,
                )
            )
        )
        lines.append(COLUMNS)
        for e in self.events:
            lines.append(f"{e.t},{e.contact_id},{e.phase},{fmt_num(e.x)},{fmt_num(e.y)}")
        return "\n".join(lines) + "\n"


def _parse_int(text: str, what: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise LogFormatError(f"{what} {text!r} is not an integer", line) from None


def _parse_float(text: str, what: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise LogFormatError(f"{what} {text!r} is not a number", line) from None


def parse_session_log(text: str) -> SessionLog:
    """Parse and validate a session log; raises LogFormatError with the line."""
    map_name: str | None = None
    cal: Calibration | None = None
    mode = "double_tap"
    params = GestureParams()
    events: list[TouchEvent] = []

    saw_columns = False
    columns_line = 0
    alive: set[int] = set()
    last_t: int | None = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if saw_columns:
                continue
            key, _, value = stripped.lstrip("#").strip().partition("=")
            key = key.strip()
            if key == "map":
                map_name = value
            elif key == "cal":
                cal = _parse_cal(value, lineno)
            elif key == "mode":
                if value not in ("single_tap", "double_tap"):
                    raise LogFormatError(f"unknown mode {value!r}", lineno)
                mode = value
            elif key == "params":
                params = _parse_params(value, lineno)
            continue
        if not saw_columns:
            if stripped != COLUMNS:
                raise LogFormatError(f"expected column header {COLUMNS!r}", lineno)
            saw_columns = True
            columns_line = lineno
            continue
        fields = stripped.split(",")
        if len(fields) != 5:
            raise LogFormatError(f"expected 5 fields, got {len(fields)}", lineno)
        t = _parse_int(fields[0], "timestamp_ms", lineno)
        cid = _parse_int(fields[1], "contact_id", lineno)
        phase = fields[2]
        x = _parse_float(fields[3], "x", lineno)
        y = _parse_float(fields[4], "y", lineno)
        if t < 0:
            raise LogFormatError(f"negative timestamp {t}", lineno)
        if phase not in PHASES:
            raise LogFormatError(f"unknown phase {phase!r}", lineno)
        if last_t is not None and t < last_t:
            raise LogFormatError(f"timestamp {t} decreases (previous {last_t})", lineno)
        last_t = t
        if phase == "down":
            if cid in alive:
                raise LogFormatError(f"down on alive contact {cid}", lineno)
            alive.add(cid)
        else:
            if cid not in alive:
                raise LogFormatError(f"{phase} on unknown contact {cid}", lineno)
            if phase == "up":
                alive.remove(cid)
        events.append(TouchEvent(t, cid, phase, x, y))

    if not saw_columns:
        raise LogFormatError(f"missing column header {COLUMNS!r}", len(text.splitlines()) + 1)
    if map_name is None:
        raise LogFormatError("missing '# map=' header", columns_line)
    return SessionLog(map_name=map_name, cal=cal, mode=mode, params=params, events=events)


def _parse_cal(value: str, line: int) -> Calibration:
    parts = value.split(",")
    if len(parts) != 6:
        raise LogFormatError(f"cal needs 6 coefficients, got {len(parts)}", line)
    coeffs = [_parse_float(p, "cal coefficient", line) for p in parts]
    try:
        return Calibration(*coeffs)
    except ValueError as exc:
        raise LogFormatError(str(exc), line) from None


def _parse_params(value: str, line: int) -> GestureParams:
    parts = value.split(",")
    if len(parts) != 4:
        raise LogFormatError(f"params needs 4 values, got {len(parts)}", line)
    try:
        return GestureParams(
            tap_max_duration_ms=_parse_int(parts[0], "tap_max_duration_ms", line),
            tap_max_drift=_parse_float(parts[1], "tap_max_drift", line),
            doubletap_max_gap_ms=_parse_int(parts[2], "doubletap_max_gap_ms", line),
            doubletap_max_dist=_parse_float(parts[3], "doubletap_max_dist", line),
        )
    except ValueError as exc:
        if isinstance(exc, LogFormatError):
            raise
        raise LogFormatError(str(exc), line) from None
