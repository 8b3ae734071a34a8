"""Session log CSV: exact serialization, parsing, validation errors."""
from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tactimap.geometry import IDENTITY, Calibration
from tactimap.gestures import GestureParams, TouchEvent
from tactimap.sessionlog import COLUMNS, LogFormatError, SessionLog, parse_session_log

from conftest import tour_log


GOOD = """\
# map=carte fictive
# cal=1,0,0,0,1,0
# mode=double_tap
# params=300,8,400,15
timestamp_ms,contact_id,phase,x,y
0,0,down,100,100
120,0,up,101,100
300,0,down,100,101
410,0,up,100.25,100
"""


def test_exact_header_lines():
    log = SessionLog(map_name="carte fictive", cal=IDENTITY)
    assert log.to_csv() == (
        "# map=carte fictive\n"
        "# cal=1,0,0,0,1,0\n"
        "# mode=double_tap\n"
        "# params=300,8,400,15\n"
        "timestamp_ms,contact_id,phase,x,y\n"
    )


def test_event_rows_format_numbers_compactly():
    log = SessionLog(
        map_name="m",
        events=[TouchEvent(0, 0, "down", 100.0, 100.25), TouchEvent(50, 0, "up", 1.5, 2)],
    )
    body = log.to_csv().splitlines()[-2:]
    assert body == ["0,0,down,100,100.25", "50,0,up,1.5,2"]


def test_cal_line_omitted_when_unset():
    text = SessionLog(map_name="m").to_csv()
    assert "# cal=" not in text
    assert parse_session_log(text).cal is None


def test_parse_good_log():
    log = parse_session_log(GOOD)
    assert log.map_name == "carte fictive"
    assert log.cal == IDENTITY
    assert log.mode == "double_tap"
    assert log.params == GestureParams()
    assert len(log.events) == 4
    assert log.events[-1] == TouchEvent(410, 0, "up", 100.25, 100.0)


def test_round_trip_is_bit_exact():
    log = parse_session_log(GOOD)
    assert log.to_csv() == GOOD
    assert parse_session_log(log.to_csv()) == log


def test_tour_log_round_trips(doc):
    log = tour_log(5000)
    assert parse_session_log(log.to_csv()) == log


def test_blank_lines_and_late_comments_ignored():
    text = GOOD.replace("0,0,down,100,100\n", "0,0,down,100,100\n\n# replayed 2012-07-11\n")
    assert len(parse_session_log(text).events) == 4


def test_unknown_header_keys_ignored():
    text = "# map=m\n# operator=ng\n" + COLUMNS + "\n"
    assert parse_session_log(text).map_name == "m"


def test_header_order_is_free():
    text = "# mode=single_tap\n# map=m\n" + COLUMNS + "\n"
    log = parse_session_log(text)
    assert (log.map_name, log.mode) == ("m", "single_tap")


def test_event_line_tolerates_surrounding_whitespace():
    text = "# map=m\n" + COLUMNS + "\n  0,0,down,1,2  \n"
    assert parse_session_log(text).events == [TouchEvent(0, 0, "down", 1.0, 2.0)]


def _expect_error(text: str, line: int, match: str):
    with pytest.raises(LogFormatError, match=match) as info:
        parse_session_log(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_missing_column_header():
    _expect_error("# map=m\n", 2, "missing column header")


def test_wrong_column_header():
    _expect_error("# map=m\ntime,x,y\n", 2, "expected column header")


def test_missing_map_header():
    _expect_error("# mode=double_tap\n" + COLUMNS + "\n", 2, "missing '# map='")


def test_row_field_count():
    _expect_error("# map=m\n" + COLUMNS + "\n0,0,down,1\n", 3, "expected 5 fields")


def test_non_integer_timestamp():
    _expect_error("# map=m\n" + COLUMNS + "\nx,0,down,1,1\n", 3, "not an integer")


def test_non_numeric_coordinate():
    _expect_error("# map=m\n" + COLUMNS + "\n0,0,down,one,1\n", 3, "not a number")


def test_negative_timestamp():
    _expect_error("# map=m\n" + COLUMNS + "\n-5,0,down,1,1\n", 3, "negative timestamp")


def test_unknown_phase():
    _expect_error("# map=m\n" + COLUMNS + "\n0,0,hover,1,1\n", 3, "unknown phase")


def test_decreasing_timestamps():
    body = "0,0,down,1,1\n50,0,move,1,1\n20,0,up,1,1\n"
    _expect_error("# map=m\n" + COLUMNS + "\n" + body, 5, "decreases")


def test_down_on_alive_contact():
    body = "0,0,down,1,1\n10,0,down,1,1\n"
    _expect_error("# map=m\n" + COLUMNS + "\n" + body, 4, "down on alive")


def test_move_on_unknown_contact():
    _expect_error("# map=m\n" + COLUMNS + "\n0,7,move,1,1\n", 3, "move on unknown")


def test_up_on_unknown_contact():
    _expect_error("# map=m\n" + COLUMNS + "\n0,7,up,1,1\n", 3, "up on unknown")


def test_bad_cal_header():
    _expect_error("# map=m\n# cal=1,0,0,0,1\n" + COLUMNS + "\n", 2, "6 coefficients")


def test_singular_cal_header():
    _expect_error("# map=m\n# cal=0,0,0,0,0,0\n" + COLUMNS + "\n", 2, "not invertible")


def test_bad_params_header():
    _expect_error("# map=m\n# params=300,8,400\n" + COLUMNS + "\n", 2, "4 values")


def test_nonpositive_params_header():
    _expect_error("# map=m\n# params=0,8,400,15\n" + COLUMNS + "\n", 2, "strictly positive")


def test_bad_mode_header():
    _expect_error("# map=m\n# mode=triple_tap\n" + COLUMNS + "\n", 2, "unknown mode")


# --- randomized round trips -------------------------------------------------

_coords = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


@st.composite
def random_logs(draw):
    n = draw(st.integers(0, 15))
    t = 0
    alive: list[int] = []
    next_id = 0
    events: list[TouchEvent] = []
    for _ in range(n):
        t += draw(st.integers(0, 500))
        if alive and draw(st.booleans()):
            cid = draw(st.sampled_from(alive))
            phase = draw(st.sampled_from(["move", "up"]))
            if phase == "up":
                alive.remove(cid)
        else:
            cid = next_id
            next_id += 1
            alive.append(cid)
            phase = "down"
        events.append(TouchEvent(t, cid, phase, draw(_coords), draw(_coords)))
    cal = draw(st.sampled_from([None, IDENTITY, Calibration(0.5, 0, 120, 0, -0.25, 60)]))
    params = GestureParams(
        tap_max_duration_ms=draw(st.integers(1, 1000)),
        tap_max_drift=draw(st.floats(min_value=0.5, max_value=50, allow_nan=False)),
        doubletap_max_gap_ms=draw(st.integers(1, 1000)),
        doubletap_max_dist=draw(st.floats(min_value=0.5, max_value=50, allow_nan=False)),
    )
    name = draw(st.sampled_from(["carte fictive", "m", "Über-Plan", "quartier nord"]))
    mode = draw(st.sampled_from(["single_tap", "double_tap"]))
    return SessionLog(map_name=name, cal=cal, mode=mode, params=params, events=events)


@given(log=random_logs())
@settings(max_examples=200)
def test_property_round_trip(log):
    parsed = parse_session_log(log.to_csv())
    assert parsed == log
    assert parsed.to_csv() == log.to_csv()
