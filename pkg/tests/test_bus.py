"""Publish/subscribe bus: matching, ordering, cancellation."""
from __future__ import annotations

import pytest

from tactimap.bus import BusMessage, MessageBus, PatternError


def test_publish_without_subscribers_delivers_zero():
    bus = MessageBus()
    assert bus.publish(BusMessage("gesture.double_tap", None)) == 0


def test_wildcard_matches_one_trailing_segment():
    bus = MessageBus()
    seen = []
    bus.subscribe("gesture.*", seen.append)
    assert bus.publish(BusMessage("gesture.double_tap", 1)) == 1
    assert seen == [BusMessage("gesture.double_tap", 1)]


def test_wildcard_matches_multiple_trailing_segments():
    bus = MessageBus()
    hits = []
    bus.subscribe("a.*", hits.append)
    assert bus.publish(BusMessage("a.b.c", None)) == 1
    assert bus.publish(BusMessage("a.b", None)) == 1


def test_wildcard_requires_at_least_one_segment():
    bus = MessageBus()
    bus.subscribe("gesture.*", lambda m: None)
    assert bus.publish(BusMessage("gesture", None)) == 0


def test_exact_pattern_matches_only_itself():
    bus = MessageBus()
    bus.subscribe("announce", lambda m: None)
    assert bus.publish(BusMessage("announce.text", None)) == 0
    assert bus.publish(BusMessage("announce", None)) == 1


def test_two_subscribers_receive_both_publishes_in_order():
    bus = MessageBus()
    first, second = [], []
    bus.subscribe("touch.event", first.append)
    bus.subscribe("touch.event", second.append)
    m1 = BusMessage("touch.event", {"n": 1})
    m2 = BusMessage("touch.event", {"n": 2})
    assert bus.publish(m1) == 2
    assert bus.publish(m2) == 2
    assert first == [m1, m2]
    assert second == [m1, m2]


def test_handlers_run_in_subscription_order():
    bus = MessageBus()
    order = []
    bus.subscribe("s", lambda m: order.append("a"))
    bus.subscribe("s", lambda m: order.append("b"))
    bus.publish(BusMessage("s", None))
    assert order == ["a", "b"]


def test_cancelled_subscription_excluded_from_count():
    bus = MessageBus()
    seen = []
    sub = bus.subscribe("x", seen.append)
    assert bus.publish(BusMessage("x", 1)) == 1
    sub.cancel()
    assert bus.publish(BusMessage("x", 2)) == 0
    assert len(seen) == 1


def test_cancel_during_delivery_takes_effect_immediately():
    bus = MessageBus()
    seen = []
    later = bus.subscribe("x", seen.append)
    # Re-subscribe ahead of `later` is impossible, so use a canceller first.
    bus2 = MessageBus()
    victim_seen = []
    canceller_done = []

    def canceller(msg):
        canceller_done.append(msg)
        victim.cancel()

    bus2.subscribe("x", canceller)
    victim = bus2.subscribe("x", victim_seen.append)
    assert bus2.publish(BusMessage("x", None)) == 1
    assert len(canceller_done) == 1 and victim_seen == []

    later.cancel()
    assert bus.publish(BusMessage("x", None)) == 0


def test_subscribe_during_delivery_starts_next_publish():
    bus = MessageBus()
    late_seen = []

    def on_first(msg):
        bus.subscribe("x", late_seen.append)

    sub = bus.subscribe("x", on_first)
    assert bus.publish(BusMessage("x", 1)) == 1
    assert late_seen == []
    sub.cancel()
    assert bus.publish(BusMessage("x", 2)) == 1
    assert late_seen == [BusMessage("x", 2)]


@pytest.mark.parametrize("pattern", ["a.*.b", "a*", "*x", "", "a..b", "*.a"])
def test_malformed_patterns_rejected(pattern):
    with pytest.raises(PatternError):
        MessageBus().subscribe(pattern, lambda m: None)


def test_pattern_error_is_a_value_error():
    assert issubclass(PatternError, ValueError)


@pytest.mark.parametrize("subject", ["", "a..b", ".a", "a."])
def test_malformed_subjects_rejected_on_publish(subject):
    with pytest.raises(ValueError):
        MessageBus().publish(BusMessage(subject, None))


def test_bare_wildcard_pattern_matches_everything():
    bus = MessageBus()
    seen = []
    bus.subscribe("*", seen.append)
    bus.publish(BusMessage("a", 1))
    bus.publish(BusMessage("a.b.c", 2))
    assert [m.payload for m in seen] == [1, 2]
