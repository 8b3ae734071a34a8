"""In-process publish/subscribe bus with dot-separated subjects.

Handlers run synchronously in publish order, one at a time.  A pattern is a
subject whose last segment may be `*`, which stands for one or more
trailing segments; `gesture.*` matches `gesture.double_tap` but a bare
`gesture` only matches itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable


class PatternError(ValueError):
    """Raised for a malformed subscription pattern."""


@dataclass(frozen=True)
class BusMessage:
    subject: str
    payload: Any


Handler = Callable[[BusMessage], None]


class Subscription:
    """Handle returned by subscribe(); cancel() stops future deliveries."""

    def __init__(self, pattern: str, handler: Handler) -> None:
        self.pattern = pattern
        self.handler = handler
        self.active = True

    def cancel(self) -> None:
        self.active = False


def _split_subject(subject: str) -> list[str]:
    if not subject:
        raise ValueError("subject must be non-empty")
    parts = subject.split(".")
    if any(not p for p in parts):
        raise ValueError(f"subject {subject!r} has an empty segment")
    return parts


def _split_pattern(pattern: str) -> list[str]:
    try:
        parts = _split_subject(pattern)
    except ValueError as exc:
        raise PatternError(str(exc)) from exc
    for i, part in enumerate(parts):
        if "*" in part and (part != "*" or i != len(parts) - 1):
            raise PatternError(f"pattern {pattern!r}: * is only valid as the whole last segment")
    return parts


def _matches(pattern_parts: list[str], subject_parts: list[str]) -> bool:
    if pattern_parts[-1] == "*":
        head = pattern_parts[:-1]
        # The wildcard stands for at least one segment.
        return len(subject_parts) > len(head) and subject_parts[: len(head)] == head
    return subject_parts == pattern_parts


class MessageBus:
    def __init__(self) -> None:
        self._subs: list[Subscription] = []

    def subscribe(self, pattern: str, handler: Handler) -> Subscription:
        _split_pattern(pattern)
        sub = Subscription(pattern, handler)
        self._subs.append(sub)
        return sub

    def publish(self, msg: BusMessage) -> int:
        """Deliver msg to every matching live subscriber; returns the count.

        The subscriber list is snapshotted first: subscriptions made by a
        handler take effect on later publishes, while cancellation stops
        delivery immediately.
        """
        subject_parts = _split_subject(msg.subject)
        delivered = 0
        for sub in list(self._subs):
            if sub.active and _matches(_split_pattern(sub.pattern), subject_parts):
                sub.handler(msg)
                delivered += 1
        return delivered
