"""Canonical number-to-text formatting shared by the listing and log formats."""

from __future__ import annotations


def fmt_num(value: float) -> str:
    """Shortest decimal text for a coordinate or parameter value.

    Integral values lose the trailing ".0" so that 100.0 and 100 read the
    same in logs and listings; everything else uses the shortest repr that
    round-trips.
    """
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(float(value))
