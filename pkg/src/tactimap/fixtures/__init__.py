"""Bundled sample data: a small fictional town map and study records."""
from __future__ import annotations

import csv
import io
from importlib import resources


def fixture_map_bytes() -> bytes:
    """Raw SVG bytes of the bundled fictional town map."""
    return resources.files(__package__).joinpath("carte_fictive.svg").read_bytes()


def participants_csv_text() -> str:
    """Raw CSV text of the bundled study records."""
    return resources.files(__package__).joinpath("participants.csv").read_text("utf-8")


def participant_records() -> list[dict[str, object]]:
    """Study records as dicts with typed numeric fields."""
    out: list[dict[str, object]] = []
    for row in csv.DictReader(io.StringIO(participants_csv_text())):
        out.append(
            {
                "user": int(row["user"]),
                "gender": row["gender"],
                "age": int(row["age"]),
                "onset_age": int(row["onset_age"]),
                "braille_years": int(row["braille_years"]),
                "sus_score": float(row["sus_score"]),
            }
        )
    return out
