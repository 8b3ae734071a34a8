"""System Usability Scale scoring and study-record statistics.

Scores follow the standard method: odd items contribute (item - 1), even
items (5 - item), the sum scaled by 2.5 onto 0..100.  Aggregation uses the
sample (n-1) standard deviation.  Correlation between scores and user
characteristics is Pearson's r, judged against the two-tailed 5% critical
value so "no correlation" becomes a testable non-significance claim.
"""
from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass
from typing import Sequence


class RangeError(ValueError):
    """A questionnaire item is outside 1..5."""


class InsufficientData(ValueError):
    """Too few values to aggregate."""


class DegenerateInput(ValueError):
    """A correlation input has zero variance."""


class UnsupportedN(ValueError):
    """Sample size outside the built-in critical-value table."""


# Item texts: (standard wording, study variant). The variant rephrases
# item 7 for visually impaired users and swaps "cumbersome" for "awkward"
# in item 8; scoring depends only on item numbers, never on wording.
QUESTIONNAIRE: tuple[tuple[str, str], ...] = (
    ("I think that I would like to use this system frequently.",) * 2,
    ("I found the system unnecessarily complex.",) * 2,
    ("I thought the system was easy to use.",) * 2,
    ("I think that I would need the support of a technical person to be able to use this system.",) * 2,
    ("I found the various functions in this system were well integrated.",) * 2,
    ("I thought there was too much inconsistency in this system.",) * 2,
    (
        "I would imagine that most people would learn to use this system very quickly.",
        "I think that most visually impaired people would learn to use this product very quickly.",
    ),
    (
        "I found the system very cumbersome to use.",
        "I found the system very awkward to use.",
    ),
    ("I felt very confident using the system.",) * 2,
    ("I needed to learn a lot of things before I could get going with this system.",) * 2,
)

# Two-tailed Student t critical values at alpha 0.05, df 1..30.
_T_CRIT_05 = (
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
    2.201, 2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
    2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042,
)


@dataclass(frozen=True)
class SusResponse:
    items: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.items) != 10:
            raise ValueError(f"expected 10 items, got {len(self.items)}")
        for i, item in enumerate(self.items, 1):
            if not isinstance(item, int) or not 1 <= item <= 5:
                raise RangeError(f"item {i} is {item!r}, must be an integer in 1..5")


@dataclass(frozen=True)
class SusScore:
    value: float

    def __post_init__(self) -> None:
        if not 0 <= self.value <= 100:
            raise ValueError(f"score {self.value} outside 0..100")
        if abs(self.value / 2.5 - round(self.value / 2.5)) > 1e-9:
            raise ValueError(f"score {self.value} is not a multiple of 2.5")


@dataclass(frozen=True)
class ParticipantRecord:
    user_index: int
    gender: str
    age: int
    onset_age: int
    braille_years: int
    sus_score: float

    def __post_init__(self) -> None:
        if self.user_index < 1:
            raise ValueError("user_index must be >= 1")
        if self.gender not in ("F", "M"):
            raise ValueError(f"gender must be F or M, got {self.gender!r}")
        if not 0 <= self.onset_age <= self.age:
            raise ValueError("onset_age must be within 0..age")
        if not 0 <= self.braille_years <= self.age:
            raise ValueError("braille_years must be within 0..age")
        SusScore(self.sus_score)


@dataclass(frozen=True)
class StatsSummary:
    n: int
    mean: float
    sd_sample: float
    min: float
    max: float


def score(resp: SusResponse) -> SusScore:
    """Score one response: (sum_odd(item-1) + sum_even(5-item)) * 2.5."""
    total = 0
    for i, item in enumerate(resp.items, 1):
        total += (item - 1) if i % 2 == 1 else (5 - item)
    return SusScore(total * 2.5)


def _value(v: SusScore | float) -> float:
    return v.value if isinstance(v, SusScore) else float(v)


def aggregate(scores: Sequence[SusScore | float]) -> StatsSummary:
    """Mean and sample (n-1) standard deviation; needs n >= 2."""
    values = [_value(v) for v in scores]
    if len(values) < 2:
        raise InsufficientData(f"need at least 2 scores, got {len(values)}")
    return StatsSummary(
        n=len(values),
        mean=statistics.mean(values),
        sd_sample=statistics.stdev(values),
        min=min(values),
        max=max(values),
    )


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Product-moment correlation coefficient of two equal-length samples."""
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 3:
        raise ValueError(f"need at least 3 points, got {len(xs)}")
    mx = statistics.mean(xs)
    my = statistics.mean(ys)
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0 or vy == 0:
        raise DegenerateInput("input with zero variance")
    r = cov / math.sqrt(vx * vy)
    return max(-1.0, min(1.0, r))


def critical_r(n: int, alpha: float = 0.05) -> float:
    """Significance threshold for |r| at sample size n (two-tailed).

    Only the built-in alpha 0.05 table is provided, for df = n-2 in 1..30.
    """
    if alpha != 0.05:
        raise ValueError("only alpha=0.05 is supported")
    df = n - 2
    if not 1 <= df <= 30:
        raise UnsupportedN(f"n={n} outside the built-in table (n-2 must be 1..30)")
    t = _T_CRIT_05[df - 1]
    return t / math.sqrt(t * t + df)


def load_records(csv_text: str) -> list[ParticipantRecord]:
    """Records CSV `user,gender,age,onset_age,braille_years,sus_score`."""
    reader = csv.DictReader(io.StringIO(csv_text))
    required = {"user", "gender", "age", "onset_age", "braille_years", "sus_score"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise ValueError(f"records CSV must have columns {sorted(required)}")
    records = []
    for rownum, row in enumerate(reader, 2):
        try:
            records.append(
                ParticipantRecord(
                    user_index=int(row["user"]),
                    gender=row["gender"],
                    age=int(row["age"]),
                    onset_age=int(row["onset_age"]),
                    braille_years=int(row["braille_years"]),
                    sus_score=float(row["sus_score"]),
                )
            )
        except ValueError as exc:
            raise ValueError(f"row {rownum}: {exc}") from None
    return records


def load_responses(csv_text: str) -> list[tuple[str, SusResponse]]:
    """Responses CSV `user,q1..q10`; returns (user, response) pairs."""
    reader = csv.DictReader(io.StringIO(csv_text))
    cols = ["q" + str(i) for i in range(1, 11)]
    if reader.fieldnames is None or not {"user", *cols}.issubset(reader.fieldnames):
        raise ValueError("responses CSV must have columns user,q1..q10")
    out = []
    for rownum, row in enumerate(reader, 2):
        try:
            items = tuple(int(row[c]) for c in cols)
            out.append((row["user"], SusResponse(items)))
        except ValueError as exc:
            raise ValueError(f"row {rownum}: {exc}") from None
    return out


def record_correlations(records: Sequence[ParticipantRecord]) -> dict[str, float]:
    """Pearson r of sus_score against each personal characteristic."""
    scores = [rec.sus_score for rec in records]
    return {
        name: pearson([getattr(rec, name) for rec in records], scores)
        for name in ("age", "onset_age", "braille_years")
    }
