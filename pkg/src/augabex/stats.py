"""Pairwise win-count aggregation, macro averages and score exports."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "BtTally",
    "PairedScores",
    "tally",
    "bt_strength",
    "macro_average",
    "export_paired",
    "sample_for_review",
]


@dataclass(frozen=True)
class BtTally:
    wins_o: int
    wins_t: int
    ties: int


@dataclass(frozen=True)
class PairedScores:
    metric: str
    orientation: str  # "higher" or "lower" is better
    rows: tuple[tuple[str, float, float], ...]  # (instance id, score_O, score_T)

    def __post_init__(self):
        if self.orientation not in ("higher", "lower"):
            raise ValueError(f"orientation must be 'higher' or 'lower', got {self.orientation!r}")
        ids = [r[0] for r in self.rows]
        if len(ids) != len(set(ids)):
            raise ValueError("duplicate instance ids in paired scores")


def tally(scores: PairedScores) -> BtTally:
    wins_o = wins_t = ties = 0
    for _, score_o, score_t in scores.rows:
        if score_o == score_t:
            ties += 1
        elif (score_t > score_o) == (scores.orientation == "higher"):
            wins_t += 1
        else:
            wins_o += 1
    return BtTally(wins_o, wins_t, ties)


def bt_strength(scores: PairedScores, tie_mode: str = "split") -> float:
    """Estimated strength of system T: its win fraction over paired instances.

    Ties either contribute half a win to each side ("split") or are
    discarded ("drop").
    """
    if not scores.rows:
        raise ValueError("cannot estimate strength from empty scores")
    if tie_mode not in ("split", "drop"):
        raise ValueError(f"tie_mode must be 'split' or 'drop', got {tie_mode!r}")
    t = tally(scores)
    if tie_mode == "split":
        return (t.wins_t + 0.5 * t.ties) / (t.wins_o + t.wins_t + t.ties)
    if t.wins_o + t.wins_t == 0:
        raise ValueError("all instances tie; strength undefined with tie_mode='drop'")
    return t.wins_t / (t.wins_o + t.wins_t)


def macro_average(per_instance: list[tuple[str, float | None]]) -> tuple[float, float, int]:
    """(mean, median, n_defined) over defined scores; None markers excluded.

    Median uses the lower-middle convention for even counts.
    """
    defined = sorted(score for _, score in per_instance if score is not None)
    if not defined:
        raise ValueError("no defined scores to average")
    n = len(defined)
    return (sum(defined) / n, defined[(n - 1) // 2], n)


def export_paired(scores: PairedScores, path) -> None:
    """CSV with header id,score_o,score_t; rows ordered by id."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "score_o", "score_t"])
        for row in sorted(scores.rows, key=lambda r: r[0]):
            writer.writerow([row[0], repr(row[1]), repr(row[2])])


def sample_for_review(scores: PairedScores, n_top: int, n_bottom: int) -> list[str]:
    """Ids of the n_top highest and n_bottom lowest score_T rows, ties by id."""
    if n_top < 0 or n_bottom < 0:
        raise ValueError("sample sizes must be nonnegative")
    if n_top + n_bottom > len(scores.rows):
        raise ValueError(
            f"requested {n_top + n_bottom} samples from {len(scores.rows)} rows"
        )
    by_desc = sorted(scores.rows, key=lambda r: (-r[2], r[0]))
    by_asc = sorted(scores.rows, key=lambda r: (r[2], r[0]))
    return [r[0] for r in by_desc[:n_top]] + [r[0] for r in by_asc[:n_bottom]]
