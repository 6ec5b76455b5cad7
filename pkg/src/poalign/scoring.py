from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .alignment import Alignment


def _same(x, y) -> bool:
    return x is not None and x == y


@dataclass(frozen=True)
class ScoringScheme:
    """Column-additive score: match, mismatch and a per-entry gap score.

    Unlabelled elements never count as a match under the default equality.
    """

    match: float = 1
    mismatch: float = 0
    gap: float = -1
    equal: Callable = _same

    def pair(self, x, y) -> float:
        return self.match if self.equal(x, y) else self.mismatch


DEFAULT_SCORING = ScoringScheme(1, 0, -1)


def column_score(al: Alignment, k: int, sc: ScoringScheme) -> float:
    """Sum-of-pairs score of one column; gap against gap scores 0."""
    col = al.columns[k]
    labels = []
    for p in al.rows:
        e = col.get(p.row_id)
        labels.append(None if e is None else ("x", p.label(e)))
    total = 0
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            x, y = labels[a], labels[b]
            if x is None and y is None:
                continue
            if x is None or y is None:
                total += sc.gap
            else:
                total += sc.pair(x[1], y[1])
    return total


def score_alignment(al: Alignment, sc: ScoringScheme = DEFAULT_SCORING) -> float:
    """Sum-of-pairs score over all columns (the ordinary score for two rows)."""
    return sum(column_score(al, k, sc) for k in range(len(al.columns)))


def as_number(x):
    return int(x) if float(x).is_integer() else x
