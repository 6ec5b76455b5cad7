"""Exhaustive enumeration of alignments for small instances.

Pairwise alignments are enumerated through partial matchings, which are
extended by indel columns.  Independently of that, :func:`column_partitions`
enumerates every way to group the elements into columns, so the two routes
can be checked against each other.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .alignment import Alignment, Column, validate_general, validate_recover
from .errors import CapExceeded, NoOrderExists
from .poset import Poset
from .relations import PairRelation, alignment_from_relation, check_Pprime
from .scoring import DEFAULT_SCORING, ScoringScheme, score_alignment

DEFAULT_PAIR_CAP = 12
DEFAULT_MULTI_CAP = 9


def matchings(n1: int, n2: int) -> Iterator[tuple]:
    """All partial injective maps ``{0..n1-1} -> {0..n2-1}`` as sorted pair tuples."""

    def rec(x, used, acc):
        if x == n1:
            yield tuple(acc)
            return
        yield from rec(x + 1, used, acc)
        for y in range(n2):
            if not used >> y & 1:
                acc.append((x, y))
                yield from rec(x + 1, used | 1 << y, acc)
                acc.pop()

    return rec(0, 0, [])


def _clash(p1: Poset, p2: Poset, mode: str, a: tuple, b: tuple) -> bool:
    (x1, y1), (x2, y2) = a, b
    if mode == "recover":
        return p1.less(x1, x2) != p2.less(y1, y2) or p1.less(x2, x1) != p2.less(y2, y1)
    # two pairs that reverse an order relation already force a 2-cycle
    return (p1.less(x1, x2) and p2.less(y2, y1)) or (p1.less(x2, x1) and p2.less(y1, y2))


def valid_matchings(p1: Poset, p2: Poset, mode: str = "cross") -> Iterator[tuple]:
    """Matchings whose relation is a valid alignment in ``mode``.

    Partial matchings are pruned on pairwise conflicts only, which are
    necessary in both modes and sufficient for ``recover``; ``cross``
    candidates get the full acyclicity check at the leaves.
    """
    if mode not in ("cross", "recover"):
        raise ValueError(f"unknown mode {mode!r}")

    def rec(x, used, acc):
        if x == p1.n:
            if mode == "cross" and len(acc) > 1 \
                    and not check_Pprime(PairRelation(p1, p2, frozenset(acc))):
                return
            yield tuple(acc)
            return
        yield from rec(x + 1, used, acc)
        for y in range(p2.n):
            if used >> y & 1:
                continue
            if any(_clash(p1, p2, mode, (x, y), b) for b in acc):
                continue
            acc.append((x, y))
            yield from rec(x + 1, used | 1 << y, acc)
            acc.pop()

    return rec(0, 0, [])


def enumerate_pair_alignments(p1: Poset, p2: Poset, mode: str = "cross",
                              cap: int = DEFAULT_PAIR_CAP) -> list[Alignment]:
    if p1.n + p2.n > cap:
        raise CapExceeded(f"{p1.n}+{p2.n} elements exceed the oracle cap {cap}")
    return [alignment_from_relation(PairRelation(p1, p2, frozenset(m)), check=False)
            for m in valid_matchings(p1, p2, mode)]


def oracle_optimum(p1: Poset, p2: Poset, sc: ScoringScheme = DEFAULT_SCORING, mode: str = "cross",
                   cap: int = DEFAULT_PAIR_CAP):
    """Best column-additive score over every valid matching."""
    if p1.n + p2.n > cap:
        raise CapExceeded(f"{p1.n}+{p2.n} elements exceed the oracle cap {cap}")
    base = sc.gap * (p1.n + p2.n)
    gain = [[sc.pair(p1.label(i), p2.label(j)) - 2 * sc.gap for j in range(p2.n)] for i in range(p1.n)]
    return max(base + sum(gain[x][y] for x, y in m) for m in valid_matchings(p1, p2, mode))


def column_partitions(rows: Sequence[Poset]) -> Iterator[list[Column]]:
    """Every grouping of all elements into columns with at most one entry per
    row, each exactly once."""
    elements = [(p.row_id, i) for p in rows for i in range(p.n)]

    def rec(k, blocks):
        if k == len(elements):
            yield [Column(tuple(b)) for b in blocks]
            return
        r, e = elements[k]
        for b in blocks:
            if all(rr != r for rr, _ in b):
                b.append((r, e))
                yield from rec(k + 1, blocks)
                b.pop()
        blocks.append([(r, e)])
        yield from rec(k + 1, blocks)
        blocks.pop()

    return rec(0, [])


def _valid(al: Alignment, mode: str) -> bool:
    if mode == "recover":
        return validate_recover(al).ok
    return validate_general(al).ok


def enumerate_by_partitions(rows: Sequence[Poset], mode: str = "cross",
                            cap: int = DEFAULT_MULTI_CAP) -> list[Alignment]:
    """Generate-and-filter over column partitions (induced column order)."""
    if sum(p.n for p in rows) > cap:
        raise CapExceeded(f"more than {cap} elements for partition enumeration")
    out = []
    for cols in column_partitions(rows):
        al = Alignment(rows, cols)
        if _valid(al, mode):
            out.append(al.canonical())
    return out


def enumerate_alignments(rows: Sequence[Poset], mode: str = "cross") -> Iterator[Alignment]:
    """All valid alignments (induced column order), adding one row at a time.

    A restriction of a valid alignment is valid, so invalid partial
    alignments are pruned as soon as they appear.
    """

    def extend(columns, k):
        if k == len(rows):
            yield Alignment(rows, columns).canonical()
            return
        p = rows[k]
        m = len(columns)
        for pairs in matchings(p.n, m):
            cols = [list(c.entries) for c in columns]
            hit = set()
            for e, c in pairs:
                cols[c].append((p.row_id, e))
                hit.add(e)
            cols += [[(p.row_id, e)] for e in range(p.n) if e not in hit]
            cand = [Column(tuple(c)) for c in cols]
            try:
                al = Alignment(rows[:k + 1], cand)
                if not _valid(al, mode):
                    continue
            except NoOrderExists:
                continue
            yield from extend(cand, k + 1)

    if not rows:
        yield Alignment([], [])
        return
    first = rows[0]
    yield from extend([Column(((first.row_id, i),)) for i in range(first.n)], 1)


def multi_oracle_optimum(rows: Sequence[Poset], sc: ScoringScheme = DEFAULT_SCORING, mode: str = "cross",
                         cap: int = DEFAULT_MULTI_CAP):
    """Best sum-of-pairs score over all alignments of a few tiny rows."""
    best = None
    best_al = None
    for al in enumerate_by_partitions(rows, mode, cap):
        s = score_alignment(al, sc)
        if best is None or s > best:
            best, best_al = s, al
    return best, best_al
