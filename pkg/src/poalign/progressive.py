"""Progressive multiple alignment along a guide tree.

Each internal node aligns the alignments of its two children.  A child
alignment is treated as a poset whose points are its columns, and columns are
scored sum-of-pairs across the two children (gap against gap scores 0).  The
pairwise result is merged with :func:`~poalign.alignment.recombine`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .alignment import Alignment, column_poset, recombine
from .dp import DEFAULT_SEARCH_BUDGET, MATCH, cross_dp, recover_search
from .errors import ParseError
from .poset import Poset
from .scoring import DEFAULT_SCORING, ScoringScheme


@dataclass(frozen=True)
class GuideTree:
    """Rooted binary tree; a leaf carries a row id, an inner node two children."""

    label: str | None = None
    left: "GuideTree | None" = None
    right: "GuideTree | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def leaves(self) -> list[str]:
        if self.is_leaf:
            return [self.label]
        return self.left.leaves() + self.right.leaves()

    def __str__(self):
        if self.is_leaf:
            return self.label
        return f"({self.left},{self.right})"

    @classmethod
    def parse(cls, text: str) -> "GuideTree":
        tokens = re.findall(r"[(),]|[^\s(),]+", text)
        pos = 0

        def node():
            nonlocal pos
            if pos >= len(tokens):
                raise ParseError(f"unexpected end of guide tree {text!r}")
            tok = tokens[pos]
            pos += 1
            if tok != "(":
                if tok in ",)":
                    raise ParseError(f"unexpected {tok!r} in guide tree {text!r}")
                return cls(tok)
            children = [node()]
            while pos < len(tokens) and tokens[pos] == ",":
                pos += 1
                children.append(node())
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ParseError(f"missing ')' in guide tree {text!r}")
            pos += 1
            if len(children) == 1:
                return children[0]
            tree = children[0]
            for child in children[1:]:
                tree = cls(None, tree, child)
            return tree

        tree = node()
        if pos != len(tokens):
            raise ParseError(f"trailing text in guide tree {text!r}")
        leaves = tree.leaves()
        if len(set(leaves)) != len(leaves):
            raise ParseError(f"duplicate leaves in guide tree {text!r}")
        return tree

    @classmethod
    def ladder(cls, row_ids: Sequence[str]) -> "GuideTree":
        """``((r0,r1),r2)...``: adds one row at a time."""
        tree = cls(row_ids[0])
        for r in row_ids[1:]:
            tree = cls(None, tree, cls(r))
        return tree


def _cells(al: Alignment) -> list[list]:
    # per column, per row: None for a gap, else a 1-tuple holding the label
    out = []
    for col in al.columns:
        cells = []
        for p in al.rows:
            e = col.get(p.row_id)
            cells.append(None if e is None else (p.label(e),))
        out.append(cells)
    return out


def _profile_scores(A1: Alignment, A2: Alignment, sc: ScoringScheme):
    L1, L2 = _cells(A1), _cells(A2)
    rows1, rows2 = len(A1.rows), len(A2.rows)

    def pair(i, j):
        total = 0
        for x in L1[i]:
            for y in L2[j]:
                if x is not None and y is not None:
                    total += sc.pair(x[0], y[0])
                elif x is not None or y is not None:
                    total += sc.gap
        return total

    gap1 = [sum(x is not None for x in c) * rows2 * sc.gap for c in L1]
    gap2 = [sum(y is not None for y in c) * rows1 * sc.gap for c in L2]
    return pair, gap1, gap2


def align_profiles(A1: Alignment, A2: Alignment, sc: ScoringScheme = DEFAULT_SCORING, mode: str = "cross",
                   cap: int | None = None, budget: int = DEFAULT_SEARCH_BUDGET) -> Alignment:
    """Align two alignments over disjoint rows and merge them."""
    c1 = column_poset(A1, "left")
    c2 = column_poset(A2, "right")
    pair, gap1, gap2 = _profile_scores(A1, A2, sc)
    if mode == "cross":
        _, moves, _ = cross_dp(c1, c2, pair, gap1, gap2, cap)
        matches = [(p, q) for kind, p, q in moves if kind == MATCH]
    elif mode == "recover":
        _, matches, _ = recover_search(c1, c2, pair, gap1, gap2, budget)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    merged = recombine([A1, A2], [[(0, p), (1, q)] for p, q in sorted(matches)])
    return merged.canonical()


def single_row(p: Poset) -> Alignment:
    return Alignment([p], [((p.row_id, i),) for i in range(p.n)]).fixed()


def progressive_align(rows: Sequence[Poset], tree: GuideTree | str, sc: ScoringScheme = DEFAULT_SCORING,
                      mode: str = "cross", cap: int | None = None,
                      budget: int = DEFAULT_SEARCH_BUDGET) -> Alignment:
    if isinstance(tree, str):
        tree = GuideTree.parse(tree)
    by_id = {p.row_id: p for p in rows}
    if sorted(tree.leaves()) != sorted(by_id):
        raise ValueError(f"guide tree leaves {sorted(tree.leaves())} do not match rows {sorted(by_id)}")

    def build(t: GuideTree) -> Alignment:
        if t.is_leaf:
            return single_row(by_id[t.label])
        return align_profiles(build(t.left), build(t.right), sc, mode, cap, budget)

    result = build(tree)
    order = {p.row_id: k for k, p in enumerate(rows)}
    ordered = sorted(result.rows, key=lambda p: order[p.row_id])
    return Alignment(ordered, result.columns, result.explicit_order).canonical()
