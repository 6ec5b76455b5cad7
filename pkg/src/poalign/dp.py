"""Score-optimal pairwise alignment of posets.

``align_pair_cross`` runs the bottom-set recursion: a bottom set shrinks by
removing one of its maximal elements, either matched against a maximal
element of the other bottom set or emitted as an indel column.  States are
memoised on the pair of antichains of maximal elements (as bitmasks), which
determine the bottom sets uniquely.

``align_pair_recover`` maximises over relations that preserve comparability in
both directions; those are cliques in a compatibility graph on candidate
pairs, so it is a weighted clique branch-and-bound pruned with per-element
candidate sets.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from typing import Callable, Sequence

from .alignment import Alignment, Column
from .errors import SearchBudgetExceeded, StateSpaceExceeded
from .poset import Poset, bits, linear_extension, state_cap, sup_mask
from .relations import PairRelation, alignment_from_relation
from .scoring import DEFAULT_SCORING, ScoringScheme

DEFAULT_SEARCH_BUDGET = 2_000_000

MATCH, DELETE, INSERT = 0, 1, 2


@contextmanager
def _recursion(depth: int):
    old = sys.getrecursionlimit()
    if depth + 200 > old:
        sys.setrecursionlimit(depth + 200)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def _scorers(p1: Poset, p2: Poset, sc: ScoringScheme):
    pair = lambda i, j: sc.pair(p1.label(i), p2.label(j))  # noqa: E731
    gap1 = [sc.gap] * p1.n
    gap2 = [sc.gap] * p2.n
    return pair, gap1, gap2


def _require_distinct(p1: Poset, p2: Poset):
    if p1.row_id == p2.row_id:
        raise ValueError(f"both inputs are named {p1.row_id!r}; rename one of them")


def cross_dp(p1: Poset, p2: Poset, pair: Callable, gap1: Sequence, gap2: Sequence,
             cap: int | None = None):
    """Optimal score and column list (in removal order, last column first).

    ``pair(i, j)`` scores a match, ``gap1[i]``/``gap2[j]`` score indels.
    Tie-break: match before deletion before insertion, then the smallest
    ``(p, q)``.
    """
    cap = state_cap() if cap is None else cap
    memo: dict = {}

    def best(P: int, Q: int):
        S1 = sup_mask(p1, P)
        S2 = sup_mask(p2, Q)
        key = (S1, S2)
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        if not P and not Q:
            memo[key] = (0, None)
            return 0
        if len(memo) >= cap:
            raise StateSpaceExceeded(f"more than {cap} antichain pairs")
        top = None
        move = None
        sup1 = list(bits(S1))
        sup2 = list(bits(S2))
        for p in sup1:
            for q in sup2:
                v = pair(p, q) + best(P & ~(1 << p), Q & ~(1 << q))
                if top is None or v > top:
                    top, move = v, (MATCH, p, q)
        for p in sup1:
            v = gap1[p] + best(P & ~(1 << p), Q)
            if top is None or v > top:
                top, move = v, (DELETE, p, None)
        for q in sup2:
            v = gap2[q] + best(P, Q & ~(1 << q))
            if top is None or v > top:
                top, move = v, (INSERT, None, q)
        memo[key] = (top, move)
        return top

    with _recursion(2 * (p1.n + p2.n) + 50):
        score = best(p1.full_mask, p2.full_mask)
    moves = []
    P, Q = p1.full_mask, p2.full_mask
    while P or Q:
        kind, p, q = memo[(sup_mask(p1, P), sup_mask(p2, Q))][1]
        moves.append((kind, p, q))
        if p is not None:
            P &= ~(1 << p)
        if q is not None:
            Q &= ~(1 << q)
    return score, moves, len(memo)


def _moves_to_alignment(p1: Poset, p2: Poset, moves) -> Alignment:
    a, b = p1.row_id, p2.row_id
    columns = []
    for kind, p, q in moves:
        entries = []
        if p is not None:
            entries.append((a, p))
        if q is not None:
            entries.append((b, q))
        columns.append(Column(tuple(entries)))
    return Alignment((p1, p2), columns).canonical()


def align_pair_cross(p1: Poset, p2: Poset, sc: ScoringScheme = DEFAULT_SCORING, cap: int | None = None):
    """Best alignment whose column order never reverses a row order.

    Returns ``(score, alignment)``.
    """
    _require_distinct(p1, p2)
    pair, gap1, gap2 = _scorers(p1, p2, sc)
    score, moves, _ = cross_dp(p1, p2, pair, gap1, gap2, cap)
    return score, _moves_to_alignment(p1, p2, moves)


def align_strings_nw(s1: str, s2: str, sc: ScoringScheme = DEFAULT_SCORING, gap_char: str = "-"):
    """Quadratic Needleman-Wunsch; returns ``(score, (row1, row2))``."""
    n, m = len(s1), len(s2)
    H = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        H[i][0] = H[i - 1][0] + sc.gap
    for j in range(1, m + 1):
        H[0][j] = H[0][j - 1] + sc.gap
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            H[i][j] = max(H[i - 1][j - 1] + sc.pair(s1[i - 1], s2[j - 1]),
                          H[i - 1][j] + sc.gap,
                          H[i][j - 1] + sc.gap)
    r1, r2 = [], []
    i, j = n, m
    while i or j:
        if i and j and H[i][j] == H[i - 1][j - 1] + sc.pair(s1[i - 1], s2[j - 1]):
            r1.append(s1[i - 1])
            r2.append(s2[j - 1])
            i, j = i - 1, j - 1
        elif i and H[i][j] == H[i - 1][j] + sc.gap:
            r1.append(s1[i - 1])
            r2.append(gap_char)
            i -= 1
        else:
            r1.append(gap_char)
            r2.append(s2[j - 1])
            j -= 1
    return H[n][m], ("".join(reversed(r1)), "".join(reversed(r2)))


def recover_search(p1: Poset, p2: Poset, pair: Callable, gap1: Sequence, gap2: Sequence,
                   budget: int = DEFAULT_SEARCH_BUDGET):
    """Best comparability-preserving matching by branch and bound.

    Returns ``(score, pairs, nodes)``.  Only pairs that beat two indels are
    candidates, since dropping a pair from such a matching keeps it valid.
    """
    base = sum(gap1) + sum(gap2)
    cands = []
    for i in range(p1.n):
        for j in range(p2.n):
            w = pair(i, j) - gap1[i] - gap2[j]
            if w > 0:
                cands.append((-w, i, j))
    cands.sort()
    weight = [-c[0] for c in cands]
    xs = [c[1] for c in cands]
    ys = [c[2] for c in cands]
    k = len(cands)
    compat = [0] * k
    for a in range(k):
        for b in range(k):
            if xs[a] != xs[b] and ys[a] != ys[b] \
                    and p1.less(xs[a], xs[b]) == p2.less(ys[a], ys[b]) \
                    and p1.less(xs[b], xs[a]) == p2.less(ys[b], ys[a]):
                compat[a] |= 1 << b

    def bound(mask: int) -> float:
        # each element is matched at most once: best candidate per element
        by_x: dict = {}
        by_y: dict = {}
        for c in bits(mask):
            w = weight[c]
            if w > by_x.get(xs[c], 0):
                by_x[xs[c]] = w
            if w > by_y.get(ys[c], 0):
                by_y[ys[c]] = w
        return min(sum(by_x.values()), sum(by_y.values()))

    best_w = 0
    best_set: list = []
    nodes = 0

    def search(total, chosen, mask):
        nonlocal best_w, best_set, nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"more than {budget} search nodes")
        if total > best_w:
            best_w, best_set = total, list(chosen)
        while mask:
            if total + bound(mask) <= best_w:
                return
            c = (mask & -mask).bit_length() - 1
            mask &= ~(1 << c)
            chosen.append(c)
            search(total + weight[c], chosen, mask & compat[c])
            chosen.pop()

    # candidates are visited in sorted order: lowest set bit = best remaining
    with _recursion(p1.n + 50):
        search(0, [], (1 << k) - 1)
    pairs = sorted((xs[c], ys[c]) for c in best_set)
    return base + best_w, pairs, nodes


def align_pair_recover(p1: Poset, p2: Poset, sc: ScoringScheme = DEFAULT_SCORING,
                       budget: int = DEFAULT_SEARCH_BUDGET):
    """Best alignment whose column order projects back to each row's order.

    Returns ``(score, alignment)``.
    """
    _require_distinct(p1, p2)
    pair, gap1, gap2 = _scorers(p1, p2, sc)
    score, pairs, _ = recover_search(p1, p2, pair, gap1, gap2, budget)
    return score, alignment_from_relation(PairRelation(p1, p2, frozenset(pairs)), check=False)


def seq_to_poset_dp(p: Poset, s: Poset, pair: Callable, gap1: Sequence, gap2: Sequence,
                    charge_offpath: bool = False):
    """POA-style alignment of a chain ``s`` against one maximal path of ``p``.

    Returns ``(score, matched pairs, path)``.  Elements of ``p`` off the chosen
    path cost nothing unless ``charge_offpath`` is set.
    """
    seq = linear_extension(s)
    m = len(seq)
    ins_prefix = [0] * (m + 1)
    for j in range(m):
        ins_prefix[j + 1] = ins_prefix[j] + gap2[seq[j]]
    if p.n == 0:
        return ins_prefix[m], [], []
    constant = sum(gap1) if charge_offpath else 0
    bonus = [-g if charge_offpath else 0 for g in gap1]
    SOURCE = -1
    dp: dict = {}
    back: dict = {}
    for v in linear_extension(p):
        preds = p.predecessors(v) or [SOURCE]
        row = [None] * (m + 1)
        brow = [None] * (m + 1)
        for j in range(m + 1):
            top, move = None, None
            if j:
                for u in preds:
                    prev = ins_prefix[j - 1] if u == SOURCE else dp[u][j - 1]
                    val = prev + pair(v, seq[j - 1]) + bonus[v]
                    if top is None or val > top:
                        top, move = val, (MATCH, u)
            for u in preds:
                prev = ins_prefix[j] if u == SOURCE else dp[u][j]
                val = prev + gap1[v] + bonus[v]
                if top is None or val > top:
                    top, move = val, (DELETE, u)
            if j:
                val = row[j - 1] + gap2[seq[j - 1]]
                if val > top:
                    top, move = val, (INSERT, v)
            row[j] = top
            brow[j] = move
        dp[v] = row
        back[v] = brow
    end = max(p.maximal(), key=lambda v: (dp[v][m], -v))
    score = dp[end][m] + constant
    pairs, path = [], []
    v, j = end, m
    while v != SOURCE:
        kind, u = back[v][j]
        if kind == INSERT:
            j -= 1
            continue
        path.append(v)
        if kind == MATCH:
            pairs.append((v, seq[j - 1]))
            j -= 1
        v = u
    path.reverse()
    return score, sorted(pairs), path


def align_seq_to_poset(p: Poset, s: Poset, sc: ScoringScheme = DEFAULT_SCORING, charge_offpath: bool = False):
    """Align a sequence (chain poset) to a poset along a single Hasse path.

    Returns ``(score, alignment)``; the alignment keeps comparabilities
    intact in both rows.
    """
    if not s.is_chain():
        raise ValueError(f"row {s.row_id} is not a chain")
    _require_distinct(p, s)
    pair, gap1, gap2 = _scorers(p, s, sc)
    score, pairs, _ = seq_to_poset_dp(p, s, pair, gap1, gap2, charge_offpath)
    return score, alignment_from_relation(PairRelation(p, s, frozenset(pairs)), check=False)
