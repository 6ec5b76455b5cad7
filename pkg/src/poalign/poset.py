"""Finite strict partial orders over the elements of one row.

Elements are the integers ``0..n-1``.  Reachability is kept as one bitmask per
element (bit ``j`` of ``up[i]`` is set iff ``i < j``), which is a dense boolean
matrix in disguise and makes the antichain machinery cheap.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import AntichainError, CycleError, ElementIndexError, StateSpaceExceeded

DEFAULT_ANTICHAIN_CAP = 10**6


def state_cap(default: int = DEFAULT_ANTICHAIN_CAP) -> int:
    """Cap on DP states, overridable through ``POALIGN_STATE_CAP``."""
    raw = os.environ.get("POALIGN_STATE_CAP")
    if raw:
        return int(raw)
    return default


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _find_cycle(n: int, succ: list[set[int]]) -> list[int]:
    color = [0] * n
    stack_pos: dict[int, int] = {}
    path: list[int] = []

    def visit(v):
        color[v] = 1
        stack_pos[v] = len(path)
        path.append(v)
        for w in sorted(succ[v]):
            if color[w] == 1:
                return path[stack_pos[w]:] + [w]
            if color[w] == 0:
                found = visit(w)
                if found:
                    return found
        path.pop()
        del stack_pos[v]
        color[v] = 2
        return None

    for v in range(n):
        if color[v] == 0:
            found = visit(v)
            if found:
                return found
    return []


def transitive_masks(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """Return ``(up, down)`` reachability bitmasks of the closure of ``pairs``.

    Raises :class:`CycleError` (with a witness cycle) if the closure is not
    irreflexive.
    """
    succ: list[set[int]] = [set() for _ in range(n)]
    indeg = [0] * n
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise ElementIndexError(f"pair ({i}, {j}) out of range for n={n}")
        if j not in succ[i]:
            succ[i].add(j)
            indeg[j] += 1
    order = []
    ready = [v for v in range(n) if indeg[v] == 0]
    while ready:
        v = ready.pop()
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    if len(order) < n:
        cycle = _find_cycle(n, succ)
        raise CycleError("relation contains a cycle: " + " < ".join(map(str, cycle)), cycle)
    up = [0] * n
    for v in reversed(order):
        m = 0
        for w in succ[v]:
            m |= (1 << w) | up[w]
        up[v] = m
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    return up, down


@dataclass(frozen=True)
class Poset:
    """Immutable finite poset; ``covers`` holds the Hasse diagram edges.

    Build instances through :func:`build_poset` or :func:`chain_poset`, which
    close and reduce the input relation.  ``origin`` maps local indices back to
    a parent poset when the poset was obtained by :meth:`induced`.
    """

    row_id: str
    n: int
    covers: frozenset = frozenset()
    labels: tuple | None = None
    origin: tuple | None = field(default=None, compare=False)
    up: tuple = field(default=(), compare=False, repr=False)
    down: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(f"row {self.row_id}: {len(self.labels)} labels for {self.n} elements")
        if not self.up and self.n:
            up, down = transitive_masks(self.n, self.covers)
            object.__setattr__(self, "up", tuple(up))
            object.__setattr__(self, "down", tuple(down))

    # order queries

    def less(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return i == j or bool((self.up[i] | self.down[i]) >> j & 1)

    @property
    def reach(self) -> frozenset:
        return frozenset((i, j) for i in range(self.n) for j in bits(self.up[i]))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, i: int):
        return None if self.labels is None else self.labels[i]

    def is_chain(self) -> bool:
        return all(self.comparable(i, j) for i in range(self.n) for j in range(i + 1, self.n))

    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if not self.down[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not self.up[i]]

    def predecessors(self, i: int) -> list[int]:
        """Lower covers of ``i``."""
        return sorted(a for a, b in self.covers if b == i)

    def induced(self, keep: Iterable[int], row_id: str | None = None) -> "Poset":
        """Sub-poset on ``keep`` (renumbered in increasing order)."""
        keep = sorted(set(keep))
        index = {old: new for new, old in enumerate(keep)}
        pairs = {(index[i], index[j]) for i in keep for j in bits(self.up[i]) if j in index}
        labels = None if self.labels is None else tuple(self.labels[i] for i in keep)
        p = build_poset(self.row_id if row_id is None else row_id, len(keep), pairs, labels)
        object.__setattr__(p, "origin", tuple(keep))
        return p

    def renamed(self, row_id: str) -> "Poset":
        return Poset(row_id, self.n, self.covers, self.labels, self.origin, self.up, self.down)

    def __len__(self):
        return self.n


def build_poset(row_id: str, n: int, relation_pairs: Iterable[tuple[int, int]] = (),
                labels: Sequence | None = None) -> Poset:
    """Close and reduce ``relation_pairs`` into a :class:`Poset`.

    >>> build_poset("a", 3, {(0, 1), (1, 2), (0, 2)}).covers == {(0, 1), (1, 2)}
    True
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    up, down = transitive_masks(n, relation_pairs)
    covers = frozenset((i, j) for i in range(n) for j in bits(up[i]) if not up[i] & down[j])
    if labels is not None:
        labels = tuple(labels)
    return Poset(row_id, n, covers, labels, None, tuple(up), tuple(down))


def chain_poset(row_id: str, n: int, labels: Sequence | None = None) -> Poset:
    return build_poset(row_id, n, {(i, i + 1) for i in range(n - 1)}, labels)


def antichain_poset(row_id: str, n: int, labels: Sequence | None = None) -> Poset:
    return build_poset(row_id, n, (), labels)


@dataclass(frozen=True)
class Antichain:
    owner: Poset
    members: tuple = ()

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        for k, i in enumerate(members):
            if not 0 <= i < self.owner.n:
                raise ElementIndexError(f"element {i} out of range")
            for j in members[k + 1:]:
                if self.owner.comparable(i, j):
                    raise AntichainError(f"elements {i} and {j} are comparable")

    @property
    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m


@dataclass(frozen=True)
class BottomSet:
    owner: Poset
    members: frozenset = frozenset()

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        for p in members:
            if not 0 <= p < self.owner.n:
                raise ElementIndexError(f"element {p} out of range")
            missing = set(bits(self.owner.down[p])) - members
            if missing:
                raise ValueError(f"not downward closed: {sorted(missing)} lie below {p}")

    @property
    def mask(self) -> int:
        m = 0
        for i in self.members:
            m |= 1 << i
        return m


def sup_mask(p: Poset, mask: int) -> int:
    """Maximal elements of the subset ``mask`` (as a bitmask)."""
    out = 0
    for i in bits(mask):
        if not p.up[i] & mask:
            out |= 1 << i
    return out


def down_mask(p: Poset, mask: int) -> int:
    out = mask
    for i in bits(mask):
        out |= p.down[i]
    return out


def suprema(b: BottomSet) -> Antichain:
    return Antichain(b.owner, tuple(bits(sup_mask(b.owner, b.mask))))


def bottom_set_of(a: Antichain | Iterable[int], owner: Poset | None = None) -> BottomSet:
    if not isinstance(a, Antichain):
        if owner is None:
            raise TypeError("owner is required when passing raw members")
        a = Antichain(owner, tuple(a))
    return BottomSet(a.owner, frozenset(bits(down_mask(a.owner, a.mask))))


def iter_antichain_masks(p: Poset) -> Iterator[tuple[int, ...]]:
    """All antichains as sorted tuples, lexicographic on the member lists."""
    comp = [p.up[i] | p.down[i] | (1 << i) for i in range(p.n)]

    def extend(members, blocked, start):
        yield members
        for i in range(start, p.n):
            if not blocked >> i & 1:
                yield from extend(members + (i,), blocked | comp[i], i + 1)

    return extend((), 0, 0)


def enumerate_antichains(p: Poset, cap: int = DEFAULT_ANTICHAIN_CAP) -> list[Antichain]:
    out = []
    for members in iter_antichain_masks(p):
        if len(out) >= cap:
            raise StateSpaceExceeded(f"more than {cap} antichains in row {p.row_id}")
        out.append(Antichain(p, members))
    return out


def linear_extension(p: Poset) -> list[int]:
    """Topological order, smallest available index first."""
    indeg = [0] * p.n
    succ: list[list[int]] = [[] for _ in range(p.n)]
    for i, j in p.covers:
        succ[i].append(j)
        indeg[j] += 1
    heap = [i for i in range(p.n) if indeg[i] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        v = heapq.heappop(heap)
        out.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return out
