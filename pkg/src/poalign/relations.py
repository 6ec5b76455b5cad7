"""Pairwise alignments viewed as binary relations between two posets.

Relations are directed, ``left -> right``; :meth:`PairRelation.inverse` gives
the other reading.  The three properties of interest are

* (M)  the relation is a partial matching,
* (P)  ``x1 < x2`` iff ``y1 < y2`` for any two pairs,
* (P') some strict order on the pairs extends both row orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alignment import Alignment, Column, _one, format_cycle, induce_column_order, validate_general, validate_recover
from .errors import CycleError, MiddleMismatch, NoOrderExists, NotPairwise, PropertyViolation
from .poset import Poset, build_poset
from .report import Check


@dataclass(frozen=True)
class PairRelation:
    left: Poset
    right: Poset
    pairs: frozenset = frozenset()

    def __post_init__(self):
        pairs = frozenset((int(x), int(y)) for x, y in self.pairs)
        for x, y in pairs:
            if not (0 <= x < self.left.n and 0 <= y < self.right.n):
                raise IndexError(f"pair ({x}, {y}) out of range")
        object.__setattr__(self, "pairs", pairs)

    def inverse(self) -> "PairRelation":
        return PairRelation(self.right, self.left, frozenset((y, x) for x, y in self.pairs))

    def sorted_pairs(self) -> list:
        return sorted(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.sorted_pairs())


def identity_relation(p: Poset, q: Poset | None = None) -> PairRelation:
    q = p if q is None else q
    return PairRelation(p, q, frozenset((i, i) for i in range(min(p.n, q.n))))


def check_M(r: PairRelation) -> Check:
    seen_x, seen_y = {}, {}
    witnesses = []
    for x, y in r.sorted_pairs():
        if x in seen_x:
            witnesses.append(((x, seen_x[x]), (x, y)))
        else:
            seen_x[x] = y
        if y in seen_y:
            witnesses.append(((seen_y[y], y), (x, y)))
        else:
            seen_y[y] = x
    return Check("M", not witnesses, witnesses)


def check_P(r: PairRelation) -> Check:
    pairs = r.sorted_pairs()
    witnesses = []
    for a, (x1, y1) in enumerate(pairs):
        for x2, y2 in pairs[a + 1:]:
            if (r.left.less(x1, x2) != r.right.less(y1, y2)
                    or r.left.less(x2, x1) != r.right.less(y2, y1)):
                witnesses.append(((x1, y1), (x2, y2)))
    return Check("P", not witnesses, witnesses)


def forced_pair_order(r: PairRelation) -> tuple[list, set]:
    pairs = r.sorted_pairs()
    edges = set()
    for a, (u, v) in enumerate(pairs):
        for b, (x, y) in enumerate(pairs):
            if a != b and (r.left.less(u, x) or r.right.less(v, y)):
                edges.add((a, b))
    return pairs, edges


def check_Pprime(r: PairRelation) -> Check:
    pairs, edges = forced_pair_order(r)
    try:
        build_poset("pairs", len(pairs), edges)
    except CycleError as exc:
        return Check("P'", False, [[pairs[k] for k in exc.cycle]])
    return Check("P'", True)


def compose(r: PairRelation, s: PairRelation) -> PairRelation:
    """``s o r``: pairs ``(x, z)`` with ``(x, y)`` in r and ``(y, z)`` in s."""
    if r.right != s.left:
        raise MiddleMismatch(f"cannot compose: {r.right.row_id} is not {s.left.row_id}")
    by_y: dict = {}
    for y, z in s.pairs:
        by_y.setdefault(y, []).append(z)
    return PairRelation(r.left, s.right, frozenset((x, z) for x, y in r.pairs for z in by_y.get(y, ())))


def compose_all(relations: Sequence[PairRelation]) -> PairRelation:
    out = relations[0]
    for s in relations[1:]:
        out = compose(out, s)
    return out


def relation_from_alignment(al: Alignment) -> PairRelation:
    if len(al.rows) != 2:
        raise NotPairwise(f"expected 2 rows, got {len(al.rows)}")
    left, right = al.rows
    pairs = set()
    for col in al.columns:
        x, y = col.get(left.row_id), col.get(right.row_id)
        if x is not None and y is not None:
            pairs.add((x, y))
    return PairRelation(left, right, frozenset(pairs))


def alignment_from_relation(r: PairRelation, check: bool = True) -> Alignment:
    """Matched pairs become columns, unmatched elements become indel columns;
    the column order is the one induced by the two rows."""
    if check:
        for c in (check_M(r), check_Pprime(r)):
            if not c:
                raise PropertyViolation(c.name, c.witnesses[0])
    if r.left.row_id == r.right.row_id:
        raise ValueError("the two posets of a relation need distinct row ids to form an alignment")
    a, b = r.left.row_id, r.right.row_id
    matched_x = {x for x, _ in r.pairs}
    matched_y = {y for _, y in r.pairs}
    columns = [Column(((a, x), (b, y))) for x, y in r.sorted_pairs()]
    columns += [Column(((a, x),)) for x in range(r.left.n) if x not in matched_x]
    columns += [Column(((b, y),)) for y in range(r.right.n) if y not in matched_y]
    return Alignment((r.left, r.right), columns).canonical()


# multiple alignments from sets of pairwise relations


@dataclass
class RelationGraph:
    rows: list
    edges: dict = field(default_factory=dict)

    def __post_init__(self):
        ids = {p.row_id: p for p in self.rows}
        for (a, b), rel in self.edges.items():
            if rel.left != ids.get(a) or rel.right != ids.get(b):
                raise ValueError(f"relation on edge ({a}, {b}) does not match its endpoints")

    @classmethod
    def from_relations(cls, relations: Iterable[PairRelation]) -> "RelationGraph":
        rows: dict = {}
        edges = {}
        for rel in relations:
            for p in (rel.left, rel.right):
                if rows.setdefault(p.row_id, p) != p:
                    raise ValueError(f"row {p.row_id} given with two different posets")
            edges[(rel.left.row_id, rel.right.row_id)] = rel
        return cls(list(rows.values()), edges)

    def is_forest(self) -> bool:
        parent = {p.row_id: p.row_id for p in self.rows}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True


@dataclass
class ViolationReport:
    """Why the union of the relations is not an alignment."""

    columns: list
    dpone: list
    cycle: str | None = None

    @property
    def ok(self) -> bool:
        return False

    def format(self) -> str:
        lines = ["transitive alignment: FAILED"]
        for w in self.dpone:
            lines.append(f"Dpone {w}")
        if self.cycle:
            lines.append(f"order {self.cycle}")
        return "\n".join(lines)


def _components(rows: Sequence[Poset], relations: Iterable[PairRelation]) -> list[Column]:
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in rows:
        for i in range(p.n):
            parent[(p.row_id, i)] = (p.row_id, i)
    for rel in relations:
        for x, y in rel.pairs:
            ra, rb = find((rel.left.row_id, x)), find((rel.right.row_id, y))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for node in parent:
        groups.setdefault(find(node), []).append(node)
    return [Column(tuple(g)) for g in groups.values()]


def transitive_multialign(g: RelationGraph) -> Alignment | ViolationReport:
    """Columns are the connected components of the union of all relations.

    On a forest of relations the result is the unique alignment they
    determine.  With cycles the components may hold two elements of one row
    or admit no column order; a :class:`ViolationReport` says which.
    """
    for (a, b), rel in g.edges.items():
        for c in (check_M(rel), check_P(rel)):
            if not c:
                raise PropertyViolation(c.name, c.witnesses[0])
    columns = _components(g.rows, g.edges.values())
    al = Alignment(g.rows, columns).canonical()
    dpone = _one(al)
    if dpone:
        return ViolationReport(list(al.columns), dpone)
    try:
        induce_column_order(al.rows, al.columns)
    except NoOrderExists as exc:
        return ViolationReport(list(al.columns), [], format_cycle(exc.cycle, al.columns) or str(exc))
    if g.is_forest():
        report = validate_recover(al)
        assert report.ok, report.format()
    elif not validate_general(al).ok:
        return ViolationReport(list(al.columns), [], validate_general(al).format())
    return al
