"""Alignments of posets: columns, column orders, axiom validators and the
structural operations (restriction, quotient, recombination, blocks).

An alignment is stored as a list of :class:`Column` objects, each a set of
``(row_id, element)`` entries, plus an optional explicit strict order on the
column indices.  Without an explicit order the alignment uses the *induced*
order: the transitive closure of the relations forced by the rows, which is
the least order any valid column order must contain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    BlockOrderUnsatisfiable,
    CycleError,
    EmptyRowSet,
    InconsistentCorrespondence,
    InvalidPartition,
    NoOrderExists,
    RowNotTotal,
)
from .poset import Poset, bits, build_poset, linear_extension
from .report import Report

ALIGNED = "aligned"
PREFIX = "prefix"
SUFFIX = "suffix"
FLAGS = (ALIGNED, PREFIX, SUFFIX)

COLUMNS = "columns"


@dataclass(frozen=True)
class Column:
    entries: tuple
    flag: str = ALIGNED

    def __post_init__(self):
        entries = tuple(sorted((str(r), int(e)) for r, e in self.entries))
        if not entries:
            raise ValueError("a column needs at least one entry")
        if self.flag not in FLAGS:
            raise ValueError(f"unknown column flag {self.flag!r}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, mapping: Mapping[str, int] | Iterable, flag: str = ALIGNED) -> "Column":
        if isinstance(mapping, Column):
            return mapping
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(tuple(items), flag)

    def get(self, row_id: str):
        for r, e in self.entries:
            if r == row_id:
                return e
        return None

    @property
    def row_ids(self) -> tuple:
        return tuple(r for r, _ in self.entries)

    def __contains__(self, row_id):
        return self.get(row_id) is not None

    def __str__(self):
        body = ",".join(f"{r}:{e}" for r, e in self.entries)
        return body if self.flag == ALIGNED else f"{self.flag} {body}"


_UNSET = object()


class Alignment:
    """Rows (posets), columns and a strict order on columns.

    ``order`` may be ``None`` (use the induced order), a :class:`Poset` over
    the column indices, or an iterable of ``(i, j)`` column-index pairs that is
    closed and reduced on construction.
    """

    def __init__(self, rows: Sequence[Poset], columns: Iterable, order=None):
        self.rows = tuple(rows)
        ids = [p.row_id for p in self.rows]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate row ids: {ids}")
        self.columns = tuple(Column.of(c) for c in columns)
        if order is None or isinstance(order, Poset):
            self.explicit_order = order
        else:
            self.explicit_order = build_poset(COLUMNS, len(self.columns), order)
        if self.explicit_order is not None and self.explicit_order.n != len(self.columns):
            raise ValueError("column order size does not match the number of columns")
        self._induced = _UNSET
        self._row_index = {r: k for k, r in enumerate(ids)}

    # basic access

    @property
    def row_ids(self) -> tuple:
        return tuple(p.row_id for p in self.rows)

    def row(self, row_id: str) -> Poset:
        return self.rows[self._row_index[row_id]]

    def row_index(self, row_id: str) -> int:
        return self._row_index[row_id]

    def __len__(self):
        return len(self.columns)

    def __repr__(self):
        cols = "; ".join(str(c) for c in self.columns)
        return f"Alignment(rows={list(self.row_ids)}, columns=[{cols}])"

    def locate(self) -> dict:
        """Map ``(row_id, elem)`` to the index of the first column holding it."""
        where = {}
        for k, col in enumerate(self.columns):
            for entry in col.entries:
                where.setdefault(entry, k)
        return where

    @property
    def induced_order(self) -> Poset:
        if self._induced is _UNSET:
            try:
                self._induced = induce_column_order(self.rows, self.columns)
            except NoOrderExists as exc:
                self._induced = exc
        if isinstance(self._induced, NoOrderExists):
            raise self._induced
        return self._induced

    @property
    def column_order(self) -> Poset:
        """The explicit order if one was given, else the induced order."""
        if self.explicit_order is not None:
            return self.explicit_order
        return self.induced_order

    def has_order(self) -> bool:
        try:
            self.column_order
        except NoOrderExists:
            return False
        return True

    def with_order(self, order) -> "Alignment":
        return Alignment(self.rows, self.columns, order)

    def fixed(self) -> "Alignment":
        """Copy whose current column order is stored explicitly."""
        return Alignment(self.rows, self.columns, self.column_order)

    # canonical form and isomorphism

    def _sort_key(self, col: Column) -> tuple:
        return tuple(sorted((self._row_index.get(r, len(self.rows)), r, e) for r, e in col.entries)), col.flag

    def canonical(self) -> "Alignment":
        perm = sorted(range(len(self.columns)), key=lambda k: self._sort_key(self.columns[k]))
        new_index = {old: new for new, old in enumerate(perm)}
        order = None
        if self.explicit_order is not None:
            order = build_poset(COLUMNS, len(perm),
                                {(new_index[i], new_index[j]) for i, j in self.explicit_order.covers})
        return Alignment(self.rows, [self.columns[k] for k in perm], order)

    def key(self):
        try:
            reach = frozenset((self.columns[i], self.columns[j]) for i, j in self.column_order.reach)
        except NoOrderExists:
            reach = None
        return frozenset(self.rows), frozenset(self.columns), reach

    def isomorphic(self, other: "Alignment") -> bool:
        """Same rows (in any order), same columns and same column order."""
        return len(self.columns) == len(other.columns) and self.key() == other.key()

    def column_name(self, k: int) -> str:
        return f"c{k}{{{self.columns[k]}}}"


# column order


def forced_edges(rows: Sequence[Poset], columns: Sequence[Column]) -> dict:
    """Relations the rows force between columns, with one witness each.

    Returns ``{(P, Q): (row_id, i, j)}`` meaning ``i < j`` in ``row_id`` with
    ``i`` in column ``P`` and ``j`` in column ``Q``.  Self-loops appear when a
    column holds two comparable elements of one row.
    """
    where = {}
    for k, col in enumerate(columns):
        for entry in col.entries:
            where.setdefault(entry, k)
    edges = {}
    for p in rows:
        for i in range(p.n):
            ci = where.get((p.row_id, i))
            if ci is None:
                continue
            for j in bits(p.up[i]):
                cj = where.get((p.row_id, j))
                if cj is not None:
                    edges.setdefault((ci, cj), (p.row_id, i, j))
    return edges


def format_cycle(cycle, columns) -> str:
    columns = [c if isinstance(c, Column) else Column(tuple(c)) for c in columns]
    parts = []
    for a, b, row, i, j in cycle:
        parts.append(f"c{a}{{{columns[a]}}} < c{b}{{{columns[b]}}} by {row}: {i}<{j}")
    return "; ".join(parts)


def induce_column_order(rows: Sequence[Poset], columns: Sequence) -> Poset:
    """Least column order compatible with the rows.

    Raises :class:`NoOrderExists` carrying a directed cycle of forced
    relations when the closure is not irreflexive, or a crossing triple when a
    row order would be reversed.
    """
    columns = [Column.of(c) for c in columns]
    edges = forced_edges(rows, columns)
    loops = [(a, b, *w) for (a, b), w in edges.items() if a == b]
    if loops:
        cycle = [loops[0]]
        raise NoOrderExists("column is forced above itself: " + format_cycle(cycle, columns), cycle)
    try:
        order = build_poset(COLUMNS, len(columns), edges.keys())
    except CycleError as exc:
        nodes = list(exc.cycle)
        cycle = [(a, b, *edges[(a, b)]) for a, b in zip(nodes, nodes[1:])]
        raise NoOrderExists("forced column relations contain a cycle: " + format_cycle(cycle, columns),
                            cycle) from None
    crossing = _cross_violations(order, rows, columns)
    if crossing:
        raise NoOrderExists(f"column order reverses a row order: {crossing[0]}", cross=crossing[0])
    return order


def _row_pairs(rows, columns, k1, k2):
    """Yield ``(row, i, j)`` for entries of the same row in columns k1, k2."""
    c2 = dict(columns[k2].entries)
    for r, i in columns[k1].entries:
        j = c2.get(r)
        if j is not None:
            yield r, i, j


def _cross_violations(order: Poset, rows, columns) -> list:
    by_id = {p.row_id: p for p in rows}
    out = []
    for a, b in sorted(order.reach):
        for r, i, j in _row_pairs(rows, columns, a, b):
            p = by_id.get(r)
            if p is not None and i < p.n and j < p.n and p.less(j, i):
                out.append(f"c{a} < c{b} but {r}: {j}<{i}")
    return out


# validators


def _coverage(al: Alignment) -> list[str]:
    seen: dict = {}
    bad = []
    for k, col in enumerate(al.columns):
        for r, e in col.entries:
            if r not in al._row_index:
                bad.append(f"c{k} refers to unknown row {r}")
            elif not 0 <= e < al.row(r).n:
                bad.append(f"c{k} refers to {r}:{e}, out of range")
            elif (r, e) in seen:
                bad.append(f"{r}:{e} in c{seen[(r, e)]} and c{k}")
            else:
                seen[(r, e)] = k
    for p in al.rows:
        for i in range(p.n):
            if (p.row_id, i) not in seen:
                bad.append(f"{p.row_id}:{i} is in no column")
    return bad


def _one(al: Alignment) -> list[str]:
    bad = []
    for k, col in enumerate(al.columns):
        rs = col.row_ids
        dup = sorted({r for r in rs if rs.count(r) > 1})
        for r in dup:
            elems = [e for rr, e in col.entries if rr == r]
            bad.append(f"c{k} holds {r}:{elems}")
    return bad


def _complete(al: Alignment, edges) -> list[str]:
    """(sub): each column is exactly a complete component of the edge graph."""
    where = al.locate()
    adj: dict = {}
    for u, v in edges:
        u, v = tuple(u), tuple(v)
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    bad = []
    for k, col in enumerate(al.columns):
        for x in col.entries:
            for y in col.entries:
                if x < y and y not in adj.get(x, ()):
                    bad.append(f"c{k}: no edge {x}-{y}")
    for u, vs in adj.items():
        for v in vs:
            if where.get(u) != where.get(v):
                bad.append(f"edge {u}-{v} joins different columns")
    return bad


def _order_or_report(al: Alignment, report: Report):
    if al.explicit_order is not None:
        report.add("order")
        return al.explicit_order
    try:
        order = al.induced_order
    except NoOrderExists as exc:
        report.add("order", [str(exc)])
        return None
    report.add("order")
    return order


def _porder(al: Alignment, order: Poset) -> list[str]:
    bad = []
    for (a, b), (r, i, j) in sorted(forced_edges(al.rows, al.columns).items()):
        if a == b or not order.less(a, b):
            bad.append(f"{r}: {i}<{j} but not c{a} < c{b}")
    return bad


def _precover(al: Alignment, order: Poset) -> list[str]:
    bad = []
    for a, b in sorted(order.reach):
        for r, i, j in _row_pairs(al.rows, al.columns, a, b):
            if r in al._row_index and not al.row(r).less(i, j):
                bad.append(f"c{a} < c{b} but not {r}: {i}<{j}")
    return bad


def validate_general(al: Alignment, edges=None, recover: bool = False) -> Report:
    """Check the axioms of a general alignment of posets.

    ``edges`` is an optional explicit alignment-graph edge list; the
    complete-subgraph axiom is only meaningful when one is supplied.
    """
    report = Report("recover" if recover else "general")
    report.add("coverage", _coverage(al))
    report.add("Dpsub", _complete(al, edges) if edges is not None else [])
    report.add("Dpone", _one(al))
    order = _order_or_report(al, report)
    if order is None:
        report.add("Dporder", ["no column order"])
        report.add("Dpcross", ["no column order"])
        if recover:
            report.add("Dprecover", ["no column order"])
        return report
    report.add("Dporder", _porder(al, order))
    report.add("Dpcross", _cross_violations(order, al.rows, al.columns))
    if recover:
        report.add("Dprecover", _precover(al, order))
    return report


def validate_recover(al: Alignment, edges=None) -> Report:
    return validate_general(al, edges, recover=True)


def validate_total(al: Alignment, edges=None) -> Report:
    """Check the axioms for alignments of totally ordered rows."""
    for p in al.rows:
        if not p.is_chain():
            raise RowNotTotal(f"row {p.row_id} is not totally ordered")
    report = Report("total")
    report.add("coverage", _coverage(al))
    report.add("Dtsub", _complete(al, edges) if edges is not None else [])
    report.add("Dtone", _one(al))

    crossing = []
    cols = al.columns
    for a in range(len(cols)):
        for b in range(len(cols)):
            if a == b:
                continue
            shared = list(_row_pairs(al.rows, cols, a, b))
            for r1, i, k in shared:
                for r2, j, l in shared:
                    if r1 != r2 and i < k and not j < l:
                        crossing.append(f"c{a},c{b}: {r1} {i}<{k} but {r2} {j}>={l}")
    report.add("Dtcross", crossing)

    try:
        induced = al.induced_order
    except NoOrderExists as exc:
        report.add("Dtrecover", [str(exc)])
        report.add("linear_extension", [str(exc)])
        return report
    order = al.explicit_order or induced
    report.add("Dtrecover", _porder(al, order))
    total = linear_extension(order)
    position = {c: k for k, c in enumerate(total)}
    bad = []
    for (a, b), (r, i, j) in forced_edges(al.rows, cols).items():
        if position[a] >= position[b]:
            bad.append(f"linear extension puts c{b} before c{a} against {r}: {i}<{j}")
    report.add("linear_extension", bad)
    return report


def validate_local_marking(al: Alignment) -> Report:
    """Check the prefix/suffix marking used for (partially) local alignments."""
    report = Report("local")
    report.add("unaligned_singletons",
               [f"c{k} is {c.flag} with {len(c.entries)} entries"
                for k, c in enumerate(al.columns) if c.flag != ALIGNED and len(c.entries) != 1])
    try:
        order = al.column_order
    except NoOrderExists as exc:
        report.add("order", [str(exc)])
        return report
    flags = [c.flag for c in al.columns]
    prefix = [k for k, f in enumerate(flags) if f == PREFIX]
    suffix = [k for k, f in enumerate(flags) if f == SUFFIX]
    aligned = [k for k, f in enumerate(flags) if f == ALIGNED]
    report.add("prefix_before_aligned",
               [f"aligned c{v} precedes prefix c{u}" for u in prefix for v in aligned if order.less(v, u)])
    report.add("suffix_after_aligned",
               [f"suffix c{w} precedes aligned c{v}" for w in suffix for v in aligned if order.less(w, v)])
    cross = []
    for group in (prefix, suffix):
        for x in group:
            for y in group:
                if x != y and al.columns[x].row_ids != al.columns[y].row_ids and order.less(x, y):
                    cross.append(f"{flags[x]} c{x} < c{y} across rows")
    report.add("unaligned_rows_incomparable", cross)
    return report


def is_valid(al: Alignment, mode: str = "cross") -> bool:
    if mode == "recover":
        return validate_recover(al).ok
    return validate_general(al).ok


# restriction, quotient, recombination


def _restricted(al: Alignment, keep) -> tuple[list, set, dict]:
    """Columns, order pairs and index map after dropping rejected entries."""
    order = al.column_order
    new_cols = []
    mapping = {}
    for k, col in enumerate(al.columns):
        entries = [(r, e) for r, e in col.entries if keep(r, e)]
        if entries:
            mapping[k] = len(new_cols)
            new_cols.append(Column(tuple(entries), col.flag))
    pairs = {(mapping[a], mapping[b]) for a, b in order.reach if a in mapping and b in mapping}
    return new_cols, pairs, mapping


def restrict_with_map(al: Alignment, row_subset: Iterable[str]) -> tuple[Alignment, dict]:
    """Like :func:`restrict`, also returning ``{old column: new column}``."""
    keep = set(row_subset)
    if not keep:
        raise EmptyRowSet("cannot restrict to an empty set of rows")
    unknown = keep - set(al.row_ids)
    if unknown:
        raise KeyError(f"unknown rows: {sorted(unknown)}")
    cols, pairs, mapping = _restricted(al, lambda r, e: r in keep)
    rows = [p for p in al.rows if p.row_id in keep]
    return Alignment(rows, cols, build_poset(COLUMNS, len(cols), pairs)), mapping


def restrict(al: Alignment, row_subset: Iterable[str]) -> Alignment:
    """Sub-alignment on a subset of rows with the inherited column order.

    Columns that lose all their entries are dropped.
    """
    return restrict_with_map(al, row_subset)[0]


@dataclass(frozen=True)
class RowPartition:
    classes: tuple

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        flat = [r for c in classes for r in c]
        if any(not c for c in classes) or len(flat) != len(set(flat)):
            raise InvalidPartition(f"classes must be disjoint and non-empty: {classes}")

    @classmethod
    def parse(cls, text: str) -> "RowPartition":
        """Parse ``a,b|c`` notation."""
        return cls(tuple(tuple(x for x in part.split(",") if x) for part in text.split("|")))

    def name(self, k: int) -> str:
        return "+".join(self.classes[k])

    def covers(self, row_ids) -> bool:
        return sorted(r for c in self.classes for r in c) == sorted(row_ids)


@dataclass
class Quotient:
    """Alignment of alignments.

    ``alignment`` has one row per class; that row is the column poset of the
    matching entry of ``parts``.  Its columns correspond 1-1 to the columns of
    the original alignment, in the same order.
    """

    partition: RowPartition
    parts: list
    alignment: Alignment


def column_poset(al: Alignment, row_id: str, labels=None) -> Poset:
    """The columns of ``al`` as a poset ordered by its column order."""
    return build_poset(row_id, len(al.columns), al.column_order.reach, labels)


def quotient(al: Alignment, part: RowPartition | Sequence) -> Quotient:
    if not isinstance(part, RowPartition):
        part = RowPartition(tuple(part))
    if not part.covers(al.row_ids):
        raise InvalidPartition(f"{part.classes} does not partition rows {al.row_ids}")
    parts, maps, rows = [], [], []
    for k, cls in enumerate(part.classes):
        sub, mapping = restrict_with_map(al, cls)
        parts.append(sub)
        maps.append(mapping)
        rows.append(column_poset(sub, part.name(k)))
    columns = []
    for q in range(len(al.columns)):
        columns.append(Column(tuple((part.name(k), maps[k][q]) for k in range(len(parts)) if q in maps[k]),
                              al.columns[q].flag))
    return Quotient(part, parts, Alignment(rows, columns, al.column_order))


def recombine(parts: Sequence[Alignment], correspondence: Iterable = (), extra_order: Iterable = ()) -> Alignment:
    """Merge alignments over disjoint rows.

    ``correspondence`` is a collection of groups; each group lists
    ``(part_index, column_index)`` references whose columns become one merged
    column.  ``extra_order`` adds ``((part, col), (part, col))`` relations
    between the merged columns on top of the orders inherited from the parts.
    """
    seen_rows: set = set()
    for al in parts:
        clash = seen_rows & set(al.row_ids)
        if clash:
            raise InconsistentCorrespondence(f"rows {sorted(clash)} occur in several parts")
        seen_rows |= set(al.row_ids)

    group_of = {}
    for g, group in enumerate(correspondence):
        used_parts = set()
        for ref in group:
            pi, ci = ref
            if pi in used_parts:
                raise InconsistentCorrespondence(f"group {g} takes two columns from part {pi}")
            used_parts.add(pi)
            if ref in group_of:
                raise InconsistentCorrespondence(f"column {ref} appears in two groups")
            if not 0 <= ci < len(parts[pi].columns):
                raise InconsistentCorrespondence(f"column {ref} does not exist")
            group_of[ref] = g

    merged: dict = {}
    entries: list = []
    flags: list = []
    for pi, al in enumerate(parts):
        for ci, col in enumerate(al.columns):
            token = ("g", group_of[(pi, ci)]) if (pi, ci) in group_of else ("c", pi, ci)
            if token not in merged:
                merged[token] = len(entries)
                entries.append([])
                flags.append(col.flag)
            k = merged[token]
            entries[k].extend(col.entries)
            if flags[k] != col.flag:
                raise InconsistentCorrespondence(f"merged column {k} mixes flags {flags[k]} and {col.flag}")

    def index(pi, ci):
        token = ("g", group_of[(pi, ci)]) if (pi, ci) in group_of else ("c", pi, ci)
        return merged[token]

    pairs = set()
    for pi, al in enumerate(parts):
        for a, b in al.column_order.reach:
            pairs.add((index(pi, a), index(pi, b)))
    for x, y in extra_order:
        pairs.add((index(*x), index(*y)))
    columns = [Column(tuple(e), f) for e, f in zip(entries, flags)]
    if any(a == b for a, b in pairs):
        raise InconsistentCorrespondence("a merged column would precede itself")
    try:
        order = build_poset(COLUMNS, len(columns), pairs)
    except CycleError as exc:
        raise InconsistentCorrespondence(f"merged column order has a cycle {list(exc.cycle)}") from None
    rows = [p for al in parts for p in al.rows]
    return Alignment(rows, columns, order)


def split(al: Alignment, part: RowPartition | Sequence) -> tuple[list, list]:
    """Restrict ``al`` to each class and derive the correspondence that
    :func:`recombine` needs to rebuild it."""
    if not isinstance(part, RowPartition):
        part = RowPartition(tuple(part))
    parts, maps = [], []
    for cls in part.classes:
        sub, mapping = restrict_with_map(al, cls)
        parts.append(sub)
        maps.append(mapping)
    correspondence = []
    for q in range(len(al.columns)):
        group = [(k, maps[k][q]) for k in range(len(parts)) if q in maps[k]]
        if len(group) > 1:
            correspondence.append(group)
    return parts, correspondence


def unquotient(q: Quotient) -> Alignment:
    """Flatten a quotient back into an alignment of the original rows."""
    refs = []
    for col in q.alignment.columns:
        refs.append([(q.partition.classes.index(tuple(r.split("+"))), e) for r, e in col.entries])
    correspondence = [g for g in refs if len(g) > 1]
    extra = [(refs[a][0], refs[b][0]) for a, b in q.alignment.column_order.reach]
    return recombine(q.parts, correspondence, extra)


# blocks


@dataclass
class BlockPartition:
    """Blocks of columns with a strict order on the blocks.

    ``classes[k]`` lists the parent column indices in block ``k``; ``blocks[k]``
    is that block as an alignment over sub-posets of the rows, whose ``origin``
    maps back to the parent elements.
    """

    rows: tuple
    classes: list
    block_order: Poset
    blocks: list

    order: Poset | None = None

    def concatenate(self) -> Alignment:
        return concatenate_blocks(self.blocks, self.block_order, self.rows)

    def mirrors_order(self) -> bool:
        """True when every column of a block precedes every column of each
        later block, so concatenation gives back the original column order."""
        if self.order is None:
            return False
        return all(self.order.less(a, b)
                   for x, y in self.block_order.reach
                   for a in self.classes[x] for b in self.classes[y])


def _block_alignment(al: Alignment, cols: Sequence[int], order: Poset) -> Alignment:
    rows = []
    local = {}
    for p in al.rows:
        keep = sorted(e for k in cols for r, e in al.columns[k].entries if r == p.row_id)
        sub = p.induced(keep)
        rows.append(sub)
        for new, old in enumerate(keep):
            local[(p.row_id, old)] = new
    columns = [Column(tuple((r, local[(r, e)]) for r, e in al.columns[k].entries), al.columns[k].flag)
               for k in cols]
    pos = {k: n for n, k in enumerate(cols)}
    pairs = {(pos[a], pos[b]) for a in cols for b in cols if order.less(a, b)}
    return Alignment(rows, columns, build_poset(COLUMNS, len(cols), pairs))


def block_decompose(al: Alignment, assignment: Sequence) -> BlockPartition:
    """Group columns by ``assignment[column]`` and derive the least block order."""
    if len(assignment) != len(al.columns):
        raise ValueError("assignment must give a block for every column")
    labels: list = []
    for b in assignment:
        if b not in labels:
            labels.append(b)
    block_index = {b: k for k, b in enumerate(labels)}
    classes = [[k for k, b in enumerate(assignment) if b == label] for label in labels]
    order = al.column_order
    pairs = set()
    for a, b in order.reach:
        x, y = block_index[assignment[a]], block_index[assignment[b]]
        if x == y:
            continue
        pairs.add((x, y))
    try:
        block_order = build_poset("blocks", len(classes), pairs)
    except CycleError as exc:
        raise BlockOrderUnsatisfiable(f"blocks {list(exc.cycle)} would have to form a cycle") from None
    blocks = [_block_alignment(al, cls, order) for cls in classes]
    return BlockPartition(al.rows, classes, block_order, blocks, order)


def concatenate_blocks(blocks: Sequence[Alignment], block_order, rows: Sequence[Poset]) -> Alignment:
    """Reassemble blocks into one alignment of ``rows``.

    Within a block the block's own order is kept; every column of an earlier
    block (with respect to ``block_order``) precedes every column of a later
    one.
    """
    if not isinstance(block_order, Poset):
        try:
            block_order = build_poset("blocks", len(blocks), block_order)
        except CycleError as exc:
            raise BlockOrderUnsatisfiable(str(exc)) from None
    columns = []
    spans = []
    for blk in blocks:
        start = len(columns)
        for col in blk.columns:
            entries = []
            for r, e in col.entries:
                origin = blk.row(r).origin
                entries.append((r, origin[e] if origin is not None else e))
            columns.append(Column(tuple(entries), col.flag))
        spans.append(range(start, len(columns)))
    pairs = set()
    for k, blk in enumerate(blocks):
        base = spans[k].start
        pairs |= {(base + a, base + b) for a, b in blk.column_order.reach}
    for x, y in block_order.reach:
        pairs |= {(a, b) for a in spans[x] for b in spans[y]}
    try:
        order = build_poset(COLUMNS, len(columns), pairs)
    except CycleError as exc:
        raise BlockOrderUnsatisfiable(str(exc)) from None
    return Alignment(rows, columns, order)


def split_extreme_column(al: Alignment, column: int, which: str = "max") -> BlockPartition:
    """Split off a single column as the last (``max``) or first (``min``) block.

    Possible exactly when no other column lies above (resp. below) it.
    """
    order = al.column_order
    others = [k for k in range(len(al.columns)) if k != column]
    if which == "max":
        blocking = [k for k in others if order.less(column, k)]
    elif which == "min":
        blocking = [k for k in others if order.less(k, column)]
    else:
        raise ValueError("which must be 'max' or 'min'")
    if blocking:
        raise BlockOrderUnsatisfiable(
            f"c{column} is not {which}imal: related to {', '.join(f'c{k}' for k in blocking)}")
    assignment = [1 if k == column else 0 for k in range(len(al.columns))]
    if not others:
        return block_decompose(al, assignment)
    bp = block_decompose(al, assignment)
    rest, single = (0, 1) if assignment[0] == 0 else (1, 0)
    pair = (rest, single) if which == "max" else (single, rest)
    bp.block_order = build_poset("blocks", 2, {pair})
    return bp


def row_suprema_column(al: Alignment, column: int, which: str = "max") -> bool:
    """True iff every entry of the column is maximal (minimal) in its row."""
    for r, e in al.columns[column].entries:
        p = al.row(r)
        if (p.up[e] if which == "max" else p.down[e]):
            return False
    return True


# text helpers for all-chain rows


def from_gapped(rows: Sequence[tuple[str, str]], gap: str = "-", order: str = "induced") -> Alignment:
    """Alignment of chain rows given as equal-length gapped strings.

    With ``order="induced"`` the column order is the least one forced by the
    rows, so interchangeable runs of insertions and deletions give isomorphic
    alignments; ``order="gapped"`` keeps the displayed total order instead.
    """
    from .poset import chain_poset

    widths = {len(s) for _, s in rows}
    if len(widths) > 1:
        raise ValueError("gapped rows differ in length")
    posets = []
    counters = []
    for name, s in rows:
        ungapped = [ch for ch in s if ch != gap]
        posets.append(chain_poset(name, len(ungapped), ungapped))
        counters.append(0)
    columns = []
    width = widths.pop() if widths else 0
    for x in range(width):
        entries = []
        for k, (name, s) in enumerate(rows):
            if s[x] != gap:
                entries.append((name, counters[k]))
                counters[k] += 1
        if entries:
            columns.append(Column(tuple(entries)))
    if order == "gapped":
        return Alignment(posets, columns, {(k, k + 1) for k in range(len(columns) - 1)})
    return Alignment(posets, columns)


def render_gapped(al: Alignment, gap: str = "-") -> list[tuple[str, str]]:
    """Classic gapped rows in the smallest-index-first linear extension of the
    column order.  Every row must be a chain."""
    for p in al.rows:
        if not p.is_chain():
            raise RowNotTotal(f"row {p.row_id} is not totally ordered")
    order = linear_extension(al.column_order)
    out = []
    for p in al.rows:
        chars = []
        for k in order:
            e = al.columns[k].get(p.row_id)
            if e is None:
                chars.append(gap)
            else:
                lab = p.label(e)
                chars.append(str(e) if lab is None else str(lab))
        out.append((p.row_id, "".join(chars)))
    return out


def to_dot(p: Poset, name: str | None = None) -> str:
    lines = [f"digraph \"{name or p.row_id}\" {{"]
    for i in range(p.n):
        lab = p.label(i)
        text = f"{i}" if lab is None else f"{i}:{lab}"
        lines.append(f"  n{i} [label=\"{text}\"];")
    for i, j in sorted(p.covers):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)
