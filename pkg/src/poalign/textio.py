"""Line-oriented text formats.

A document is a sequence of blocks; ``#`` starts a comment.

    poset <row_id> <n>          followed by optional ``labels <s>`` and ``<i> < <j>`` lines
    alignment <k_rows> <k_cols> followed by ``col <id> [flag] <row>:<elem>,...``
                                and ``order <id> < <id>`` lines (``order none``
                                means an explicitly empty order)
    relation <left> <right>     followed by ``<i> ~ <j>`` lines

Sequences are read from FASTA-style ``>name`` records or from plain one-line
strings and become labelled chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .alignment import FLAGS, Alignment, Column, from_gapped
from .errors import CycleError, ElementIndexError, ParseError
from .poset import Poset, build_poset, chain_poset
from .relations import PairRelation, RelationGraph

GAP = "-"


@dataclass
class Document:
    posets: dict = field(default_factory=dict)
    alignment: Alignment | None = None
    relations: list = field(default_factory=list)
    sequences: list = field(default_factory=list)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def looks_like_sequences(text: str) -> bool:
    for _, line in _lines(text):
        head = line.split()[0]
        return head.startswith(">") or head not in ("poset", "alignment", "relation", "score")
    return False


def parse_sequences(text: str, default_name: str = "s") -> list[tuple[str, str]]:
    records: list = []
    plain = []
    for _, line in _lines(text):
        if line.startswith(">"):
            records.append([line[1:].strip().split()[0] if line[1:].strip() else f"{default_name}{len(records)}", ""])
        elif records:
            records[-1][1] += line.replace(" ", "")
        else:
            plain.append(line.replace(" ", ""))
    if records and plain:
        raise ParseError("mixes plain sequence lines with >name records")
    if plain:
        if len(plain) == 1:
            return [(default_name, plain[0])]
        return [(f"{default_name}{k + 1}", s) for k, s in enumerate(plain)]
    return [(name, seq) for name, seq in records]


def sequences_to_rows(records) -> list[Poset]:
    rows = []
    for name, seq in records:
        if GAP in seq:
            seq = seq.replace(GAP, "")
        rows.append(chain_poset(name, len(seq), seq))
    return rows


def parse_document(text: str) -> Document:
    doc = Document()
    pending_poset = None
    pending_alignment = None
    relation = None

    def finish_poset():
        nonlocal pending_poset
        if pending_poset is None:
            return
        row_id, n, labels, pairs, lineno = pending_poset
        try:
            doc.posets[row_id] = build_poset(row_id, n, pairs, labels)
        except CycleError as exc:
            raise ParseError(f"poset {row_id}: {exc}", lineno) from None
        except (ElementIndexError, ValueError) as exc:
            raise ParseError(f"poset {row_id}: {exc}", lineno) from None
        pending_poset = None

    def finish_alignment():
        nonlocal pending_alignment
        if pending_alignment is not None:
            _close_alignment(doc, pending_alignment)
            pending_alignment = None

    def finish_relation():
        nonlocal relation
        if relation is None:
            return
        left, right, pairs, lineno = relation
        try:
            doc.relations.append(PairRelation(doc.posets[left], doc.posets[right], frozenset(pairs)))
        except KeyError as exc:
            raise ParseError(f"relation refers to unknown row {exc}", lineno) from None
        except IndexError as exc:
            raise ParseError(str(exc), lineno) from None
        relation = None

    for lineno, line in _lines(text):
        tok = line.split()
        head = tok[0]
        if head == "poset":
            finish_poset()
            finish_relation()
            finish_alignment()
            if len(tok) != 3:
                raise ParseError("expected 'poset <row_id> <n>'", lineno)
            if tok[1] in doc.posets:
                raise ParseError(f"duplicate poset {tok[1]}", lineno)
            pending_poset = [tok[1], _int(tok[2], lineno), None, set(), lineno]
        elif head == "labels":
            if pending_poset is None:
                raise ParseError("'labels' outside a poset block", lineno)
            labels = line[len("labels"):].strip()
            if len(labels) != pending_poset[1]:
                raise ParseError(f"{len(labels)} labels for {pending_poset[1]} elements", lineno)
            pending_poset[2] = labels
        elif head == "alignment":
            finish_poset()
            finish_relation()
            if len(tok) != 3:
                raise ParseError("expected 'alignment <k_rows> <k_cols>'", lineno)
            if doc.alignment is not None or pending_alignment is not None:
                raise ParseError("only one alignment per document", lineno)
            pending_alignment = {"rows": _int(tok[1], lineno), "cols": _int(tok[2], lineno),
                                 "columns": {}, "order": [], "explicit": False, "line": lineno}
        elif head == "col":
            if pending_alignment is None:
                raise ParseError("'col' outside an alignment block", lineno)
            if len(tok) < 3:
                raise ParseError("expected 'col <id> [flag] <row>:<elem>,...'", lineno)
            cid = tok[1]
            flag = "aligned"
            body = tok[2:]
            if body[0] in FLAGS:
                flag = body[0]
                body = body[1:]
            if len(body) != 1:
                raise ParseError("column entries must be one comma-separated token", lineno)
            entries = []
            for item in body[0].split(","):
                if ":" not in item:
                    raise ParseError(f"bad column entry {item!r}", lineno)
                r, e = item.rsplit(":", 1)
                entries.append((r, _int(e, lineno)))
            if cid in pending_alignment["columns"]:
                raise ParseError(f"duplicate column id {cid}", lineno)
            pending_alignment["columns"][cid] = Column(tuple(entries), flag)
        elif head == "order":
            if pending_alignment is None:
                raise ParseError("'order' outside an alignment block", lineno)
            pending_alignment["explicit"] = True
            if tok[1:] == ["none"]:
                continue
            if len(tok) != 4 or tok[2] != "<":
                raise ParseError("expected 'order <id> < <id>'", lineno)
            pending_alignment["order"].append((tok[1], tok[3], lineno))
        elif head == "relation":
            finish_poset()
            finish_relation()
            if len(tok) != 3:
                raise ParseError("expected 'relation <left_row> <right_row>'", lineno)
            finish_alignment()
            relation = (tok[1], tok[2], set(), lineno)
        elif head == "score":
            continue
        elif len(tok) == 3 and tok[1] == "<" and pending_poset is not None:
            pending_poset[3].add((_int(tok[0], lineno), _int(tok[2], lineno)))
        elif len(tok) == 3 and tok[1] == "~" and relation is not None:
            relation[2].add((_int(tok[0], lineno), _int(tok[2], lineno)))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    finish_poset()
    finish_relation()
    finish_alignment()
    return doc


def _close_alignment(doc: Document, spec: dict):
    if len(spec["columns"]) != spec["cols"]:
        raise ParseError(f"header announces {spec['cols']} columns, found {len(spec['columns'])}", spec["line"])
    used = []
    for col in spec["columns"].values():
        for r in col.row_ids:
            if r not in used:
                used.append(r)
    missing = [r for r in used if r not in doc.posets]
    if missing:
        raise ParseError(f"alignment uses rows without a poset block: {missing}", spec["line"])
    rows = [p for r, p in doc.posets.items()]
    if len(rows) != spec["rows"]:
        raise ParseError(f"header announces {spec['rows']} rows, found {len(rows)} poset blocks", spec["line"])
    ids = list(spec["columns"])
    index = {cid: k for k, cid in enumerate(ids)}
    order = None
    if spec["explicit"]:
        pairs = set()
        for a, b, lineno in spec["order"]:
            if a not in index or b not in index:
                raise ParseError(f"order refers to unknown column {a if a not in index else b}", lineno)
            pairs.add((index[a], index[b]))
        try:
            order = build_poset("columns", len(ids), pairs)
        except CycleError as exc:
            raise ParseError(f"column order has a cycle: {exc}", spec["line"]) from None
    doc.alignment = Alignment(rows, [spec["columns"][c] for c in ids], order)


def load_document(path: str | Path) -> Document:
    """Read a document or a sequence file (plain or ``>name`` records)."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if looks_like_sequences(text):
        records = parse_sequences(text, path.stem)
        doc = Document(sequences=records)
        if any(GAP in s for _, s in records):
            try:
                doc.alignment = from_gapped(records)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
            doc.posets = {p.row_id: p for p in doc.alignment.rows}
        else:
            doc.posets = {p.row_id: p for p in sequences_to_rows(records)}
        return doc
    return parse_document(text)


# serialisation


def format_poset(p: Poset) -> str:
    lines = [f"poset {p.row_id} {p.n}"]
    if p.labels is not None:
        lines.append("labels " + "".join(str(x) for x in p.labels))
    lines += [f"{i} < {j}" for i, j in sorted(p.covers)]
    return "\n".join(lines)


def format_alignment(al: Alignment, with_rows: bool = True) -> str:
    lines = [format_poset(p) for p in al.rows] if with_rows else []
    lines.append(f"alignment {len(al.rows)} {len(al.columns)}")
    for k, col in enumerate(al.columns):
        lines.append(f"col {k} {col}")
    if al.has_order():
        covers = sorted(al.column_order.covers)
        lines += [f"order {a} < {b}" for a, b in covers]
        if not covers and al.explicit_order is not None and al.induced_order.reach:
            lines.append("order none")
    return "\n".join(lines) + "\n"


def format_relation(r: PairRelation, with_rows: bool = True) -> str:
    lines = [format_poset(r.left), format_poset(r.right)] if with_rows else []
    lines.append(f"relation {r.left.row_id} {r.right.row_id}")
    lines += [f"{x} ~ {y}" for x, y in r.sorted_pairs()]
    return "\n".join(lines) + "\n"


def format_relation_graph(g: RelationGraph) -> str:
    lines = [format_poset(p) for p in g.rows]
    for (a, b), rel in g.edges.items():
        lines.append(format_relation(rel, with_rows=False).rstrip("\n"))
    return "\n".join(lines) + "\n"


def format_document(doc: Document) -> str:
    parts = [format_poset(p) for p in doc.posets.values()]
    if doc.alignment is not None:
        parts.append(format_alignment(doc.alignment, with_rows=False).rstrip("\n"))
    for rel in doc.relations:
        parts.append(format_relation(rel, with_rows=False).rstrip("\n"))
    return "\n".join(parts) + "\n"
