"""Command-line front end.

Exit codes: 0 ok, 1 validation failure, 2 parse/usage error, 3 search or
state-space budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import alignment as am
from .dp import align_pair_cross, align_pair_recover, align_seq_to_poset, align_strings_nw
from .errors import BudgetExceeded, ParseError, PoalignError, RowNotTotal
from .poset import linear_extension
from .oracle import enumerate_pair_alignments, oracle_optimum
from .progressive import GuideTree, progressive_align
from .relations import RelationGraph, ViolationReport, compose_all, transitive_multialign
from .scoring import ScoringScheme, as_number, score_alignment
from .textio import Document, format_alignment, format_relation, load_document

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _scoring(args) -> ScoringScheme:
    return ScoringScheme(as_number(args.match), as_number(args.mismatch), as_number(args.gap))


def _add_scoring(p):
    p.add_argument("--match", type=float, default=1)
    p.add_argument("--mismatch", type=float, default=0)
    p.add_argument("--gap", type=float, default=-1)


def _load(path) -> Document:
    try:
        return load_document(path)
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _alignment(path) -> am.Alignment:
    doc = _load(path)
    if doc.alignment is None and len(doc.sequences) > 1 \
            and len({len(seq) for _, seq in doc.sequences}) == 1:
        # equal-length ungapped records read as an alignment without gaps
        return am.from_gapped(doc.sequences)
    if doc.alignment is None:
        if not doc.posets and not doc.relations:
            return am.Alignment([], [])
        raise UsageError(f"{path}: no alignment block")
    return doc.alignment


def _rows(paths):
    rows = []
    for path in paths:
        rows.extend(_load(path).posets.values())
    ids = [p.row_id for p in rows]
    if len(set(ids)) != len(ids):
        raise UsageError(f"duplicate row ids across inputs: {ids}")
    return rows


def _emit_alignment(al, out, score=None, render=False):
    if render:
        for name, row in am.render_gapped(al):
            out.write(f"{name} {row}\n")
    else:
        out.write(format_alignment(al))
    if score is not None:
        out.write(f"score {as_number(score)}\n")


def cmd_validate(args, out) -> int:
    status = EXIT_OK
    for path in args.files:
        al = _alignment(path)
        try:
            if args.mode == "total":
                report = am.validate_total(al)
            elif args.mode == "general":
                report = am.validate_general(al)
            elif args.mode == "recover":
                report = am.validate_recover(al)
            else:
                report = am.validate_local_marking(al)
        except RowNotTotal as exc:
            out.write(f"{path}: {exc}\n")
            status = EXIT_INVALID
            continue
        out.write(f"{path}\n{report.format()}\n")
        if not report.ok:
            status = EXIT_INVALID
    return status


def cmd_align(args, out) -> int:
    sc = _scoring(args)
    rows = _rows(args.inputs)
    if args.tree:
        if args.mode not in ("cross", "recover"):
            raise UsageError("progressive alignment supports --mode cross or recover")
        al = progressive_align(rows, GuideTree.parse(args.tree), sc, args.mode)
        _emit_alignment(al, out, score_alignment(al, sc), args.render)
        return EXIT_OK
    if len(rows) != 2:
        raise UsageError(f"pairwise alignment needs exactly 2 rows, got {len(rows)} (use --tree for more)")
    p1, p2 = rows
    if args.mode == "nw":
        if not (p1.is_chain() and p2.is_chain()) or p1.labels is None or p2.labels is None:
            raise UsageError("nw mode needs two labelled sequences")
        s1 = "".join(p1.labels[i] for i in linear_extension(p1))
        s2 = "".join(p2.labels[i] for i in linear_extension(p2))
        score, (r1, r2) = align_strings_nw(s1, s2, sc)
        al = am.from_gapped([(p1.row_id, r1), (p2.row_id, r2)])
    elif args.mode == "cross":
        score, al = align_pair_cross(p1, p2, sc)
    elif args.mode == "recover":
        score, al = align_pair_recover(p1, p2, sc)
    else:
        score, al = align_seq_to_poset(p1, p2, sc, charge_offpath=args.charge_offpath)
    _emit_alignment(al, out, score, args.render)
    return EXIT_OK


def cmd_compose(args, out) -> int:
    relations = []
    for path in args.files:
        relations.extend(_load(path).relations)
    if not relations:
        raise UsageError("no relation blocks found")
    out.write(format_relation(compose_all(relations)))
    return EXIT_OK


def cmd_transitive(args, out) -> int:
    relations = []
    for path in args.files:
        relations.extend(_load(path).relations)
    result = transitive_multialign(RelationGraph.from_relations(relations))
    if isinstance(result, ViolationReport):
        out.write(result.format() + "\n")
        return EXIT_INVALID
    _emit_alignment(result, out, None, args.render)
    return EXIT_OK


def cmd_restrict(args, out) -> int:
    al = am.restrict(_alignment(args.file), [r for r in args.rows.split(",") if r])
    score = score_alignment(al, _scoring(args)) if all(p.labels is not None for p in al.rows) else None
    _emit_alignment(al, out, score, args.render)
    return EXIT_OK


def cmd_quotient(args, out) -> int:
    q = am.quotient(_alignment(args.file), am.RowPartition.parse(args.classes))
    for k, part in enumerate(q.parts):
        out.write(f"# part {q.partition.name(k)}\n")
        out.write(format_alignment(part))
    out.write("# quotient\n")
    out.write(format_alignment(q.alignment))
    return EXIT_OK


def cmd_blocks(args, out) -> int:
    al = _alignment(args.file)
    assignment = [x for x in args.assign.split(",")]
    bp = am.block_decompose(al, assignment)
    for k, cls in enumerate(bp.classes):
        out.write(f"block {k} " + ",".join(map(str, cls)) + "\n")
    for a, b in sorted(bp.block_order.covers):
        out.write(f"block_order {a} < {b}\n")
    same = bp.concatenate().isomorphic(al)
    out.write(f"concatenation_recovers {'yes' if same else 'no'}\n")
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    rows = _rows(args.inputs)
    if len(rows) != 2:
        raise UsageError("oracle needs exactly 2 rows")
    sc = _scoring(args)
    als = enumerate_pair_alignments(rows[0], rows[1], args.mode, args.cap)
    out.write(f"count {len(als)}\n")
    out.write(f"optimum {as_number(oracle_optimum(rows[0], rows[1], sc, args.mode, args.cap))}\n")
    return EXIT_OK


def cmd_render(args, out) -> int:
    doc = _load(args.file)
    if args.dot:
        for p in doc.posets.values():
            out.write(am.to_dot(p) + "\n")
        if doc.alignment is not None and doc.alignment.has_order():
            out.write(am.to_dot(doc.alignment.column_order, "columns") + "\n")
        return EXIT_OK
    _emit_alignment(_alignment(args.file), out, None, render=True)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poalign", description="Alignments of partially ordered sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check alignment axioms")
    p.add_argument("files", nargs="+")
    p.add_argument("--mode", choices=["total", "general", "recover", "local"], default="general")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("align", help="optimal pairwise or progressive alignment")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--mode", choices=["cross", "recover", "nw", "poa"], default="cross")
    p.add_argument("--tree", help="guide tree such as '((a,b),c)'")
    p.add_argument("--charge-offpath", action="store_true",
                   help="poa mode: charge a gap for poset elements off the chosen path")
    p.add_argument("--render", action="store_true", help="print gapped rows instead of the file format")
    _add_scoring(p)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("compose", help="compose relations left to right")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("transitive", help="multiple alignment from a set of relations")
    p.add_argument("files", nargs="+")
    p.add_argument("--render", action="store_true")
    p.set_defaults(func=cmd_transitive)

    p = sub.add_parser("restrict", help="restrict an alignment to some rows")
    p.add_argument("file")
    p.add_argument("--rows", required=True, help="comma-separated row ids")
    p.add_argument("--render", action="store_true")
    _add_scoring(p)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("quotient", help="alignment of alignments for a row partition")
    p.add_argument("file")
    p.add_argument("--classes", required=True, help="partition such as 'a,b|c'")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("blocks", help="block decomposition of the columns")
    p.add_argument("file")
    p.add_argument("--assign", required=True, help="block label per column, comma-separated")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("oracle", help="exhaustive count and optimum for two small posets")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--mode", choices=["cross", "recover"], default="cross")
    p.add_argument("--cap", type=int, default=12)
    _add_scoring(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("render", help="gapped rows or DOT Hasse diagrams")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (ParseError, UsageError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (PoalignError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()

