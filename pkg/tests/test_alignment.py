import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import BINARY, crossed_rows, posets, random_poset

from poalign.alignment import (
    PREFIX,
    SUFFIX,
    Alignment,
    Column,
    RowPartition,
    block_decompose,
    concatenate_blocks,
    from_gapped,
    induce_column_order,
    quotient,
    recombine,
    render_gapped,
    restrict,
    row_suprema_column,
    split,
    split_extreme_column,
    unquotient,
    validate_general,
    validate_local_marking,
    validate_recover,
    validate_total,
)
from poalign.dp import align_pair_cross, align_pair_recover
from poalign.errors import (
    BlockOrderUnsatisfiable,
    EmptyRowSet,
    InconsistentCorrespondence,
    InvalidPartition,
    NoOrderExists,
    RowNotTotal,
)
from poalign.oracle import enumerate_alignments, enumerate_pair_alignments
from poalign.poset import antichain_poset, build_poset, chain_poset
from poalign.scoring import ScoringScheme, score_alignment

SC = ScoringScheme(1, 0, -1)


def two_chains(n=2):
    return chain_poset("a", n), chain_poset("b", n)


# column order


def test_gapped_rows_give_a_chain_order():
    al = from_gapped(BINARY["a"])
    order = al.column_order
    assert len(al.columns) == 13
    assert order.is_chain()


def test_crossed_rows_have_no_order():
    a, b = crossed_rows()
    with pytest.raises(NoOrderExists) as err:
        induce_column_order([a, b], [((a.row_id, i), (b.row_id, i)) for i in range(4)])
    assert len(err.value.cycle) == 4


def test_single_row_order_is_the_row():
    p = build_poset("a", 4, {(0, 1), (0, 2), (2, 3)})
    order = induce_column_order([p], [(("a", i),) for i in range(4)])
    assert order.reach == p.reach


def test_explicit_order_against_a_row():
    a = chain_poset("a", 2)
    b = antichain_poset("b", 2)
    al = Alignment([a, b], [(("a", 0), ("b", 0)), (("a", 1), ("b", 1))], order=[(1, 0)])
    report = validate_general(al)
    assert not report["Dporder"]


# validators


def test_ungapped_total_pass():
    assert validate_total(from_gapped(BINARY["d"])).ok


def test_crossing_columns_fail_total():
    a, b = two_chains()
    al = Alignment([a, b], [(("a", 0), ("b", 1)), (("a", 1), ("b", 0))])
    report = validate_total(al)
    assert not report["Dtcross"]
    assert not report.ok


def test_empty_rows_total():
    assert validate_total(Alignment([chain_poset("a", 0), chain_poset("b", 0)], [])).ok


def test_total_needs_chains():
    with pytest.raises(RowNotTotal):
        validate_total(Alignment([antichain_poset("a", 2)], [(("a", 0),), (("a", 1),)]))


def test_one_shared_column_passes_both():
    al = Alignment([chain_poset("a", 1), chain_poset("b", 1)], [(("a", 0), ("b", 0))])
    assert validate_general(al).ok and validate_recover(al).ok


def test_coverage_failures():
    a, b = two_chains()
    al = Alignment([a, b], [(("a", 0), ("b", 0)), (("a", 1),)])
    assert not validate_general(al)["coverage"]


def test_report_never_raises_on_crossed_rows():
    a, b = crossed_rows()
    al = Alignment([a, b], [((a.row_id, i), (b.row_id, i)) for i in range(4)])
    report = validate_general(al)
    assert not report.ok
    assert "cycle" in report.format()


def test_edge_list_checks_complete_subgraphs():
    a, b = two_chains(1)
    c = chain_poset("c", 1)
    al = Alignment([a, b, c], [(("a", 0), ("b", 0), ("c", 0))])
    assert not validate_general(al, edges=[(("a", 0), ("b", 0)), (("b", 0), ("c", 0))])["Dpsub"]
    full = [(("a", 0), ("b", 0)), (("b", 0), ("c", 0)), (("a", 0), ("c", 0))]
    assert validate_general(al, edges=full)["Dpsub"]


def test_dp_outputs_pass_their_validators():
    rng = random.Random(11)
    for _ in range(150):
        p, q = random_poset(rng, "x", rng.randint(0, 5)), random_poset(rng, "y", rng.randint(0, 5))
        assert validate_general(align_pair_cross(p, q, SC)[1]).ok
        assert validate_recover(align_pair_recover(p, q, SC)[1]).ok


def test_cross_valid_but_not_recover_exists():
    # search small posets for an instance rather than writing one down
    found = None
    for p, q in itertools.product([build_poset("x", 3, {(0, 1)}), antichain_poset("x", 3)],
                                  [build_poset("y", 3, {(1, 2)}), chain_poset("y", 3)]):
        for al in enumerate_pair_alignments(p, q, "cross"):
            if not validate_recover(al).ok:
                found = al
                break
        if found:
            break
    assert found is not None
    assert validate_general(found).ok


def test_local_marking():
    a = chain_poset("a", 3)
    b = chain_poset("b", 2)
    ok = Alignment([a, b], [Column((("a", 0),), PREFIX), Column((("b", 0),), PREFIX),
                            (("a", 1), ("b", 1)), Column((("a", 2),), SUFFIX)])
    assert validate_local_marking(ok).ok
    plain = Alignment([a], [(("a", i),) for i in range(3)])
    assert validate_local_marking(plain).ok
    bad = Alignment([a], [(("a", 0),), Column((("a", 1),), PREFIX), (("a", 2),)])
    report = validate_local_marking(bad)
    assert not report["prefix_before_aligned"]
    fat = Alignment([a, b], [Column((("a", 0), ("b", 0)), PREFIX), (("a", 1), ("b", 1)), (("a", 2),)])
    assert not validate_local_marking(fat)["unaligned_singletons"]


# restriction, quotient, recombination


def test_restrict_to_all_rows_is_identity():
    al = from_gapped([("a", "A-C"), ("b", "-BC"), ("c", "AB-")])
    assert restrict(al, ["a", "b", "c"]).isomorphic(al)


def test_restrict_drops_gap_columns():
    al = from_gapped([("a", "A-C"), ("b", "-BC"), ("c", "AB-")])
    ab = restrict(al, ["a", "b"])
    pairwise = from_gapped([("a", "A-C"), ("b", "-BC")])
    assert set(ab.columns) == set(pairwise.columns)
    # the restriction keeps a:0 < b:0, inherited through row c
    assert ab.key()[2] > pairwise.key()[2]
    assert ab.with_order(None).isomorphic(pairwise)


def test_restrict_errors():
    al = from_gapped(BINARY["d"])
    with pytest.raises(EmptyRowSet):
        restrict(al, [])
    with pytest.raises(KeyError):
        restrict(al, ["Z"])


def test_restrict_preserves_validity():
    rng = random.Random(3)
    for _ in range(40):
        rows = [random_poset(rng, r, rng.randint(1, 2)) for r in "abc"]
        for al in itertools.islice(enumerate_alignments(rows, "recover"), 30):
            for keep in (["a", "b"], ["b", "c"], ["a", "c"], ["b"]):
                sub = restrict(al, keep)
                assert validate_general(sub).ok and validate_recover(sub).ok


def test_quotient_of_three_row_alignment():
    al = from_gapped([("a", "A-C"), ("b", "-BC"), ("c", "AB-")])
    q = quotient(al, RowPartition.parse("a,b|c"))
    assert len(q.alignment.columns) == 3
    assert [p.row_id for p in q.alignment.rows] == ["a+b", "c"]
    assert q.parts[0].with_order(None).isomorphic(from_gapped([("a", "A-C"), ("b", "-BC")]))
    assert q.parts[1].isomorphic(from_gapped([("c", "AB")]))
    assert validate_general(q.alignment).ok


def test_quotient_into_singletons_mirrors_alignment():
    al = from_gapped([("a", "A-C"), ("b", "-BC"), ("c", "AB-")])
    q = quotient(al, [["a"], ["b"], ["c"]])
    assert len(q.alignment.columns) == len(al.columns)
    assert q.alignment.column_order.reach == al.column_order.reach


def test_quotient_needs_a_partition():
    al = from_gapped(BINARY["d"])
    with pytest.raises(InvalidPartition):
        quotient(al, [["B"]])
    with pytest.raises(InvalidPartition):
        RowPartition((("B",), ("B", "C")))


def test_disjoint_union():
    a = Alignment([chain_poset("a", 2)], [(("a", 0),), (("a", 1),)])
    b = Alignment([chain_poset("b", 2)], [(("b", 0),), (("b", 1),)])
    u = recombine([a, b])
    assert len(u.columns) == 4
    assert all(u.columns[i].row_ids == u.columns[j].row_ids for i, j in u.column_order.reach)
    assert len(u.column_order.reach) == 2


def test_recombine_cycle():
    a = Alignment([chain_poset("a", 2)], [(("a", 0),), (("a", 1),)])
    b = Alignment([chain_poset("b", 2)], [(("b", 0),), (("b", 1),)])
    with pytest.raises(InconsistentCorrespondence):
        recombine([a, b], [[(0, 0), (1, 1)], [(0, 1), (1, 0)]])
    with pytest.raises(InconsistentCorrespondence):
        recombine([a, a])


@settings(max_examples=40, deadline=None)
@given(posets("a", 3), posets("b", 3), posets("c", 2))
def test_split_and_quotient_round_trip(p, q, r):
    for al in itertools.islice(enumerate_alignments([p, q, r], "cross"), 20):
        for part in ([["a"], ["b", "c"]], [["a", "c"], ["b"]], [["a"], ["b"], ["c"]]):
            parts, corr = split(al, part)
            assert recombine(parts, corr).isomorphic(al)
            qt = quotient(al, part)
            assert len(qt.alignment.columns) == len(al.columns)
            assert validate_general(qt.alignment).ok
            assert unquotient(qt).isomorphic(al)


# blocks


def test_single_block_is_identity():
    al = from_gapped(BINARY["a"]).fixed()
    bp = block_decompose(al, [0] * len(al.columns))
    assert len(bp.classes) == 1
    assert bp.concatenate().isomorphic(al)


@pytest.mark.parametrize("cut", range(1, 13))
def test_chain_split_at_any_boundary(cut):
    al = from_gapped(BINARY["a"], order="gapped")
    bp = block_decompose(al, [0 if k < cut else 1 for k in range(len(al.columns))])
    assert bp.block_order.reach == {(0, 1)}
    assert bp.mirrors_order()
    assert bp.concatenate().isomorphic(al)


def test_concatenation_extends_order():
    a, b = two_chains()
    al = Alignment([a, b], [(("a", 0),), (("a", 1),), (("b", 0),), (("b", 1),)]).fixed()
    bp = block_decompose(al, [0, 1, 0, 1])
    cat = bp.concatenate()
    assert not bp.mirrors_order()
    assert al.key()[2] < cat.key()[2]
    assert validate_general(cat).ok


def test_unsatisfiable_block_order():
    al = from_gapped([("a", "AB"), ("b", "AB")])
    with pytest.raises(BlockOrderUnsatisfiable):
        block_decompose(from_gapped([("a", "ABC")]), [0, 1, 0])
    with pytest.raises(BlockOrderUnsatisfiable):
        concatenate_blocks(block_decompose(al, [0, 1]).blocks, [(0, 1), (1, 0)], al.rows)


def test_extreme_column_iff_suprema():
    rng = random.Random(9)
    for _ in range(60):
        rows = [random_poset(rng, r, rng.randint(1, 3)) for r in "ab"]
        for al in itertools.islice(enumerate_alignments(rows, "recover"), 15):
            for k in range(len(al.columns)):
                for which in ("max", "min"):
                    ok = row_suprema_column(al, k, which)
                    try:
                        bp = split_extreme_column(al, k, which)
                    except BlockOrderUnsatisfiable:
                        assert not ok
                        continue
                    assert ok
                    assert validate_general(bp.concatenate()).ok


# gapped text


def test_indel_swap_equivalence():
    left = from_gapped([("x", "gugugu--acgggcca"), ("y", "gucuguug--gggccc")])
    right = from_gapped([("x", "guguguac--gggcca"), ("y", "gucugu--uggggccc")])
    assert score_alignment(left, SC) == score_alignment(right, SC)
    assert left.isomorphic(right)
    shown = from_gapped([("x", "gugugu--acgggcca"), ("y", "gucuguug--gggccc")], order="gapped")
    assert not shown.isomorphic(from_gapped([("x", "guguguac--gggcca"), ("y", "gucugu--uggggccc")],
                                            order="gapped"))


@pytest.mark.parametrize("key", sorted(BINARY))
def test_render_round_trip(key):
    al = from_gapped(BINARY[key], order="gapped")
    assert render_gapped(al) == BINARY[key]


def test_gapped_rows_must_match():
    with pytest.raises(ValueError):
        from_gapped([("a", "AB"), ("b", "A")])
    assert len(from_gapped([("a", "A-"), ("b", "A-")]).columns) == 1


@given(st.text("AB-", max_size=6), st.text("AB-", max_size=6))
def test_gapped_strings_are_valid_total(s, t):
    n = max(len(s), len(t))
    s, t = s.ljust(n, "-"), t.ljust(n, "-")
    keep = [k for k in range(n) if s[k] != "-" or t[k] != "-"]
    s, t = "".join(s[k] for k in keep), "".join(t[k] for k in keep)
    al = from_gapped([("s", s), ("t", t)])
    assert validate_total(al).ok and validate_recover(al).ok
