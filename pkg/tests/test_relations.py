import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import BINARY, posets, random_poset

from poalign.alignment import from_gapped, recombine, restrict, validate_general, validate_recover
from poalign.errors import MiddleMismatch, NotPairwise, PropertyViolation
from poalign.oracle import matchings
from poalign.poset import antichain_poset, chain_poset
from poalign.relations import (
    PairRelation,
    RelationGraph,
    ViolationReport,
    alignment_from_relation,
    check_M,
    check_P,
    check_Pprime,
    compose,
    compose_all,
    identity_relation,
    relation_from_alignment,
    transitive_multialign,
)


def rel(p, q, pairs):
    return PairRelation(p, q, frozenset(pairs))


def test_identity_has_all_properties():
    c = chain_poset("a", 4)
    r = identity_relation(c, c.renamed("b"))
    assert check_M(r) and check_P(r) and check_Pprime(r)


def test_M_witness():
    a, b = chain_poset("a", 3), chain_poset("b", 3)
    c = check_M(rel(a, b, {(1, 1), (1, 2)}))
    assert not c
    assert c.witnesses[0] == ((1, 1), (1, 2))


def test_crossing_fails_P_and_Pprime():
    a, b = chain_poset("a", 3), chain_poset("b", 3)
    r = rel(a, b, {(1, 2), (2, 1)})
    assert not check_P(r)
    assert not check_Pprime(r)


def test_Pprime_allows_incomparable_partner():
    # x0 < x1 on the left, incomparable on the right: P fails, P' holds
    r = rel(chain_poset("x", 2), antichain_poset("y", 2), {(0, 0), (1, 1)})
    assert not check_P(r)
    assert check_Pprime(r)


def test_compose_with_identity():
    rng = random.Random(1)
    for _ in range(30):
        x, y = random_poset(rng, "x", 3), random_poset(rng, "y", 3)
        r = rel(x, y, rng.choice(list(matchings(3, 3))))
        assert compose(identity_relation(x), r) == r
        assert compose(r, identity_relation(y)) == r


def test_compose_middle_mismatch():
    a, b, c = chain_poset("a", 2), chain_poset("b", 2), chain_poset("c", 2)
    with pytest.raises(MiddleMismatch):
        compose(rel(a, b, {}), rel(c, a, {}))


def test_composition_gives_implied_alignment():
    r_ab = relation_from_alignment(from_gapped(BINARY["a"]))
    r_ac = relation_from_alignment(from_gapped(BINARY["b"]))
    bc = compose(r_ab.inverse(), r_ac)
    assert bc.pairs == {(i, i - 4) for i in range(4, 9)}
    assert bc == relation_from_alignment(from_gapped(BINARY["c"]))


def test_compose_all_is_left_to_right():
    a, b, c = (chain_poset(r, 2) for r in "abc")
    r = rel(a, b, {(0, 1)})
    s = rel(b, c, {(1, 0)})
    assert compose_all([r, s]).pairs == {(0, 0)}


def _random_relation(rng, x, y):
    return rel(x, y, rng.choice(list(matchings(x.n, y.n))))


@settings(max_examples=150, deadline=None)
@given(posets("x", 4), posets("y", 4), posets("z", 4), st.randoms(use_true_random=False))
def test_M_and_P_closed_under_composition(x, y, z, rng):
    r, s = _random_relation(rng, x, y), _random_relation(rng, y, z)
    if check_M(r) and check_P(r) and check_M(s) and check_P(s):
        rs = compose(r, s)
        assert check_M(rs) and check_P(rs)


def test_composition_is_associative():
    rng = random.Random(4)
    for _ in range(100):
        w, x, y, z = (random_poset(rng, r, rng.randint(0, 3)) for r in "wxyz")
        r, s, t = _random_relation(rng, w, x), _random_relation(rng, x, y), _random_relation(rng, y, z)
        assert compose(compose(r, s), t) == compose(r, compose(s, t))


def test_Pprime_not_closed_under_composition():
    # search over tiny instances rather than writing the witness down
    rng = random.Random(0)
    for _ in range(50_000):
        x, y, z = (random_poset(rng, r, rng.randint(2, 3)) for r in "xyz")
        r, s = _random_relation(rng, x, y), _random_relation(rng, y, z)
        if check_M(r) and check_Pprime(r) and check_M(s) and check_Pprime(s) \
                and not check_Pprime(compose(r, s)):
            return
    pytest.fail("no witness found")


def test_empty_relation_gives_indel_columns():
    al = alignment_from_relation(rel(chain_poset("a", 2), chain_poset("b", 2), {}))
    assert len(al.columns) == 4
    assert all(len(c.entries) == 1 for c in al.columns)
    assert len(al.column_order.reach) == 2


def test_ungapped_relation():
    r = relation_from_alignment(from_gapped(BINARY["d"]))
    assert len(r) == 9
    assert check_M(r) and check_P(r)


def test_alignment_from_relation_checks_input():
    a, b = chain_poset("a", 2), chain_poset("b", 2)
    with pytest.raises(PropertyViolation) as err:
        alignment_from_relation(rel(a, b, {(0, 1), (1, 0)}))
    assert err.value.prop == "P'"
    with pytest.raises(ValueError):
        alignment_from_relation(rel(a, a, {}))


def test_relation_from_alignment_needs_two_rows():
    with pytest.raises(NotPairwise):
        relation_from_alignment(from_gapped([("a", "A"), ("b", "A"), ("c", "A")]))


@settings(max_examples=150, deadline=None)
@given(posets("x", 4), posets("y", 4), st.randoms(use_true_random=False))
def test_relation_alignment_round_trip(x, y, rng):
    r = _random_relation(rng, x, y)
    if not (check_M(r) and check_Pprime(r)):
        return
    al = alignment_from_relation(r)
    assert validate_general(al).ok
    assert relation_from_alignment(al) == r
    if check_P(r):
        assert validate_recover(al).ok


# transitive multiple alignment


def test_star_of_identities():
    rows = [chain_poset(r, 3) for r in "abcd"]
    g = RelationGraph.from_relations([identity_relation(rows[0], p) for p in rows[1:]])
    al = transitive_multialign(g)
    assert len(al.columns) == 3
    assert all(len(c.entries) == 4 for c in al.columns)


def test_path_matches_recombination():
    al3 = from_gapped([("a", "A-CD"), ("b", "-BCD"), ("c", "AB-D")])
    ab = relation_from_alignment(restrict(al3, ["a", "b"]))
    bc = relation_from_alignment(restrict(al3, ["b", "c"]))
    built = transitive_multialign(RelationGraph.from_relations([ab, bc]))
    # glue the a,b alignment to row c through the b-c pairs
    left = alignment_from_relation(ab)
    c_row = from_gapped([("c", "ABD")])
    col_of_b = {col.get("b"): k for k, col in enumerate(left.columns) if col.get("b") is not None}
    glued = recombine([left, c_row], [[(0, col_of_b[y]), (1, z)] for y, z in bc.pairs])
    assert built.with_order(None).isomorphic(glued.with_order(None))
    assert built.isomorphic(glued)


def test_tree_case_passes_recover():
    rng = random.Random(8)
    done = 0
    while done < 40:
        a, b, c = (random_poset(rng, r, rng.randint(1, 3)) for r in "abc")
        r, s = _random_relation(rng, a, b), _random_relation(rng, b, c)
        if not all(f(t) for t in (r, s) for f in (check_M, check_P)):
            continue
        al = transitive_multialign(RelationGraph.from_relations([r, s]))
        assert validate_recover(al).ok
        done += 1


def test_input_must_satisfy_M_and_P():
    a, b = chain_poset("a", 2), chain_poset("b", 2)
    with pytest.raises(PropertyViolation):
        transitive_multialign(RelationGraph.from_relations([rel(a, b, {(0, 1), (1, 0)})]))


def test_cycle_with_two_entries_of_one_row():
    a, b, c = (chain_poset(r, 2) for r in "abc")
    g = RelationGraph.from_relations([rel(a, b, {(0, 0)}), rel(b, c, {(0, 0)}), rel(c, a, {(0, 1)})])
    assert not g.is_forest()
    out = transitive_multialign(g)
    assert isinstance(out, ViolationReport)
    assert out.dpone and "a:[0, 1]" in out.dpone[0]
    assert "Dpone" in out.format()


def test_cycle_without_column_order():
    a, b, c = (chain_poset(r, 2) for r in "abc")
    g = RelationGraph.from_relations([rel(a, b, {(0, 0), (1, 1)}), rel(b, c, {(0, 1)}), rel(a, c, {(1, 0)})])
    out = transitive_multialign(g)
    assert isinstance(out, ViolationReport)
    assert not out.dpone and out.cycle


def test_three_row_relations_split_the_A():
    ab = relation_from_alignment(from_gapped([("a", "A-C"), ("b", "-BC")]))
    bc = relation_from_alignment(from_gapped([("b", "-BC"), ("c", "AB-")]))
    out = transitive_multialign(RelationGraph.from_relations([ab, bc, compose(ab, bc)]))
    holders = [c for c in out.columns if c.get("a") == 0 or c.get("c") == 0]
    assert len(holders) == 2
    assert len(out.columns) == 4
