"""Shared instance generators for the test suite."""

from __future__ import annotations

import itertools
import random

from poalign.poset import Poset, build_poset

BINARY = {
    "a": [("A", "0000111110000"), ("B", "000011011----")],
    "b": [("A", "0000111110000"), ("C", "----100010000")],
    "c": [("B", "000011011----"), ("C", "----100010000")],
    "d": [("B", "000011011"), ("C", "100010000")],
}
BINARY_SCORES = {"a": 4, "b": 2, "c": -5, "d": 5}


def crossed_rows():
    a = build_poset("a", 4, [(3, 0), (1, 2)])
    b = build_poset("b", 4, [(0, 1), (2, 3)])
    return a, b


def _canon(n, rel):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[i], perm[j]) for i, j in rel))
        if best is None or key < best:
            best = key
    return best


def poset_shapes(n: int) -> list[frozenset]:
    """One strict order relation per isomorphism class on ``n`` points."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    out = []
    for k in range(len(pairs) + 1):
        for rel in itertools.combinations(pairs, k):
            s = set(rel)
            if any((j, i) in s for i, j in s):
                continue
            if any((i, l) not in s for i, j in s for jj, l in s if j == jj):
                continue
            c = _canon(n, s)
            if c not in seen:
                seen.add(c)
                out.append(frozenset(c))
    return out


def random_poset(rng: random.Random, row_id: str, n: int, alphabet: str = "01", density: float = 0.4) -> Poset:
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    labels = "".join(rng.choice(alphabet) for _ in range(n))
    return build_poset(row_id, n, pairs, labels)


def labelled(row_id: str, n: int, rel, labels: str) -> Poset:
    return build_poset(row_id, n, rel, labels)


try:
    from hypothesis import strategies as st
except ImportError:  # pragma: no cover
    st = None

if st is not None:
    @st.composite
    def posets(draw, row_id="p", max_n=6, alphabet="01"):
        """Random poset: pairs oriented along a hidden permutation, so acyclic."""
        n = draw(st.integers(0, max_n))
        perm = draw(st.permutations(range(n)))
        cand = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n)]
        pairs = draw(st.lists(st.sampled_from(cand), unique=True)) if cand else []
        labels = draw(st.text(alphabet, min_size=n, max_size=n))
        return build_poset(row_id, n, pairs, labels)
