"""Index-based finite group runtime shared by every concrete realization.

Elements are integers ``0..order-1`` and ``mul``/``inv`` broadcast over numpy
index arrays, so whole-group sweeps stay vectorized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


class GroupError(RuntimeError):
    """An internal group invariant does not hold."""


class FiniteGroup:
    """Abstract finite group on the index set ``range(order)``.

    Subclasses provide ``mul``, ``inv`` and ``describe``; both arithmetic
    methods must accept scalars or integer arrays and be free of side effects.
    """

    name: str = "G"
    order: int
    identity: int = 0
    generators: list[int]

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def describe(self, i: int) -> str:
        return str(i)

    def describe_json(self, i: int) -> dict:
        return {"index": int(i)}

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def commutator(self, a, b):
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def conjugate(self, g, x):
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, a: int, k: int) -> int:
        result = self.identity
        for _ in range(k):
            result = int(self.mul(result, a))
        return result


class TableGroup(FiniteGroup):
    """A group given by an explicit multiplication table."""

    def __init__(self, mul_table: np.ndarray, inv: np.ndarray | None = None,
                 generators: Sequence[int] | None = None, name: str = "G"):
        self.table = np.asarray(mul_table, dtype=np.int64)
        self.order = self.table.shape[0]
        self.name = name
        self.identity = 0
        if inv is None:
            inv = np.argmax(self.table == 0, axis=1)
        self.inverse = np.asarray(inv, dtype=np.int64)
        self.generators = list(generators) if generators is not None else list(range(self.order))

    def mul(self, a, b):
        return self.table[a, b]

    def inv(self, a):
        return self.inverse[a]


@dataclass(frozen=True)
class ConjugacyPartition:
    class_id: np.ndarray
    reps: np.ndarray
    sizes: np.ndarray

    @property
    def count(self) -> int:
        return len(self.reps)

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.class_id == c)


def _partition_from_labels(labels: np.ndarray) -> ConjugacyPartition:
    n = len(labels)
    # renumber components by their smallest element index
    first = np.full(labels.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(n))
    order = np.argsort(first, kind="stable")
    order = order[first[order] < n]
    renum = np.empty_like(first)
    renum[order] = np.arange(len(order))
    class_id = renum[labels]
    reps = first[order]
    sizes = np.bincount(class_id, minlength=len(reps))
    return ConjugacyPartition(class_id, reps, sizes)


def orbit_partition(n: int, maps: Sequence[np.ndarray]) -> ConjugacyPartition:
    """Orbits of the permutations ``maps`` of ``range(n)``, found by graph search."""
    src = np.concatenate([np.arange(n)] * len(maps)) if maps else np.arange(0)
    dst = np.concatenate(list(maps)) if maps else np.arange(0)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return _partition_from_labels(labels)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyPartition:
    """Conjugacy classes as orbits under conjugation by the generators."""
    x = G.elements()
    return orbit_partition(G.order, [G.conjugate(g, x) for g in G.generators])


def conjugacy_classes_naive(G: FiniteGroup) -> ConjugacyPartition:
    """Same partition, conjugating by every element; for cross-checks only."""
    x = G.elements()
    return orbit_partition(G.order, [G.conjugate(g, x) for g in range(G.order)])


def center(G: FiniteGroup) -> list[int]:
    x = G.elements()
    mask = np.ones(G.order, dtype=bool)
    for g in G.generators:
        mask &= G.mul(g, x) == G.mul(x, g)
    return np.flatnonzero(mask).tolist()


def center_naive(G: FiniteGroup) -> list[int]:
    x = G.elements()
    mask = np.ones(G.order, dtype=bool)
    for g in range(G.order):
        mask &= G.mul(g, x) == G.mul(x, g)
    return np.flatnonzero(mask).tolist()


def element_order(G: FiniteGroup, g: int) -> int:
    k, x = 1, int(g)
    while x != G.identity:
        x = int(G.mul(x, g))
        k += 1
        if k > G.order:
            raise GroupError(f"element {g} has no finite order within |G|")
    return k


def closure(G: FiniteGroup, gens: Sequence[int]) -> np.ndarray:
    """Boolean membership mask of the subgroup generated by ``gens``."""
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    frontier = np.array([G.identity], dtype=np.int64)
    gens = [int(g) for g in gens]
    while frontier.size:
        new = np.unique(np.concatenate([G.mul(frontier, g) for g in gens])) if gens else frontier[:0]
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return mask


def subgroup_generated_by_set(G: FiniteGroup, members: np.ndarray) -> np.ndarray:
    """Membership mask of the subgroup generated by the elements flagged in ``members``.

    Generators are added greedily, one element outside the current subgroup at
    a time, so at most ``log2 |G|`` closures are computed.
    """
    gens: list[int] = []
    mask = closure(G, gens)
    while True:
        outside = np.flatnonzero(members & ~mask)
        if not outside.size:
            return mask
        gens.append(int(outside[0]))
        mask = closure(G, gens)


def generates(G: FiniteGroup) -> bool:
    return bool(closure(G, G.generators).all())


def check_axioms(G: FiniteGroup, samples: int = 10_000, seed: int = 0) -> None:
    """Spot-check associativity, identity and inverse laws on random elements."""
    rng = np.random.default_rng(seed)
    a, b, c = (rng.integers(0, G.order, samples) for _ in range(3))
    if not np.array_equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c))):
        raise GroupError("associativity fails")
    if not (np.array_equal(G.mul(G.identity, a), a) and np.array_equal(G.mul(a, G.identity), a)):
        raise GroupError("identity law fails")
    if not np.all(G.mul(a, G.inv(a)) == G.identity):
        raise GroupError("inverse law fails")


def shortest_words(G: FiniteGroup) -> list[tuple[int, ...]]:
    """A shortest word in the generator positions for every element (BFS by left multiplication)."""
    words: list[tuple[int, ...] | None] = [None] * G.order
    words[G.identity] = ()
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(G.generators):
                y = int(G.mul(g, x))
                if words[y] is None:
                    words[y] = (k,) + words[x]
                    nxt.append(y)
        frontier = nxt
    if any(w is None for w in words):
        raise GroupError("generators do not generate the group")
    return words  # type: ignore[return-value]


def evaluate_word(G: FiniteGroup, word) -> int:
    """Product of generators along ``word`` (0-based positions; ``~k`` means inverse)."""
    x = G.identity
    for k in word:
        g = G.generators[k] if k >= 0 else int(G.inv(G.generators[~k]))
        x = int(G.mul(x, g))
    return x


def derived_subgroup(G: FiniteGroup) -> np.ndarray:
    """Membership mask of ``G'``: normal closure of the generator commutators."""
    gens = G.generators
    seeds = [int(G.commutator(a, b)) for a in gens for b in gens]
    sub_gens = [s for s in dict.fromkeys(seeds) if s != G.identity]
    mask = closure(G, sub_gens)
    changed = True
    while changed:
        changed = False
        for g in gens:
            for h in list(sub_gens):
                c = int(G.conjugate(g, h))
                if not mask[c]:
                    sub_gens.append(c)
                    mask = closure(G, sub_gens)
                    changed = True
    return mask
