"""Permutations on ``{1..n}`` and indexed permutation groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .group import TableGroup, center, conjugacy_classes  # noqa: F401  (re-exported)

DEFAULT_SIZE_CAP = 10**6
TABLE_CAP = 5000

RIGHT_FIRST = "right-first"
LEFT_FIRST = "left-first"


class PermutationError(ValueError):
    pass


class GroupTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..n}``; ``images[i-1]`` is the image of point ``i``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise PermutationError(f"not a bijection of 1..{len(self.images)}: {list(self.images)}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(1, degree + 1))
        for cyc in cycles:
            for a, b in zip(cyc, (*cyc[1:], cyc[0])):
                images[a - 1] = b
        return cls(tuple(images))

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc, p = [], start
            while p not in seen:
                seen.add(p)
                cyc.append(p)
                p = self(p)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) if cyc else "()"


def compose(p: Permutation, q: Permutation, convention: str = RIGHT_FIRST) -> Permutation:
    """Product ``p q``; with the default convention ``q`` is applied first."""
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")
    if convention == LEFT_FIRST:
        p, q = q, p
    return Permutation(tuple(p(q(i)) for i in range(1, p.degree + 1)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, img in enumerate(p.images, 1):
        inv[img - 1] = i
    return Permutation(tuple(inv))


class PermGroupTable(TableGroup):
    """Permutation group enumerated in BFS order from its generators.

    Index 0 is the identity; ``words[i]`` lists generator positions whose
    left-to-right product is element ``i``.
    """

    def __init__(self, elements: np.ndarray, mul_table: np.ndarray, inv: np.ndarray,
                 generator_indices: list[int], words: list[tuple[int, ...]],
                 convention: str, name: str = "G"):
        super().__init__(mul_table, inv, generator_indices, name)
        self.perms = elements
        self.words = words
        self.convention = convention

    @property
    def degree(self) -> int:
        return self.perms.shape[1]

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) + 1 for x in self.perms[i]))

    def index_of(self, p: Permutation) -> int:
        key = np.asarray(p.images, dtype=self.perms.dtype) - 1
        hit = np.flatnonzero((self.perms == key).all(axis=1))
        if not hit.size:
            raise KeyError(f"{p} is not in the group")
        return int(hit[0])

    def describe(self, i: int) -> str:
        return str(self.element(i))

    def describe_json(self, i: int) -> dict:
        return {"index": int(i), "images": list(self.element(i).images)}

    def word_product(self, word: Iterable[int]) -> int:
        x = self.identity
        for g in word:
            x = int(self.mul(x, self.generators[g]))
        return x


def generate(gens: Sequence[Permutation], size_cap: int = DEFAULT_SIZE_CAP,
             convention: str = RIGHT_FIRST, name: str = "G") -> PermGroupTable:
    """Enumerate the group generated by ``gens`` breadth-first.

    New elements are reached as ``g * x`` for a generator ``g``, so each
    element's word is a shortest generator word.
    """
    if not gens:
        raise PermutationError("need at least one generator")
    degrees = {g.degree for g in gens}
    if len(degrees) != 1:
        raise PermutationError(f"generators have mixed degrees {sorted(degrees)}")
    (n,) = degrees
    gen_arr = [np.asarray(g.images, dtype=np.int64) - 1 for g in gens]

    def mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
        return p[q] if convention == RIGHT_FIRST else q[p]

    ident = np.arange(n, dtype=np.int64)
    index = {ident.tobytes(): 0}
    elems = [ident]
    words: list[tuple[int, ...]] = [()]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for k, g in enumerate(gen_arr):
            y = mul(g, elems[i])
            key = y.tobytes()
            if key not in index:
                if len(elems) >= size_cap:
                    raise GroupTooLarge(f"closure exceeds size cap {size_cap}")
                index[key] = len(elems)
                elems.append(y)
                words.append((k,) + words[i])
                queue.append(len(elems) - 1)
    order = len(elems)
    if order > TABLE_CAP:
        raise GroupTooLarge(f"order {order} exceeds multiplication-table cap {TABLE_CAP}")
    perms = np.stack(elems)
    lookup = _Lookup(perms)
    # row a of the table: for each b, the index of mul(a, b)
    table = np.empty((order, order), dtype=np.int64)
    for a in range(order):
        prods = perms[:, perms[a]] if convention == LEFT_FIRST else perms[a][perms]
        table[a] = lookup(prods)
    inv = np.argmax(table == 0, axis=1)
    gen_idx = [index[g.tobytes()] for g in gen_arr]
    return PermGroupTable(perms, table, inv, gen_idx, words, convention, name)


class _Lookup:
    """Maps stacked permutation arrays back to element indices."""

    def __init__(self, perms: np.ndarray):
        n = perms.shape[1]
        self.weights = n ** np.arange(n, dtype=object) if n ** n >= 2**62 else n ** np.arange(n, dtype=np.int64)
        if self.weights.dtype == object:
            self.index = {row.tobytes(): i for i, row in enumerate(perms)}
        else:
            keys = perms @ self.weights
            self.sorter = np.argsort(keys)
            self.keys = keys[self.sorter]

    def __call__(self, rows: np.ndarray) -> np.ndarray:
        if self.weights.dtype == object:
            return np.array([self.index[r.tobytes()] for r in rows], dtype=np.int64)
        pos = np.searchsorted(self.keys, rows @ self.weights)
        return self.sorter[pos]
