"""Numeric character tables via class multiplication coefficients, and the
commutator criterion ``sum_chi chi(g)/chi(1) != 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .commutators import CapExceeded, env_cap
from .group import ConjugacyPartition, FiniteGroup, conjugacy_classes, evaluate_word, shortest_words

CHARACTER_CAP = 2000
ZERO_TOL = 1e-6
TABLE_TOL = 1e-6
MAX_RETRIES = 20


class TableError(ValueError):
    """A character table fails validation or does not match its group."""


class NumericalDegeneracy(RuntimeError):
    pass


@dataclass
class CharacterTable:
    order: int
    sizes: np.ndarray
    values: np.ndarray
    class_words: list[list[int]] | None = None

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def degrees(self) -> np.ndarray:
        return self.values[:, 0].real

    def problems(self, tol: float = TABLE_TOL) -> list[str]:
        out = []
        if self.values.shape != (self.k, self.k):
            return [f"values have shape {self.values.shape}, expected {(self.k, self.k)}"]
        if int(self.sizes.sum()) != self.order:
            out.append(f"class sizes sum to {int(self.sizes.sum())}, not {self.order}")
        if self.sizes[0] != 1:
            out.append("first class is not the identity class")
        deg = self.values[:, 0]
        if np.abs(deg.imag).max() > tol or (deg.real <= 0).any():
            out.append("degrees are not positive reals")
        if abs(float((deg.real ** 2).sum()) - self.order) > tol * self.order:
            out.append(f"sum of squared degrees is {float((deg.real ** 2).sum())}, not {self.order}")
        gram = (self.values * self.sizes) @ self.values.conj().T / self.order
        err = float(np.abs(gram - np.eye(self.k)).max())
        if err > tol:
            out.append(f"row orthogonality violated by {err:.3g}")
        return out

    def validate(self, tol: float = TABLE_TOL) -> "CharacterTable":
        problems = self.problems(tol)
        if problems:
            raise TableError("; ".join(problems))
        return self

    def to_json(self) -> str:
        def num(x: float) -> float:
            x = round(float(x), 12)
            return 0.0 if x == 0 else x

        rows = [json.dumps([[num(z.real), num(z.imag)] for z in row]) for row in self.values]
        # one character per line; still plain JSON
        return (
            "{\n"
            f' "order": {int(self.order)},\n'
            f' "class_sizes": {json.dumps([int(s) for s in self.sizes])},\n'
            f' "class_representative_words": {json.dumps(self.class_words)},\n'
            ' "characters": [\n  ' + ",\n  ".join(rows) + "\n ]\n}\n"
        )

    @classmethod
    def from_json(cls, text: str) -> "CharacterTable":
        try:
            doc = json.loads(text)
            values = np.array([[complex(re, im) for re, im in row] for row in doc["characters"]])
            table = cls(int(doc["order"]), np.array(doc["class_sizes"], dtype=np.int64),
                        values, doc.get("class_representative_words"))
        except (KeyError, TypeError, ValueError) as exc:
            raise TableError(f"malformed character table: {exc!r}") from None
        return table.validate()


def load_character_table(path: str | Path) -> CharacterTable:
    return CharacterTable.from_json(Path(path).read_text())


def class_mult_coefficients(G: FiniteGroup, P: ConjugacyPartition | None = None,
                            cap: int | None = None) -> np.ndarray:
    """``a[i, j, k] = #{x in C_i : x y in C_k}`` for the representative ``y`` of ``C_j``."""
    cap = env_cap(CHARACTER_CAP) if cap is None else cap
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds character-table cap {cap}")
    P = conjugacy_classes(G) if P is None else P
    k = P.count
    x = G.elements()
    a = np.zeros((k, k, k), dtype=np.int64)
    for j, y in enumerate(P.reps):
        prod_class = P.class_id[G.mul(x, int(y))]
        a[:, j, :] = np.bincount(P.class_id * k + prod_class, minlength=k * k).reshape(k, k)
    return a


def structure_constants(a: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    """``c[i, j, k]``: multiplicity of the class sum ``K_k`` in ``K_i K_j``."""
    num = a * sizes[None, :, None]
    c, rem = np.divmod(num, sizes[None, None, :])
    if rem.any():
        raise TableError("class multiplication coefficients are inconsistent")
    return c


def _separated(eigs: np.ndarray, tol: float) -> bool:
    d = np.abs(eigs[:, None] - eigs[None, :])
    np.fill_diagonal(d, np.inf)
    return bool(d.min() > tol) if len(eigs) > 1 else True


def burnside_character_table(G: FiniteGroup, P: ConjugacyPartition | None = None,
                             seed: int = 0, cap: int | None = None) -> CharacterTable:
    """Character table from common eigenvectors of the class matrices.

    Each irreducible character gives a vector ``w_k = |C_k| chi(g_k) / chi(1)``
    with ``A_i w = w_i w`` for every class matrix ``A_i[j, k] = c[i, j, k]``.
    A random combination of the ``A_i`` with simple spectrum separates them.
    """
    P = conjugacy_classes(G) if P is None else P
    a = class_mult_coefficients(G, P, cap)
    sizes = P.sizes.astype(np.int64)
    c = structure_constants(a, sizes).astype(float)
    k = P.count
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        r = rng.standard_normal(k)
        A = np.tensordot(r, c, axes=1)
        eigs, vecs = np.linalg.eig(A)
        scale = max(1.0, float(np.abs(eigs).max()))
        if not _separated(eigs, 1e-6 * scale) or np.abs(vecs[0]).min() < 1e-10:
            continue
        W = (vecs / vecs[0]).T                      # row r: w for character r
        norm = (np.abs(W) ** 2 / sizes).sum(axis=1)
        deg = np.sqrt(G.order / norm)
        deg_int = np.rint(deg)
        if np.abs(deg - deg_int).max() > 1e-4:
            continue
        values = W * deg_int[:, None] / sizes
        order = sorted(range(k), key=lambda i: (
            deg_int[i],
            tuple(-np.round(values[i].real, 6)),
            tuple(-np.round(values[i].imag, 6))))
        values = values[order]
        words = _class_words(G, P)
        return CharacterTable(G.order, sizes, values, words).validate()
    raise NumericalDegeneracy(f"eigenspaces did not split after {MAX_RETRIES} random combinations")


def _class_words(G: FiniteGroup, P: ConjugacyPartition) -> list[list[int]]:
    words = getattr(G, "words", None) or shortest_words(G)
    return [[g + 1 for g in words[int(r)]] for r in P.reps]


def align_to_group(T: CharacterTable, G: FiniteGroup, P: ConjugacyPartition | None = None) -> CharacterTable:
    """Reorder the columns of an ingested table to match ``P``'s class numbering."""
    P = conjugacy_classes(G) if P is None else P
    if T.order != G.order or T.k != P.count or T.class_words is None:
        raise TableError("character table does not match the group (order, class count or words)")
    cols = []
    for w in T.class_words:
        word = [g - 1 if g > 0 else ~(-g - 1) for g in w]
        cols.append(int(P.class_id[evaluate_word(G, word)]))
    if sorted(cols) != list(range(P.count)):
        raise TableError("class representative words do not hit every class exactly once")
    perm = np.argsort(cols)
    aligned = CharacterTable(T.order, T.sizes[perm], T.values[:, perm],
                             [T.class_words[i] for i in perm])
    if not np.array_equal(aligned.sizes, P.sizes):
        raise TableError("class sizes do not match the group's conjugacy classes")
    return aligned


def frobenius_sum(T: CharacterTable, class_index: int) -> complex:
    return complex((T.values[:, class_index] / T.degrees).sum())


@dataclass
class FrobeniusReport:
    sums: list[complex]
    verdicts: list[bool | None]
    commutator_count: int
    noncommutator_count: int
    unresolved: list[int] = field(default_factory=list)


def commutator_count_via_frobenius(T: CharacterTable, tol: float = ZERO_TOL) -> FrobeniusReport:
    sums = [frobenius_sum(T, c) for c in range(T.k)]
    verdicts: list[bool | None] = []
    unresolved = []
    for c, s in enumerate(sums):
        mag = abs(s)
        if tol / 10 <= mag <= tol:
            verdicts.append(None)
            unresolved.append(c)
        else:
            verdicts.append(mag > tol)
    count = int(sum(int(T.sizes[c]) for c, v in enumerate(verdicts) if v))
    non = int(sum(int(T.sizes[c]) for c, v in enumerate(verdicts) if v is False))
    return FrobeniusReport(sums, verdicts, count, non, unresolved)


def commutator_pair_counts(T: CharacterTable) -> np.ndarray:
    """``#{(x, y) : [x, y] = g}`` per class, as ``|G| sum_chi chi(g)/chi(1)``."""
    return np.array([T.order * frobenius_sum(T, c).real for c in range(T.k)])
