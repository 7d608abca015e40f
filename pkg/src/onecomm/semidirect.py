"""The group Z_2^10 x| A_6 built from the two generator action matrices.

Elements are pairs ``(s, a)`` of a packed 10-bit vector and an A_6 index,
flattened to ``s * 360 + a``.  The product is ``(s, a)(t, b) = (s + M_a t, ab)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .f2 import (F2Matrix, F2Vector, NotInvertibleError, fixed_space, load_matrix,
                 mat_inverse, mat_mul, parse_matrix, subspace_intersection)
from .group import FiniteGroup
from .perm import LEFT_FIRST, RIGHT_FIRST, Permutation, PermGroupTable, generate

DIM = 10
SIGMA = Permutation.from_cycles(6, (1, 2, 3, 4, 5))
ETA = Permutation.from_cycles(6, (4, 5, 6))
Q = F2Vector.from_string("1010111111")
PAPER_ORDER = 2**10 * 360


class ConstructionError(RuntimeError):
    """The action data does not define a semidirect product."""


def fixture_text(name: str) -> str:
    return resources.files("onecomm.data").joinpath(name).read_text()


def load_paper_matrices(sigma_path: str | Path | None = None,
                        eta_path: str | Path | None = None) -> tuple[F2Matrix, F2Matrix]:
    msig = load_matrix(sigma_path) if sigma_path else parse_matrix(fixture_text("m_sigma.txt"))
    meta = load_matrix(eta_path) if eta_path else parse_matrix(fixture_text("m_eta.txt"))
    return msig, meta


def build_a6(convention: str = RIGHT_FIRST) -> PermGroupTable:
    return generate([SIGMA, ETA], convention=convention, name="A6")


def action_from_words(a6: PermGroupTable, gen_mats: list[F2Matrix]) -> list[F2Matrix]:
    """Matrix of every element, multiplying generator matrices along its BFS word."""
    dim = gen_mats[0].dim
    mats: list[F2Matrix | None] = [None] * a6.order
    mats[0] = F2Matrix.identity(dim)
    for i in range(1, a6.order):
        k, *rest = a6.words[i]
        parent = a6.word_product(rest)
        # BFS guarantees the parent (a shorter word) is filled already
        mats[i] = mat_mul(gen_mats[k], mats[parent])
    return mats  # type: ignore[return-value]


def column_array(mats: list[F2Matrix]) -> np.ndarray:
    return np.array([m.columns for m in mats], dtype=np.int64)


def image_tables(mats: list[F2Matrix]) -> np.ndarray:
    return np.stack([m.image_table() for m in mats])


def homomorphism_failures(a6: PermGroupTable, mats: list[F2Matrix]) -> np.ndarray:
    """All pairs ``(a, b)`` with ``M_ab != M_a M_b``, checked column by column."""
    cols = column_array(mats)
    images = image_tables(mats)
    n = a6.order
    lhs = cols[a6.table]                                   # (n, n, dim)
    rhs = images[np.arange(n)[:, None, None], cols[None, :, :]]
    bad = (lhs != rhs).any(axis=2)
    return np.argwhere(bad)


def build_action_table(a6: PermGroupTable, msig: F2Matrix, meta: F2Matrix) -> list[F2Matrix]:
    for name, m in (("M_sigma", msig), ("M_eta", meta)):
        if m.dim != DIM:
            raise ConstructionError(f"{name} has dimension {m.dim}, expected {DIM}")
        try:
            mat_inverse(m)
        except NotInvertibleError:
            raise ConstructionError(f"{name} is not invertible") from None
    mats = action_from_words(a6, [msig, meta])
    bad = homomorphism_failures(a6, mats)
    if len(bad):
        a, b = bad[0]
        raise ConstructionError(
            f"homomorphism check failed on {len(bad)} of {a6.order ** 2} pairs "
            f"(first: {a6.describe(int(a))} , {a6.describe(int(b))})")
    return mats


@dataclass(frozen=True)
class SdpElement:
    s: F2Vector
    a: int


class SdpGroup(FiniteGroup):
    def __init__(self, a6: PermGroupTable, action: list[F2Matrix], name: str = "Z2^10:A6"):
        self.a6 = a6
        self.action = action
        self.dim = action[0].dim
        self.n_h = a6.order
        self.order = (1 << self.dim) * self.n_h
        self.name = name
        self.identity = 0
        self.images = image_tables(action)                 # images[a, t] = M_a t
        self.generators = [self.index(F2Vector.basis(self.dim, i), 0) for i in range(self.dim)]
        self.generators += [self.index(F2Vector(self.dim, 0), g) for g in a6.generators]

    def index(self, s: F2Vector, a: int) -> int:
        return s.bits * self.n_h + a

    def element(self, i: int) -> SdpElement:
        s, a = divmod(int(i), self.n_h)
        return SdpElement(F2Vector(self.dim, s), a)

    def mul(self, x, y):
        sx, ax = np.divmod(x, self.n_h)
        sy, ay = np.divmod(y, self.n_h)
        return (sx ^ self.images[ax, sy]) * self.n_h + self.a6.table[ax, ay]

    def inv(self, x):
        s, a = np.divmod(x, self.n_h)
        ai = self.a6.inverse[a]
        return self.images[ai, s] * self.n_h + ai

    def describe(self, i: int) -> str:
        e = self.element(i)
        perm = self.a6.element(e.a)
        p = "identity" if perm == Permutation.identity(perm.degree) else str(perm)
        return f"vector {e.s}, permutation {p}"

    def describe_json(self, i: int) -> dict:
        e = self.element(i)
        return {"index": int(i), "vector": str(e.s),
                "images": list(self.a6.element(e.a).images)}

    # element-level operations

    def product(self, x: SdpElement, y: SdpElement) -> SdpElement:
        s = x.s + F2Vector(self.dim, int(self.images[x.a, y.s.bits]))
        return SdpElement(s, int(self.a6.table[x.a, y.a]))

    def inverse(self, x: SdpElement) -> SdpElement:
        ai = int(self.a6.inverse[x.a])
        return SdpElement(F2Vector(self.dim, int(self.images[ai, x.s.bits])), ai)

    def commutator_formula(self, x: SdpElement, y: SdpElement) -> SdpElement:
        """Closed form ``(s + M_a t + M_{a b a^-1} s + M_{[a,b]} t, [a, b])``."""
        H = self.a6
        a, b = x.a, y.a
        ai, bi = int(H.inverse[a]), int(H.inverse[b])
        aba = int(H.table[H.table[a, b], ai])
        comm = int(H.table[aba, bi])
        s, t = x.s.bits, y.s.bits
        v = s ^ int(self.images[a, t]) ^ int(self.images[aba, s]) ^ int(self.images[comm, t])
        return SdpElement(F2Vector(self.dim, v), comm)

    def commutator_formula_batch(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Vectorized closed-form commutator on flat indices."""
        H = self.a6
        s, a = np.divmod(x, self.n_h)
        t, b = np.divmod(y, self.n_h)
        aba = H.table[H.table[a, b], H.inverse[a]]
        comm = H.table[aba, H.inverse[b]]
        v = s ^ self.images[a, t] ^ self.images[aba, s] ^ self.images[comm, t]
        return v * self.n_h + comm

    def eigenspace_center(self) -> list[int]:
        """Center predicted by the common fixed space of the generator matrices."""
        mats = [self.action[g] for g in self.a6.generators]
        basis = fixed_space(mats[0])
        for m in mats[1:]:
            basis = subspace_intersection(basis, fixed_space(m))
        vecs = [0]
        for b in basis:
            vecs += [v ^ b.bits for v in vecs]
        return sorted(v * self.n_h for v in vecs)


def sdp_product(G: SdpGroup, x: SdpElement, y: SdpElement) -> SdpElement:
    return G.product(x, y)


def sdp_inverse(G: SdpGroup, x: SdpElement) -> SdpElement:
    return G.inverse(x)


def sdp_commutator(G: SdpGroup, x: SdpElement, y: SdpElement) -> SdpElement:
    return G.commutator_formula(x, y)


def build_paper_group(msig: F2Matrix | None = None, meta: F2Matrix | None = None) -> SdpGroup:
    """Build Z_2^10 x| A_6 and verify the action is a homomorphism.

    The permutation product convention is not fixed by the source data; the
    right-first convention is tried first and left-first is the fallback.
    """
    if msig is None or meta is None:
        d_sig, d_eta = load_paper_matrices()
        msig = msig if msig is not None else d_sig
        meta = meta if meta is not None else d_eta
    errors = []
    for convention in (RIGHT_FIRST, LEFT_FIRST):
        a6 = build_a6(convention)
        try:
            action = build_action_table(a6, msig, meta)
        except ConstructionError as exc:
            errors.append(f"{convention}: {exc}")
            continue
        return SdpGroup(a6, action)
    raise ConstructionError("; ".join(errors))


def dump_action_table(G: SdpGroup) -> str:
    """Text dump of every action matrix, one block per A_6 element."""
    out = []
    for i, m in enumerate(G.action):
        out.append(f"# {i} {G.a6.describe(i)}\n{m.to_text()}")
    return "\n".join(out)


def module_blocks(m: F2Matrix, split: int = 5) -> bool:
    """True when ``m`` is block diagonal with blocks of size ``split`` and ``dim - split``."""
    low = (1 << split) - 1
    return all((c & ~low) == 0 for c in m.columns[:split]) and all(c & low == 0 for c in m.columns[split:])
