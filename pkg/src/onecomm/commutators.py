"""Commutator sets, noncommutators, perfectness and the one-noncommutator checks."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .group import (ConjugacyPartition, FiniteGroup, center, conjugacy_classes,
                    element_order, subgroup_generated_by_set)

BRUTE_FORCE_CAP = 2000
BRUTE = "brute-force"
CLASS_REDUCED = "class-reduced"


class CapExceeded(RuntimeError):
    pass


def env_cap(default: int) -> int:
    value = os.environ.get("ONECOMM_CAP")
    return int(value) if value else default


def commutator_mask_bruteforce(G: FiniteGroup, cap: int | None = None) -> np.ndarray:
    cap = env_cap(BRUTE_FORCE_CAP) if cap is None else cap
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds brute-force cap {cap}; "
                          "use the class-reduced method")
    mask = np.zeros(G.order, dtype=bool)
    x = G.elements()
    for g in range(G.order):
        mask[G.commutator(g, x)] = True
    return mask


def commutators_bruteforce(G: FiniteGroup, cap: int | None = None) -> set[int]:
    return set(np.flatnonzero(commutator_mask_bruteforce(G, cap)).tolist())


def commutator_mask_class_reduced(G: FiniteGroup, P: ConjugacyPartition,
                                  threads: int = 1) -> np.ndarray:
    """Commutators ``[g, h]`` for one ``g`` per class and every ``h``.

    Conjugating ``[g, h]`` by ``k`` gives ``[g^k, h^k]``, so the commutator set
    is the union of the classes hit by this scan.
    """
    x = G.elements()

    def scan(rep: int) -> np.ndarray:
        hit = np.zeros(P.count, dtype=bool)
        hit[P.class_id[G.commutator(int(rep), x)]] = True
        return hit

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(scan, P.reps))
    else:
        parts = [scan(r) for r in P.reps]
    hit_classes = np.logical_or.reduce(parts)
    return hit_classes[P.class_id]


def commutators_class_reduced(G: FiniteGroup, P: ConjugacyPartition | None = None,
                              threads: int = 1) -> set[int]:
    P = conjugacy_classes(G) if P is None else P
    return set(np.flatnonzero(commutator_mask_class_reduced(G, P, threads)).tolist())


def commutator_mask(G: FiniteGroup, method: str = "auto", P: ConjugacyPartition | None = None,
                    threads: int = 1, cap: int | None = None) -> tuple[np.ndarray, str]:
    cap = env_cap(BRUTE_FORCE_CAP) if cap is None else cap
    if method == "auto":
        method = BRUTE if G.order <= cap else CLASS_REDUCED
    if method in (BRUTE, "brute"):
        return commutator_mask_bruteforce(G, cap), BRUTE
    if method == CLASS_REDUCED:
        P = conjugacy_classes(G) if P is None else P
        return commutator_mask_class_reduced(G, P, threads), CLASS_REDUCED
    raise ValueError(f"unknown method {method!r}")


def noncommutators(G: FiniteGroup, mask: np.ndarray | None = None) -> list[int]:
    if mask is None:
        mask, _ = commutator_mask(G)
    return np.flatnonzero(~mask).tolist()


def is_perfect(G: FiniteGroup, mask: np.ndarray | None = None) -> bool:
    if mask is None:
        mask, _ = commutator_mask(G)
    return bool(subgroup_generated_by_set(G, mask).all())


def products_of_two_cover(G: FiniteGroup, mask: np.ndarray) -> np.ndarray:
    """Mask of elements in ``C ∪ C·C ∪ {1}`` where ``C`` is flagged by ``mask``."""
    covered = mask.copy()
    covered[G.identity] = True
    comms = np.flatnonzero(mask)
    inv_comms = G.inv(comms)
    for g in np.flatnonzero(~covered):
        # g = c1 c2  <=>  g c2^-1 in C for some c2 in C
        if mask[G.mul(int(g), inv_comms)].any():
            covered[g] = True
    return covered


def commutator_width_le2(G: FiniteGroup, mask: np.ndarray | None = None) -> tuple[bool, int | None]:
    """Whether every element is a product of at most two commutators, plus a witness if not."""
    if mask is None:
        mask, _ = commutator_mask(G)
    missing = np.flatnonzero(~products_of_two_cover(G, mask))
    return (not missing.size, int(missing[0]) if missing.size else None)


@dataclass
class CommutatorReport:
    order: int
    commutator_count: int
    noncommutator_indices: list[int]
    is_perfect: bool
    method: str
    class_count: int | None = None

    def __post_init__(self) -> None:
        assert self.commutator_count + len(self.noncommutator_indices) == self.order


def analyze_commutators(G: FiniteGroup, method: str = "auto", P: ConjugacyPartition | None = None,
                        threads: int = 1) -> tuple[CommutatorReport, np.ndarray]:
    mask, used = commutator_mask(G, method, P, threads)
    report = CommutatorReport(
        order=G.order,
        commutator_count=int(mask.sum()),
        noncommutator_indices=noncommutators(G, mask),
        is_perfect=is_perfect(G, mask),
        method=used,
        class_count=P.count if P is not None else None,
    )
    return report, mask


@dataclass
class Proposition1Report:
    applicable: bool
    noncommutator_count: int
    u: int | None = None
    order_two: bool | None = None
    central: bool | None = None
    perfect: bool | None = None
    product_of_two: bool | None = None
    witness: tuple[int, int] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return self.applicable and all((self.order_two, self.central, self.perfect, self.product_of_two))


def product_of_two_witness(G: FiniteGroup, u: int, mask: np.ndarray) -> tuple[int, int] | None:
    """First nontrivial commutator ``g`` with ``u g^-1`` a commutator, as ``(u g^-1, g)``."""
    for g in np.flatnonzero(mask):
        g = int(g)
        if g == G.identity:
            continue
        c1 = int(G.mul(u, G.inv(g)))
        if mask[c1]:
            return c1, g
    return None


def check_proposition1(G: FiniteGroup, mask: np.ndarray | None = None) -> Proposition1Report:
    if mask is None:
        mask, _ = commutator_mask(G)
    non = noncommutators(G, mask)
    if len(non) != 1:
        return Proposition1Report(False, len(non),
                                  notes=[f"not applicable: {len(non)} noncommutators"])
    u = non[0]
    witness = product_of_two_witness(G, u, mask)
    rep = Proposition1Report(
        applicable=True,
        noncommutator_count=1,
        u=u,
        order_two=element_order(G, u) == 2,
        central=all(int(G.mul(u, g)) == int(G.mul(g, u)) for g in G.generators),
        perfect=is_perfect(G, mask),
        product_of_two=witness is not None,
        witness=witness,
    )
    if G.order < 3:
        rep.notes.append("|G| < 3: the four properties are only guaranteed for |G| >= 3")
    return rep


def check_perfect_threshold(G: FiniteGroup, mask: np.ndarray | None = None) -> bool | str:
    """``is_perfect`` when more than half the elements are commutators, else ``"vacuous"``."""
    if mask is None:
        mask, _ = commutator_mask(G)
    n = G.order
    k = n - int(mask.sum())
    if 2 * (n - k) > n:
        return is_perfect(G, mask)
    return "vacuous"


def check_commutator_closure(G: FiniteGroup, mask: np.ndarray) -> list[str]:
    """Closure of the commutator set under inversion and conjugation by generators."""
    failures = []
    comms = np.flatnonzero(mask)
    if not mask[G.inv(comms)].all():
        failures.append("commutator set is not closed under inversion")
    for g in G.generators:
        if not mask[G.conjugate(g, comms)].all():
            failures.append(f"commutator set is not closed under conjugation by {G.describe(g)}")
            break
    return failures


__all__ = [
    "BRUTE_FORCE_CAP", "CapExceeded", "CommutatorReport", "Proposition1Report",
    "analyze_commutators", "center", "check_commutator_closure", "check_perfect_threshold",
    "check_proposition1", "commutator_mask", "commutator_width_le2", "commutators_bruteforce",
    "commutators_class_reduced", "element_order", "is_perfect", "noncommutators",
]
