"""Linear algebra over GF(2) with vectors packed into Python ints.

Coordinate ``i`` (0-based) of a vector lives in bit ``i``.  Matrices are
stored column-major: column ``j`` is the image of the ``j``-th standard basis
vector, packed the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 64


class F2Error(ValueError):
    """Raised on dimension mismatches and other malformed GF(2) input."""


class NotInvertibleError(F2Error):
    pass


def _check_dim(dim: int) -> None:
    if not 1 <= dim <= MAX_DIM:
        raise F2Error(f"dimension must be in 1..{MAX_DIM}, got {dim}")


@dataclass(frozen=True)
class F2Vector:
    dim: int
    bits: int

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        if self.bits < 0 or self.bits >> self.dim:
            raise F2Error(f"bits {self.bits:#x} do not fit in dimension {self.dim}")

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "F2Vector":
        bits = 0
        for i, c in enumerate(coords):
            if c not in (0, 1):
                raise F2Error(f"coordinate {i} is {c!r}, expected 0 or 1")
            bits |= c << i
        return cls(len(coords), bits)

    @classmethod
    def from_string(cls, text: str) -> "F2Vector":
        """Parse ``"1010111111"`` (first character is coordinate 1)."""
        return cls.from_coords([int(ch) for ch in text.strip() if ch in "01"])

    @classmethod
    def basis(cls, dim: int, i: int) -> "F2Vector":
        return cls(dim, 1 << i)

    def coords(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.dim)]

    def __str__(self) -> str:
        return "".join(str(c) for c in self.coords())

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.dim != other.dim:
            raise F2Error(f"dimension mismatch: {self.dim} vs {other.dim}")
        return F2Vector(self.dim, self.bits ^ other.bits)

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class F2Matrix:
    dim: int
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        if len(self.columns) != self.dim:
            raise F2Error(f"expected {self.dim} columns, got {len(self.columns)}")
        for j, col in enumerate(self.columns):
            if col < 0 or col >> self.dim:
                raise F2Error(f"column {j} does not fit in dimension {self.dim}")

    @classmethod
    def identity(cls, dim: int) -> "F2Matrix":
        return cls(dim, tuple(1 << j for j in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "F2Matrix":
        return cls(dim, (0,) * dim)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "F2Matrix":
        dim = len(rows)
        cols = [0] * dim
        for i, row in enumerate(rows):
            if len(row) != dim:
                raise F2Error(f"row {i + 1} has {len(row)} entries, expected {dim}")
            for j, entry in enumerate(row):
                if entry not in (0, 1):
                    raise F2Error(f"entry ({i + 1}, {j + 1}) is {entry!r}")
                cols[j] |= entry << i
        return cls(dim, tuple(cols))

    def entry(self, i: int, j: int) -> int:
        return (self.columns[j] >> i) & 1

    def rows(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def to_text(self) -> str:
        return "".join(" ".join(map(str, row)) + "\n" for row in self.rows())

    def flip(self, i: int, j: int) -> "F2Matrix":
        cols = list(self.columns)
        cols[j] ^= 1 << i
        return F2Matrix(self.dim, tuple(cols))

    def apply_bits(self, v: int) -> int:
        out = 0
        j = 0
        while v:
            if v & 1:
                out ^= self.columns[j]
            v >>= 1
            j += 1
        return out

    def image_table(self) -> np.ndarray:
        """Images of all ``2**dim`` vectors, indexed by the packed vector."""
        if self.dim > 20:
            raise F2Error("image table is limited to dimension <= 20")
        table = np.zeros(1 << self.dim, dtype=np.int64)
        for j, col in enumerate(self.columns):
            half = 1 << j
            table[half : 2 * half] = table[:half] ^ col
        return table

    def __matmul__(self, other):
        if isinstance(other, F2Matrix):
            return mat_mul(self, other)
        if isinstance(other, F2Vector):
            return mat_vec_mul(self, other)
        return NotImplemented


def parse_matrix(text: str) -> F2Matrix:
    """Parse a whitespace-separated 0/1 grid, one row per line."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as exc:
            raise F2Error(f"line {lineno}: {exc}") from None
    if not rows:
        raise F2Error("empty matrix literal")
    return F2Matrix.from_rows(rows)


def load_matrix(path: str | Path) -> F2Matrix:
    return parse_matrix(Path(path).read_text())


def mat_vec_mul(m: F2Matrix, v: F2Vector) -> F2Vector:
    if m.dim != v.dim:
        raise F2Error(f"dimension mismatch: matrix {m.dim} vs vector {v.dim}")
    return F2Vector(m.dim, m.apply_bits(v.bits))


def mat_mul(a: F2Matrix, b: F2Matrix) -> F2Matrix:
    if a.dim != b.dim:
        raise F2Error(f"dimension mismatch: {a.dim} vs {b.dim}")
    return F2Matrix(a.dim, tuple(a.apply_bits(col) for col in b.columns))


def mat_add(a: F2Matrix, b: F2Matrix) -> F2Matrix:
    if a.dim != b.dim:
        raise F2Error(f"dimension mismatch: {a.dim} vs {b.dim}")
    return F2Matrix(a.dim, tuple(x ^ y for x, y in zip(a.columns, b.columns)))


def mat_pow(m: F2Matrix, k: int) -> F2Matrix:
    if k < 0:
        m, k = mat_inverse(m), -k
    result = F2Matrix.identity(m.dim)
    base = m
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def _row_words(m: F2Matrix) -> list[int]:
    return [sum(m.entry(i, j) << j for j in range(m.dim)) for i in range(m.dim)]


def mat_inverse(m: F2Matrix) -> F2Matrix:
    n = m.dim
    # augmented rows: low n bits hold the row of m, high n bits the identity
    rows = [r | (1 << (n + i)) for i, r in enumerate(_row_words(m))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if (rows[r] >> col) & 1), None)
        if pivot is None:
            raise NotInvertibleError("matrix is not invertible over GF(2)")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(n):
            if r != col and (rows[r] >> col) & 1:
                rows[r] ^= rows[col]
    inv_rows = [r >> n for r in rows]
    cols = [sum(((inv_rows[i] >> j) & 1) << i for i in range(n)) for j in range(n)]
    return F2Matrix(n, tuple(cols))


def rank(vectors: Iterable[int]) -> int:
    return len(rref(list(vectors)))


def rref(vectors: list[int]) -> list[int]:
    """Reduced echelon basis of the span of packed vectors.

    Pivots are the lowest set bit (first coordinate); rows are sorted by pivot
    and every pivot bit is cleared from all other rows, so equal spans give
    identical output.
    """
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            low = v & -v
            basis = [b ^ v if b & low else b for b in basis]
            basis.append(v)
    return sorted(basis, key=lambda b: b & -b)


def in_span(v: int, basis: list[int]) -> bool:
    """Membership test; ``basis`` must be in the form returned by :func:`rref`."""
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v == 0


def span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return sorted(out)


def kernel(m: F2Matrix) -> list[int]:
    """Reduced echelon basis of ``{v : m v = 0}``."""
    n = m.dim
    rows = rref(_row_words(m))
    pivots = [r & -r for r in rows]
    pivot_cols = [p.bit_length() - 1 for p in pivots]
    free = [j for j in range(n) if j not in pivot_cols]
    out = []
    for f in free:
        v = 1 << f
        for r, pc in zip(rows, pivot_cols):
            if (r >> f) & 1:
                v |= 1 << pc
        out.append(v)
    return rref(out)


def fixed_space(m: F2Matrix) -> list[F2Vector]:
    return [F2Vector(m.dim, b) for b in kernel(mat_add(m, F2Matrix.identity(m.dim)))]


def subspace_intersection(b1: Sequence[F2Vector], b2: Sequence[F2Vector]) -> list[F2Vector]:
    """Basis of ``span(b1) ∩ span(b2)`` via the Zassenhaus construction."""
    dims = {v.dim for v in (*b1, *b2)}
    if len(dims) > 1:
        raise F2Error(f"dimension mismatch among inputs: {sorted(dims)}")
    if not dims:
        return []
    (dim,) = dims
    # rows (u | u) and (w | 0); the low half is eliminated first
    rows = [u.bits | (u.bits << dim) for u in b1] + [w.bits for w in b2]
    reduced = rref(rows)
    low_mask = (1 << dim) - 1
    inter = [r >> dim for r in reduced if not r & low_mask]
    return [F2Vector(dim, b) for b in rref(inter)]
