"""Dense linear algebra over GF(2) on bit-packed rows.

Rows are packed into little-endian uint64 words: column ``j`` is bit
``j & 63`` of word ``j >> 6``.  Vectors are plain 0/1 numpy arrays at the
API boundary and packed internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import CapExceeded, DimensionMismatch

SUBSPACE_CAP = 6


def n_words(ncols: int) -> int:
    return max(1, (ncols + 63) >> 6)


def pack_rows(dense) -> np.ndarray:
    """Pack an (m, n) 0/1 array into (m, words) uint64."""
    a = np.asarray(dense, dtype=np.uint8)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
    m, n = a.shape
    w = n_words(n)
    packed = np.packbits(a & 1, axis=1, bitorder="little")
    buf = np.zeros((m, w * 8), dtype=np.uint8)
    buf[:, : packed.shape[1]] = packed
    return buf.view("<u8").astype(np.uint64).reshape(m, w)


def unpack_rows(words: np.ndarray, ncols: int) -> np.ndarray:
    m = words.shape[0]
    if m == 0:
        return np.zeros((0, ncols), dtype=np.uint8)
    raw = np.ascontiguousarray(words, dtype="<u8").view(np.uint8).reshape(m, -1)
    return np.unpackbits(raw, axis=1, bitorder="little", count=ncols)


def pack_vector(bits) -> np.ndarray:
    return pack_rows(np.asarray(bits, dtype=np.uint8).reshape(1, -1))[0]


def unit_words(i: int, ncols: int) -> np.ndarray:
    v = np.zeros(n_words(ncols), dtype=np.uint64)
    v[i >> 6] = np.uint64(1) << np.uint64(i & 63)
    return v


class BitMatrix:
    """Immutable dense GF(2) matrix with bit-packed rows."""

    __slots__ = ("nrows", "ncols", "words")

    def __init__(self, words: np.ndarray, ncols: int):
        words = np.array(words, dtype=np.uint64, copy=True)
        if words.ndim != 2:
            raise DimensionMismatch("words must be 2-d")
        if words.shape[1] != n_words(ncols):
            raise DimensionMismatch(f"{words.shape[1]} words cannot hold {ncols} columns")
        if ncols % 64 and words.size:
            # keep padding bits clear so equality is representational
            words[:, -1] &= np.uint64((1 << (ncols % 64)) - 1)
        words.flags.writeable = False
        self.nrows = words.shape[0]
        self.ncols = ncols
        self.words = words

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        a = np.asarray(dense, dtype=np.uint8)
        if a.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
        return cls(pack_rows(a), a.shape[1])

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> "BitMatrix":
        if ncols is None:
            if not rows:
                raise DimensionMismatch("ncols is required for an empty row list")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows) or any(c not in "01" for r in rows for c in r):
            raise DimensionMismatch("rows must be 0/1 strings of equal length")
        dense = np.array([[c == "1" for c in r] for r in rows], dtype=np.uint8).reshape(len(rows), ncols)
        return cls.from_dense(dense)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(np.zeros((nrows, n_words(ncols)), dtype=np.uint64), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_int_rows(cls, rows: Iterable[int], ncols: int) -> "BitMatrix":
        """Rows given as Python ints, bit ``j`` = column ``j``."""
        w = n_words(ncols)
        rows = list(rows)
        words = np.zeros((len(rows), w), dtype=np.uint64)
        mask = (1 << 64) - 1
        for i, r in enumerate(rows):
            for t in range(w):
                words[i, t] = (r >> (64 * t)) & mask
        return cls(words, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.words, self.ncols)

    def to_strings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self.to_dense()]

    def int_rows(self) -> list[int]:
        return [int.from_bytes(r.astype("<u8").tobytes(), "little") for r in self.words]

    def row(self, i: int) -> np.ndarray:
        return unpack_rows(self.words[i : i + 1], self.ncols)[0]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense()[np.ix_(list(rows), list(cols))])

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.ncols != self.ncols:
            raise DimensionMismatch(f"column counts differ: {self.ncols} vs {other.ncols}")
        return BitMatrix(np.vstack([self.words, other.words]), self.ncols)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self.words.tobytes()))

    def __repr__(self) -> str:
        if self.nrows * self.ncols <= 64:
            return f"BitMatrix({self.to_strings()!r})"
        return f"BitMatrix(<{self.nrows}x{self.ncols}>)"


def rref(M: BitMatrix) -> tuple[BitMatrix, np.ndarray]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    R, piv = kernels.rref(M.words, M.ncols)
    return BitMatrix(R, M.ncols), piv


def rank(M: BitMatrix) -> int:
    return len(kernels.rref(M.words, M.ncols)[1])


def inner_product(a, b) -> int:
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape:
        raise DimensionMismatch(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.bitwise_xor.reduce(a & b & 1)) if a.size else 0


def multiply(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    if A.ncols != B.nrows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return BitMatrix(kernels.matmul(A.words, A.ncols, B.words), B.ncols)


def span_contains(rows: BitMatrix, v) -> bool:
    """Is ``v`` (0/1 array or packed words) in the row span of ``rows``?"""
    target = _as_words(v, rows.ncols)
    stack = np.vstack([rows.words, target[None, :]])[None, :, :]
    return bool(kernels.last_row_in_span(stack)[0])


def in_span(v, basis_a: BitMatrix, basis_b: BitMatrix) -> bool:
    """Membership of ``v`` in rowspan(basis_a) + rowspan(basis_b)."""
    if basis_a.ncols != basis_b.ncols:
        raise DimensionMismatch("bases have different widths")
    return span_contains(basis_a.vstack(basis_b), v)


def solve_combination(rows: BitMatrix, v) -> list[int] | None:
    """Indices of rows summing to ``v``, or None when ``v`` is outside the span."""
    target = _as_words(v, rows.ncols)
    m, n = rows.nrows, rows.ncols
    aug = np.hstack([rows.to_dense(), np.eye(m, dtype=np.uint8)])
    R, piv = kernels.rref(pack_rows(aug), n)
    t = np.zeros(n_words(n + m), dtype=np.uint64)
    t[: target.size] = target
    for r, p in enumerate(piv):
        if (t[p >> 6] >> np.uint64(p & 63)) & np.uint64(1):
            t ^= R[r]
    rest = unpack_rows(t[None, :], n + m)[0]
    if rest[:n].any():
        return None
    return [int(i) for i in np.flatnonzero(rest[n:])]


def _as_words(v, ncols: int) -> np.ndarray:
    v = np.asarray(v)
    if v.dtype == np.uint64 and v.size == n_words(ncols):
        return v
    if v.size != ncols:
        raise DimensionMismatch(f"vector of length {v.size} against width {ncols}")
    return pack_vector(v)


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(2)^ambient_dim stored by its RREF basis."""

    ambient_dim: int
    basis: BitMatrix

    def __post_init__(self):
        if self.basis.ncols != self.ambient_dim:
            raise DimensionMismatch("basis width differs from ambient dimension")

    @classmethod
    def span(cls, M: BitMatrix) -> "Subspace":
        R, _ = rref(M)
        return cls(M.ncols, R)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix.zeros(0, n))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def contains(self, v) -> bool:
        return span_contains(self.basis, v)

    def elements(self) -> np.ndarray:
        """All 2^dim members as single-word integers (ambient_dim <= 64)."""
        if self.ambient_dim > 64:
            raise CapExceeded("element listing needs ambient_dim <= 64")
        out = np.zeros(1, dtype=np.uint64)
        for row in self.basis.words[:, 0]:
            out = np.concatenate([out, out ^ row])
        return out


def kernel_basis(M: BitMatrix) -> Subspace:
    """Null space {x : Mx = 0}."""
    R, piv = rref(M)
    n = M.ncols
    pivset = set(int(p) for p in piv)
    Rd = R.to_dense()
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        x = np.zeros(n, dtype=np.uint8)
        x[f] = 1
        for r, p in enumerate(piv):
            if Rd[r, f]:
                x[p] = 1
        vecs.append(x)
    dense = np.array(vecs, dtype=np.uint8).reshape(len(vecs), n)
    return Subspace.span(BitMatrix.from_dense(dense))


def gaussian_binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def enumerate_subspaces(ambient_dim: int, dim: int, cap: int = SUBSPACE_CAP) -> Iterator[Subspace]:
    """Every ``dim``-dimensional subspace of GF(2)^ambient_dim, once each, in RREF order.

    Order: pivot-column tuples lexicographically, then free entries counted
    in binary.
    """
    if not 0 <= dim <= ambient_dim:
        raise ValueError(f"need 0 <= dim <= ambient_dim, got dim={dim}, ambient_dim={ambient_dim}")
    if ambient_dim > cap:
        raise CapExceeded(f"subspace enumeration capped at ambient_dim <= {cap}")
    for rows in _rref_int_bases(ambient_dim, dim):
        yield Subspace(ambient_dim, BitMatrix.from_int_rows(rows, ambient_dim))


def _rref_int_bases(n: int, d: int) -> Iterator[list[int]]:
    for pivots in combinations(range(n), d):
        pset = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pset]
        for bits in product((0, 1), repeat=len(free)):
            rows = [1 << p for p in pivots]
            for (r, c), b in zip(free, bits):
                if b:
                    rows[r] |= 1 << c
            yield rows


def subspace_basis_array(n: int, d: int, cap: int = SUBSPACE_CAP) -> np.ndarray:
    """All ``d``-dim subspaces of GF(2)^n as an (S, d) uint64 array of single-word basis rows."""
    if n > cap:
        raise CapExceeded(f"subspace enumeration capped at ambient_dim <= {cap}")
    rows = list(_rref_int_bases(n, d))
    return np.array(rows, dtype=np.uint64).reshape(len(rows), d)
