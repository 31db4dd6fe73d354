"""Linear index codes, embedded codes and task-based embedded codes over GF(2).

Verification is algebraic: a decoder is a pair of coefficient sets (broadcast
bits, side-information vertices), and it is correct for every message iff the
corresponding GF(2) combination of encoder rows and unit vectors equals e_i.

Broadcast layout for embedded codes: sender blocks in ascending sender index,
rows within a block in encoder order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from . import gf2
from .errors import DimensionMismatch
from .gf2 import BitMatrix
from .graphs import Graph
from .minrank import RepresentingMatrix, decodable_receivers


@dataclass(frozen=True)
class Decoder:
    """x_i = sum of the listed broadcast bits + sum of the listed side-information bits."""

    broadcast: tuple[int, ...]
    side: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "broadcast", tuple(sorted(int(t) for t in self.broadcast)))
        object.__setattr__(self, "side", tuple(sorted(int(h) for h in self.side)))


@dataclass(frozen=True)
class IndexCode:
    n: int
    encoder: BitMatrix
    decoders: tuple[Decoder, ...]

    @property
    def length(self) -> int:
        return self.encoder.nrows


@dataclass(frozen=True)
class Sender:
    """A broadcasting receiver: ``encoder`` has one column per entry of ``columns``."""

    vertex: int
    columns: tuple[int, ...]
    encoder: BitMatrix

    def __post_init__(self):
        if self.encoder.ncols != len(self.columns):
            raise DimensionMismatch(f"sender {self.vertex}: encoder width differs from its column list")

    @property
    def length(self) -> int:
        return self.encoder.nrows

    def padded(self, n: int) -> BitMatrix:
        dense = np.zeros((self.encoder.nrows, n), dtype=np.uint8)
        if self.columns:
            dense[:, list(self.columns)] = self.encoder.to_dense()
        return BitMatrix.from_dense(dense)


@dataclass(frozen=True)
class EmbeddedCode:
    n: int
    senders: tuple[Sender, ...]
    decoders: tuple[Decoder, ...]

    def __post_init__(self):
        verts = [s.vertex for s in self.senders]
        if verts != sorted(set(verts)):
            raise ValueError("senders must be distinct and in ascending vertex order")

    @property
    def length(self) -> int:
        return sum(s.length for s in self.senders)

    def blocks(self) -> dict[int, range]:
        out, start = {}, 0
        for s in self.senders:
            out[s.vertex] = range(start, start + s.length)
            start += s.length
        return out

    def broadcast_matrix(self) -> BitMatrix:
        """All senders' encoders zero-padded to n columns and stacked in broadcast order."""
        out = BitMatrix.zeros(0, self.n)
        for s in self.senders:
            out = out.vstack(s.padded(self.n))
        return out


@dataclass(frozen=True)
class TaskBasedCode(EmbeddedCode):
    """Embedded code where receiver i reads only the block of sender ``assignment[i]``."""

    assignment: tuple[int, ...] = field(default=())


AnyCode = Union[IndexCode, EmbeddedCode, TaskBasedCode]


@dataclass
class Verdict:
    """Outcome of a verification. Truthy iff the code is valid.

    ``failures`` maps receivers to decoding problems, ``structural`` lists
    senders that read outside their neighbourhood, and ``foreign_block`` maps
    receivers whose decoder leaves its assigned sender's block.
    """

    failures: dict[int, str] = field(default_factory=dict)
    structural: list[str] = field(default_factory=list)
    foreign_block: dict[int, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not (self.failures or self.structural or self.foreign_block)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> dict:
        return {
            "ok": self.ok,
            "failures": {str(k): v for k, v in sorted(self.failures.items())},
            "structural": list(self.structural),
            "foreign_block": {str(k): v for k, v in sorted(self.foreign_block.items())},
        }


def verify_linear_decodability(broadcast_rows: BitMatrix, G: Graph, i: int) -> bool:
    """Whether some linear decoder lets receiver i recover x_i from these broadcast rows."""
    if broadcast_rows.ncols != G.n:
        raise DimensionMismatch(f"broadcast rows have {broadcast_rows.ncols} columns, graph has {G.n} vertices")
    masked = BitMatrix(broadcast_rows.words & ~gf2.pack_vector(G.adjacency_matrix()[i])[None, :], G.n)
    return gf2.span_contains(masked, gf2.unit_words(i, G.n))


def _identity_holds(rows: BitMatrix, dec: Decoder, i: int, n: int) -> bool:
    acc = np.zeros(gf2.n_words(n), dtype=np.uint64)
    for t in dec.broadcast:
        acc ^= rows.words[t]
    for h in dec.side:
        acc ^= gf2.unit_words(h, n)
    return np.array_equal(acc, gf2.unit_words(i, n))


def _check_decoder(dec: Decoder, i: int, G: Graph, ell: int) -> str | None:
    if any(not 0 <= t < ell for t in dec.broadcast):
        return "decoder refers to a broadcast bit that does not exist"
    outside = [h for h in dec.side if not G.has_edge(i, h)]
    if outside:
        return f"decoder reads x_{outside[0]}, which is not side information of receiver {i}"
    return None


def verify_index_code(code: IndexCode, G: Graph) -> Verdict:
    if code.n != G.n or code.encoder.ncols != G.n or len(code.decoders) != G.n:
        raise DimensionMismatch("code shape does not match the graph")
    v = Verdict()
    for i, dec in enumerate(code.decoders):
        problem = _check_decoder(dec, i, G, code.length)
        if problem is None and not _identity_holds(code.encoder, dec, i, G.n):
            problem = "decoder identity does not reproduce x_i"
        if problem:
            v.failures[i] = problem
    return v


def _structure(code: EmbeddedCode, G: Graph) -> list[str]:
    problems = []
    for s in code.senders:
        if not 0 <= s.vertex < G.n:
            problems.append(f"sender {s.vertex} is not a vertex")
            continue
        bad = [c for c in s.columns if not G.has_edge(s.vertex, c)]
        if bad:
            problems.append(f"sender {s.vertex} reads x_{bad[0]} outside its neighbourhood")
        if len(set(s.columns)) != len(s.columns):
            problems.append(f"sender {s.vertex} lists a column twice")
    return problems


def verify_embedded_code(code: EmbeddedCode, G: Graph) -> Verdict:
    if code.n != G.n or len(code.decoders) != G.n:
        raise DimensionMismatch("code shape does not match the graph")
    v = Verdict(structural=_structure(code, G))
    if v.structural:
        return v
    rows = code.broadcast_matrix()
    decodable = decodable_receivers(rows, G)
    for i, dec in enumerate(code.decoders):
        problem = _check_decoder(dec, i, G, code.length)
        if problem is None and not decodable[i]:
            problem = "x_i is not in the span of the broadcast plus side information"
        if problem is None and not _identity_holds(rows, dec, i, G.n):
            problem = "decoder identity does not reproduce x_i"
        if problem:
            v.failures[i] = problem
    return v


def verify_task_based_code(code: TaskBasedCode, G: Graph) -> Verdict:
    if len(code.assignment) != G.n:
        raise DimensionMismatch("assignment must name one sender per receiver")
    v = verify_embedded_code(code, G)
    if v.structural:
        return v
    blocks = code.blocks()
    rows = code.broadcast_matrix()
    for i, (j, dec) in enumerate(zip(code.assignment, code.decoders)):
        if j not in blocks:
            v.foreign_block[i] = f"assigned sender {j} does not broadcast"
            continue
        block = blocks[j]
        stray = [t for t in dec.broadcast if t not in block]
        if stray:
            v.foreign_block[i] = f"decoder reads broadcast bit {stray[0]} outside the block of sender {j}"
            continue
        own = BitMatrix(rows.words[block.start : block.stop], G.n)
        if i not in v.failures and not verify_linear_decodability(own, G, i):
            v.failures[i] = f"x_i cannot be recovered from the block of sender {j}"
    return v


def derive_decoders(rows: BitMatrix, G: Graph) -> tuple[Decoder, ...] | None:
    """Solve for a decoder per receiver, or None if some receiver cannot decode."""
    out = []
    for i in range(G.n):
        nbr = gf2.pack_vector(G.adjacency_matrix()[i])
        masked = BitMatrix(rows.words & ~nbr[None, :], G.n)
        coef = gf2.solve_combination(masked, gf2.unit_words(i, G.n))
        if coef is None:
            return None
        acc = np.zeros(gf2.n_words(G.n), dtype=np.uint64)
        for t in coef:
            acc ^= rows.words[t]
        acc &= nbr
        side = [int(h) for h in np.flatnonzero(gf2.unpack_rows(acc[None, :], G.n)[0])]
        out.append(Decoder(tuple(coef), tuple(side)))
    return tuple(out)


def index_code_from_encoder(encoder: BitMatrix, G: Graph) -> IndexCode:
    decoders = derive_decoders(encoder, G)
    if decoders is None:
        raise ValueError("encoder does not admit decoders for every receiver")
    return IndexCode(G.n, encoder, decoders)


def local_decoders(W: RepresentingMatrix) -> tuple[BitMatrix, np.ndarray, list[tuple[list[int], list[int]]]]:
    """Row basis of W and, per row a, (basis rows summing to row a, other columns set in row a)."""
    R, piv = gf2.rref(W.matrix)
    dense = W.matrix.to_dense()
    per_row = []
    for a in range(W.matrix.nrows):
        coef = [t for t, p in enumerate(piv) if dense[a, p]]
        others = [b for b in np.flatnonzero(dense[a]).tolist() if b != a]
        per_row.append((coef, others))
    return R, piv, per_row


def build_index_code(M: RepresentingMatrix) -> IndexCode:
    """Encoder = RREF row basis of M; receiver i rebuilds row i of M and cancels its side information."""
    R, _, per_row = local_decoders(M)
    decoders = tuple(Decoder(tuple(coef), tuple(others)) for coef, others in per_row)
    return IndexCode(M.graph.n, R, decoders)


def _bits_matrix(x, n: int) -> np.ndarray:
    X = np.asarray(x, dtype=np.uint8)
    if X.ndim == 1:
        X = X[None, :]
    if X.shape[1] != n:
        raise DimensionMismatch(f"messages of length {X.shape[1]} for n={n}")
    return X & 1


def _runnable_senders(code: AnyCode, G: Graph) -> bool:
    """Every sender must be a vertex whose encoder reads only distinct neighbours."""
    if isinstance(code, IndexCode):
        return code.encoder.ncols == G.n
    return all(
        0 <= s.vertex < G.n and len(set(s.columns)) == len(s.columns) and all(G.has_edge(s.vertex, c) for c in s.columns)
        for s in code.senders
    )


def _readable_broadcast(code: AnyCode, i: int, ell: int) -> range:
    if isinstance(code, TaskBasedCode):
        return code.blocks().get(code.assignment[i], range(0))
    return range(ell)


def _encode(code: AnyCode, X: np.ndarray) -> np.ndarray:
    rows = code.encoder if isinstance(code, IndexCode) else code.broadcast_matrix()
    E = rows.to_dense().astype(np.float64)
    return np.rint(X.astype(np.float64) @ E.T).astype(np.int64) & 1


def simulate_many(code: AnyCode, G: Graph, X) -> np.ndarray:
    """Encode each message row of X and run every receiver's decoder on what it may read.

    Returns int8 recovered bits; -1 marks a receiver whose decoder touches
    data it cannot see (non-side-information, a broadcast bit outside its
    reach). If any sender reads outside its neighbourhood, no broadcast
    exists and every receiver reports -1.
    """
    if code.n != G.n or len(code.decoders) != G.n:
        raise DimensionMismatch("code shape does not match the graph")
    X = _bits_matrix(X, G.n)
    if not _runnable_senders(code, G):
        return np.full(X.shape, -1, dtype=np.int8)
    B = _encode(code, X)
    ell = B.shape[1]
    # decoder i as one coefficient row over [broadcast bits | message bits]
    C = np.zeros((G.n, ell + G.n), dtype=np.float64)
    blind = np.zeros(G.n, dtype=bool)
    for i, dec in enumerate(code.decoders):
        reach = _readable_broadcast(code, i, ell)
        if any(t not in reach for t in dec.broadcast) or any(not G.has_edge(i, h) for h in dec.side):
            blind[i] = True
            continue
        C[i, list(dec.broadcast)] = 1.0
        C[i, [ell + h for h in dec.side]] = 1.0
    Z = np.hstack([B, X]).astype(np.float64)
    # float64 sums of 0/1 terms stay exact far beyond these sizes
    out = (np.rint(Z @ C.T).astype(np.int64) & 1).astype(np.int8)
    out[:, blind] = -1
    return out


def simulate(code: AnyCode, G: Graph, x) -> np.ndarray:
    return simulate_many(code, G, np.asarray(x, dtype=np.uint8)[None, :])[0]


def all_messages(n: int) -> np.ndarray:
    """Every x in GF(2)^n as rows, bit i of the row index -> coordinate i."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def exhaustive_recovery(code: AnyCode, G: Graph) -> bool:
    X = all_messages(G.n)
    return bool((simulate_many(code, G, X) == X).all())


def random_recovery(code: AnyCode, G: Graph, count: int, seed: int) -> bool:
    X = np.random.default_rng(seed).integers(0, 2, size=(count, G.n), dtype=np.uint8)
    return bool((simulate_many(code, G, X) == X).all())


def make_sender(vertex: int, columns: Sequence[int], rows: Iterable[str]) -> Sender:
    return Sender(vertex, tuple(columns), BitMatrix.from_strings(list(rows), len(columns)))
