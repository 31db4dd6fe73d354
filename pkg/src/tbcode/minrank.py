"""Representing matrices and minrank over GF(2).

Three independent routes to the exact value:

* ``minrank_pattern_search``: minimum rank over every completion of the fit pattern.
* ``min_linear_code_length``: shortest encoder whose row space lets every receiver decode.
* ``minrank_via_homomorphism``: smallest k with a homomorphism from the complement into G_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from . import gf2, kernels
from .errors import CapExceeded, DimensionMismatch, PatternViolation
from .gf2 import BitMatrix
from .graphs import (
    Graph,
    clique_cover,
    complement,
    homomorphism_exists,
    independence_number,
    induced_subgraph,
    is_independent,
)

PATTERN_CAP = 26
ENCODER_CAP = 5
HOMOMORPHISM_CAP = 4


def represents(M: BitMatrix, G: Graph) -> bool:
    """Unit diagonal and zeros at every non-edge; entries on edges are free."""
    if M.shape != (G.n, G.n):
        raise DimensionMismatch(f"{M.shape} matrix against a graph on {G.n} vertices")
    for i, row in enumerate(M.int_rows()):
        allowed = G.masks[i] | (1 << i)
        if not (row >> i) & 1 or row & ~allowed:
            return False
    return True


@dataclass(frozen=True)
class RepresentingMatrix:
    graph: Graph
    matrix: BitMatrix
    rank: int

    @classmethod
    def certify(cls, M: BitMatrix, G: Graph) -> "RepresentingMatrix":
        if not represents(M, G):
            raise PatternViolation("matrix does not represent the graph")
        return cls(G, M, gf2.rank(M))

    def __post_init__(self):
        if self.matrix.shape != (self.graph.n, self.graph.n):
            raise DimensionMismatch("representing matrix must be n x n")


@dataclass(frozen=True)
class MinrankCertificate:
    value: int
    witness_matrix: RepresentingMatrix
    lower_bound_witness: tuple[int, ...]

    def __post_init__(self):
        if self.witness_matrix.rank != self.value:
            raise ValueError("witness rank differs from the certified value")
        if len(self.lower_bound_witness) > self.value:
            raise ValueError("independent set larger than the claimed minrank")
        if not is_independent(self.witness_matrix.graph, self.lower_bound_witness):
            raise ValueError("lower-bound witness is not independent")


def minrank_pattern_search(G: Graph, cap: int = PATTERN_CAP) -> MinrankCertificate:
    """Exact minrank by sweeping all 2^(2|E|) completions in Gray-code order.

    Each undirected edge contributes the two entries (i, j) and (j, i) as
    independent free bits.  The sweep stops once the rank meets alpha(G).
    """
    free = [(i, j) for i, j in G.edges()] + [(j, i) for i, j in G.edges()]
    if len(free) > cap:
        raise CapExceeded(f"pattern search needs 2|E| <= {cap}, got {len(free)}")
    if G.n > 64:
        raise CapExceeded("pattern search works on graphs with at most 64 vertices")
    alpha, indep = independence_number(G)
    base = np.array([1 << i for i in range(G.n)], dtype=np.uint64)
    free_row = np.array([i for i, _ in free], dtype=np.int64)
    free_col = np.array([j for _, j in free], dtype=np.int64)
    best, code = kernels.min_rank_completion(base, free_row, free_col, alpha)
    rows = [1 << i for i in range(G.n)]
    for t, (i, j) in enumerate(free):
        if (code >> t) & 1:
            rows[i] |= 1 << j
    witness = RepresentingMatrix.certify(BitMatrix.from_int_rows(rows, G.n), G)
    if witness.rank != best:
        raise AssertionError("kernel rank disagrees with the rebuilt witness")
    return MinrankCertificate(int(best), witness, indep)


def clique_cover_matrix(G: Graph, cliques: Iterable[Iterable[int]]) -> BitMatrix:
    """Block matrix with ones exactly inside each clique; its rank is the number of cliques."""
    rows = [0] * G.n
    for C in cliques:
        m = 0
        for v in C:
            m |= 1 << v
        for v in C:
            rows[v] = m
    return BitMatrix.from_int_rows(rows, G.n)


def minrank_exact(G: Graph, cap: int = PATTERN_CAP) -> MinrankCertificate:
    """Exact minrank: settled by alpha = clique cover when they meet, else by pattern search."""
    alpha, indep = independence_number(G)
    if G.n <= 12:
        cover = clique_cover(G)
        if len(cover) == alpha:
            witness = RepresentingMatrix.certify(clique_cover_matrix(G, cover), G)
            return MinrankCertificate(alpha, witness, indep)
    return minrank_pattern_search(G, cap)


class LinearCodeSearch(NamedTuple):
    length: int
    encoder: BitMatrix


def decodable_receivers(rows: BitMatrix, G: Graph) -> np.ndarray:
    """Boolean per receiver i: e_i in rowspan(rows) + span{e_h : h in N(i)}."""
    if rows.ncols != G.n:
        raise DimensionMismatch(f"broadcast rows have {rows.ncols} columns, graph has {G.n} vertices")
    n, w = G.n, gf2.n_words(G.n)
    nbr = BitMatrix.from_int_rows(G.masks, n).words
    m = rows.nrows
    stack = np.empty((n, m + 1, w), dtype=np.uint64)
    stack[:, :m, :] = rows.words[None, :, :] & ~nbr[:, None, :]
    stack[:, m, :] = BitMatrix.identity(n).words
    return kernels.last_row_in_span(stack)


@lru_cache(maxsize=None)
def _subspace_bases(n: int, d: int) -> np.ndarray:
    return gf2.subspace_basis_array(n, d)


def min_linear_code_length(G: Graph, cap: int = ENCODER_CAP) -> LinearCodeSearch:
    """Shortest linear index code, found by sweeping candidate encoder row spaces by dimension."""
    if G.n > cap:
        raise CapExceeded(f"encoder search capped at n <= {cap}")
    n = G.n
    nbr = np.array(G.masks, dtype=np.uint64)
    for ell in range(n + 1):
        bases = _subspace_bases(n, ell)
        S = bases.shape[0]
        stack = np.empty((S, n, ell + 1, 1), dtype=np.uint64)
        stack[:, :, :ell, 0] = bases[:, None, :] & ~nbr[None, :, None]
        stack[:, :, ell, 0] = np.array([1 << i for i in range(n)], dtype=np.uint64)[None, :]
        ok = kernels.last_row_in_span(stack.reshape(S * n, ell + 1, 1)).reshape(S, n).all(axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            return LinearCodeSearch(ell, BitMatrix.from_int_rows(bases[hits[0]].tolist(), n))
    raise AssertionError("the full space always decodes")


def minrank_via_homomorphism(G: Graph, cap: int = HOMOMORPHISM_CAP) -> int:
    """Smallest k admitting a homomorphism from the complement of G into G_k."""
    from .peeters import generate

    if G.n > cap:
        raise CapExceeded(f"homomorphism characterisation capped at n <= {cap}")
    if G.n == 0:
        return 0
    H = complement(G)
    for k in range(1, G.n + 1):
        if homomorphism_exists(H, generate(k).graph):
            return k
    raise AssertionError("minrank never exceeds n")


def restricted_witness(M: RepresentingMatrix, U: Iterable[int]) -> RepresentingMatrix:
    """Principal submatrix on U; it represents G[U] and its rank is at most M.rank."""
    sub, order = induced_subgraph(M.graph, U)
    idx = list(order)
    S = M.matrix.submatrix(idx, idx)
    if not represents(S, sub):
        raise AssertionError("principal submatrix lost the fit pattern")
    return RepresentingMatrix(sub, S, gf2.rank(S))
