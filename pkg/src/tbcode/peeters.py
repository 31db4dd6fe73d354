"""The graph family G_k on non-orthogonal vector pairs, and the checks built on it.

A vertex of G_k is a pair (u, v) of k-bit vectors with <u, v> = 1; two
vertices x, y are adjacent iff <u_x, v_y> = <v_x, u_y> = 0.  Vectors are
ints with coordinate i at bit i and are written coordinate 0 first, so
``"100"`` is e_0 for k = 3.  Vertices are ordered lexicographically by
(u, v) in that string form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from . import kernels
from .errors import CapExceeded
from .gf2 import BitMatrix, Subspace
from .graphs import (
    CLIQUE_COUNT_BUDGET,
    Graph,
    complement,
    count_cliques,
    find_clique,
    induced_subgraph,
    is_clique,
)
from .minrank import RepresentingMatrix

K_CAP = 7
PAIR_COUNT_CAP = 6
EXPERIMENT_CAP = 6


def bitstring(x: int, k: int) -> str:
    return "".join("1" if (x >> i) & 1 else "0" for i in range(k))


def parse_bitstring(s: str) -> int:
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def vertex_count(k: int) -> int:
    return (2**k - 1) * 2 ** (k - 1)


def degree(k: int) -> int:
    return (2 ** (k - 1) - 1) * 2 ** (k - 2) if k >= 2 else 0


def second_eigenvalue(k: int) -> float:
    """Closed form 2^(3k/2 - 3) of the second largest |eigenvalue| of G_k, k >= 3."""
    return 2.0 ** (1.5 * k - 3)


@dataclass(frozen=True)
class PeetersGraph:
    k: int
    graph: Graph
    labels: tuple[tuple[int, int], ...]

    def label_strings(self) -> list[tuple[str, str]]:
        return [(bitstring(u, self.k), bitstring(v, self.k)) for u, v in self.labels]


def _labels(k: int) -> list[tuple[int, int]]:
    pairs = [(u, v) for u in range(2**k) for v in range(2**k) if bin(u & v).count("1") & 1]
    pairs.sort(key=lambda p: (bitstring(p[0], k), bitstring(p[1], k)))
    return pairs


@lru_cache(maxsize=8)
def generate(k: int) -> PeetersGraph:
    if not 1 <= k <= K_CAP:
        raise CapExceeded(f"G_k is generated for 1 <= k <= {K_CAP}, got k={k}")
    labels = _labels(k)
    u = np.array([p[0] for p in labels], dtype=np.uint64)
    v = np.array([p[1] for p in labels], dtype=np.uint64)
    adj = kernels.label_adjacency(u, v)
    return PeetersGraph(k, Graph.from_adjacency_matrix(adj), tuple(labels))


def label_matrices(P: PeetersGraph) -> tuple[BitMatrix, BitMatrix]:
    """The k x |V| matrices whose columns are the u- and v-labels."""
    k = P.k
    U = np.array([[(u >> i) & 1 for u, _ in P.labels] for i in range(k)], dtype=np.uint8)
    V = np.array([[(v >> i) & 1 for _, v in P.labels] for i in range(k)], dtype=np.uint8)
    return BitMatrix.from_dense(U), BitMatrix.from_dense(V)


def explicit_representing_matrix(k: int) -> RepresentingMatrix:
    """Entry (x, y) = <u_x, v_y>, i.e. M1^T M2; represents the complement of G_k with rank k."""
    P = generate(k)
    M1, M2 = label_matrices(P)
    M = M1.T @ M2
    return RepresentingMatrix.certify(M, complement(P.graph))


def canonical_independent_set(k: int) -> tuple[int, ...]:
    """The k vertices (e_i, e_i): a clique in G_k, hence independent in its complement."""
    P = generate(k)
    index = {lab: i for i, lab in enumerate(P.labels)}
    S = tuple(sorted(index[(1 << i, 1 << i)] for i in range(k)))
    if not is_clique(P.graph, S):
        raise AssertionError("unit-vector pairs must be pairwise adjacent in G_k")
    return S


def subspace_pair_bound(k: int, ell: int) -> Fraction:
    """(2^(k-l) - 2^l) * 2^(k-l-1), the guaranteed number of pairs with <w1, w2> = 1."""
    return (2 ** (k - ell) - 2**ell) * Fraction(2) ** (k - ell - 1)


def subspace_pair_count(W1: Subspace, W2: Subspace, cap: int = PAIR_COUNT_CAP) -> int:
    """Exact number of (w1, w2) in W1 x W2 with <w1, w2> = 1."""
    if W1.ambient_dim != W2.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    if W1.ambient_dim > cap:
        raise CapExceeded(f"pair counting capped at k <= {cap}")
    return int(kernels.count_odd_pairs(W1.elements(), W2.elements()))


def kr_threshold(n: int, d: int, lam: float, r: int) -> float:
    """((lam+1) n/d) * (1 + n/d + ... + (n/d)^(r-2)); larger vertex subsets must hold a K_r."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if d <= 0:
        raise ValueError("d must be positive")
    q = n / d
    return (lam + 1) * q * sum(q**i for i in range(r - 1))


@dataclass(frozen=True)
class ThresholdReport:
    k: int
    r: int
    c: float | None
    subset_size: int
    trials: int
    successes: int

    def __post_init__(self):
        if self.successes > self.trials:
            raise ValueError("successes cannot exceed trials")

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else float("nan")


def kr_subset_experiment(
    k: int, r: int, subset_size: int, trials: int, seed: int, c: float | None = None
) -> ThresholdReport:
    """Fraction of uniform random vertex subsets of G_k whose induced graph holds a K_r."""
    if k > EXPERIMENT_CAP:
        raise CapExceeded(f"subset experiments capped at k <= {EXPERIMENT_CAP}")
    G = generate(k).graph
    if not 0 <= subset_size <= G.n:
        raise CapExceeded(f"subset size {subset_size} outside [0, {G.n}]")
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(trials):
        U = rng.choice(G.n, size=subset_size, replace=False)
        sub, _ = induced_subgraph(G, U.tolist())
        if find_clique(sub, r) is not None:
            hits += 1
    return ThresholdReport(k, r, c, subset_size, trials, hits)


def empirical_threshold(k: int, r: int, sizes, trials: int, seed: int) -> int | None:
    """Smallest sampled subset size at which every trial contained a K_r."""
    for m in sorted(sizes):
        if kr_subset_experiment(k, r, m, trials, seed).successes == trials:
            return m
    return None


@dataclass(frozen=True)
class CliqueCountReport:
    k: int
    r: int
    subset_size: int
    exact: int
    predicted: float

    @property
    def ratio(self) -> float:
        return self.exact / self.predicted if self.predicted else float("nan")


def predicted_clique_count(m: int, r: int) -> float:
    """m^r / r! * 4^(-(r choose 2)): the count expected at edge density 1/4."""
    return m**r / factorial(r) * 4.0 ** (-comb(r, 2))


def clique_count_experiment(
    k: int, r: int, subset_size: int, seed: int, budget: int = CLIQUE_COUNT_BUDGET
) -> CliqueCountReport:
    if k > EXPERIMENT_CAP:
        raise CapExceeded(f"clique counting experiments capped at k <= {EXPERIMENT_CAP}")
    G = generate(k).graph
    rng = np.random.default_rng(seed)
    U = rng.choice(G.n, size=subset_size, replace=False)
    sub, _ = induced_subgraph(G, U.tolist())
    exact = count_cliques(sub, r, budget)
    return CliqueCountReport(k, r, subset_size, exact, predicted_clique_count(subset_size, r))
