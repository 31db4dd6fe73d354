"""Undirected graphs on bitmask adjacency, plus the exact combinatorial solvers.

Vertex ``j`` is bit ``j`` of a Python int; ``Graph.masks[i]`` is the
neighbourhood of ``i``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded, DimensionMismatch, IsolatedVertexError

INDEPENDENCE_CAP = 40
DOMINATING_CAP = 30
HOMOMORPHISM_CAP = 6
CLIQUE_COUNT_BUDGET = 10**7


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph on vertices ``0..n-1``. Immutable."""

    __slots__ = ("n", "masks", "_dense")

    def __init__(self, n: int, masks: Sequence[int], check: bool = True):
        masks = tuple(int(m) for m in masks)
        if len(masks) != n:
            raise DimensionMismatch(f"{len(masks)} neighbourhoods for {n} vertices")
        if check:
            full = (1 << n) - 1
            for i, m in enumerate(masks):
                if m & ~full:
                    raise ValueError(f"vertex {i} has a neighbour out of range")
                if (m >> i) & 1:
                    raise ValueError(f"self-loop at vertex {i}")
                for j in _bits(m):
                    if not (masks[j] >> i) & 1:
                        raise ValueError(f"asymmetric adjacency between {i} and {j}")
        self.n = n
        self.masks = masks
        self._dense = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        masks = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, masks, check=False)

    @classmethod
    def from_adjacency_matrix(cls, adj) -> "Graph":
        a = np.asarray(adj, dtype=bool)
        n = a.shape[0]
        if a.shape != (n, n) or not np.array_equal(a, a.T) or a.diagonal().any():
            raise ValueError("adjacency must be square, symmetric, and loop-free")
        packed = np.packbits(a, axis=1, bitorder="little")
        g = cls(n, [int.from_bytes(row.tobytes(), "little") for row in packed], check=False)
        g._dense = a.copy()
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << i) for i in range(n)], check=False)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n, check=False)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(_bits(self.masks[i]))

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.neighbors(i) for i in range(self.n))

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.masks[i] >> j) & 1)

    def degree(self, i: int) -> int:
        return _popcount(self.masks[i])

    def degrees(self) -> list[int]:
        return [_popcount(m) for m in self.masks]

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, m in enumerate(self.masks):
            for j in _bits(m >> (i + 1)):
                yield i, i + 1 + j

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def regular_degree(self) -> int | None:
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def isolated_vertices(self) -> list[int]:
        return [i for i, m in enumerate(self.masks) if m == 0]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.masks[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def adjacency_matrix(self) -> np.ndarray:
        """Dense boolean adjacency (cached; treat as read-only)."""
        if self._dense is None:
            nb = max(1, (self.n + 7) // 8)
            raw = b"".join(m.to_bytes(nb, "little") for m in self.masks)
            rows = np.frombuffer(raw, dtype=np.uint8).reshape(self.n, nb)
            dense = np.unpackbits(rows, axis=1, bitorder="little", count=self.n).astype(bool)
            dense.flags.writeable = False
            self._dense = dense
        return self._dense

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def require_no_isolated(G: Graph) -> None:
    iso = G.isolated_vertices()
    if iso:
        raise IsolatedVertexError(f"isolated vertices {iso[:10]}: no embedded index code exists")


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for t, p in enumerate(pairs) if (code >> t) & 1])


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph(G.n, [full & ~m & ~(1 << i) for i, m in enumerate(G.masks)], check=False)


def induced_subgraph(G: Graph, U: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """G[U] relabelled to ``0..|U|-1`` in ascending order; returns (subgraph, new -> old map)."""
    order = tuple(sorted(set(int(u) for u in U)))
    if order and (order[0] < 0 or order[-1] >= G.n):
        raise ValueError(f"vertex set out of range for n={G.n}")
    if len(order) > 256:
        idx = np.array(order, dtype=np.int64)
        return Graph.from_adjacency_matrix(G.adjacency_matrix()[np.ix_(idx, idx)]), order
    pos = {v: k for k, v in enumerate(order)}
    masks = []
    for v in order:
        m = 0
        for w in _bits(G.masks[v]):
            k = pos.get(w)
            if k is not None:
                m |= 1 << k
        masks.append(m)
    return Graph(len(order), masks, check=False), order


def is_independent(G: Graph, S: Iterable[int]) -> bool:
    S = list(S)
    sm = _to_mask(S)
    return all(not (G.masks[v] & sm) for v in S)


def is_clique(G: Graph, S: Iterable[int]) -> bool:
    S = list(S)
    sm = _to_mask(S)
    return all((G.masks[v] | (1 << v)) & sm == sm for v in S)


def is_dominating(G: Graph, D: Iterable[int]) -> bool:
    covered = 0
    for v in D:
        covered |= G.masks[v] | (1 << v)
    return covered == (1 << G.n) - 1


def _color_bound(masks: Sequence[int], P: int) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of P; returns vertices in colour order with colour numbers."""
    order, colors = [], []
    color = 0
    rest = P
    while rest:
        color += 1
        Q = rest
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            rest &= ~low
            Q &= ~low & ~masks[v]
            order.append(v)
            colors.append(color)
    return order, colors


def max_clique(G: Graph) -> tuple[int, ...]:
    """A maximum clique via branch and bound with a greedy-colouring bound."""
    masks = G.masks
    best: list[int] = []

    def expand(R: list[int], P: int) -> None:
        nonlocal best
        order, colors = _color_bound(masks, P)
        for v, c in zip(reversed(order), reversed(colors)):
            if len(R) + c <= len(best):
                return
            newP = P & masks[v]
            if newP:
                expand(R + [v], newP)
            elif len(R) + 1 > len(best):
                best = R + [v]
            P &= ~(1 << v)

    if G.n:
        expand([], (1 << G.n) - 1)
    return tuple(sorted(best))


def independence_number(G: Graph, cap: int = INDEPENDENCE_CAP) -> tuple[int, tuple[int, ...]]:
    """Exact alpha(G) with a maximum independent set as witness."""
    if G.n > cap:
        raise CapExceeded(f"independence number capped at n <= {cap}, got n={G.n}")
    witness = max_clique(complement(G))
    return len(witness), witness


def find_clique(G: Graph, r: int) -> tuple[int, ...] | None:
    """Some ``r`` mutually adjacent vertices, or None."""
    if r < 1:
        raise ValueError("r must be >= 1")
    masks = G.masks

    def search(R: list[int], P: int) -> list[int] | None:
        if len(R) == r:
            return R
        need = r - len(R)
        while P:
            if _popcount(P) < need:
                return None
            low = P & -P
            v = low.bit_length() - 1
            P ^= low
            found = search(R + [v], P & masks[v])
            if found is not None:
                return found
        return None

    hit = search([], (1 << G.n) - 1)
    return tuple(hit) if hit is not None else None


def count_cliques(G: Graph, r: int, budget: int = CLIQUE_COUNT_BUDGET) -> int:
    """Exact number of r-vertex complete subgraphs; raises once ``budget`` search nodes are spent."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1:
        return G.n
    if r == 2:
        return G.num_edges
    masks = G.masks
    later = [m & ~((1 << (v + 1)) - 1) for v, m in enumerate(masks)]
    nodes = 0

    def count(P: int, depth: int) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise CapExceeded(f"clique counting exceeded the work budget of {budget} nodes")
        if depth == r - 1:
            return _popcount(P)
        total = 0
        for v in _bits(P):
            total += count(P & later[v], depth + 1)
        return total

    return sum(count(later[v], 1) for v in range(G.n))


def min_dominating_set(G: Graph, cap: int = DOMINATING_CAP) -> tuple[int, ...]:
    """A minimum dominating set, by branching on the closed neighbourhood of the first undominated vertex."""
    if G.n > cap:
        raise CapExceeded(f"exact dominating set capped at n <= {cap}; use greedy_dominating_set")
    n = G.n
    if n == 0:
        return ()
    full = (1 << n) - 1
    closed = [m | (1 << v) for v, m in enumerate(G.masks)]
    reach = max(_popcount(c) for c in closed)
    best = list(range(n))

    def search(dominated: int, chosen: list[int]) -> None:
        nonlocal best
        if dominated == full:
            if len(chosen) < len(best):
                best = chosen[:]
            return
        missing = _popcount(full & ~dominated)
        if len(chosen) + -(-missing // reach) >= len(best):
            return
        low = ~dominated & -~dominated
        u = low.bit_length() - 1
        options = sorted(_bits(closed[u]), key=lambda v: -_popcount(closed[v] & ~dominated))
        for v in options:
            chosen.append(v)
            search(dominated | closed[v], chosen)
            chosen.pop()

    search(0, [])
    return tuple(sorted(best))


def greedy_dominating_set(G: Graph, seed: Iterable[int] = ()) -> tuple[int, ...]:
    """Maximal independent set grown in ascending vertex order from an independent ``seed``.

    A maximal independent set dominates, so the result is a dominating set
    of size at most alpha(G).
    """
    require_no_isolated(G)
    seed = sorted(set(seed))
    if not is_independent(G, seed):
        raise ValueError("seed set is not independent")
    chosen = _to_mask(seed)
    blocked = chosen
    for v in seed:
        blocked |= G.masks[v]
    for v in range(G.n):
        if not (blocked >> v) & 1:
            chosen |= 1 << v
            blocked |= (1 << v) | G.masks[v]
    return tuple(_bits(chosen))


def find_homomorphism(H: Graph, T: Graph, cap: int = HOMOMORPHISM_CAP) -> tuple[int, ...] | None:
    """An edge-preserving map V(H) -> V(T) as a tuple, or None."""
    if H.n > cap:
        raise CapExceeded(f"homomorphism search capped at |V(H)| <= {cap}")
    order = sorted(range(H.n), key=lambda v: (-H.degree(v), v))
    image = [-1] * H.n
    all_t = (1 << T.n) - 1

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        cand = all_t
        for w in _bits(H.masks[v]):
            if image[w] >= 0:
                cand &= T.masks[image[w]]
        for t in _bits(cand):
            image[v] = t
            if extend(pos + 1):
                return True
        image[v] = -1
        return False

    return tuple(image) if extend(0) else None


def homomorphism_exists(H: Graph, T: Graph, cap: int = HOMOMORPHISM_CAP) -> bool:
    return find_homomorphism(H, T, cap) is not None


def chromatic_number(G: Graph, cap: int = 12) -> tuple[int, tuple[int, ...]]:
    """Exact chromatic number with a colouring (small graphs only)."""
    if G.n > cap:
        raise CapExceeded(f"chromatic number capped at n <= {cap}")
    if G.n == 0:
        return 0, ()
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    for k in range(1, G.n + 1):
        colors = [-1] * G.n

        def assign(pos: int, used: int) -> bool:
            if pos == len(order):
                return True
            v = order[pos]
            banned = {colors[w] for w in _bits(G.masks[v])}
            for c in range(min(used + 1, k)):
                if c not in banned:
                    colors[v] = c
                    if assign(pos + 1, max(used, c + 1)):
                        return True
            colors[v] = -1
            return False

        if assign(0, 0):
            return k, tuple(colors)
    raise AssertionError("unreachable")


def clique_cover(G: Graph, cap: int = 12) -> list[tuple[int, ...]]:
    """A minimum partition of V into cliques."""
    k, colors = chromatic_number(complement(G), cap)
    return [tuple(v for v in range(G.n) if colors[v] == c) for c in range(k)]
