"""Neighbourhood partitions, exact tb(G), the dominating-set construction, and beta_1.

A neighbourhood partition is stored as an assignment f: V -> V with
f(v) in N(v); the blocks are the fibres N_i = f^{-1}(i) and the senders are
the image of f.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Iterator, Mapping, Sequence

from .codes import Decoder, Sender, TaskBasedCode, local_decoders, verify_task_based_code
from .errors import CapExceeded, PatternViolation
from .graphs import (
    Graph,
    _bits,
    greedy_dominating_set,
    induced_subgraph,
    is_dominating,
    require_no_isolated,
)
from .minrank import MinrankCertificate, RepresentingMatrix, minrank_exact, restricted_witness

PARTITION_CAP = 10**7
BETA1_FREE_CAP = 3


@dataclass(frozen=True)
class NeighborhoodPartition:
    assignment: tuple[int, ...]

    @property
    def senders(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.assignment)))

    def blocks(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for v, s in enumerate(self.assignment):
            out.setdefault(s, []).append(v)
        return {s: tuple(out[s]) for s in sorted(out)}

    def validate(self, G: Graph) -> None:
        if len(self.assignment) != G.n:
            raise ValueError("assignment must cover every vertex")
        for v, s in enumerate(self.assignment):
            if not G.has_edge(v, s):
                raise ValueError(f"vertex {v} assigned to non-neighbour {s}")

    @classmethod
    def from_blocks(cls, n: int, blocks: Mapping[int, Sequence[int]]) -> "NeighborhoodPartition":
        f = [-1] * n
        for s, block in blocks.items():
            for v in block:
                if f[v] != -1:
                    raise ValueError(f"vertex {v} lies in two blocks")
                f[v] = s
        if -1 in f:
            raise ValueError(f"vertex {f.index(-1)} lies in no block")
        return cls(tuple(f))


def partition_count(G: Graph) -> int:
    return prod(G.degrees())


def enumerate_partitions(G: Graph, cap: int = PARTITION_CAP) -> Iterator[NeighborhoodPartition]:
    require_no_isolated(G)
    if partition_count(G) > cap:
        raise CapExceeded(f"{partition_count(G)} sender assignments exceed the cap of {cap}")
    for f in product(*(G.neighbors(v) for v in range(G.n))):
        yield NeighborhoodPartition(f)


def _block_masks(f: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for v, s in enumerate(f):
        out[s] = out.get(s, 0) | (1 << v)
    return out


@dataclass(frozen=True)
class TbCertificate:
    value: int
    partition: NeighborhoodPartition
    certificates: dict[int, MinrankCertificate]

    def __post_init__(self):
        if sum(c.value for c in self.certificates.values()) != self.value:
            raise ValueError("block minranks do not add up to the certified value")


def tb_exact(G: Graph, cap: int = PARTITION_CAP) -> TbCertificate:
    """Minimum over all neighbourhood partitions of the sum of block minranks."""
    memo: dict[int, MinrankCertificate] = {}

    def cost(mask: int) -> int:
        cert = memo.get(mask)
        if cert is None:
            cert = memo[mask] = minrank_exact(induced_subgraph(G, _bits(mask))[0])
        return cert.value

    best, best_f = None, None
    for P in enumerate_partitions(G, cap):
        total = 0
        for mask in _block_masks(P.assignment).values():
            total += cost(mask)
            if best is not None and total >= best:
                break
        else:
            if best is None or total < best:
                best, best_f = total, P
    masks = _block_masks(best_f.assignment)
    return TbCertificate(best, best_f, {s: memo[masks[s]] for s in sorted(masks)})


def dominating_partition(G: Graph, D: Sequence[int]) -> NeighborhoodPartition:
    """Blocks N(i_j) minus earlier neighbourhoods, then uncovered D-vertices grouped by their lowest neighbour."""
    require_no_isolated(G)
    if not is_dominating(G, D):
        raise ValueError("D is not a dominating set")
    blocks: dict[int, list[int]] = {}
    covered = 0
    for i in D:
        fresh = G.masks[i] & ~covered
        if fresh:
            blocks[i] = list(_bits(fresh))
        covered |= G.masks[i]
    dmask = sum(1 << i for i in set(D))
    for v in range(G.n):
        if (covered >> v) & 1:
            continue
        # every neighbour of v lies outside D, else v would be covered
        j = next(_bits(G.masks[v] & ~dmask))
        blocks.setdefault(j, []).append(v)
    return NeighborhoodPartition.from_blocks(G.n, blocks)


def build_from_partition(
    G: Graph, P: NeighborhoodPartition, witnesses: Mapping[int, RepresentingMatrix]
) -> TaskBasedCode:
    """Sender i broadcasts a row basis of its block witness; receivers rebuild their own row."""
    P.validate(G)
    blocks = P.blocks()
    senders, decoders = [], [None] * G.n
    offset = 0
    for s, block in blocks.items():
        W = witnesses[s]
        sub, _ = induced_subgraph(G, block)
        if W.graph != sub:
            raise PatternViolation(f"witness for sender {s} does not represent G[N_{s}]")
        R, _, per_row = local_decoders(W)
        senders.append(Sender(s, tuple(block), R))
        for a, (coef, others) in enumerate(per_row):
            decoders[block[a]] = Decoder(tuple(offset + t for t in coef), tuple(block[b] for b in others))
        offset += R.nrows
    return TaskBasedCode(G.n, tuple(senders), tuple(decoders), P.assignment)


def tb_upper_dominating(
    G: Graph, D: Sequence[int] | None = None, witness: RepresentingMatrix | None = None
) -> TaskBasedCode:
    """Task-based code of length at most |D| * (rank(witness) + 1).

    ``D`` defaults to the greedy maximal independent set; ``witness`` (a
    representing matrix of G) defaults to an exact minrank witness, and every
    block uses its principal submatrix.
    """
    require_no_isolated(G)
    if D is None:
        D = greedy_dominating_set(G)
    if witness is None:
        witness = minrank_exact(G).witness_matrix
    P = dominating_partition(G, D)
    witnesses = {s: restricted_witness(witness, block) for s, block in P.blocks().items()}
    code = build_from_partition(G, P, witnesses)
    if code.length > len(D) * (witness.rank + 1):
        raise AssertionError("construction exceeded |D| * (rank + 1)")
    if not verify_task_based_code(code, G):
        raise AssertionError("constructed task-based code failed verification")
    return code


def _confusable(G: Graph, x: int, y: int) -> bool:
    diff = x ^ y
    return any((diff >> i) & 1 and not (diff & G.masks[i]) for i in range(G.n))


def beta1_at_most(G: Graph, ell: int) -> bool:
    """Is there any map E: {0,1}^n -> {0,1}^ell under which no receiver confuses two messages?

    Messages are assigned codewords in order with E(0) = 0, and a message may
    only open the next unused codeword, which removes relabelling symmetry.
    """
    N = 1 << G.n
    colors = 1 << ell
    conflicts = [[y for y in range(x) if _confusable(G, x, y)] for x in range(N)]
    E = [0] * N

    def assign(x: int, used: int) -> bool:
        if x == N:
            return True
        banned = {E[y] for y in conflicts[x]}
        for c in range(min(used + 1, colors)):
            if c not in banned:
                E[x] = c
                if assign(x + 1, max(used, c + 1)):
                    return True
        return False

    return assign(1, 1)


def beta1_exact_micro(G: Graph) -> int:
    """Exact beta_1: n <= 3 fully; n = 4 only when beta_1 <= 2."""
    if G.n > 4:
        raise CapExceeded("beta_1 search is limited to n <= 4")
    top = G.n if G.n <= BETA1_FREE_CAP else 2
    for ell in range(top + 1):
        if beta1_at_most(G, ell):
            return ell
    raise CapExceeded("beta_1 exceeds 2 on a 4-vertex graph; that search is out of range")


def tb_nonlinear_micro(G: Graph, cap: int = PARTITION_CAP) -> int:
    """Minimum over neighbourhood partitions of the sum of block beta_1 values (blocks of size <= 3)."""
    memo: dict[int, int] = {}
    best = None
    for P in enumerate_partitions(G, cap):
        total = 0
        for mask in _block_masks(P.assignment).values():
            if mask not in memo:
                if bin(mask).count("1") > BETA1_FREE_CAP:
                    raise CapExceeded("a partition block has more than 3 vertices")
                memo[mask] = beta1_exact_micro(induced_subgraph(G, _bits(mask))[0])
            total += memo[mask]
        if best is None or total < best:
            best = total
    return best
