"""Centralized versus task-based code lengths on complements of G_k."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .codes import IndexCode, TaskBasedCode, build_index_code, random_recovery, verify_index_code, verify_task_based_code
from .errors import CapExceeded
from .graphs import complement
from .peeters import EXPERIMENT_CAP, canonical_independent_set, explicit_representing_matrix, generate
from .taskbased import tb_upper_dominating

GAP_MESSAGES = 10**4


@dataclass(frozen=True)
class GapRow:
    k: int
    n: int
    centralized: int
    task_based: int
    dominating: int
    ratio: float
    bound: int
    simulated: int


def gap_codes(k: int) -> tuple[IndexCode, TaskBasedCode, tuple[int, ...]]:
    """Centralized code from the rank-k explicit matrix and the dominating-set task-based code."""
    if k < 2:
        raise CapExceeded("k must be >= 2: the complement of G_1 is a single isolated vertex")
    if k > EXPERIMENT_CAP:
        raise CapExceeded(f"gap experiment capped at k <= {EXPERIMENT_CAP}")
    W = explicit_representing_matrix(k)
    D = canonical_independent_set(k)
    return build_index_code(W), tb_upper_dominating(W.graph, D, W), D


def gap_row(k: int, messages: int = GAP_MESSAGES, seed: int = 0) -> GapRow:
    H = complement(generate(k).graph)
    central, tb, D = gap_codes(k)
    for name, verdict in (("centralized", verify_index_code(central, H)), ("task-based", verify_task_based_code(tb, H))):
        if not verdict:
            raise AssertionError(f"{name} code for k={k} failed verification: {verdict.summary()}")
    if messages and not (random_recovery(central, H, messages, seed) and random_recovery(tb, H, messages, seed)):
        raise AssertionError(f"simulated decoding failed for k={k}")
    return GapRow(k, H.n, central.length, tb.length, len(D), tb.length / central.length, k * (k + 1), messages)


def gap_table(k_min: int, k_max: int, messages: int = GAP_MESSAGES, seed: int = 0) -> list[dict]:
    if k_min > k_max:
        raise ValueError("k_min must not exceed k_max")
    return [asdict(gap_row(k, messages, seed)) for k in range(k_min, k_max + 1)]
