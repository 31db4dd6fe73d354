"""Constructed codes and single-edit mutations of them, shared by the code tests and acceptance."""

from __future__ import annotations

import dataclasses

import numpy as np

from tbcode.codes import (
    Decoder,
    EmbeddedCode,
    IndexCode,
    Sender,
    TaskBasedCode,
    build_index_code,
    index_code_from_encoder,
)
from tbcode.errors import CapExceeded
from tbcode.gf2 import BitMatrix
from tbcode.graphs import Graph, complement
from tbcode.minrank import minrank_exact, min_linear_code_length
from tbcode.taskbased import tb_exact, tb_upper_dominating, build_from_partition


def _flip(M: BitMatrix, r: int, c: int) -> BitMatrix:
    d = M.to_dense().copy()
    d[r, c] ^= 1
    return BitMatrix.from_dense(d)


def _toggle(values, x):
    s = set(values)
    s.symmetric_difference_update({x})
    return tuple(sorted(s))


def mutate(code, rng: np.random.Generator):
    """One random local edit; the result may or may not still be a valid code."""
    n = code.n
    decs = list(code.decoders)
    i = int(rng.integers(n))
    kind = int(rng.integers(5))
    if kind == 0 and code.length:
        t = int(rng.integers(code.length))
        decs[i] = Decoder(_toggle(decs[i].broadcast, t), decs[i].side)
        return dataclasses.replace(code, decoders=tuple(decs))
    if kind == 1 and n > 1:
        h = int(rng.integers(n))
        decs[i] = Decoder(decs[i].broadcast, _toggle(decs[i].side, h))
        return dataclasses.replace(code, decoders=tuple(decs))
    if isinstance(code, IndexCode):
        if code.length == 0:
            return code
        return dataclasses.replace(code, encoder=_flip(code.encoder, int(rng.integers(code.length)), int(rng.integers(n))))
    senders = list(code.senders)
    if not senders:
        return code
    a = int(rng.integers(len(senders)))
    s = senders[a]
    if kind == 2 and isinstance(code, TaskBasedCode):
        f = list(code.assignment)
        f[i] = int(rng.integers(n))
        return dataclasses.replace(code, assignment=tuple(f))
    if kind == 3:
        extra = [c for c in range(n) if c not in s.columns]
        if extra:
            c = int(rng.choice(extra))
            col = rng.integers(0, 2, size=(s.length, 1), dtype=np.uint8)
            enc = BitMatrix.from_dense(np.hstack([s.encoder.to_dense(), col]))
            senders[a] = Sender(s.vertex, s.columns + (c,), enc)
            return dataclasses.replace(code, senders=tuple(senders))
    if s.length and s.columns:
        senders[a] = Sender(s.vertex, s.columns, _flip(s.encoder, int(rng.integers(s.length)), int(rng.integers(len(s.columns)))))
    return dataclasses.replace(code, senders=tuple(senders))


def constructed_codes(G: Graph) -> list:
    """Every code the package builds for G (skipping constructions whose caps G exceeds)."""
    out = []
    try:
        cert = minrank_exact(G)
        out.append(build_index_code(cert.witness_matrix))
    except CapExceeded:
        cert = None
    if G.n <= 5:
        out.append(index_code_from_encoder(min_linear_code_length(G).encoder, G))
    out.append(index_code_from_encoder(BitMatrix.identity(G.n), G))
    if G.n and not G.isolated_vertices():
        if cert is not None:
            out.append(tb_upper_dominating(G, witness=cert.witness_matrix))
        try:
            best = tb_exact(G, cap=5000)
            W = {s: c.witness_matrix for s, c in best.certificates.items()}
            out.append(build_from_partition(G, best.partition, W))
        except CapExceeded:
            pass
    return out


def as_embedded(code: TaskBasedCode) -> EmbeddedCode:
    return EmbeddedCode(code.n, code.senders, code.decoders)


def named_graphs() -> dict[str, Graph]:
    return {
        "K2": Graph.complete(2),
        "K3": Graph.complete(3),
        "P3": Graph.path(3),
        "C4": Graph.cycle(4),
        "C5": Graph.cycle(5),
        "K5": Graph.complete(5),
        "co-C5": complement(Graph.cycle(5)),
        "star5": Graph.star(5),
        "C6": Graph.cycle(6),
        "E3": Graph.empty(3),
    }
