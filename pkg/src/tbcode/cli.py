"""Command-line entry point: ``tbcode <command> ...``.

Exit status: 0 on success, 1 when a verification or oracle check fails,
2 on malformed input or an exceeded cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import kernels
from .codes import (
    EmbeddedCode,
    IndexCode,
    TaskBasedCode,
    build_index_code,
    verify_embedded_code,
    verify_index_code,
    verify_task_based_code,
)
from .errors import CapExceeded, TbcodeError
from .experiments import GAP_MESSAGES, gap_table
from .fileio import code_to_json, labels_to_json, make_report, read_code, read_graph, read_labels, write_code, write_graph
from .gf2 import BitMatrix
from .graphs import DOMINATING_CAP, complement, greedy_dominating_set, min_dominating_set
from .minrank import (
    ENCODER_CAP,
    HOMOMORPHISM_CAP,
    PATTERN_CAP,
    RepresentingMatrix,
    min_linear_code_length,
    minrank_exact,
    minrank_pattern_search,
    minrank_via_homomorphism,
)
from .peeters import K_CAP, generate, parse_bitstring, second_eigenvalue
from .spectral import DEFAULT_TOL, ndl_certify
from .taskbased import PARTITION_CAP, tb_exact, tb_upper_dominating

THREADS_ENV = "TBCODE_THREADS"


class CheckFailed(Exception):
    """Raised by a command whose result must make the process exit with status 1."""


def _set_threads(threads: int | None) -> None:
    if threads is None or kernels.BACKEND != "numba":
        return
    import warnings

    import numba

    with warnings.catch_warnings():
        # numba probes every threading layer on first use and warns about unusable ones
        warnings.simplefilter("ignore", numba.NumbaWarning)
        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))


def _matrix_strings(M: BitMatrix) -> list[str]:
    return M.to_strings()


def _labels_witness(graph_path, G) -> tuple[RepresentingMatrix | None, tuple[int, ...] | None]:
    """Representing matrix <u_x, v_y> and the (e_i, e_i) vertices, when a complement sidecar is present."""
    meta = read_labels(graph_path)
    if not meta or not meta.get("complement"):
        return None, None
    k = int(meta["k"])
    labels = [(parse_bitstring(meta["labels"][str(i)]["u"]), parse_bitstring(meta["labels"][str(i)]["v"])) for i in range(G.n)]
    rows = [[bin(u & v).count("1") & 1 for _, v in labels] for u, _ in labels]
    W = RepresentingMatrix.certify(BitMatrix.from_dense(rows), G)
    index = {lab: i for i, lab in enumerate(labels)}
    D = tuple(sorted(index[(1 << i, 1 << i)] for i in range(k) if (1 << i, 1 << i) in index))
    return W, D


def cmd_gen(args) -> tuple[dict, dict, dict]:
    if not 1 <= args.k <= K_CAP:
        raise CapExceeded(f"k must lie in [1, {K_CAP}]")
    P = generate(args.k)
    G = complement(P.graph) if args.complement else P.graph
    write_graph(G, args.out)
    Path(str(args.out) + ".labels.json").write_text(
        json.dumps(labels_to_json(args.k, P.label_strings(), args.complement)) + "\n", encoding="utf-8"
    )
    inputs = {"k": args.k, "complement": args.complement, "out": str(args.out)}
    return inputs, {"n": G.n, "m": G.num_edges}, {}


def cmd_minrank(args) -> tuple[dict, dict, dict]:
    G = read_graph(args.graph)
    methods = ["pattern", "encoder", "hom"] if args.method == "all" else [args.method]
    values, witnesses, skipped = {}, {}, {}
    caps = {"pattern": 2 * G.num_edges <= args.pattern_cap, "encoder": G.n <= args.encoder_cap, "hom": G.n <= args.hom_cap}
    if args.method == "all":
        # "all" compares every oracle whose cap admits the graph
        skipped = {m: "cap exceeded" for m in methods if not caps[m]}
        methods = [m for m in methods if caps[m]]
        if not methods:
            raise CapExceeded("no minrank oracle admits this graph under the current caps")
    for m in methods:
        if m == "pattern":
            cert = minrank_pattern_search(G, args.pattern_cap)
            values[m] = cert.value
            witnesses["matrix"] = _matrix_strings(cert.witness_matrix.matrix)
            witnesses["independent_set"] = list(cert.lower_bound_witness)
        elif m == "encoder":
            found = min_linear_code_length(G, args.encoder_cap)
            values[m] = found.length
            witnesses["encoder"] = _matrix_strings(found.encoder)
        else:
            values[m] = minrank_via_homomorphism(G, args.hom_cap)
    agree = len(set(values.values())) == 1
    results = {"values": values, "agree": agree, "minrank": next(iter(values.values())), "skipped": skipped}
    if not agree:
        raise CheckFailed(({"graph": str(args.graph), "method": args.method}, results, witnesses))
    return {"graph": str(args.graph), "method": args.method}, results, witnesses


def cmd_tb(args) -> tuple[dict, dict, dict]:
    G = read_graph(args.graph)
    inputs = {"graph": str(args.graph), "mode": args.mode}
    if args.mode == "exact":
        cert = tb_exact(G, args.partition_cap)
        blocks = cert.partition.blocks()
        witnesses = {
            "assignment": list(cert.partition.assignment),
            "blocks": {
                str(s): {"vertices": list(blocks[s]), "matrix": _matrix_strings(c.witness_matrix.matrix)}
                for s, c in cert.certificates.items()
            },
        }
        return inputs, {"tb": cert.value}, witnesses
    W, D = _labels_witness(args.graph, G)
    if W is None:
        W = minrank_exact(G, args.pattern_cap).witness_matrix
    if args.dominating == "min":
        D = min_dominating_set(G, args.dominating_cap)
    elif not D:
        D = greedy_dominating_set(G)
    code = tb_upper_dominating(G, D, W)
    central = build_index_code(W)
    verdict = verify_task_based_code(code, G)
    central_ok = verify_index_code(central, G)
    if args.code_out:
        write_code(code, args.code_out)
        inputs["code_out"] = str(args.code_out)
    results = {
        "length": code.length,
        "centralized_length": central.length,
        "dominating_set": list(D),
        "bound": len(D) * (W.rank + 1),
        "verified": verdict.ok and central_ok.ok,
    }
    witnesses = {"representing_matrix": _matrix_strings(W.matrix), "code": code_to_json(code)}
    if not results["verified"]:
        raise CheckFailed((inputs, results, witnesses))
    return inputs, results, witnesses


_VERIFIERS = {
    "index": (IndexCode, verify_index_code),
    "embedded": (EmbeddedCode, verify_embedded_code),
    "taskbased": (TaskBasedCode, verify_task_based_code),
}


def cmd_verify(args) -> tuple[dict, dict, dict]:
    G = read_graph(args.graph)
    code = read_code(args.code)
    inputs = {"code": str(args.code), "graph": str(args.graph), "model": args.model}
    kind, verifier = _VERIFIERS[args.model]
    # a task-based code is also an embedded code; an index code is neither
    if not isinstance(code, kind):
        raise TbcodeError(f"code file holds a {code_to_json(code)['model']} code, not {args.model}")
    if code.n != G.n:
        raise TbcodeError(f"code has {code.n} receivers, graph has {G.n} vertices")
    verdict = verifier(code, G)
    results = {"length": code.length, **verdict.summary()}
    if not verdict:
        raise CheckFailed((inputs, results, {}))
    return inputs, results, {}


def cmd_experiment_gap(args) -> tuple[dict, dict, dict]:
    if args.k_max > 6:
        raise CapExceeded("experiment-gap is capped at k_max <= 6")
    rows = gap_table(args.k_min, args.k_max, args.messages, args.seed)
    inputs = {"k_min": args.k_min, "k_max": args.k_max, "messages": args.messages}
    return inputs, {"rows": rows}, {}


def cmd_spectrum(args) -> tuple[dict, dict, dict]:
    G = read_graph(args.graph)
    report = ndl_certify(G, args.tol)
    inputs = {"graph": str(args.graph), "expect_peeters": args.expect_peeters}
    results = report.to_dict()
    if args.expect_peeters is not None:
        target = second_eigenvalue(args.expect_peeters)
        rel = abs(report.lambda_second_abs - target) / target
        results.update(expected=target, relative_error=rel, match=rel <= args.rel_tol)
        if rel > args.rel_tol:
            raise CheckFailed((inputs, results, {}))
    return inputs, results, {}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tbcode", description="Index codes, task-based codes and the G_k family over GF(2).")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help=f"worker bound (default: ${THREADS_ENV})")
    p.add_argument("--report", type=Path, default=None, help="also write the JSON report here")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write G_k (or its complement) and a label sidecar")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--complement", action="store_true")
    g.add_argument("--out", type=Path, required=True)
    g.set_defaults(func=cmd_gen)

    m = sub.add_parser("minrank", help="minrank by one oracle or all three")
    m.add_argument("--graph", type=Path, required=True)
    m.add_argument("--method", choices=["pattern", "encoder", "hom", "all"], default="pattern")
    m.add_argument("--pattern-cap", type=int, default=PATTERN_CAP)
    m.add_argument("--encoder-cap", type=int, default=ENCODER_CAP)
    m.add_argument("--hom-cap", type=int, default=HOMOMORPHISM_CAP)
    m.set_defaults(func=cmd_minrank)

    t = sub.add_parser("tb", help="exact tb(G) or a constructed task-based code")
    t.add_argument("--graph", type=Path, required=True)
    t.add_argument("--mode", choices=["exact", "upper"], default="exact")
    t.add_argument("--code-out", type=Path, default=None)
    t.add_argument("--dominating", choices=["greedy", "min"], default="greedy")
    t.add_argument("--partition-cap", type=int, default=PARTITION_CAP)
    t.add_argument("--pattern-cap", type=int, default=PATTERN_CAP)
    t.add_argument("--dominating-cap", type=int, default=DOMINATING_CAP)
    t.set_defaults(func=cmd_tb)

    v = sub.add_parser("verify", help="check a code file against a graph")
    v.add_argument("--code", type=Path, required=True)
    v.add_argument("--graph", type=Path, required=True)
    v.add_argument("--model", choices=list(_VERIFIERS), required=True)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("experiment-gap", help="centralized vs task-based lengths on complements of G_k")
    e.add_argument("--k-min", type=int, default=3)
    e.add_argument("--k-max", type=int, default=5)
    e.add_argument("--messages", type=int, default=GAP_MESSAGES, help="random messages simulated per code")
    e.set_defaults(func=cmd_experiment_gap)

    s = sub.add_parser("spectrum", help="(n, d, lambda) report of a regular graph")
    s.add_argument("--graph", type=Path, required=True)
    s.add_argument("--expect-peeters", type=int, default=None, metavar="K")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--rel-tol", type=float, default=1e-6)
    s.set_defaults(func=cmd_spectrum)
    return p


def _emit(report: dict, path: Path | None) -> None:
    text = json.dumps(report, indent=1)
    print(text)
    if path is not None:
        path.write_text(text + "\n", encoding="utf-8")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    threads = args.threads if args.threads is not None else os.environ.get(THREADS_ENV)
    _set_threads(int(threads) if threads else None)
    start = time.perf_counter()
    status = 0
    try:
        inputs, results, witnesses = args.func(args)
    except CheckFailed as exc:
        inputs, results, witnesses = exc.args[0]
        status = 1
    except AssertionError as exc:
        print(f"tbcode {args.command}: check failed: {exc}", file=sys.stderr)
        return 1
    except (TbcodeError, ValueError, OSError) as exc:
        print(f"tbcode {args.command}: {exc}", file=sys.stderr)
        return 2
    elapsed = (time.perf_counter() - start) * 1e3
    _emit(make_report(args.command, inputs, results, witnesses, args.seed, elapsed), args.report)
    return status


if __name__ == "__main__":
    sys.exit(main())
