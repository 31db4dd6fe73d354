"""Graph files, label sidecars, code files and JSON reports.

Graph file: header ``n m`` then ``m`` lines ``u v`` (0-based, u < v, sorted),
newline-terminated UTF-8.

Code file (JSON)::

    {"model": "index", "n": 3, "encoder": ["111"],
     "decoders": [{"broadcast": "1", "side": [1, 2]}, ...]}

    {"model": "embedded" | "taskbased", "n": 2,
     "senders": {"0": {"columns": [1], "encoder": ["1"]}, ...},
     "assignment": [1, 0],                  # taskbased only
     "decoders": [{"broadcast": "01", "side": []}, ...]}

``broadcast`` is a 0/1 string over the whole broadcast (blocks in ascending
sender order); ``side`` lists side-information vertices.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .codes import AnyCode, Decoder, EmbeddedCode, IndexCode, Sender, TaskBasedCode
from .errors import GraphFormatError
from .gf2 import BitMatrix
from .graphs import Graph

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "inputs", "results", "witnesses", "seed", "runtime_ms"],
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "results": {"type": "object"},
        "witnesses": {"type": "object"},
        "seed": {"type": ["integer", "null"]},
        "runtime_ms": {"type": "number", "minimum": 0},
    },
}


def format_graph(G: Graph) -> str:
    edges = sorted(G.edges())
    lines = [f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty graph file")
    try:
        n, m = (int(t) for t in lines[0].split())
        edges = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"malformed graph file: {exc}") from None
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise GraphFormatError(f"edge line {e!r} must have two endpoints")
        u, v = e
        if not 0 <= u < v < n:
            raise GraphFormatError(f"edge ({u}, {v}) must satisfy 0 <= u < v < n")
        if e in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})")
        seen.add(e)
    return Graph.from_edges(n, edges)


def write_graph(G: Graph, path) -> None:
    Path(path).write_text(format_graph(G), encoding="utf-8")


def read_graph(path) -> Graph:
    try:
        return parse_graph(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise GraphFormatError(str(exc)) from None


def labels_path(graph_path) -> Path:
    return Path(str(graph_path) + ".labels.json")


def labels_to_json(k: int, labels: list[tuple[str, str]], complement: bool) -> dict:
    return {
        "k": k,
        "complement": complement,
        "labels": {str(i): {"u": u, "v": v} for i, (u, v) in enumerate(labels)},
    }


def read_labels(graph_path) -> dict | None:
    p = labels_path(graph_path)
    if not p.exists():
        return None
    return json.loads(p.read_text(encoding="utf-8"))


def _bitstr(bits, length: int) -> str:
    chosen = set(bits)
    return "".join("1" if t in chosen else "0" for t in range(length))


def _parse_bitstr(s: str, length: int, what: str) -> tuple[int, ...]:
    if len(s) != length or set(s) - {"0", "1"}:
        raise GraphFormatError(f"{what}: expected a 0/1 string of length {length}")
    return tuple(t for t, c in enumerate(s) if c == "1")


def code_to_json(code: AnyCode) -> dict[str, Any]:
    if isinstance(code, IndexCode):
        ell = code.length
        return {
            "model": "index",
            "n": code.n,
            "encoder": code.encoder.to_strings(),
            "decoders": [{"broadcast": _bitstr(d.broadcast, ell), "side": list(d.side)} for d in code.decoders],
        }
    ell = code.length
    out: dict[str, Any] = {
        "model": "taskbased" if isinstance(code, TaskBasedCode) else "embedded",
        "n": code.n,
        "senders": {
            str(s.vertex): {"columns": list(s.columns), "encoder": s.encoder.to_strings()}
            for s in code.senders
            if s.length > 0
        },
    }
    if isinstance(code, TaskBasedCode):
        out["assignment"] = list(code.assignment)
    out["decoders"] = [{"broadcast": _bitstr(d.broadcast, ell), "side": list(d.side)} for d in code.decoders]
    return out


def code_from_json(data: dict[str, Any]) -> AnyCode:
    try:
        model = data["model"]
        n = int(data["n"])
        raw_decoders = data["decoders"]
        if model == "index":
            rows = list(data["encoder"])
            encoder = BitMatrix.from_strings(rows, n) if rows else BitMatrix.zeros(0, n)
            ell = encoder.nrows
        elif model in ("embedded", "taskbased"):
            senders = []
            for key in sorted(data["senders"], key=int):
                entry = data["senders"][key]
                cols = [int(c) for c in entry["columns"]]
                rows = list(entry["encoder"])
                if not rows:
                    raise GraphFormatError(f"sender {key} broadcasts nothing; omit it instead")
                senders.append(Sender(int(key), tuple(cols), BitMatrix.from_strings(rows, len(cols))))
            ell = sum(s.length for s in senders)
        else:
            raise GraphFormatError(f"unknown code model {model!r}")
        decoders = tuple(
            Decoder(_parse_bitstr(d["broadcast"], ell, f"decoder {i}"), tuple(int(h) for h in d["side"]))
            for i, d in enumerate(raw_decoders)
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(f"malformed code file: {exc!r}") from None
    if len(decoders) != n:
        raise GraphFormatError(f"{len(decoders)} decoders for n={n}")
    if model == "index":
        return IndexCode(n, encoder, decoders)
    if model == "embedded":
        return EmbeddedCode(n, tuple(senders), decoders)
    assignment = data.get("assignment")
    if not isinstance(assignment, list) or len(assignment) != n:
        raise GraphFormatError("task-based code needs an assignment with one sender per receiver")
    return TaskBasedCode(n, tuple(senders), decoders, tuple(int(j) for j in assignment))


def write_code(code: AnyCode, path) -> None:
    Path(path).write_text(json.dumps(code_to_json(code), indent=1) + "\n", encoding="utf-8")


def read_code(path) -> AnyCode:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphFormatError(f"cannot read code file: {exc}") from None
    return code_from_json(data)


def make_report(command: str, inputs: dict, results: dict, witnesses: dict, seed: int | None, runtime_ms: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "witnesses": witnesses,
        "seed": seed,
        "runtime_ms": round(runtime_ms, 3),
    }
