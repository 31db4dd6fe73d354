import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given

from corpus import constructed_codes, mutate, named_graphs
from test_graphs import small_graphs
from tbcode import fileio
from tbcode.errors import GraphFormatError
from tbcode.graphs import Graph


@given(small_graphs(min_n=1, max_n=12))
def test_graph_round_trip(G):
    text = fileio.format_graph(G)
    assert text.endswith("\n")
    assert fileio.parse_graph(text) == G
    lines = text.splitlines()[1:]
    assert lines == sorted(lines, key=lambda ln: tuple(map(int, ln.split())))


def test_graph_header_and_example(tmp_path):
    path = tmp_path / "c4.txt"
    fileio.write_graph(Graph.cycle(4), path)
    assert path.read_text() == "4 4\n0 1\n0 3\n1 2\n2 3\n"
    assert fileio.read_graph(path) == Graph.cycle(4)


@pytest.mark.parametrize(
    "text",
    ["", "3 1\n", "3 1\n0 0\n", "3 1\n1 0\n", "3 1\n0 3\n", "3 2\n0 1\n0 1\n", "3 1\n0 1 2\n", "x y\n"],
)
def test_malformed_graphs(text):
    with pytest.raises(GraphFormatError):
        fileio.parse_graph(text)


def test_missing_file(tmp_path):
    with pytest.raises(GraphFormatError):
        fileio.read_graph(tmp_path / "nope.txt")


@pytest.mark.parametrize("name", sorted(named_graphs()))
def test_code_round_trip(name, tmp_path):
    G = named_graphs()[name]
    rng = np.random.default_rng(0)
    for t, code in enumerate(constructed_codes(G)):
        for variant in (code, mutate(code, rng)):
            path = tmp_path / f"{t}.json"
            fileio.write_code(variant, path)
            assert fileio.read_code(path) == variant


@pytest.mark.parametrize(
    "data",
    [
        {"model": "weird", "n": 1, "decoders": [{"broadcast": "", "side": []}]},
        {"model": "index", "n": 2, "encoder": ["1"], "decoders": []},
        {"model": "index", "n": 1, "encoder": ["1"], "decoders": [{"broadcast": "11", "side": []}]},
        {"model": "embedded", "n": 2, "senders": {"0": {"columns": [1], "encoder": []}}, "decoders": [{"broadcast": "", "side": []}] * 2},
        {"model": "taskbased", "n": 2, "senders": {}, "decoders": [{"broadcast": "", "side": []}] * 2},
        {"model": "index", "n": 1},
    ],
)
def test_malformed_codes(data):
    with pytest.raises(GraphFormatError):
        fileio.code_from_json(data)


def test_report_schema():
    rep = fileio.make_report("x", {}, {"v": 1}, {}, 3, 1.23456)
    jsonschema.validate(rep, fileio.REPORT_SCHEMA)
    assert json.loads(json.dumps(rep)) == rep
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"command": "x"}, fileio.REPORT_SCHEMA)
