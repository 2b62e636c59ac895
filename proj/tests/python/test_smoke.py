"""Smoke tests for the python bindings."""

import pytest

import sumcast


def diamond():
    return {
        "nodes": [
            {"id": "s1", "role": "source", "index": 1},
            {"id": "s2", "role": "source", "index": 2},
            {"id": "a", "role": "internal"},
            {"id": "t1", "role": "terminal", "index": 1},
            {"id": "t2", "role": "terminal", "index": 2},
        ],
        "edges": [
            {"id": 0, "tail": "s1", "head": "a"},
            {"id": 1, "tail": "s2", "head": "a"},
            {"id": 2, "tail": "a", "head": "t1"},
            {"id": 3, "tail": "a", "head": "t2"},
            {"id": 4, "tail": "s1", "head": "t2"},
        ],
    }


def test_normalize_roundtrip():
    net = sumcast.normalize(diamond())
    assert {n["id"] for n in net["nodes"]} >= {"s1", "s2", "a", "t1", "t2"}
    assert all(e.get("capacity", 1) == 1 for e in net["edges"])


def test_flow_queries():
    net = diamond()
    assert sumcast.max_flow(net, "s1", "t1") == 1
    assert sumcast.vertex_max_flow(net, "s1", "t2") == 2
    assert sumcast.path_count(net, "s1", "t2") == 2
    paths = sumcast.disjoint_paths(net, "s1", "t2", 2, "edge")
    assert len(paths) == 2


def test_assign_and_verify_greedy():
    out = sumcast.assign(diamond(), strategy="greedy2s", field="prime:3")
    assert out["verification"]["decodable"] is True
    rep = sumcast.verify(out["normalizedNetwork"], out["code"])
    assert rep["decodable"] is True


def test_assign_auto_3s3t():
    net = sumcast.counterexample_3s3t()
    # thin connectivity: the 3s/3t construction must refuse
    with pytest.raises(Exception):
        sumcast.assign(net, strategy="3s3t")


def test_decompose_labels():
    rep = sumcast.decompose(sumcast.counterexample_3s3t())
    assert rep["labels"]["r12"] == [2, 2]
    assert rep["labels"]["s1"] == [1, 3]


def test_reduce_degrees_star():
    net = {
        "nodes": [
            {"id": "s1", "role": "source", "index": 1},
            {"id": "s2", "role": "source", "index": 2},
            {"id": "hub", "role": "internal"},
            {"id": "t1", "role": "terminal", "index": 1},
            {"id": "t2", "role": "terminal", "index": 2},
        ],
        "edges": [
            {"id": 0, "tail": "s1", "head": "hub"},
            {"id": 1, "tail": "s2", "head": "hub"},
            {"id": 2, "tail": "hub", "head": "t1"},
            {"id": 3, "tail": "hub", "head": "t2"},
            {"id": 4, "tail": "s1", "head": "t1"},
        ],
    }
    out = sumcast.reduce_degrees(net)
    reduced = out["reduced"]
    degrees = {}
    for e in reduced["edges"]:
        degrees[e["tail"]] = degrees.get(e["tail"], 0) + 1
        degrees[e["head"]] = degrees.get(e["head"], 0) + 1
    internal = {n["id"] for n in reduced["nodes"] if n["role"] == "internal"}
    assert all(degrees.get(v, 0) <= 3 for v in internal)


def test_oracles():
    fn = sumcast.sum_functionality("prime:2")
    assert fn["functional"] is False
    search = sumcast.exhaustive_code_search(sumcast.counterexample_3s3t(), "prime:2")
    assert search["feasible"] is False
    vec = sumcast.vector_2s2t("prime:2")
    assert vec["feasible"] is False
    relaxed = sumcast.vector_2s2t("prime:2", both_terminals=False)
    assert relaxed["feasible"] is True


def test_random_dag_pipeline():
    net = sumcast.random_connected_dag(7, 2, 3)
    out = sumcast.assign(net, strategy="auto", field="gf2m:3")
    assert out["verification"]["decodable"] is True
