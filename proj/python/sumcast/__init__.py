"""Network codes for multicasting the sum of sources over a DAG.

Thin JSON-dict wrappers around the C++ core.
"""

import json as _json

from . import _sumcast as _core

counterexample_3s3t_json = _core.counterexample_3s3t_json

__all__ = [
    "normalize",
    "max_flow",
    "vertex_max_flow",
    "path_count",
    "disjoint_paths",
    "reduce_degrees",
    "decompose",
    "assign",
    "verify",
    "sum_functionality",
    "exhaustive_code_search",
    "vector_2s2t",
    "counterexample_3s3t",
    "random_connected_dag",
]


def _dumps(net):
    return net if isinstance(net, str) else _json.dumps(net)


def normalize(net):
    return _json.loads(_core.normalize_json(_dumps(net)))


def max_flow(net, s, t):
    return _core.max_flow(_dumps(net), s, t)


def vertex_max_flow(net, s, t):
    return _core.vertex_max_flow(_dumps(net), s, t)


def path_count(net, u, v):
    return _core.path_count(_dumps(net), u, v)


def disjoint_paths(net, s, t, k, mode="edge"):
    return _core.disjoint_paths(_dumps(net), s, t, k, mode)


def reduce_degrees(net):
    return _json.loads(_core.reduce_degrees_json(_dumps(net)))


def decompose(net):
    return _json.loads(_core.decompose_json(_dumps(net)))


def assign(net, strategy="auto", field="prime:3", seed=0, retries=32):
    return _json.loads(_core.assign_json(_dumps(net), strategy, field, seed, retries))


def verify(net, code):
    return _json.loads(_core.verify_json(_dumps(net), _dumps(code)))


def sum_functionality(field):
    return _json.loads(_core.sum_functionality(field))


def exhaustive_code_search(net, field):
    return _json.loads(_core.exhaustive_code_search(_dumps(net), field))


def vector_2s2t(field, both_terminals=True):
    return _json.loads(_core.vector_2s2t(field, both_terminals))


def counterexample_3s3t():
    return _json.loads(counterexample_3s3t_json())


def random_connected_dag(seed, nsources, nterminals, max_internal=20):
    return _json.loads(_core.random_connected_dag_json(seed, nsources, nterminals, max_internal))
