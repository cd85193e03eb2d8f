"""Min-cut solver against brute-force subset enumeration."""

import math
import random

import pytest

import oracles
from rpqres import flow
from rpqres.errors import InputError


def network_of(edges, source="s", target="t"):
    net = flow.FlowNetwork(source, target)
    for tail, head, cap in edges:
        net.add_edge(tail, head, cap)
    return net


def test_single_edge():
    net = network_of([("s", "t", 3)])
    cut = flow.min_cut(net)
    assert cut.value == 3
    assert cut.edge_indices == (0,)


def test_disconnected_is_zero():
    net = network_of([("s", "a", 5)])
    cut = flow.min_cut(net)
    assert cut.value == 0
    assert cut.edge_indices == ()


def test_infinite_path_has_no_cut():
    net = network_of([("s", "a", flow.INF), ("a", "t", flow.INF)])
    cut = flow.min_cut(net)
    assert math.isinf(cut.value)
    assert cut.edge_indices == ()


def test_infinite_edge_is_never_cut():
    net = network_of([("s", "a", flow.INF), ("a", "t", 2), ("s", "t", 3)])
    cut = flow.min_cut(net)
    assert cut.value == 5
    assert set(cut.edge_indices) == {1, 2}


def test_parallel_edges_add_up():
    net = network_of([("s", "t", 1), ("s", "t", 2)])
    assert flow.min_cut(net).value == 3


def test_diamond():
    net = network_of(
        [
            ("s", "a", 3),
            ("s", "b", 2),
            ("a", "t", 2),
            ("b", "t", 3),
            ("a", "b", 1),
        ]
    )
    # 2 along a-t, 2 along b-t fed by s-b, 1 along a-b-t
    assert flow.min_cut(net).value == 5


def test_capacity_validation():
    net = flow.FlowNetwork("s", "t")
    with pytest.raises(InputError):
        net.add_edge("s", "t", -1)
    with pytest.raises(InputError):
        net.add_edge("s", "t", 1.5)
    with pytest.raises(InputError):
        flow.FlowNetwork("s", "s")


def test_check_cut():
    net = network_of([("s", "a", 1), ("a", "t", 1)])
    assert flow.check_cut(net, [0])
    assert flow.check_cut(net, [1])
    assert not flow.check_cut(net, [])


def random_network(rng, max_edges=10):
    nodes = ["s", "t", "u", "v", "w", "x"]
    edges = []
    for _ in range(rng.randint(1, max_edges)):
        tail, head = rng.sample(nodes, 2)
        cap = flow.INF if rng.random() < 0.15 else rng.randint(1, 6)
        edges.append((tail, head, cap))
    return edges


def test_min_cut_matches_bruteforce():
    rng = random.Random(1105)
    for _ in range(60):
        edges = random_network(rng)
        net = network_of(edges)
        cut = flow.min_cut(net)
        assert cut.value == oracles.brute_min_cut_value(edges, "s", "t")
        if not math.isinf(cut.value):
            # the returned indices really are a cut of the stated weight
            assert flow.check_cut(net, cut.edge_indices)
            assert sum(edges[i][2] for i in cut.edge_indices) == cut.value


def test_min_cut_deterministic():
    rng = random.Random(7)
    edges = random_network(rng)
    first = flow.min_cut(network_of(edges))
    for _ in range(3):
        assert flow.min_cut(network_of(edges)) == first
