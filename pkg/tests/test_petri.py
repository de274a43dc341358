import random

import networkx as nx
import pytest

from dinaturality.catalogue import constant_loop, token_game_net
from dinaturality.errors import Cyclic, InvalidNet, NotEnabled, StateSpaceExceeded, WrongLabel
from dinaturality.generators import random_acyclic_net, random_cyclic_net
from dinaturality.petri import (
    A,
    B,
    LabelledMarking,
    PetriNet,
    components,
    enabled,
    final_labelled,
    find_cycle,
    fire,
    fire_labelled,
    initial_labelled,
    is_acyclic,
    is_labelled_marking,
    m0,
    md,
    reachable_bfs,
    replay,
    sources_sinks,
    subnet,
    topo_fire,
)


def to_digraph(net):
    g = nx.DiGraph()
    g.add_nodes_from(net.places + net.transitions)
    for t in net.transitions:
        g.add_edges_from((p, t) for p in net.inputs[t])
        g.add_edges_from((t, p) for p in net.outputs[t])
    return g


def union_find_components(net):
    parent = {v: v for v in net.places + net.transitions}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for t in net.transitions:
        for p in net.inputs[t] | net.outputs[t]:
            parent[find(p)] = find(t)
    groups = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return {frozenset(g) for g in groups.values()}


def chain():
    return PetriNet(["a", "b", "c"], ["s", "t"],
                    {"s": {"a"}, "t": {"b"}}, {"s": {"b"}, "t": {"c"}})


def test_fbcf_violations_rejected():
    with pytest.raises(InvalidNet):
        PetriNet(["p"], ["s", "t"], {"s": set(), "t": set()}, {"s": {"p"}, "t": {"p"}})
    with pytest.raises(InvalidNet):
        PetriNet(["p"], ["t"], {"t": {"p"}}, {"t": {"p"}})
    with pytest.raises(InvalidNet):
        PetriNet(["p", "p"], [], {}, {})
    with pytest.raises(InvalidNet):
        PetriNet(["p"], ["t"], {"t": {"q"}}, {"t": set()})


def test_pre_post_and_sources():
    net = chain()
    assert (net.pre("a"), net.post("a"), net.pre("b"), net.post("c")) == (None, "s", "s", None)
    ss = sources_sinks(net)
    assert ss.sources == {"a"} and ss.sinks == {"c"}
    assert m0(net) == {"a": 1, "b": 0, "c": 0}
    assert md(net) == {"a": 0, "b": 0, "c": 1}


def test_isolated_place_is_source_and_sink():
    net = PetriNet(["p"], [], {}, {})
    assert m0(net) == md(net) == {"p": 1}
    assert reachable_bfs(net, m0(net), md(net)) == []


def test_fire_and_replay():
    net = chain()
    assert enabled(net, m0(net), "s") and not enabled(net, m0(net), "t")
    with pytest.raises(NotEnabled):
        fire(net, m0(net), "t")
    assert replay(net, ["s", "t"]) == md(net)
    assert topo_fire(net) == ["s", "t"]


def test_token_game_narrative():
    net, marking = token_game_net()
    assert enabled(net, marking, "t") and not enabled(net, marking, "t'")
    after = fire(net, marking, "t")
    assert after["p3"] == 1 and after["q4"] == 2
    assert all(after[q] == 1 for q in ("q1", "q2", "q3", "q5"))
    assert not enabled(net, after, "t") and enabled(net, after, "t'")


def test_constant_loop_is_stuck():
    net = constant_loop()
    assert m0(net) == {"p1": 0, "p2": 0}
    assert find_cycle(net) is not None
    with pytest.raises(Cyclic) as err:
        topo_fire(net)
    assert err.value.cycle[0] == err.value.cycle[-1]


def test_bfs_reports_pruning():
    # t doubles its token, so the bound is hit before md is considered
    net = PetriNet(["a", "b", "c", "d"], ["t", "u"],
                   {"t": {"a"}, "u": {"b"}}, {"t": {"b", "c"}, "u": {"d"}})
    assert reachable_bfs(net, m0(net), md(net)) is not None
    start = {"a": 0, "b": 2, "c": 2, "d": 2}
    with pytest.raises(StateSpaceExceeded):
        reachable_bfs(net, start, {"a": 1}, token_bound=2)
    assert reachable_bfs(net, m0(net), {"a": 1, "b": 1}) is None


def test_components_order_and_subnet():
    net = PetriNet(["x", "a", "b"], ["s", "lone"],
                   {"s": {"a"}, "lone": set()}, {"s": {"b"}, "lone": set()})
    comps = components(net)
    assert comps == [frozenset({"x"}), frozenset({"a", "s", "b"}), frozenset({"lone"})]
    sub = subnet(net, comps[1])
    assert sub.places == ("a", "b") and sub.transitions == ("s",)
    assert is_acyclic(net, 2)
    with pytest.raises(IndexError):
        is_acyclic(net, 4)


@pytest.mark.parametrize("seed", range(150))
def test_components_and_cycles_against_networkx(seed):
    rng = random.Random(seed)
    net = random_cyclic_net(rng) if seed % 2 else random_acyclic_net(rng)
    assert set(components(net)) == union_find_components(net)
    g = to_digraph(net)
    assert set(components(net)) == {frozenset(c) for c in nx.weakly_connected_components(g)}
    cycle = find_cycle(net)
    assert (cycle is None) == nx.is_directed_acyclic_graph(g)
    if cycle is not None:
        assert cycle[0] == cycle[-1]
        assert all(g.has_edge(a, b) for a, b in zip(cycle, cycle[1:]))


@pytest.mark.parametrize("seed", range(100))
def test_topo_fire_reaches_md(seed):
    net = random_acyclic_net(random.Random(seed))
    order = topo_fire(net)
    assert sorted(order) == sorted(net.transitions)
    assert replay(net, order) == md(net)
    pos = {t: k for k, t in enumerate(order)}
    for t in net.transitions:
        for p in net.inputs[t]:
            if net.pre(p) is not None:
                assert pos[net.pre(p)] < pos[t]


@pytest.mark.parametrize("seed", range(60))
def test_cyclic_nets_never_reach_md(seed):
    net = random_cyclic_net(random.Random(seed), max_transitions=6)
    assert reachable_bfs(net, m0(net), md(net)) is None


def test_labelled_game_on_chain():
    net = chain()
    lm = initial_labelled(net, tag="f")
    assert is_labelled_marking(net, lm)
    with pytest.raises(NotEnabled):
        fire_labelled(net, lm, "t")
    lm = fire_labelled(net, lm, "s")
    assert lm.labels == {"s": A, "t": B} and lm.tag == "f"
    assert is_labelled_marking(net, lm)
    lm = fire_labelled(net, lm, "t")
    assert lm == final_labelled(net)
    with pytest.raises(WrongLabel):
        fire_labelled(net, LabelledMarking({"a": 1}, {"s": A, "t": A}), "s")


def test_incoherent_labels_detected():
    net = chain()
    assert not is_labelled_marking(net, LabelledMarking({"a": 0, "b": 1, "c": 0},
                                                        {"s": B, "t": B}))
    assert not is_labelled_marking(net, LabelledMarking({"a": 0, "b": 0, "c": 0},
                                                        {"s": A, "t": B}))
