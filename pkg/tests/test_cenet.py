import itertools

import pytest

from corpus import random_net_system
from tracehom.action import InputError, validate
from tracehom.cenet import (
    CENet,
    CapExceeded,
    NetEvent,
    compile_net,
    derive_independence,
    enabled,
    fire,
    from_dict,
    to_dict,
)
from tracehom.complex import build_bases


def test_pipeline_independence(pipeline_net):
    rel = derive_independence(pipeline_net)
    ev = [e.name for e in pipeline_net.events]
    assert {(ev[a], ev[b]) for a, b in rel.pairs} == {("a", "c"), ("a", "d"), ("b", "d")}


def test_shared_place_and_empty_neighbourhoods():
    net = CENet(("p",), (NetEvent("x", frozenset({0}), frozenset()), NetEvent("y", frozenset(), frozenset({0})),
                         NetEvent("u", frozenset(), frozenset()), NetEvent("v", frozenset(), frozenset())))
    rel = derive_independence(net)
    assert (0, 1) not in rel.pairs
    assert (2, 3) in rel.pairs
    assert all(a != b for a, b in rel.pairs)


def test_enabled_and_fire(pipeline_net):
    m = pipeline_net.marking
    e = pipeline_net.event_index
    assert enabled(pipeline_net, m([]), e("a"))
    assert not enabled(pipeline_net, m(["p"]), e("a"))
    assert fire(pipeline_net, m(["p"]), e("b")) == m(["q"])
    assert fire(pipeline_net, m(["p", "r"]), e("d")) == m(["p"])
    assert fire(pipeline_net, m([]), e("b")) is None


def test_self_loop_event_never_enabled():
    net = CENet(("p", "q"), (NetEvent("t", frozenset({0}), frozenset({0})),))
    assert not any(enabled(net, s, 0) for s in range(4))


def test_compile_pipeline(pipeline_net):
    sys = compile_net(pipeline_net)
    assert sys.n_states == 8
    assert len(sys.table) == 12
    assert sys.states[sys.initial] == "(0,0,0)"
    edges = {(sys.states[x], sys.alphabet.events[e], sys.states[y]) for x, e, y in sys.edges()}
    assert ("(0,1,1)", "a", "(1,1,1)") in edges
    assert ("(1,0,1)", "b", "(0,1,1)") in edges
    assert ("(0,1,0)", "c", "(0,0,1)") in edges


def test_compile_dead_net():
    net = CENet(("p",), (NetEvent("t", frozenset({0}), frozenset()),))
    assert compile_net(net).n_states == 1


def test_all_states_and_cap():
    net = CENet(("p",), (NetEvent("t", frozenset({0}), frozenset()),))
    assert compile_net(net, all_states=True).n_states == 2
    wide = CENet(tuple(f"p{i}" for i in range(21)), ())
    with pytest.raises(CapExceeded):
        compile_net(wide, all_states=True)


def test_compiled_nets_always_validate_and_edges_equal_q1():
    import random
    rng = random.Random(3)
    for _ in range(60):
        sys = random_net_system(rng, max_places=4, max_events=5)
        assert validate(sys) == []
        sizes = build_bases(sys).sizes()
        assert len(sys.table) == (sizes[1] if len(sizes) > 1 else 0)


def test_firing_is_deterministic_and_width_preserving(pipeline_net):
    for s, e in itertools.product(range(8), range(4)):
        t = fire(pipeline_net, s, e)
        assert t == fire(pipeline_net, s, e)
        assert t is None or 0 <= t < 8


def test_net_parse_errors():
    with pytest.raises(InputError, match=r"events\[0\]\.pre\[0\]: unknown place 'z'"):
        from_dict({"places": ["p"], "events": [{"name": "t", "pre": ["z"]}]})
    with pytest.raises(InputError, match="missing field"):
        from_dict({"places": []})
    with pytest.raises(InputError, match="distinct"):
        from_dict({"places": ["p"], "events": [{"name": "t"}, {"name": "t"}]})


def test_net_round_trip(pipeline_net):
    assert from_dict(to_dict(pipeline_net)) == pipeline_net
