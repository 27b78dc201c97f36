import itertools
import json
import random

import pytest

from corpus import corpus
from tracehom.action import (
    InputError,
    PartialActionSystem,
    apply_event,
    apply_word,
    connected_components,
    from_dict,
    load_action,
    permute_events,
    reachable_states,
    restrict,
    to_dict,
    validate,
)
from tracehom.trace import EventAlphabet, IndependenceRelation, trace_normal_form


def names(sys, idx):
    return None if idx is None else sys.states[idx]


def test_apply_event_cube(cube):
    s = cube.state_index
    a1, a3 = cube.alphabet.index("a1"), cube.alphabet.index("a3")
    assert names(cube, apply_event(cube, s("s0"), a1)) == "s2"
    assert apply_event(cube, s("s5"), a3) is None
    with pytest.raises(IndexError):
        apply_event(cube, 99, a1)
    with pytest.raises(IndexError):
        apply_event(cube, 0, 7)


def test_apply_word_cube(cube):
    s0 = cube.state_index("s0")
    w = cube.alphabet.word
    assert apply_word(cube, s0, ()) == s0
    assert names(cube, apply_word(cube, s0, w(["a1", "a2"]))) == "s5"
    assert apply_word(cube, s0, w(["a1", "a2", "a3"])) is None


def test_validate_cube_is_clean(cube):
    assert validate(cube) == []


def test_validate_single_state():
    sys = PartialActionSystem(EventAlphabet(("a",)), IndependenceRelation.from_pairs([]), ("x",))
    assert validate(sys) == []


def test_validate_reports_witness(samples):
    sys = load_action(samples / "noncommuting_action.json")
    (v,) = validate(sys)
    assert (sys.states[v.state], v.a, v.b) == ("x", 0, 1)
    assert {names(sys, v.ab), names(sys, v.ba)} == {"u", "v"}


def test_reachable(cube, pipeline):
    assert len(reachable_states(pipeline, pipeline.initial)) == 8
    s5 = cube.state_index("s5")
    assert reachable_states(cube, s5) == {s5}
    lone = PartialActionSystem(EventAlphabet(("a",)), IndependenceRelation.from_pairs([]), ("x", "y"))
    assert reachable_states(lone, 1) == {1}


def test_components(cube):
    assert len(connected_components(cube)) == 1
    two = PartialActionSystem(EventAlphabet(("a",)), IndependenceRelation.from_pairs([]), ("x", "y"))
    assert connected_components(two) == [[0], [1]]
    empty = PartialActionSystem(EventAlphabet(("a",)), IndependenceRelation.from_pairs([]), ())
    assert connected_components(empty) == []


@pytest.mark.parametrize("seed", range(3))
def test_fold_is_associative_and_trace_invariant(seed):
    rng = random.Random(seed)
    for sys in corpus(15, seed=seed):
        k = len(sys.alphabet)
        words = [w for n in range(5) for w in itertools.product(range(k), repeat=n)]
        if len(words) > 400:
            words = rng.sample(words, 400)
        for x in range(sys.n_states):
            for w in words:
                nf = trace_normal_form(sys.alphabet, sys.rel, w)
                assert apply_word(sys, x, w) == apply_word(sys, x, nf)
                cut = len(w) // 2
                assert apply_word(sys, x, w) == apply_word(sys, apply_word(sys, x, w[:cut]), w[cut:])


def test_validate_is_sound_on_short_words():
    # an empty report means equivalent words of length <= 4 act identically
    for sys in corpus(20, seed=11):
        k = len(sys.alphabet)
        classes = {}
        for n in range(5):
            for w in itertools.product(range(k), repeat=n):
                classes.setdefault(trace_normal_form(sys.alphabet, sys.rel, w), []).append(w)
        for x in range(sys.n_states):
            for ws in classes.values():
                assert len({apply_word(sys, x, w) for w in ws}) == 1


def test_reachable_is_closed(pipeline, cube):
    for sys in (pipeline, cube):
        for s0 in range(sys.n_states):
            r = reachable_states(sys, s0)
            assert s0 in r
            for x in r:
                for e in range(len(sys.alphabet)):
                    y = apply_event(sys, x, e)
                    assert y is None or y in r


def test_json_round_trip(cube):
    assert from_dict(to_dict(cube)) == cube


def test_parse_errors():
    base = {"events": ["a"], "states": ["x"], "transitions": []}
    with pytest.raises(InputError, match="duplicate transition"):
        from_dict({**base, "transitions": [{"from": "x", "event": "a", "to": "x"}] * 2})
    with pytest.raises(InputError, match=r"transitions\[0\].*unknown state"):
        from_dict({**base, "transitions": [{"from": "q", "event": "a", "to": "x"}]})
    with pytest.raises(InputError, match="unknown event"):
        from_dict({**base, "independence": [["a", "b"]]})
    with pytest.raises(InputError, match="missing field"):
        from_dict({"events": []})


def test_load_action_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(InputError, match="invalid JSON"):
        load_action(p)


def test_restrict_and_permute(cube):
    sub = restrict(cube, [cube.state_index(n) for n in ("s0", "s2", "s5")])
    assert sub.states == ("s0", "s2", "s5")
    assert len(sub.table) == 2
    perm = permute_events(cube, [2, 0, 1])
    assert perm.alphabet.events == ("a3", "a1", "a2")
    assert validate(perm) == []
    assert json.dumps(to_dict(perm)["transitions"][0]) == json.dumps(
        {"from": "s0", "event": "a3", "to": "s4"})
