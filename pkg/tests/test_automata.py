import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import all_words, random_regex
from rpqprov import automata
from rpqprov.automata import (
    ClassicalAutomaton,
    accepts,
    complement,
    contains,
    determinize,
    difference,
    enumerate_words,
    equivalent,
    intersect,
    is_empty,
    shortest_word,
    union,
    universal,
)
from rpqprov.errors import StateCapExceeded
from rpqprov.regex import compile_rpq


def rx(text):
    return compile_rpq(text)


def test_difference_with_itself_is_empty():
    a = rx("(r|s)*r")
    assert is_empty(difference(a, a))


def test_intersect_with_universal():
    a = rx("r.s|r")
    assert equivalent(intersect(a, universal({"r", "s"})), a)


def test_difference_examples():
    d = difference(rx("(r|s)*"), rx("r*"))
    assert accepts(d, "s")
    assert not accepts(d, "rr")
    brute = sorted(w for w in all_words("rs", 4) if "s" in w)
    assert enumerate_words(d, 4) == brute


def test_contains():
    assert contains(rx("(r|s)*"), rx("r*"))
    assert not contains(rx("r*"), rx("(r|s)*"))
    assert shortest_word(difference(rx("(r|s)*"), rx("r*"))) == ("s",)


def test_accepts_concat():
    assert accepts(rx("r.s"), "rs")
    assert accepts(rx("r.s"), ("r", "s"))


def test_enumerate_words():
    assert enumerate_words(automata.empty_language({"r"}), 5) == []
    assert enumerate_words(rx("r*"), 2) == [(), ("r",), ("r", "r")]
    assert enumerate_words(rx("r.s|r"), 2) == [("r",), ("r", "s")]
    with pytest.raises(ValueError):
        enumerate_words(rx("r"), -1)


def test_union():
    u = union(rx("r"), rx("s*"))
    assert enumerate_words(u, 2) == [(), ("r",), ("s",), ("s", "s")]


def test_complement_uses_declared_alphabet():
    c = complement(rx("r*"), alphabet={"s", "t"})
    assert accepts(c, "t")
    assert not accepts(c, "rr")
    assert c.deterministic


def test_deterministic_flag_is_validated():
    with pytest.raises(ValueError):
        ClassicalAutomaton(2, {"r"}, [(0, "r", 1)], 0, {1}, deterministic=True)


def test_state_cap():
    # (r|s)*r(r|s)^5 needs 2^6 DFA states
    a = rx("(r|s)*r(r|s)(r|s)(r|s)(r|s)(r|s)")
    with pytest.raises(StateCapExceeded) as info:
        determinize(a, state_cap=10)
    assert "10" in str(info.value)


def test_text_round_trip():
    a = determinize(rx("(r|s)*r"))
    text = automata.dumps(a)
    b = automata.loads(text)
    assert automata.dumps(b) == text
    assert equivalent(a, b)


def test_shortest_word_prefers_lexicographic():
    assert shortest_word(rx("s.r|r.s|s.s")) == ("r", "s")
    assert shortest_word(rx("r*")) == ()
    assert shortest_word(automata.empty_language()) is None


def random_pair(seed):
    rng = random.Random(seed)
    return rx(random_regex(rng, 4)[0]), rx(random_regex(rng, 4)[0])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_contains_agrees_with_word_check(seed):
    a, b = random_pair(seed)
    bound = 2 * (a.num_states + b.num_states)
    brute = all(accepts(a, w) for w in all_words("rs", min(bound, 10)) if accepts(b, w))
    if contains(a, b):
        assert brute
    elif bound <= 10:
        assert not brute
    else:
        w = shortest_word(difference(b, a))
        assert accepts(b, w) and not accepts(a, w)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_double_complement(seed):
    a, _ = random_pair(seed)
    cc = complement(complement(a, {"r", "s"}))
    assert contains(a, cc) and contains(cc, a)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_determinize_preserves_words(seed):
    a, _ = random_pair(seed)
    assert enumerate_words(determinize(a), 8) == enumerate_words(a, 8)
