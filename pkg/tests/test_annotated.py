import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import all_words, brute_language, brute_word_weight, random_annotated
from rpqprov import annotated
from rpqprov.annotated import AnnotatedAutomaton, enumerate_annotated, from_words, support, trim, word_weight
from rpqprov.automata import accepts, enumerate_words, is_empty
from rpqprov.errors import FormatError, SemiringError
from rpqprov.semiring import BOOLEAN, FUZZY, MULTIPLICITY, SEMIRINGS, TROPICAL


def parallel(sr, w1, w2):
    return AnnotatedAutomaton(sr, 2, {"r"}, [(0, "r", w1, 1), (0, "r", w2, 1)], 0, {1})


def test_single_transition():
    a = AnnotatedAutomaton(TROPICAL, 2, {"r"}, [(0, "r", 4, 1)], 0, {1})
    assert word_weight(a, "r") == 4
    assert word_weight(a, "rr") == TROPICAL.zero
    assert enumerate_annotated(a, 1) == [(("r",), 4)]


def test_parallel_transitions_sum_per_semiring():
    assert word_weight(parallel(TROPICAL, 3, 1), "r") == 1
    assert word_weight(parallel(MULTIPLICITY, 3, 1), "r") == 4
    assert enumerate_words(support(parallel(TROPICAL, 3, 1)), 3) == [("r",)]


def test_zero_weight_transitions_are_rejected():
    with pytest.raises(SemiringError):
        AnnotatedAutomaton(MULTIPLICITY, 2, {"r"}, [(0, "r", 0, 1)], 0, {1})
    with pytest.raises(SemiringError):
        AnnotatedAutomaton(BOOLEAN, 2, {"r"}, [(0, "r", False, 1)], 0, {1})


def test_empty_automaton():
    a = AnnotatedAutomaton(FUZZY, 1, {"r"}, [], 0, set())
    assert is_empty(support(a))
    assert enumerate_annotated(a, 5) == []


def test_trim_removes_unreachable_state():
    a = AnnotatedAutomaton(TROPICAL, 3, {"r"}, [(0, "r", 1, 1), (2, "r", 1, 1)], 0, {1})
    t = trim(a)
    assert t.num_states == 2
    assert trim(t).num_states == 2
    assert word_weight(t, "r") == 1


def test_from_words():
    a = from_words(TROPICAL, {("r",): 3, ("r", "s"): 5, (): 0})
    assert brute_language(a, 3) == {(): 0, ("r",): 3, ("r", "s"): 5}
    with pytest.raises(SemiringError):
        from_words(TROPICAL, {(): 2})


def test_text_round_trip():
    a = from_words(MULTIPLICITY, {"rs": 2, "s": 3})
    text = annotated.dumps(a)
    b = annotated.loads(text)
    assert b == a
    assert annotated.dumps(b) == text


def test_text_with_named_states():
    text = "semiring fuzzy\ninitial start\nfinal end\ntrans start r 2 mid\ntrans mid s 5 end\n"
    a = annotated.loads(text)
    assert word_weight(a, "rs") == 5
    dumped = annotated.dumps(a)
    assert dumped.splitlines()[1] == "states start end mid"
    assert annotated.dumps(annotated.loads(dumped)) == dumped


@pytest.mark.parametrize(
    "text",
    [
        "initial q0\n",
        "semiring tropical\n",
        "semiring tropical\ninitial q0\ntrans q0 r inf q1\n",
        "semiring multiplicity\ninitial q0\ntrans q0 r 0 q1\n",
        "semiring tropical\ninitial q0\nbogus\n",
    ],
)
def test_bad_text(text):
    with pytest.raises(FormatError):
        annotated.loads(text)


def test_loads_semiring_mismatch():
    with pytest.raises(FormatError):
        annotated.loads("semiring tropical\ninitial q0\n", "fuzzy")


@pytest.mark.parametrize("name", list(SEMIRINGS))
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_dynamic_program_matches_path_oracle(name, seed):
    a = random_annotated(random.Random(seed), name, max_states=4)
    for w in all_words(a.alphabet, 5):
        x = word_weight(a, w)
        assert x == brute_word_weight(a, w)
        assert (x != a.semiring.zero) == accepts(support(a), w)


@pytest.mark.parametrize("name", list(SEMIRINGS))
@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_trim_preserves_behavior(name, seed):
    a = random_annotated(random.Random(seed), name)
    t = trim(a)
    for w in all_words(a.alphabet, 6):
        assert word_weight(t, w) == word_weight(a, w)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_boolean_automata_are_their_support(seed):
    a = random_annotated(random.Random(seed), BOOLEAN)
    for w in all_words(a.alphabet, 6):
        assert word_weight(a, w) == accepts(support(a), w)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_enumeration_sorted_by_weight_then_word(seed):
    a = random_annotated(random.Random(seed), TROPICAL)
    entries = enumerate_annotated(a, 4)
    assert entries == sorted(entries, key=lambda e: (e.weight, e.word))
    assert dict(entries) == brute_language(a, 4)
