"""Semiring-annotated automata and the annotated languages they denote."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from . import automata
from .automata import ClassicalAutomaton
from .errors import FormatError, SemiringError
from .semiring import Semiring, Weight, get_semiring


class AnnotatedWord(NamedTuple):
    word: tuple
    weight: Weight


@dataclass(frozen=True, eq=False)
class AnnotatedAutomaton:
    """Automaton ``(P, alphabet, semiring, transitions, initial, finals)``.

    Transitions are ``(src, label, weight, dst)`` with ``weight`` a non-zero
    element of ``semiring``.  ``state_names`` is optional and only affects
    the text format.
    """

    semiring: Semiring
    num_states: int
    alphabet: frozenset
    transitions: tuple
    initial: int
    finals: frozenset
    state_names: Optional[tuple] = None

    def __post_init__(self):
        sr = get_semiring(self.semiring)
        object.__setattr__(self, "semiring", sr)
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        key = lambda t: (t[0], t[1], sr.sort_key(t[2]), t[3])
        object.__setattr__(self, "transitions", tuple(sorted(set(self.transitions), key=key)))
        n = self.num_states
        if n < 1 or not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} outside 0..{n - 1}")
        if any(not 0 <= q < n for q in self.finals):
            raise ValueError("final state out of range")
        for src, label, weight, dst in self.transitions:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"transition {(src, label, weight, dst)} references a missing state")
            if label not in self.alphabet:
                raise ValueError(f"transition label {label!r} not in alphabet")
            sr.check(weight)
            if weight == sr.zero:
                raise SemiringError(f"transition {(src, label, weight, dst)} carries the semiring zero")
        if self.state_names is not None and len(self.state_names) != n:
            raise ValueError("state_names must name every state")

    def __eq__(self, other):
        if not isinstance(other, AnnotatedAutomaton):
            return NotImplemented
        return (
            self.semiring is other.semiring
            and self.num_states == other.num_states
            and self.alphabet == other.alphabet
            and self.transitions == other.transitions
            and self.initial == other.initial
            and self.finals == other.finals
        )

    __hash__ = None

    @cached_property
    def arcs(self) -> dict:
        """``state -> label -> list of (weight, dst)``."""
        table: dict = {}
        for src, label, weight, dst in self.transitions:
            table.setdefault(src, {}).setdefault(label, []).append((weight, dst))
        return table

    def weights(self) -> set:
        return {w for _, _, w, _ in self.transitions}


def word_weight(a: AnnotatedAutomaton, word: Sequence) -> Weight:
    """Behavior of ``a`` on ``word``: the sum over accepting paths of path products.

    Forward dynamic program over positions; exact because a fixed word has
    finitely many transition paths.
    """
    sr = a.semiring
    add, mul = sr.add, sr.mul
    current = {a.initial: sr.one}
    for symbol in word:
        nxt: dict = {}
        for q, acc in current.items():
            for weight, dst in a.arcs.get(q, {}).get(symbol, ()):
                value = mul(acc, weight)
                nxt[dst] = add(nxt[dst], value) if dst in nxt else value
        if not nxt:
            return sr.zero
        current = nxt
    return sr.sum(v for q, v in current.items() if q in a.finals)


def support(a: AnnotatedAutomaton) -> ClassicalAutomaton:
    """Classical automaton for the words of non-zero weight.

    Exact for the four semirings here: none has non-zero elements summing to
    zero, and no transition carries zero.
    """
    return ClassicalAutomaton(
        a.num_states,
        a.alphabet,
        [(s, l, d) for s, l, _, d in a.transitions],
        a.initial,
        a.finals,
    )


def enumerate_annotated(a: AnnotatedAutomaton, max_len: int) -> list:
    sr = a.semiring
    entries = [
        AnnotatedWord(w, word_weight(a, w)) for w in automata.enumerate_words(support(a), max_len)
    ]
    return sorted(entries, key=lambda e: (sr.sort_key(e.weight), e.word))


def trim(a: AnnotatedAutomaton) -> AnnotatedAutomaton:
    useful = automata.reachable(support(a)) & automata.coreachable(support(a))
    useful.add(a.initial)
    order = sorted(useful)
    index = {q: i for i, q in enumerate(order)}
    return AnnotatedAutomaton(
        a.semiring,
        len(order),
        a.alphabet,
        [
            (index[s], l, w, index[d])
            for s, l, w, d in a.transitions
            if s in index and d in index
        ],
        index[a.initial],
        {index[q] for q in a.finals if q in index},
        None if a.state_names is None else tuple(a.state_names[q] for q in order),
    )


def from_words(semiring, entries, alphabet=()) -> AnnotatedAutomaton:
    """Automaton whose annotated language is exactly the given finite map.

    Each word gets its own branch with the weight on the first transition.
    The empty word can only carry the semiring one (there are no final
    weights).
    """
    sr = get_semiring(semiring)
    if isinstance(entries, dict):
        entries = entries.items()
    transitions = []
    finals = set()
    count = 1
    symbols = set(alphabet)
    for word, weight in entries:
        word = tuple(word)
        sr.check(weight)
        if weight == sr.zero:
            continue
        if not word:
            if weight != sr.one:
                raise SemiringError("the empty word can only carry the semiring one")
            finals.add(0)
            continue
        prev = 0
        for i, symbol in enumerate(word):
            transitions.append((prev, symbol, weight if i == 0 else sr.one, count))
            symbols.add(symbol)
            prev = count
            count += 1
        finals.add(prev)
    return AnnotatedAutomaton(sr, count, symbols, transitions, 0, finals)


def _state_name(a, q):
    return a.state_names[q] if a.state_names is not None else f"q{q}"


def dumps(a: AnnotatedAutomaton) -> str:
    sr = a.semiring
    lines = [f"semiring {sr.name}"]
    extra = a.alphabet - {l for _, l, _, _ in a.transitions}
    if extra:
        lines.append("alphabet " + " ".join(sorted(extra)))
    if a.state_names is not None:
        # fixes the numbering of custom names on reload
        lines.append("states " + " ".join(a.state_names))
    lines.append(f"initial {_state_name(a, a.initial)}")
    lines.append(" ".join(["final"] + [_state_name(a, q) for q in sorted(a.finals)]))
    for src, label, weight, dst in a.transitions:
        lines.append(
            f"trans {_state_name(a, src)} {label} {sr.format_weight(weight)} {_state_name(a, dst)}"
        )
    return "\n".join(lines) + "\n"


def loads(text: str, semiring=None) -> AnnotatedAutomaton:
    """Parse the annotated automaton text format.

    ``semiring`` is required only when the text lacks a ``semiring`` line; if
    both are present they must agree.
    """
    names: dict = {}

    def state(name):
        return names.setdefault(name, len(names))

    declared = None
    initial = None
    finals = set()
    alphabet = set()
    raw_transitions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        head, rest = fields[0], fields[1:]
        if head == "semiring":
            if len(rest) != 1:
                raise FormatError("'semiring' takes exactly one tag", lineno)
            try:
                declared = get_semiring(rest[0])
            except SemiringError as exc:
                raise FormatError(str(exc), lineno) from None
        elif head == "alphabet":
            alphabet.update(rest)
        elif head == "states":
            for s in rest:
                state(s)
        elif head == "initial":
            if len(rest) != 1:
                raise FormatError("'initial' takes exactly one state", lineno)
            initial = state(rest[0])
        elif head == "final":
            finals.update(state(s) for s in rest)
        elif head == "trans":
            if len(rest) != 4:
                raise FormatError("'trans' takes <src> <label> <weight> <dst>", lineno)
            raw_transitions.append((lineno, state(rest[0]), rest[1], rest[2], state(rest[3])))
            alphabet.add(rest[1])
        else:
            raise FormatError(f"unknown directive {head!r}", lineno)
    if semiring is not None:
        semiring = get_semiring(semiring)
        if declared is not None and declared is not semiring:
            raise FormatError(f"file declares semiring {declared.name}, expected {semiring.name}")
    sr = declared or semiring
    if sr is None:
        raise FormatError("missing 'semiring' line")
    if initial is None:
        raise FormatError("missing 'initial' line")
    transitions = []
    for lineno, src, label, token, dst in raw_transitions:
        try:
            weight = sr.parse_weight(token)
        except SemiringError as exc:
            raise FormatError(str(exc), lineno) from None
        if weight == sr.zero:
            raise FormatError("zero-weight transition", lineno)
        transitions.append((src, label, weight, dst))
    remap, count = automata.canonical_state_numbers(names)
    identity = all(remap[i] == i for i in remap) and count == len(names)
    state_names = None
    if identity and any(not automata._QNAME.fullmatch(n) for n in names):
        state_names = tuple(names)
    return AnnotatedAutomaton(
        sr,
        count,
        alphabet,
        [(remap[s], l, w, remap[d]) for s, l, w, d in transitions],
        remap[initial],
        {remap[q] for q in finals},
        state_names,
    )
