"""Unweighted finite automata and the Boolean language operations on them.

States are dense integers ``0..num_states-1``; words are tuples of label
strings (a plain ``str`` also works when every label is one character).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import FormatError, StateCapExceeded, resolve_state_cap

Word = tuple


@dataclass(frozen=True)
class ClassicalAutomaton:
    num_states: int
    alphabet: frozenset
    transitions: tuple  # sorted (src, label, dst) triples, no duplicates
    initial: int
    finals: frozenset
    deterministic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "transitions", tuple(sorted(set(self.transitions))))
        n = self.num_states
        if n < 1 or not 0 <= self.initial < n:
            raise ValueError(f"initial state {self.initial} outside 0..{n - 1}")
        for q in self.finals:
            if not 0 <= q < n:
                raise ValueError(f"final state {q} outside 0..{n - 1}")
        for src, label, dst in self.transitions:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"transition {(src, label, dst)} references a missing state")
            if label not in self.alphabet:
                raise ValueError(f"transition label {label!r} not in alphabet")
        if self.deterministic:
            seen = {(src, label) for src, label, _ in self.transitions}
            if len(seen) != len(self.transitions) or len(seen) != n * len(self.alphabet):
                raise ValueError("automaton flagged deterministic-and-complete is not")

    @cached_property
    def delta(self) -> dict:
        """``state -> label -> tuple of successor states``."""
        table: dict = {}
        for src, label, dst in self.transitions:
            table.setdefault(src, {}).setdefault(label, []).append(dst)
        return {q: {a: tuple(ds) for a, ds in row.items()} for q, row in table.items()}

    def successors(self, state, label) -> tuple:
        return self.delta.get(state, {}).get(label, ())

    def step(self, states: Iterable[int], label) -> frozenset:
        out = set()
        for q in states:
            out.update(self.successors(q, label))
        return frozenset(out)


def empty_language(alphabet=()) -> ClassicalAutomaton:
    return ClassicalAutomaton(1, frozenset(alphabet), (), 0, frozenset())


def universal(alphabet) -> ClassicalAutomaton:
    """Automaton for ``alphabet*``."""
    alphabet = frozenset(alphabet)
    return ClassicalAutomaton(1, alphabet, tuple((0, a, 0) for a in alphabet), 0, {0})


def accepts(a: ClassicalAutomaton, word: Sequence) -> bool:
    current = frozenset({a.initial})
    for symbol in word:
        current = a.step(current, symbol)
        if not current:
            return False
    return bool(current & a.finals)


def reachable(a: ClassicalAutomaton) -> set:
    seen = {a.initial}
    stack = [a.initial]
    while stack:
        q = stack.pop()
        for targets in a.delta.get(q, {}).values():
            for t in targets:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    return seen


def coreachable(a: ClassicalAutomaton) -> set:
    back: dict = {}
    for src, _, dst in a.transitions:
        back.setdefault(dst, []).append(src)
    seen = set(a.finals)
    stack = list(a.finals)
    while stack:
        q = stack.pop()
        for p in back.get(q, ()):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def trim(a: ClassicalAutomaton) -> ClassicalAutomaton:
    """Keep only useful states; the initial state always survives."""
    keep = reachable(a) & coreachable(a)
    keep.add(a.initial)
    order = sorted(keep)
    index = {q: i for i, q in enumerate(order)}
    transitions = [
        (index[s], l, index[d]) for s, l, d in a.transitions if s in index and d in index
    ]
    return ClassicalAutomaton(
        len(order),
        a.alphabet,
        transitions,
        index[a.initial],
        {index[q] for q in a.finals if q in index},
    )


def is_empty(a: ClassicalAutomaton) -> bool:
    return not (reachable(a) & a.finals)


def _subset_explore(a, alphabet, cap, what):
    """Subset construction over ``alphabet``; the empty subset is the sink."""
    symbols = sorted(alphabet)
    start = frozenset({a.initial})
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        subset = order[i]
        for symbol in symbols:
            target = a.step(subset, symbol)
            if target not in index:
                if len(order) >= cap:
                    raise StateCapExceeded(cap, what)
                index[target] = len(order)
                order.append(target)
            transitions.append((i, symbol, index[target]))
        i += 1
    return order, transitions


def determinize(a: ClassicalAutomaton, alphabet=None, state_cap=None) -> ClassicalAutomaton:
    """Complete DFA over ``a.alphabet`` plus any extra ``alphabet`` symbols."""
    cap = resolve_state_cap(state_cap)
    sigma = a.alphabet | frozenset(alphabet or ())
    order, transitions = _subset_explore(a, sigma, cap, "determinization")
    finals = {i for i, subset in enumerate(order) if subset & a.finals}
    return ClassicalAutomaton(len(order), sigma, transitions, 0, finals, deterministic=True)


def complement(a: ClassicalAutomaton, alphabet=None, state_cap=None) -> ClassicalAutomaton:
    """Complement relative to ``(a.alphabet | alphabet)*``."""
    d = determinize(a, alphabet, state_cap)
    finals = set(range(d.num_states)) - d.finals
    return ClassicalAutomaton(d.num_states, d.alphabet, d.transitions, 0, finals, deterministic=True)


def intersect(a: ClassicalAutomaton, b: ClassicalAutomaton, state_cap=None) -> ClassicalAutomaton:
    cap = resolve_state_cap(state_cap)
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row_a = a.delta.get(p, {})
        row_b = b.delta.get(q, {})
        for symbol in sorted(row_a.keys() & row_b.keys()):
            for p2 in row_a[symbol]:
                for q2 in row_b[symbol]:
                    pair = (p2, q2)
                    if pair not in index:
                        if len(order) >= cap:
                            raise StateCapExceeded(cap, "intersection")
                        index[pair] = len(order)
                        order.append(pair)
                    transitions.append((i, symbol, index[pair]))
        i += 1
    finals = {i for i, (p, q) in enumerate(order) if p in a.finals and q in b.finals}
    return ClassicalAutomaton(len(order), a.alphabet | b.alphabet, transitions, 0, finals)


def union(a: ClassicalAutomaton, b: ClassicalAutomaton) -> ClassicalAutomaton:
    """Disjoint union behind a fresh initial state that copies both starts' arcs."""
    off_a, off_b = 1, 1 + a.num_states
    transitions = [(s + off_a, l, d + off_a) for s, l, d in a.transitions]
    transitions += [(s + off_b, l, d + off_b) for s, l, d in b.transitions]
    transitions += [(0, l, d + off_a) for s, l, d in a.transitions if s == a.initial]
    transitions += [(0, l, d + off_b) for s, l, d in b.transitions if s == b.initial]
    finals = {q + off_a for q in a.finals} | {q + off_b for q in b.finals}
    if a.initial in a.finals or b.initial in b.finals:
        finals.add(0)
    return ClassicalAutomaton(
        1 + a.num_states + b.num_states, a.alphabet | b.alphabet, transitions, 0, finals
    )


def difference(a: ClassicalAutomaton, b: ClassicalAutomaton, state_cap=None) -> ClassicalAutomaton:
    """``L(a) \\ L(b)`` as the product of ``a`` with the on-the-fly subset DFA of ``b``.

    Equivalent to ``intersect(a, complement(b, a.alphabet))`` without building
    the parts of the complement that ``a`` never visits.
    """
    cap = resolve_state_cap(state_cap)
    start = (a.initial, frozenset({b.initial}))
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        p, subset = order[i]
        row = a.delta.get(p, {})
        for symbol in sorted(row):
            moved = b.step(subset, symbol)
            for p2 in row[symbol]:
                pair = (p2, moved)
                if pair not in index:
                    if len(order) >= cap:
                        raise StateCapExceeded(cap, "difference")
                    index[pair] = len(order)
                    order.append(pair)
                transitions.append((i, symbol, index[pair]))
        i += 1
    finals = {
        i for i, (p, subset) in enumerate(order) if p in a.finals and not (subset & b.finals)
    }
    return ClassicalAutomaton(len(order), a.alphabet | b.alphabet, transitions, 0, finals)


def contains(a: ClassicalAutomaton, b: ClassicalAutomaton, state_cap=None) -> bool:
    """True iff ``L(b)`` is a subset of ``L(a)``."""
    return is_empty(difference(b, a, state_cap))


def equivalent(a: ClassicalAutomaton, b: ClassicalAutomaton, state_cap=None) -> bool:
    return contains(a, b, state_cap) and contains(b, a, state_cap)


def shortest_word(a: ClassicalAutomaton) -> Optional[Word]:
    """Shortest accepted word, lexicographically least among the shortest."""
    if a.initial in a.finals:
        return ()
    parent = {a.initial: None}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        row = a.delta.get(q, {})
        for symbol in sorted(row):
            for t in row[symbol]:
                if t in parent:
                    continue
                parent[t] = (q, symbol)
                if t in a.finals:
                    word = []
                    node = t
                    while parent[node] is not None:
                        node, sym = parent[node]
                        word.append(sym)
                    return tuple(reversed(word))
                queue.append(t)
    return None


def enumerate_words(a: ClassicalAutomaton, max_len: int) -> list:
    """All accepted words of length <= ``max_len``, sorted, without duplicates."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    live = coreachable(a)
    symbols = sorted(a.alphabet)
    out = []

    def walk(subset, prefix):
        if subset & a.finals:
            out.append(prefix)
        if len(prefix) == max_len:
            return
        for symbol in symbols:
            nxt = a.step(subset, symbol) & live
            if nxt:
                walk(nxt, prefix + (symbol,))

    start = frozenset({a.initial}) & live
    if start:
        walk(start, ())
    return out


def format_word(word: Sequence) -> str:
    """Text form of a word: ``()`` for the empty word, otherwise the labels
    concatenated, dot-separated when some label is longer than one character."""
    word = tuple(word)
    if not word:
        return "()"
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return ".".join(word)


def dumps(a: ClassicalAutomaton) -> str:
    lines = ["alphabet " + " ".join(sorted(a.alphabet)) if a.alphabet else "alphabet"]
    lines.append(f"initial q{a.initial}")
    lines.append(" ".join(["final"] + [f"q{q}" for q in sorted(a.finals)]))
    for src, label, dst in a.transitions:
        lines.append(f"trans q{src} {label} q{dst}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> ClassicalAutomaton:
    """Parse the line-oriented classical automaton format written by :func:`dumps`."""
    names: dict = {}

    def state(name):
        return names.setdefault(name, len(names))

    alphabet = set()
    initial = None
    finals = set()
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        head, rest = fields[0], fields[1:]
        if head == "alphabet":
            alphabet.update(rest)
        elif head == "initial":
            if len(rest) != 1:
                raise FormatError("'initial' takes exactly one state", lineno)
            initial = state(rest[0])
        elif head == "final":
            finals.update(state(s) for s in rest)
        elif head == "trans":
            if len(rest) != 3:
                raise FormatError("'trans' takes <src> <label> <dst>", lineno)
            transitions.append((state(rest[0]), rest[1], state(rest[2])))
            alphabet.add(rest[1])
        else:
            raise FormatError(f"unknown directive {head!r}", lineno)
    if initial is None:
        raise FormatError("missing 'initial' line")
    remap, count = canonical_state_numbers(names)
    return ClassicalAutomaton(
        count,
        frozenset(alphabet),
        [(remap[s], l, remap[d]) for s, l, d in transitions],
        remap[initial],
        {remap[q] for q in finals},
    )


_QNAME = re.compile(r"q(0|[1-9][0-9]*)")


def canonical_state_numbers(names: dict):
    """Map first-appearance indices to state numbers.

    Files written by this package name states ``q<i>``; those numbers are kept
    so that dumping a loaded automaton reproduces the file.
    """
    numbers = {}
    for name, idx in names.items():
        m = _QNAME.fullmatch(name)
        if m is None:
            return {i: i for i in names.values()}, len(names)
        numbers[idx] = int(m.group(1))
    return numbers, (max(numbers.values()) + 1 if numbers else 0)
