"""Inner spheres, outer spheres and stripes of annotated languages.

For an annotated language ``L`` and weight ``x``:

* inner sphere: words whose weight is at least as good as ``x``,
* outer sphere: words whose weight is at least as bad as ``x``,
* stripe: words whose weight is exactly ``x``.

Tropical inner spheres come from a product with a digit-sum mask automaton,
fuzzy inner spheres from dropping heavy transitions, and multiplicity outer
spheres from a k-fold product that tracks which runs have diverged.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Mapping

from . import automata
from .annotated import AnnotatedAutomaton, support, trim
from .automata import ClassicalAutomaton
from .errors import MissingSphereLevel, StateCapExceeded, resolve_state_cap
from .semiring import MULTIPLICITY, Weight


@dataclass(frozen=True)
class MaskAutomaton:
    """Digit automaton over ``{0..k}``: state ``i`` is the running digit sum,
    every state is final, and no run may push the sum past ``k``."""

    k: int

    @property
    def num_states(self):
        return self.k + 1

    @property
    def initial(self):
        return 0

    @property
    def finals(self):
        return frozenset(range(self.k + 1))

    @property
    def alphabet(self):
        return frozenset(range(self.k + 1))

    @cached_property
    def transitions(self) -> tuple:
        k = self.k
        return tuple((i, n, i + n) for i in range(k + 1) for n in range(k - i + 1))

    def step(self, state, digit):
        target = state + digit
        return target if 0 <= digit and target <= self.k else None

    def accepts(self, digits) -> bool:
        state = 0
        for n in digits:
            state = self.step(state, n)
            if state is None:
                return False
        return True


def mask_automaton(k: int) -> MaskAutomaton:
    if k < 0:
        raise ValueError("k must be nonnegative")
    return MaskAutomaton(k)


def _require(a: AnnotatedAutomaton, name):
    if a.semiring.name != name:
        raise ValueError(f"expected a {name} automaton, got {a.semiring.name}")


def tropical_inner_sphere(a: AnnotatedAutomaton, k: int, state_cap=None) -> AnnotatedAutomaton:
    """Product of ``a`` with the mask automaton for ``k``.

    Product states are ``(q, running_weight)``; only reachable ones are built.
    """
    _require(a, "tropical")
    mask = mask_automaton(k)
    cap = resolve_state_cap(state_cap)
    # heavier transitions can never synchronize with a mask digit
    arcs = [(s, l, w, d) for s, l, w, d in a.transitions if w <= k]
    by_src: dict = {}
    for s, l, w, d in arcs:
        by_src.setdefault(s, []).append((l, w, d))
    start = (a.initial, mask.initial)
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        q, p = order[i]
        for label, weight, q2 in by_src.get(q, ()):
            p2 = mask.step(p, weight)
            if p2 is None:
                continue
            pair = (q2, p2)
            if pair not in index:
                if len(order) >= cap:
                    raise StateCapExceeded(cap, "tropical sphere product")
                index[pair] = len(order)
                order.append(pair)
            transitions.append((i, label, weight, index[pair]))
        i += 1
    finals = {i for i, (q, p) in enumerate(order) if q in a.finals and p in mask.finals}
    return AnnotatedAutomaton(a.semiring, len(order), a.alphabet, transitions, 0, finals)


def fuzzy_inner_sphere(a: AnnotatedAutomaton, k) -> AnnotatedAutomaton:
    _require(a, "fuzzy")
    return AnnotatedAutomaton(
        a.semiring,
        a.num_states,
        a.alphabet,
        [t for t in a.transitions if t[2] <= k],
        a.initial,
        a.finals,
        a.state_names,
    )


def inner_sphere(a: AnnotatedAutomaton, k, state_cap=None) -> AnnotatedAutomaton:
    if a.semiring.name == "tropical":
        return tropical_inner_sphere(a, k, state_cap)
    if a.semiring.name == "fuzzy":
        return fuzzy_inner_sphere(a, k)
    raise ValueError(f"inner spheres are not available for the {a.semiring.name} semiring")


@dataclass(frozen=True)
class MultiTransitionAutomaton:
    """Unweighted automaton whose transitions have identities.

    ``transitions[i]`` is ``(src, label, dst)``; the index ``i`` is the
    transition's identity, so equal-shaped copies stay distinguishable.
    """

    num_states: int
    alphabet: frozenset
    transitions: tuple
    initial: int
    finals: frozenset

    @cached_property
    def by_src_label(self) -> dict:
        """``(state, label) -> tuple of (identity, dst)``."""
        table: dict = {}
        for ident, (src, label, dst) in enumerate(self.transitions):
            table.setdefault((src, label), []).append((ident, dst))
        return {key: tuple(v) for key, v in table.items()}

    @cached_property
    def _labels(self) -> dict:
        table: dict = {}
        for src, label in self.by_src_label:
            table.setdefault(src, set()).add(label)
        return {q: sorted(ls) for q, ls in table.items()}

    def labels_from(self, state) -> list:
        return self._labels.get(state, [])

    def count_paths(self, word) -> int:
        """Accepting identified paths spelling ``word`` (brute force)."""
        count = {self.initial: 1}
        for symbol in word:
            nxt: dict = {}
            for q, c in count.items():
                for _, dst in self.by_src_label.get((q, symbol), ()):
                    nxt[dst] = nxt.get(dst, 0) + c
            count = nxt
        return sum(c for q, c in count.items() if q in self.finals)


def multiplicity_expand(a: AnnotatedAutomaton) -> MultiTransitionAutomaton:
    """Replace each weight-``n`` transition by ``n`` identity-distinct copies."""
    _require(a, "multiplicity")
    copies = []
    for src, label, weight, dst in a.transitions:
        copies += [(src, label, dst)] * weight
    return MultiTransitionAutomaton(a.num_states, a.alphabet, tuple(copies), a.initial, a.finals)


def _successors(b: MultiTransitionAutomaton, qs, label):
    """Distinct ``(dsts, groups)`` reachable by letting every run take a copy.

    Runs that take the same copy share a group number.  Only the grouping
    and each group's destination affect the successor state, so instead of
    every combination of copies this walks the set partitions of the runs,
    giving each group a destination that still has an unused copy.
    """
    available: dict = {}
    for q in set(qs):
        for _, dst in b.by_src_label[(q, label)]:
            available[(q, dst)] = available.get((q, dst), 0) + 1
    seen = set()
    groups: list = []  # (src, dst) per group
    picks: list = []
    used: dict = {}

    def walk(j):
        if j == len(qs):
            key = (tuple(groups[g][1] for g in picks), tuple(picks))
            if key not in seen:
                seen.add(key)
                yield key
            return
        q = qs[j]
        for g, (src, _) in enumerate(groups):
            if src == q:
                picks.append(g)
                yield from walk(j + 1)
                picks.pop()
        for (src, dst), n in sorted(available.items()):
            if src != q or used.get((src, dst), 0) >= n:
                continue
            used[(src, dst)] = used.get((src, dst), 0) + 1
            groups.append((src, dst))
            picks.append(len(groups) - 1)
            yield from walk(j + 1)
            picks.pop()
            groups.pop()
            used[(src, dst)] -= 1

    yield from walk(0)


def multiplicity_outer_sphere_support(
    b: MultiTransitionAutomaton, k: int, state_cap=None
) -> ClassicalAutomaton:
    """Words spelled by at least ``k`` accepting paths of ``b``.

    States are ``(q_1..q_k, psi)`` where ``psi`` holds the strict upper
    triangle of the divergence matrix as a bitmask: bit ``(i, j)`` is set once
    runs ``i`` and ``j`` have taken different transition copies.  The diagonal
    is always 1 and is not stored.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    cap = resolve_state_cap(state_cap)
    pairs = list(combinations(range(k), 2))
    full = (1 << len(pairs)) - 1
    start = ((b.initial,) * k, 0)
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        qs, psi = order[i]
        for label in b.labels_from(qs[0]):
            if not all((q, label) in b.by_src_label for q in qs):
                continue
            for dsts, groups in _successors(b, qs, label):
                mask = psi
                for bit, (x, y) in enumerate(pairs):
                    if groups[x] != groups[y]:
                        mask |= 1 << bit
                target = (dsts, mask)
                if target not in index:
                    if len(order) >= cap:
                        raise StateCapExceeded(cap, f"outer-sphere product for k={k}")
                    index[target] = len(order)
                    order.append(target)
                transitions.append((i, label, index[target]))
        i += 1
    finals = {
        i for i, (qs, psi) in enumerate(order) if psi == full and all(q in b.finals for q in qs)
    }
    return ClassicalAutomaton(len(order), b.alphabet, transitions, 0, finals)


def outer_sphere_support(a: AnnotatedAutomaton, x, state_cap=None) -> ClassicalAutomaton:
    """Support of the ``x``-outer sphere for any of the ordered semirings."""
    sr = a.semiring
    if sr is MULTIPLICITY:
        if x == 0:
            return support(a)
        return multiplicity_outer_sphere_support(multiplicity_expand(trim(a)), x, state_cap)
    full = support(a)
    inner = {x: support(inner_sphere(a, x, state_cap))}
    prev = sr.previous_better(x)
    if prev is not None:
        inner[prev] = support(inner_sphere(a, prev, state_cap))
    stripe = stripe_support(inner, x, sr, "inner", state_cap)
    return outer_from_inner(full, inner[x], stripe, state_cap)


def stripe_support(
    spheres: Mapping[Weight, ClassicalAutomaton], x, semiring, kind="inner", state_cap=None
) -> ClassicalAutomaton:
    """Words of weight exactly ``x`` from a family of sphere supports.

    ``kind="inner"``: difference of the inner spheres at ``x`` and at the
    previous element (just the inner sphere at ``x`` if there is none).
    ``kind="outer"``: difference of the outer spheres at ``x`` and at the
    next element.
    """
    if x not in spheres:
        raise MissingSphereLevel(x)
    if kind == "inner":
        other = semiring.previous_better(x)
    elif kind == "outer":
        other = semiring.next_worse(x)
    else:
        raise ValueError(f"kind must be 'inner' or 'outer', not {kind!r}")
    if other is None:
        return spheres[x]
    if other not in spheres:
        raise MissingSphereLevel(other)
    return automata.difference(spheres[x], spheres[other], state_cap)


def outer_from_inner(full, inner_x, stripe_x, state_cap=None) -> ClassicalAutomaton:
    """Outer sphere at ``x`` as (support minus inner sphere) plus the stripe."""
    return automata.union(automata.difference(full, inner_x, state_cap), stripe_x)


def inner_from_outer(full, outer_x, stripe_x, state_cap=None) -> ClassicalAutomaton:
    """Inner sphere at ``x`` as (support minus outer sphere) plus the stripe."""
    return automata.union(automata.difference(full, outer_x, state_cap), stripe_x)
