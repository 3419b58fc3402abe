"""Weighted graph databases, regular path query answers, and reason automata."""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple, Optional

from . import automata
from .annotated import AnnotatedAutomaton, enumerate_annotated
from .annotated import trim as annotated_trim
from .automata import ClassicalAutomaton
from .errors import FormatError, SemiringError, StateCapExceeded, UnknownObjectError, resolve_state_cap
from .semiring import Semiring, Weight, get_semiring

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Edge(NamedTuple):
    src: str
    label: str
    weight: Weight
    dst: str


@dataclass(frozen=True, eq=False)
class Database:
    semiring: Semiring
    objects: tuple
    edges: tuple
    alphabet: frozenset

    @classmethod
    def build(cls, semiring, edges, objects=(), alphabet=()):
        sr = get_semiring(semiring)
        edges = {Edge(*e) for e in edges}
        objs = set(objects)
        for e in edges:
            sr.check(e.weight)
            if e.weight == sr.zero:
                raise SemiringError(f"edge {tuple(e)} carries the semiring zero")
            objs.update((e.src, e.dst))
        return cls(
            sr,
            tuple(sorted(objs)),
            tuple(sorted(edges, key=lambda e: (e.src, e.label, sr.sort_key(e.weight), e.dst))),
            frozenset(alphabet) | {e.label for e in edges},
        )

    @cached_property
    def out(self) -> dict:
        """``object -> label -> list of (weight, dst)``."""
        table: dict = {}
        for e in self.edges:
            table.setdefault(e.src, {}).setdefault(e.label, []).append((e.weight, e.dst))
        return table

    def check_object(self, obj):
        if obj not in self._object_set:
            raise UnknownObjectError(obj)

    @cached_property
    def _object_set(self):
        return frozenset(self.objects)


@dataclass(frozen=True)
class DbPath:
    """A nonempty edge sequence, or the empty path at ``origin``."""

    edges: tuple
    semiring: Semiring
    origin: Optional[str] = None

    @property
    def start(self):
        return self.edges[0].src if self.edges else self.origin

    @property
    def end(self):
        return self.edges[-1].dst if self.edges else self.origin

    @property
    def label(self) -> tuple:
        return tuple(e.label for e in self.edges)

    @property
    def weight(self) -> Weight:
        return self.semiring.product(e.weight for e in self.edges)


class AnswerEntry(NamedTuple):
    source: str
    target: str
    weight: Weight
    unbounded: bool = False


def load_database(text: str, semiring) -> Database:
    """Parse ``<src> <label> <weight> <dst>`` lines.

    Boolean graphs may omit the weight column.  Zero weights are rejected.
    """
    sr = get_semiring(semiring)
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        if len(fields) == 3 and sr.name == "boolean":
            fields = [fields[0], fields[1], "t", fields[2]]
        if len(fields) != 4:
            raise FormatError("expected '<src> <label> <weight> <dst>'", lineno)
        src, label, token, dst = fields
        for ident in (src, label, dst):
            if not _IDENT.fullmatch(ident):
                raise FormatError(f"{ident!r} is not an identifier", lineno)
        try:
            weight = sr.parse_weight(token)
        except SemiringError as exc:
            raise FormatError(str(exc), lineno) from None
        if weight == sr.zero:
            raise FormatError(f"zero-weight edge {src} {label} {token} {dst}", lineno)
        edges.append((src, label, weight, dst))
    return Database.build(sr, edges)


def _query_for(q: ClassicalAutomaton, sr: Semiring, state_cap) -> ClassicalAutomaton:
    # A non-idempotent sum would count a database path once per query run.
    if sr.idempotent:
        return q
    return automata.trim(automata.determinize(q, state_cap=state_cap))


def reasons_automaton(q: ClassicalAutomaton, d: Database, a, b, state_cap=None) -> AnnotatedAutomaton:
    """Lazy product of the query automaton with ``d`` started at ``(initial, a)``.

    Only pairs reachable from the start are materialized.  The result's
    behavior is the reason language of the answer pair ``(a, b)``.
    """
    d.check_object(a)
    d.check_object(b)
    cap = resolve_state_cap(state_cap)
    sr = d.semiring
    q = _query_for(q, sr, cap)
    start = (q.initial, a)
    index = {start: 0}
    order = [start]
    transitions = []
    i = 0
    while i < len(order):
        p, v = order[i]
        q_row = q.delta.get(p, {})
        d_row = d.out.get(v, {})
        for label in sorted(q_row.keys() & d_row.keys()):
            for p2 in q_row[label]:
                for weight, v2 in d_row[label]:
                    pair = (p2, v2)
                    if pair not in index:
                        if len(order) >= cap:
                            raise StateCapExceeded(cap, "reasons product")
                        index[pair] = len(order)
                        order.append(pair)
                    transitions.append((i, label, weight, index[pair]))
        i += 1
    finals = {i for i, (p, v) in enumerate(order) if v == b and p in q.finals}
    automaton = AnnotatedAutomaton(
        sr,
        len(order),
        q.alphabet | d.alphabet,
        transitions,
        0,
        finals,
        tuple(f"p{p}_{v}" for p, v in order),
    )
    # drop pairs that never reach (final, b)
    return annotated_trim(automaton)


def reasons_enumerate(q, d, a, b, max_len, state_cap=None) -> list:
    return enumerate_annotated(reasons_automaton(q, d, a, b, state_cap), max_len)


class _Product:
    """Product of the query automaton with the whole database, built once."""

    def __init__(self, q, d, cap):
        self.q = q
        self.d = d
        self.cap = cap
        self.index: dict = {}
        self.states: list = []
        self.succ: list = []

    def node(self, pair):
        idx = self.index.get(pair)
        if idx is None:
            if len(self.states) >= self.cap:
                raise StateCapExceeded(self.cap, "answers product")
            idx = self.index[pair] = len(self.states)
            self.states.append(pair)
            self.succ.append(None)
        return idx

    def successors(self, i):
        """List of ``(weight, j)``; computed on first use."""
        if self.succ[i] is None:
            p, v = self.states[i]
            q_row = self.q.delta.get(p, {})
            d_row = self.d.out.get(v, {})
            out = []
            for label in sorted(q_row.keys() & d_row.keys()):
                for p2 in q_row[label]:
                    for weight, v2 in d_row[label]:
                        out.append((weight, self.node((p2, v2))))
            self.succ[i] = out
        return self.succ[i]

    def is_final(self, i):
        return self.states[i][0] in self.q.finals


def _reach(prod, src):
    seen = {src}
    stack = [src]
    while stack:
        for _, j in prod.successors(stack.pop()):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def _label_setting(prod, src, sr):
    """Dijkstra with ``sr.mul`` as path extension; valid for min-plus and min-max
    over naturals since extending a path never makes it better."""
    best = {src: sr.one}
    heap = [(sr.one, src)]
    done = set()
    while heap:
        w, i = heapq.heappop(heap)
        if i in done:
            continue
        done.add(i)
        for weight, j in prod.successors(i):
            cand = sr.mul(w, weight)
            if j not in best or cand < best[j]:
                best[j] = cand
                heapq.heappush(heap, (cand, j))
    return best


def _count_paths(prod, src, nodes, targets):
    """Number of paths from ``src`` into ``targets`` inside ``nodes``, or None
    when the subgraph of useful nodes has a cycle (infinitely many paths)."""
    back: dict = {}
    for i in nodes:
        for _, j in prod.successors(i):
            if j in nodes:
                back.setdefault(j, []).append(i)
    useful = set(targets)
    stack = list(targets)
    while stack:
        for i in back.get(stack.pop(), ()):
            if i not in useful:
                useful.add(i)
                stack.append(i)
    indeg = {i: 0 for i in useful}
    for i in useful:
        for _, j in prod.successors(i):
            if j in useful:
                indeg[j] += 1
    ready = [i for i in useful if indeg[i] == 0]
    topo = []
    while ready:
        i = ready.pop()
        topo.append(i)
        for _, j in prod.successors(i):
            if j in useful:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
    if len(topo) != len(useful):
        return None
    count = {i: 0 for i in useful}
    count[src] = 1
    for i in topo:
        for weight, j in prod.successors(i):
            if j in useful:
                count[j] += count[i] * weight
    return sum(count[t] for t in targets)


def answers(q: ClassicalAutomaton, d: Database, state_cap=None) -> list:
    """``Ans(Q, D)`` sorted by (source, target).

    Multiplicity answers whose path set is infinite come back with
    ``unbounded=True`` and weight ``None``.
    """
    cap = resolve_state_cap(state_cap)
    sr = d.semiring
    q = _query_for(q, sr, cap)
    prod = _Product(q, d, cap)
    result = []
    for a in d.objects:
        src = prod.node((q.initial, a))
        if sr.name in ("tropical", "fuzzy"):
            best = _label_setting(prod, src, sr)
            per_target: dict = {}
            for i, w in best.items():
                if prod.is_final(i):
                    v = prod.states[i][1]
                    per_target[v] = sr.add(per_target[v], w) if v in per_target else w
            result += [AnswerEntry(a, b, w) for b, w in per_target.items()]
            continue
        nodes = _reach(prod, src)
        targets: dict = {}
        for i in nodes:
            if prod.is_final(i):
                targets.setdefault(prod.states[i][1], []).append(i)
        for b, finals in targets.items():
            if sr.name == "boolean":
                result.append(AnswerEntry(a, b, True))
                continue
            total = _count_paths(prod, src, nodes, finals)
            if total is None:
                result.append(AnswerEntry(a, b, None, True))
            else:
                result.append(AnswerEntry(a, b, total))
    return sorted(result, key=lambda e: (e.source, e.target))


def iter_paths(d: Database, source, max_len) -> Iterator[DbPath]:
    """Every path from ``source`` with at most ``max_len`` edges, the empty path first.

    Brute force; exponential in ``max_len``.
    """
    d.check_object(source)

    def walk(v, prefix):
        yield DbPath(prefix, d.semiring, source)
        if len(prefix) == max_len:
            return
        for e in d.edges:
            if e.src == v:
                yield from walk(e.dst, prefix + (e,))

    yield from walk(source, ())
