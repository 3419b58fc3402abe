"""Deciding whether one annotated language dominates another.

``dominates(l1, l2)`` holds when every word of ``l1`` also appears in ``l2``
with a weight at least as good.  It is evaluated on classical automata
alone: the support of ``l1`` must be contained in that of ``l2``, and for
every weight ``x`` realized by ``l2``, the words of ``l1`` that ``l2``
weights exactly ``x`` must lie in the ``x``-outer sphere of ``l1``.

Boolean and fuzzy inputs are always decided.  Tropical and multiplicity
inputs need a user-supplied weight bound, and the answer is ``None``
(unknown) when some word of either language is weighted beyond it.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from . import automata
from .annotated import AnnotatedAutomaton, support, trim, word_weight
from .automata import format_word
from .errors import MissingBoundError, SemiringError, resolve_state_cap
from .graphdb import Database, reasons_automaton
from .semiring import Semiring, get_semiring
from .spheres import (
    inner_sphere,
    multiplicity_expand,
    multiplicity_outer_sphere_support,
    outer_from_inner,
    stripe_support,
)

LEFT = "left-dominates"
RIGHT = "right-dominates"
EQUAL = "equal"
INCOMPARABLE = "incomparable"
UNKNOWN = "unknown"

# Limitedness of distance automata and boundedness over the naturals are
# decidable, with worst-case bounds 2**(4n**3 + n*lg(n+2) + n) (tropical) and
# 2**(n*lg(n) + 2.0566n) (multiplicity) for n states.  Those procedures are not
# implemented; callers pass an explicit bound instead.


@dataclass(frozen=True)
class ComparisonConfig:
    semiring: Semiring
    bound: Optional[int] = None
    oracle_max_len: int = 8
    state_cap: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "semiring", get_semiring(self.semiring))
        if self.bound is not None and self.bound < 0:
            raise ValueError("bound must be nonnegative")

    def require_bound(self) -> int:
        if self.bound is None:
            raise MissingBoundError(
                f"the {self.semiring.name} semiring needs an explicit weight bound"
            )
        return self.bound


@dataclass(frozen=True)
class DirectionResult:
    """Outcome of one ``dominates`` call.

    ``holds`` is None when the bound was exceeded; ``witness`` is then a word
    weighted beyond the bound.  On failure ``failed_condition`` is 1 (support
    containment) or 2 (a weight comparison, at weight ``at_weight``).
    """

    holds: Optional[bool]
    failed_condition: Optional[int] = None
    witness: Optional[tuple] = None
    at_weight: object = None

    def to_record(self, semiring: Semiring) -> dict:
        return {
            "holds": self.holds,
            "failed_condition": self.failed_condition,
            "witness": None if self.witness is None else format_word(self.witness),
            "at_weight": None if self.at_weight is None else semiring.format_weight(self.at_weight),
        }


@dataclass(frozen=True)
class DominanceVerdict:
    relation: str
    forward: DirectionResult  # left <= right
    backward: DirectionResult  # right <= left
    semiring: Semiring
    bound: Optional[int] = None

    def to_record(self) -> dict:
        return {
            "relation": self.relation,
            "semiring": self.semiring.name,
            "bound": self.bound,
            "left_le_right": self.forward.to_record(self.semiring),
            "right_le_left": self.backward.to_record(self.semiring),
        }


class _Spheres:
    """Sphere supports of one language, computed on demand and cached."""

    def __init__(self, a: AnnotatedAutomaton, cap):
        self.a = a
        self.cap = cap
        self.full = support(a)
        self._inner: dict = {}
        self._outer: dict = {}
        self._expanded = None

    def inner(self, x):
        if x not in self._inner:
            self._inner[x] = support(inner_sphere(self.a, x, self.cap))
        return self._inner[x]

    def inner_family(self, x):
        sr = self.a.semiring
        levels = [x]
        prev = sr.previous_better(x)
        if prev is not None:
            levels.append(prev)
        return {y: self.inner(y) for y in levels}

    def inner_stripe(self, x):
        return stripe_support(self.inner_family(x), x, self.a.semiring, "inner", self.cap)

    def outer_via_inner(self, x):
        return outer_from_inner(self.full, self.inner(x), self.inner_stripe(x), self.cap)

    def outer(self, k):
        """Multiplicity outer sphere support at ``k``."""
        if k not in self._outer:
            if k == 0:
                self._outer[k] = self.full
            else:
                if self._expanded is None:
                    self._expanded = multiplicity_expand(trim(self.a))
                self._outer[k] = multiplicity_outer_sphere_support(self._expanded, k, self.cap)
        return self._outer[k]

    def outer_stripe(self, k):
        family = {k: self.outer(k), k + 1: self.outer(k + 1)}
        return stripe_support(family, k, self.a.semiring, "outer", self.cap)


def _config(l1, l2, cfg) -> ComparisonConfig:
    if cfg is None:
        cfg = ComparisonConfig(l1.semiring)
    for a in (l1, l2):
        if a.semiring is not cfg.semiring:
            raise SemiringError(
                f"automaton over {a.semiring.name} compared under {cfg.semiring.name}"
            )
    return cfg


_SCAN_BUDGET = 4096


def _scan_for_count_above(a: AnnotatedAutomaton, bound, budget=_SCAN_BUDGET):
    """Look for a word counted more than ``bound`` times, shortest first.

    Words are visited in the order :func:`automata.shortest_word` prefers,
    so a hit is the same word the outer sphere would yield.  Returns
    ``(word, settled)``: ``settled`` is False when the budget ran out first.
    """
    useful = automata.coreachable(support(a))
    if a.initial not in useful:
        return None, True
    queue = deque([((), {a.initial: 1})])
    for _ in range(budget):
        if not queue:
            return None, True
        word, counts = queue.popleft()
        if sum(c for q, c in counts.items() if q in a.finals) > bound:
            return word, True
        step: dict = {}
        for q, c in counts.items():
            for label, targets in a.arcs.get(q, {}).items():
                row = step.setdefault(label, {})
                for w, dst in targets:
                    if dst in useful:
                        row[dst] = row.get(dst, 0) + c * w
        for label in sorted(step):
            queue.append((word + (label,), step[label]))
    return None, not queue


def _beyond_bound(sph: _Spheres, bound, cap) -> Optional[tuple]:
    """Shortest word of ``sph.a`` weighted worse than ``bound``, if any."""
    if sph.a.semiring.name == "tropical":
        over = automata.difference(sph.full, sph.inner(bound), cap)
    else:
        # a cheap shortlex scan settles most cases before building B^(bound+1)
        word, settled = _scan_for_count_above(sph.a, bound)
        if settled:
            return word
        over = sph.outer(bound + 1)
    return automata.shortest_word(over)


def _decide(s1: _Spheres, s2: _Spheres, cfg: ComparisonConfig, levels) -> DirectionResult:
    sr = cfg.semiring
    cap = resolve_state_cap(cfg.state_cap)
    missing = automata.shortest_word(automata.difference(s1.full, s2.full, cap))
    if missing is not None:
        return DirectionResult(False, 1, missing)
    if sr.name == "boolean":
        return DirectionResult(True)
    for x in levels:
        if sr.name == "multiplicity":
            stripe2 = s2.outer_stripe(x)
        else:
            stripe2 = s2.inner_stripe(x)
        if automata.is_empty(stripe2):
            continue
        if sr.name == "multiplicity":
            outer1 = s1.outer(x)
        else:
            outer1 = s1.outer_via_inner(x)
        shared = automata.intersect(stripe2, s1.full, cap)
        bad = automata.shortest_word(automata.difference(shared, outer1, cap))
        if bad is not None:
            return DirectionResult(False, 2, bad, x)
    return DirectionResult(True)


def _levels(sph2: _Spheres, cfg: ComparisonConfig):
    sr = cfg.semiring
    if sr.name == "fuzzy":
        # realized word weights lie among the transition weights and the one
        return sorted(sph2.a.weights() | {sr.one})
    if sr.name == "tropical":
        return range(0, cfg.bound + 1)
    if sr.name == "multiplicity":
        return range(1, cfg.bound + 1)
    return ()


def _prepare(l1, l2, cfg):
    """Config, sphere caches, and the bound-exceeded result if there is one."""
    cfg = _config(l1, l2, cfg)
    cap = resolve_state_cap(cfg.state_cap)
    s1, s2 = _Spheres(l1, cap), _Spheres(l2, cap)
    if cfg.semiring.name in ("tropical", "multiplicity"):
        bound = cfg.require_bound()
        for sph in (s1, s2):
            over = _beyond_bound(sph, bound, cap)
            if over is not None:
                return cfg, s1, s2, DirectionResult(None, witness=over)
    return cfg, s1, s2, None


def dominance(l1: AnnotatedAutomaton, l2: AnnotatedAutomaton, cfg=None) -> DirectionResult:
    """Detailed form of :func:`dominates` carrying the witness word."""
    cfg, s1, s2, unknown = _prepare(l1, l2, cfg)
    if unknown is not None:
        return unknown
    return _decide(s1, s2, cfg, _levels(s2, cfg))


def dominates(l1: AnnotatedAutomaton, l2: AnnotatedAutomaton, cfg=None) -> Optional[bool]:
    """True when ``l1 <= l2``, False when not, None when the bound is exceeded."""
    return dominance(l1, l2, cfg).holds


def compare(l1: AnnotatedAutomaton, l2: AnnotatedAutomaton, cfg=None) -> DominanceVerdict:
    cfg, s1, s2, unknown = _prepare(l1, l2, cfg)
    if unknown is not None:
        forward = backward = unknown
    else:
        forward = _decide(s1, s2, cfg, _levels(s2, cfg))
        backward = _decide(s2, s1, cfg, _levels(s1, cfg))
    if forward.holds is None or backward.holds is None:
        relation = UNKNOWN
    elif forward.holds and backward.holds:
        relation = EQUAL
    elif forward.holds:
        relation = LEFT
    elif backward.holds:
        relation = RIGHT
    else:
        relation = INCOMPARABLE
    return DominanceVerdict(relation, forward, backward, cfg.semiring, cfg.bound)


def compare_pairs(q, d: Database, pair1, pair2, cfg=None) -> DominanceVerdict:
    if cfg is None:
        cfg = ComparisonConfig(d.semiring)
    cap = cfg.state_cap
    l1 = reasons_automaton(q, d, pair1[0], pair1[1], cap)
    l2 = reasons_automaton(q, d, pair2[0], pair2[1], cap)
    return compare(l1, l2, cfg)


def _words(alphabet, max_len):
    symbols = sorted(alphabet)
    for n in range(max_len + 1):
        yield from itertools.product(symbols, repeat=n)


def oracle_dominates(l1: AnnotatedAutomaton, l2: AnnotatedAutomaton, max_len: int, cfg=None) -> bool:
    """Pointwise check of ``l1 <= l2`` over every word up to ``max_len``.

    Uses only word weights, never spheres; exact whenever the window covers
    every counterexample.
    """
    cfg = _config(l1, l2, cfg)
    sr = cfg.semiring
    for w in _words(l1.alphabet, max_len):
        x = word_weight(l1, w)
        if x == sr.zero:
            continue
        y = word_weight(l2, w)
        if y == sr.zero or not sr.leq(y, x):
            return False
    return True


def oracle_exceeds(a: AnnotatedAutomaton, bound: int, max_len: int) -> Optional[tuple]:
    """First word up to ``max_len`` whose weight is strictly worse than ``bound``."""
    sr = a.semiring
    for w in _words(a.alphabet, max_len):
        x = word_weight(a, w)
        if x != sr.zero and not sr.leq(x, bound):
            return w
    return None
