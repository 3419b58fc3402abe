"""Totally ordered, discrete semirings used to weight edges and transitions.

Weights are plain Python values: ``bool`` for the Boolean semiring, ``int``
for the others, and :data:`INF` for the zero of the tropical and fuzzy
semirings.  Smaller in the order means *better*.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Any, Callable, Iterable, Optional

from .errors import SemiringError

INF = math.inf

Weight = Any


class Semiring:
    """A semiring ``(R, plus, times, zero, one)`` with a discrete total order.

    ``add`` and ``mul`` are the raw operations used on hot paths; ``plus`` and
    ``times`` check that both operands are carrier members first.
    """

    def __init__(
        self,
        name: str,
        zero: Weight,
        one: Weight,
        add: Callable[[Weight, Weight], Weight],
        mul: Callable[[Weight, Weight], Weight],
        le: Callable[[Weight, Weight], bool],
        next_worse: Callable[[Weight], Optional[Weight]],
        previous_better: Callable[[Weight], Optional[Weight]],
        member: Callable[[Weight], bool],
        idempotent: bool,
    ):
        self.name = name
        self.zero = zero
        self.one = one
        self.add = add
        self.mul = mul
        self._le = le
        self._next = next_worse
        self._prev = previous_better
        self._member = member
        self.idempotent = idempotent

    def __repr__(self):
        return f"Semiring({self.name!r})"

    def __reduce__(self):
        return (get_semiring, (self.name,))

    def is_member(self, x: Weight) -> bool:
        return self._member(x)

    def check(self, x: Weight) -> Weight:
        if not self._member(x):
            raise SemiringError(f"{x!r} is not an element of the {self.name} semiring")
        return x

    def plus(self, x: Weight, y: Weight) -> Weight:
        return self.add(self.check(x), self.check(y))

    def times(self, x: Weight, y: Weight) -> Weight:
        return self.mul(self.check(x), self.check(y))

    def leq(self, x: Weight, y: Weight) -> bool:
        """True when ``x`` is at least as good as ``y``."""
        return self._le(self.check(x), self.check(y))

    def lt(self, x: Weight, y: Weight) -> bool:
        return self.leq(x, y) and x != y

    def next_worse(self, x: Weight) -> Optional[Weight]:
        return self._next(self.check(x))

    def previous_better(self, x: Weight) -> Optional[Weight]:
        return self._prev(self.check(x))

    def sum(self, values: Iterable[Weight]) -> Weight:
        return reduce(self.add, values, self.zero)

    def product(self, values: Iterable[Weight]) -> Weight:
        return reduce(self.mul, values, self.one)

    def sort_key(self, x: Weight):
        # T sorts before F, matching the order T < F
        if self.name == "boolean":
            return 0 if x else 1
        return x

    def parse_weight(self, token: str) -> Weight:
        """Parse the text form of a weight.

        ``inf`` is rejected on purpose: it denotes the tropical/fuzzy zero,
        which may never label an edge or a transition.
        """
        if self.name == "boolean":
            if token == "t":
                return True
            if token == "f":
                return False
            raise SemiringError(f"boolean weight must be 't' or 'f', got {token!r}")
        if token == "inf":
            raise SemiringError("weight 'inf' is the semiring zero and is not allowed")
        if not token.isdigit() or not token.isascii():
            raise SemiringError(f"{self.name} weight must be a nonnegative integer, got {token!r}")
        return int(token)

    def format_weight(self, x: Weight) -> str:
        if self.name == "boolean":
            return "t" if x else "f"
        if x == INF:
            return "inf"
        return str(x)


def _is_nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def _is_nat_inf(x) -> bool:
    return _is_nat(x) or (isinstance(x, float) and x == INF)


def _pred_nat(x):
    if x == INF or x == 0:
        return None
    return x - 1


BOOLEAN = Semiring(
    "boolean",
    zero=False,
    one=True,
    add=lambda x, y: x or y,
    mul=lambda x, y: x and y,
    le=lambda x, y: x or not y,
    next_worse=lambda x: False if x else None,
    previous_better=lambda x: None if x else True,
    member=lambda x: isinstance(x, bool),
    idempotent=True,
)

TROPICAL = Semiring(
    "tropical",
    zero=INF,
    one=0,
    add=min,
    mul=lambda x, y: x + y,
    le=lambda x, y: x <= y,
    next_worse=lambda x: None if x == INF else x + 1,
    previous_better=_pred_nat,
    member=_is_nat_inf,
    idempotent=True,
)

FUZZY = Semiring(
    "fuzzy",
    zero=INF,
    one=0,
    add=min,
    mul=max,
    le=lambda x, y: x <= y,
    next_worse=lambda x: None if x == INF else x + 1,
    previous_better=_pred_nat,
    member=_is_nat_inf,
    idempotent=True,
)

# Python ints are unbounded, so products and sums never wrap around.
MULTIPLICITY = Semiring(
    "multiplicity",
    zero=0,
    one=1,
    add=lambda x, y: x + y,
    mul=lambda x, y: x * y,
    le=lambda x, y: x <= y,
    next_worse=lambda x: x + 1,
    previous_better=_pred_nat,
    member=_is_nat,
    idempotent=False,
)

SEMIRINGS = {s.name: s for s in (BOOLEAN, TROPICAL, FUZZY, MULTIPLICITY)}


def get_semiring(name) -> Semiring:
    if isinstance(name, Semiring):
        return name
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise SemiringError(
            f"unknown semiring {name!r}; expected one of {', '.join(SEMIRINGS)}"
        ) from None
