"""Regular path query syntax: tokenizer, recursive-descent parser, compiler.

Grammar::

    alt     := concat ('|' concat)*
    concat  := postfix (['.'] postfix)*
    postfix := atom ('*' | '+' | '?')*
    atom    := IDENT | '(' ')' | '(' alt ')'

Concatenation is either an explicit ``.`` or juxtaposition (``r s``,
``r(s)``).  ``()`` is the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .automata import ClassicalAutomaton, trim
from .errors import RpqSyntaxError


class RpqExpression:
    """Base class of the query AST."""

    def symbols(self) -> frozenset:
        return frozenset()


@dataclass(frozen=True)
class Symbol(RpqExpression):
    name: str

    def symbols(self):
        return frozenset({self.name})


@dataclass(frozen=True)
class Epsilon(RpqExpression):
    pass


@dataclass(frozen=True)
class EmptyLanguage(RpqExpression):
    pass


@dataclass(frozen=True)
class Concat(RpqExpression):
    left: RpqExpression
    right: RpqExpression

    def symbols(self):
        return self.left.symbols() | self.right.symbols()


@dataclass(frozen=True)
class Alt(RpqExpression):
    left: RpqExpression
    right: RpqExpression

    def symbols(self):
        return self.left.symbols() | self.right.symbols()


@dataclass(frozen=True)
class Star(RpqExpression):
    inner: RpqExpression

    def symbols(self):
        return self.inner.symbols()


@dataclass(frozen=True)
class Plus(RpqExpression):
    inner: RpqExpression

    def symbols(self):
        return self.inner.symbols()


@dataclass(frozen=True)
class Optional(RpqExpression):
    inner: RpqExpression

    def symbols(self):
        return self.inner.symbols()


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([|.*+?()]))")
_ATOM_START = {"ident", "("}


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            at = pos + len(rest) - len(stripped)
            raise RpqSyntaxError(f"unexpected character {stripped[0]!r}", at)
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            tokens.append(("ident", m.group(1), start))
        else:
            tokens.append((m.group(2), m.group(2), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def kind(self):
        return self.tokens[self.i][0]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message):
        kind, value, pos = self.tokens[self.i]
        found = "end of input" if kind == "end" else repr(value)
        raise RpqSyntaxError(f"{message}, found {found}", pos)

    def parse(self):
        expr = self.alt()
        if self.kind != "end":
            self.fail("expected operator or end of input")
        return expr

    def alt(self):
        expr = self.concat()
        while self.kind == "|":
            self.advance()
            expr = Alt(expr, self.concat())
        return expr

    def concat(self):
        expr = self.postfix()
        while True:
            if self.kind == ".":
                self.advance()
                expr = Concat(expr, self.postfix())
            elif self.kind in _ATOM_START:
                expr = Concat(expr, self.postfix())
            else:
                return expr

    def postfix(self):
        expr = self.atom()
        while self.kind in ("*", "+", "?"):
            op = self.advance()[0]
            expr = {"*": Star, "+": Plus, "?": Optional}[op](expr)
        return expr

    def atom(self):
        if self.kind == "ident":
            return Symbol(self.advance()[1])
        if self.kind == "(":
            self.advance()
            if self.kind == ")":
                self.advance()
                return Epsilon()
            expr = self.alt()
            if self.kind != ")":
                self.fail("expected ')'")
            self.advance()
            return expr
        self.fail("expected a label or '('")


def parse_rpq(text: str) -> RpqExpression:
    """Parse query text into an AST; raises :class:`RpqSyntaxError` with a position."""
    return _Parser(text).parse()


class _Thompson:
    """Epsilon-NFA fragments built bottom-up; each fragment is (start, accept)."""

    def __init__(self):
        self.count = 0
        self.arcs = []  # (src, label or None, dst)

    def new(self):
        self.count += 1
        return self.count - 1

    def build(self, e):
        s, f = self.new(), self.new()
        if isinstance(e, Symbol):
            self.arcs.append((s, e.name, f))
        elif isinstance(e, Epsilon):
            self.arcs.append((s, None, f))
        elif isinstance(e, EmptyLanguage):
            pass
        elif isinstance(e, Concat):
            s1, f1 = self.build(e.left)
            s2, f2 = self.build(e.right)
            self.arcs += [(s, None, s1), (f1, None, s2), (f2, None, f)]
        elif isinstance(e, Alt):
            for part in (e.left, e.right):
                s1, f1 = self.build(part)
                self.arcs += [(s, None, s1), (f1, None, f)]
        elif isinstance(e, (Star, Plus, Optional)):
            s1, f1 = self.build(e.inner)
            self.arcs += [(s, None, s1), (f1, None, f)]
            if not isinstance(e, Plus):
                self.arcs.append((s, None, f))
            if not isinstance(e, Optional):
                self.arcs.append((f1, None, s1))
        else:
            raise TypeError(f"not an RPQ expression: {e!r}")
        return s, f


def compile_rpq(expr: RpqExpression) -> ClassicalAutomaton:
    """Epsilon-free NFA for ``expr`` (Thompson construction, then closure removal)."""
    if isinstance(expr, str):
        expr = parse_rpq(expr)
    t = _Thompson()
    start, accept = t.build(expr)
    eps: dict = {}
    labelled = []
    for src, label, dst in t.arcs:
        if label is None:
            eps.setdefault(src, []).append(dst)
        else:
            labelled.append((src, label, dst))

    def closure(q):
        seen = {q}
        stack = [q]
        while stack:
            for r in eps.get(stack.pop(), ()):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return seen

    by_src: dict = {}
    for src, label, dst in labelled:
        by_src.setdefault(src, []).append((label, dst))
    transitions = []
    finals = set()
    for q in range(t.count):
        cl = closure(q)
        if accept in cl:
            finals.add(q)
        for p in cl:
            for label, dst in by_src.get(p, ()):
                transitions.append((q, label, dst))
    nfa = ClassicalAutomaton(t.count, expr.symbols(), transitions, start, finals)
    return trim(nfa)
