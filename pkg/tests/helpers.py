"""Random instance generators and brute-force oracles shared by the tests.

The oracles deliberately avoid the package's own algorithms: word weights
are summed over explicitly enumerated transition paths, query membership
goes through Python's ``re`` module, and database paths are enumerated edge
by edge.
"""

import itertools
import re

from rpqprov.annotated import AnnotatedAutomaton
from rpqprov.graphdb import Database
from rpqprov.semiring import get_semiring

LABELS = ("r", "s")


def random_weight(rng, sr, max_weight=5):
    if sr.name == "boolean":
        return True
    if sr.name == "multiplicity":
        return rng.randint(1, max_weight)
    return rng.randint(0, max_weight)


def random_annotated(rng, semiring, max_states=5, labels=LABELS, max_weight=5, max_transitions=None, acyclic=False):
    sr = get_semiring(semiring)
    n = rng.randint(1, max_states)
    if max_transitions is None:
        max_transitions = 2 * n + 2
    transitions = []
    for _ in range(rng.randint(0, max_transitions)):
        src = rng.randrange(n)
        dst = rng.randrange(n)
        if acyclic:
            if src == n - 1:
                continue
            dst = rng.randint(src + 1, n - 1)
        transitions.append((src, rng.choice(labels), random_weight(rng, sr, max_weight), dst))
    finals = {q for q in range(n) if rng.random() < 0.4}
    return AnnotatedAutomaton(sr, n, frozenset(labels), transitions, 0, finals)


def brute_word_weight(a, word):
    """Sum over explicitly enumerated accepting paths of the path products."""
    sr = a.semiring
    total = sr.zero
    word = tuple(word)

    def walk(state, i, acc):
        nonlocal total
        if i == len(word):
            if state in a.finals:
                total = sr.add(total, acc)
            return
        for src, label, weight, dst in a.transitions:
            if src == state and label == word[i]:
                walk(dst, i + 1, sr.mul(acc, weight))

    walk(a.initial, 0, sr.one)
    return total


def all_words(labels, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(sorted(labels), repeat=n)


def brute_language(a, max_len):
    """``{word: weight}`` for non-zero words up to ``max_len`` via the path oracle."""
    sr = a.semiring
    out = {}
    for w in all_words(a.alphabet, max_len):
        x = brute_word_weight(a, w)
        if x != sr.zero:
            out[w] = x
    return out


def random_regex(rng, depth, labels=LABELS):
    """A random query as ``(rpq_text, python_regex)``."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.1:
            return "()", "(?:)"
        s = rng.choice(labels)
        return s, s
    op = rng.choice(["cat", "cat", "alt", "star", "plus", "opt"])
    if op in ("cat", "alt"):
        a_txt, a_re = random_regex(rng, depth - 1, labels)
        b_txt, b_re = random_regex(rng, depth - 1, labels)
        if op == "cat":
            sep = rng.choice([".", " "])
            return f"({a_txt}){sep}({b_txt})", f"(?:{a_re})(?:{b_re})"
        return f"({a_txt}|{b_txt})", f"(?:{a_re}|{b_re})"
    inner_txt, inner_re = random_regex(rng, depth - 1, labels)
    sym = {"star": "*", "plus": "+", "opt": "?"}[op]
    return f"({inner_txt}){sym}", f"(?:{inner_re}){sym}"


def regex_matches(py_regex, word):
    return re.fullmatch(py_regex, "".join(word)) is not None


def random_database(rng, semiring, max_objects=5, max_edges=10, labels=LABELS, max_weight=5):
    sr = get_semiring(semiring)
    objects = [f"o{i}" for i in range(rng.randint(1, max_objects))]
    edges = []
    for _ in range(rng.randint(0, max_edges)):
        edges.append((rng.choice(objects), rng.choice(labels), random_weight(rng, sr, max_weight), rng.choice(objects)))
    return Database.build(sr, edges, objects=objects)


def db_paths(d, source, max_len):
    """Every database path from ``source`` of at most ``max_len`` edges as
    ``(end, label, weight)``, built edge by edge."""
    sr = d.semiring
    out = []

    def walk(v, label, weight):
        out.append((v, label, weight))
        if len(label) == max_len:
            return
        for src, lab, w, dst in d.edges:
            if src == v:
                walk(dst, label + (lab,), sr.mul(weight, w))

    walk(source, (), sr.one)
    return out


def reasons_oracle(d, py_regex, a, b, max_len):
    """``{word: weight}`` of reasons for ``(a, b)`` over paths up to ``max_len``."""
    sr = d.semiring
    out = {}
    for end, label, weight in db_paths(d, a, max_len):
        if end == b and regex_matches(py_regex, label):
            out[label] = sr.add(out[label], weight) if label in out else weight
    return out
