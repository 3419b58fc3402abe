"""Provenance for regular path queries over semiring-weighted graph databases."""

from .annotated import AnnotatedAutomaton, AnnotatedWord, enumerate_annotated, support, word_weight
from .automata import ClassicalAutomaton, accepts, contains, enumerate_words
from .errors import (
    FormatError,
    MissingBoundError,
    RpqProvError,
    RpqSyntaxError,
    SemiringError,
    StateCapExceeded,
    UnknownObjectError,
)
from .graphdb import AnswerEntry, Database, answers, load_database, reasons_automaton, reasons_enumerate
from .provenance import ComparisonConfig, DominanceVerdict, compare, compare_pairs, dominates, oracle_dominates
from .regex import compile_rpq, parse_rpq
from .semiring import BOOLEAN, FUZZY, INF, MULTIPLICITY, TROPICAL, Semiring, get_semiring

__version__ = "0.1.0"
