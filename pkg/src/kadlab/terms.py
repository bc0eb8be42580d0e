"""Term language for Kleene algebra expressions with tests, domain and range.

Terms are immutable trees over the signature 0, 1, +, ;, *, !, a, d, r, ar
and the box operator [x]y.  Box, d and r are sugar: ``desugar`` rewrites
them into the antidomain/antirange primitives, so concrete models only ever
interpret +, ;, *, !, a and ar.

Concrete syntax (see ``parse_term``): multiplication is written ``;`` to
keep it apart from test conjunction, ``!`` complements tests, ``*`` is
postfix star, and ``!``/``*`` bind tighter than ``;`` which binds tighter
than ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional

from .errors import ParseError, SortError

__all__ = [
    "Term", "Zero", "One", "Var", "TestVar", "Plus", "Times", "Star", "Not",
    "ADom", "Dom", "ARan", "Ran", "Box", "ZERO", "ONE",
    "Sort", "Env", "sort_of", "desugar", "parse_term", "print_term",
    "variables", "DEFAULT_TEST_INITIALS",
]


class Term:
    """Base class for term nodes; all subclasses are frozen dataclasses."""

    def __str__(self):
        return print_term(self)


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class TestVar(Term):
    name: str


@dataclass(frozen=True)
class Plus(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Times(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Star(Term):
    arg: Term


@dataclass(frozen=True)
class Not(Term):
    arg: Term


@dataclass(frozen=True)
class ADom(Term):
    arg: Term


@dataclass(frozen=True)
class Dom(Term):
    arg: Term


@dataclass(frozen=True)
class ARan(Term):
    arg: Term


@dataclass(frozen=True)
class Ran(Term):
    arg: Term


@dataclass(frozen=True)
class Box(Term):
    prog: Term
    post: Term


ZERO = Zero()
ONE = One()


class Sort(Enum):
    ELEMENT = "element"
    TEST = "test"


@dataclass(frozen=True)
class Env:
    """Bindings from variable names to model element names.

    ``elements`` binds plain variables, ``tests`` binds test variables.
    Whether a bound value really is a test of the target model is checked
    by the model at evaluation time.
    """

    elements: Mapping[str, str] = None
    tests: Mapping[str, str] = None

    def __post_init__(self):
        object.__setattr__(self, "elements", dict(self.elements or {}))
        object.__setattr__(self, "tests", dict(self.tests or {}))


def variables(t: Term) -> tuple[frozenset, frozenset]:
    """Return (plain variable names, test variable names) used in ``t``."""
    vs, ts = set(), set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            vs.add(node.name)
        elif isinstance(node, TestVar):
            ts.add(node.name)
        elif isinstance(node, (Plus, Times)):
            stack += [node.left, node.right]
        elif isinstance(node, Box):
            stack += [node.prog, node.post]
        elif isinstance(node, (Star, Not, ADom, Dom, ARan, Ran)):
            stack.append(node.arg)
    return frozenset(vs), frozenset(ts)


# ---------------------------------------------------------------------------
# sorting

def sort_of(t: Term, declared_tests: Iterable[str] = ()) -> Sort:
    """Sort a term as ELEMENT or TEST, or raise SortError.

    Tests are built from 0, 1, test variables, + and ; of tests, !, and the
    (anti)domain/(anti)range operators (their images are always tests).
    Star always yields an element-sorted term.  ``declared_tests`` promotes
    plain variables with those names to test sort.
    """
    declared = frozenset(declared_tests)

    def go(node: Term) -> Sort:
        match node:
            case Zero() | One() | TestVar():
                return Sort.TEST
            case Var(name):
                return Sort.TEST if name in declared else Sort.ELEMENT
            case Plus(l, r) | Times(l, r):
                sl, sr = go(l), go(r)
                if sl is Sort.TEST and sr is Sort.TEST:
                    return Sort.TEST
                return Sort.ELEMENT
            case Star(arg):
                go(arg)
                return Sort.ELEMENT
            case Not(arg):
                if go(arg) is not Sort.TEST:
                    raise SortError(
                        f"complement applied to non-test subterm: {print_term(arg)}")
                return Sort.TEST
            case ADom(arg) | Dom(arg) | ARan(arg) | Ran(arg):
                go(arg)
                return Sort.TEST
            case Box(prog, post):
                go(prog)
                go(post)
                return Sort.TEST
        raise TypeError(f"not a term: {node!r}")

    return go(t)


# ---------------------------------------------------------------------------
# desugaring

def desugar(t: Term) -> Term:
    """Expand Box, Dom and Ran; the result uses only primitive operators.

    [x]y -> a(x ; a(y)),  d(t) -> a(a(t)),  r(t) -> ar(ar(t)).
    Idempotent by construction.
    """
    match t:
        case Zero() | One() | Var(_) | TestVar(_):
            return t
        case Plus(l, r):
            return Plus(desugar(l), desugar(r))
        case Times(l, r):
            return Times(desugar(l), desugar(r))
        case Star(a):
            return Star(desugar(a))
        case Not(a):
            return Not(desugar(a))
        case ADom(a):
            return ADom(desugar(a))
        case ARan(a):
            return ARan(desugar(a))
        case Dom(a):
            return ADom(ADom(desugar(a)))
        case Ran(a):
            return ARan(ARan(desugar(a)))
        case Box(x, y):
            return ADom(Times(desugar(x), ADom(desugar(y))))
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# printing

_PREC_PLUS, _PREC_TIMES, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4


def _prec(t: Term) -> int:
    match t:
        case Plus(_, _):
            return _PREC_PLUS
        case Times(_, _):
            return _PREC_TIMES
        case Star(_) | Not(_) | Box(_, _):
            return _PREC_UNARY
        case _:
            return _PREC_ATOM


def print_term(t: Term) -> str:
    """Render a term in the concrete syntax; parse_term inverts this."""

    def wrap(node, minimum):
        s = go(node)
        return f"({s})" if _prec(node) < minimum else s

    def go(node):
        match node:
            case Zero():
                return "0"
            case One():
                return "1"
            case Var(name) | TestVar(name):
                return name
            case Plus(l, r):
                return f"{wrap(l, _PREC_PLUS)} + {wrap(r, _PREC_PLUS + 1)}"
            case Times(l, r):
                return f"{wrap(l, _PREC_TIMES)} ; {wrap(r, _PREC_TIMES + 1)}"
            case Star(a):
                return f"{wrap(a, _PREC_ATOM)}*"
            case Not(a):
                return f"!{wrap(a, _PREC_ATOM)}"
            case ADom(a):
                return f"a({go(a)})"
            case Dom(a):
                return f"d({go(a)})"
            case ARan(a):
                return f"ar({go(a)})"
            case Ran(a):
                return f"r({go(a)})"
            case Box(x, y):
                return f"[{go(x)}]{wrap(y, _PREC_UNARY)}"
        raise TypeError(f"not a term: {node!r}")

    return go(t)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<const>[01])"
    r"|(?P<sym>[+;*!()\[\]])"
)

_OP_NAMES = {"a": ADom, "d": Dom, "r": Ran, "ar": ARan}

# Identifiers starting with one of these letters parse as test variables
# when no explicit test-name set is supplied (the conventional letters for
# boolean elements); an explicit set always wins.
DEFAULT_TEST_INITIALS = "pqrst"


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(m.lastgroup), pos + 1))
        pos = m.end()
    tokens.append(("eof", "", len(text) + 1))
    return tokens


class _TermParser:
    def __init__(self, tokens, tests: Optional[frozenset]):
        self.tokens = tokens
        self.i = 0
        self.tests = tests

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, col = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}",
                             column=col)

    def is_test_name(self, name):
        if self.tests is not None:
            return name in self.tests
        return name[0] in DEFAULT_TEST_INITIALS

    def parse_expr(self):
        t = self.parse_term()
        while self.peek()[1] == "+":
            self.next()
            t = Plus(t, self.parse_term())
        return t

    def parse_term(self):
        t = self.parse_unary()
        while self.peek()[1] == ";":
            self.next()
            t = Times(t, self.parse_unary())
        return t

    def parse_unary(self):
        kind, val, col = self.peek()
        if val == "!":
            self.next()
            return Not(self.parse_unary())
        if val == "[":
            self.next()
            prog = self.parse_expr()
            self.expect("]")
            return Box(prog, self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self):
        t = self.parse_primary()
        while self.peek()[1] == "*":
            self.next()
            t = Star(t)
        return t

    def parse_primary(self):
        kind, val, col = self.next()
        if kind == "const":
            return ZERO if val == "0" else ONE
        if kind == "ident":
            if self.peek()[1] == "(":
                if val not in _OP_NAMES:
                    raise ParseError(f"unknown operator name {val!r}", column=col)
                self.next()
                arg = self.parse_expr()
                self.expect(")")
                return _OP_NAMES[val](arg)
            if self.is_test_name(val):
                return TestVar(val)
            return Var(val)
        if val == "(":
            t = self.parse_expr()
            self.expect(")")
            return t
        raise ParseError(f"expected a term, found {val or 'end of input'!r}", column=col)


def parse_term(text: str, tests: Optional[Iterable[str]] = None) -> Term:
    """Parse the concrete term syntax.

    ``tests`` names the identifiers to read as test variables (as declared
    by a model); when omitted, identifiers starting with one of
    ``DEFAULT_TEST_INITIALS`` are taken as tests.
    """
    parser = _TermParser(_tokenize(text),
                         None if tests is None else frozenset(tests))
    t = parser.parse_expr()
    kind, val, col = parser.peek()
    if kind != "eof":
        raise ParseError(f"trailing input starting at {val!r}", column=col)
    return t
