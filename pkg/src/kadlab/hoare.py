"""While-programs over relational state spaces: semantics, triples, wlp.

Programs denote relations compositionally: ``skip`` is the identity,
``if t then x else y`` is t;X + !t;Y and ``while t do x`` is (t;X)* ; !t.
A triple {p} x {q} holds iff p ; X ; !q is empty, equivalently iff
p <= [X]q where [X]q is the weakest liberal precondition (box).

Assertions are semantic: tests are subidentity relations, not syntactic
predicates.  ``while`` loops may carry an optional invariant annotation
(``while t invariant j do ... od``); verification-condition generation
uses it when present and otherwise falls back to the exact wlp of the
loop, which finite models make available.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import KadlabError, ModelError, ParseError
from .relations import Rel, StateSpace

__all__ = [
    "TestExpr", "TTrue", "TFalse", "TName", "TNot", "TAnd", "TOr",
    "Program", "Skip", "Atom", "Seq", "If", "While",
    "HoareTriple", "Bindings", "parse_test_expr", "parse_program",
    "eval_test", "denote", "holds", "wlp", "vcgen", "synth_mid",
    "VerificationCondition", "VcReport", "RuleDirection", "RuleReport",
    "check_seq_rule", "check_if_rule", "check_while_rule",
    "check_conseq_rule", "check_rule_inversion", "PremiseError",
    "SYNTH_METHODS",
]


class PremiseError(KadlabError):
    """The triple a synthesis or rule check assumes does not hold."""


# ---------------------------------------------------------------------------
# test expressions

class TestExpr:
    pass


@dataclass(frozen=True)
class TTrue(TestExpr):
    pass


@dataclass(frozen=True)
class TFalse(TestExpr):
    pass


@dataclass(frozen=True)
class TName(TestExpr):
    name: str


@dataclass(frozen=True)
class TNot(TestExpr):
    arg: TestExpr


@dataclass(frozen=True)
class TAnd(TestExpr):
    left: TestExpr
    right: TestExpr


@dataclass(frozen=True)
class TOr(TestExpr):
    left: TestExpr
    right: TestExpr


# ---------------------------------------------------------------------------
# programs

class Program:
    pass


@dataclass(frozen=True)
class Skip(Program):
    pass


@dataclass(frozen=True)
class Atom(Program):
    name: str


@dataclass(frozen=True)
class Seq(Program):
    first: Program
    second: Program


@dataclass(frozen=True)
class If(Program):
    guard: TestExpr
    then: Program
    orelse: Program


@dataclass(frozen=True)
class While(Program):
    guard: TestExpr
    body: Program
    invariant: Optional[TestExpr] = None


@dataclass(frozen=True)
class HoareTriple:
    pre: Rel
    prog: Program
    post: Rel


@dataclass(frozen=True)
class Bindings:
    """Named atomic commands and named tests over one state space."""

    space: StateSpace
    atoms: Mapping[str, Rel]
    tests: Mapping[str, Rel]

    def __post_init__(self):
        object.__setattr__(self, "atoms", dict(self.atoms))
        object.__setattr__(self, "tests", dict(self.tests))
        for name, rel in self.atoms.items():
            if rel.space != self.space:
                raise ModelError(f"atom {name!r} lives on a different space")
        for name, rel in self.tests.items():
            if rel.space != self.space:
                raise ModelError(f"test {name!r} lives on a different space")
            if not rel.is_subidentity():
                raise ModelError(f"test {name!r} is not a subidentity")


# ---------------------------------------------------------------------------
# parsing

_TOK = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<sym>[;!&|()01])"
)

_KEYWORDS = frozenset({"skip", "if", "then", "else", "fi",
                       "while", "do", "od", "invariant"})


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        if m.lastgroup != "ws":
            out.append((m.group(m.lastgroup), pos + 1))
        pos = m.end()
    out.append(("", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, atoms, tests):
        self.tokens = _tokenize(text)
        self.i = 0
        self.atoms = frozenset(atoms)
        self.tests = frozenset(tests)

    def peek(self):
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok, col = self.next()
        if tok != value:
            raise ParseError(f"expected {value!r}, found {tok or 'end of input'!r}",
                             column=col)

    def at_end(self):
        return self.peek() == ""

    # test expressions: | binds loosest, then &, then !
    def test_expr(self):
        t = self.test_conj()
        while self.peek() == "|":
            self.next()
            t = TOr(t, self.test_conj())
        return t

    def test_conj(self):
        t = self.test_atom()
        while self.peek() == "&":
            self.next()
            t = TAnd(t, self.test_atom())
        return t

    def test_atom(self):
        tok, col = self.next()
        if tok == "!":
            return TNot(self.test_atom())
        if tok == "(":
            t = self.test_expr()
            self.expect(")")
            return t
        if tok == "0":
            return TFalse()
        if tok == "1":
            return TTrue()
        if tok and tok not in _KEYWORDS and not tok[0].isdigit():
            if tok not in self.tests:
                raise ParseError(f"unknown test {tok!r}", column=col)
            return TName(tok)
        raise ParseError(f"expected a test, found {tok or 'end of input'!r}",
                         column=col)

    # programs
    def program(self):
        p = self.piece()
        while self.peek() == ";":
            self.next()
            p = Seq(p, self.piece())
        return p

    def piece(self):
        tok, col = self.next()
        if tok == "skip":
            return Skip()
        if tok == "if":
            guard = self.test_expr()
            self.expect("then")
            then = self.program()
            self.expect("else")
            orelse = self.program()
            self.expect("fi")
            return If(guard, then, orelse)
        if tok == "while":
            guard = self.test_expr()
            invariant = None
            if self.peek() == "invariant":
                self.next()
                invariant = self.test_expr()
            self.expect("do")
            body = self.program()
            self.expect("od")
            return While(guard, body, invariant)
        if tok and tok not in _KEYWORDS and tok not in ";!&|()01":
            if tok not in self.atoms:
                raise ParseError(f"unknown atomic command {tok!r}", column=col)
            return Atom(tok)
        raise ParseError(f"expected a program, found {tok or 'end of input'!r}",
                         column=col)


def parse_program(text: str, atoms, tests) -> Program:
    parser = _Parser(text, atoms, tests)
    p = parser.program()
    if not parser.at_end():
        raise ParseError(f"trailing input starting at {parser.peek()!r}")
    return p


def parse_test_expr(text: str, tests) -> TestExpr:
    parser = _Parser(text, (), tests)
    t = parser.test_expr()
    if not parser.at_end():
        raise ParseError(f"trailing input starting at {parser.peek()!r}")
    return t


# ---------------------------------------------------------------------------
# semantics

def eval_test(expr: TestExpr, bindings: Bindings) -> Rel:
    match expr:
        case TTrue():
            return Rel.identity(bindings.space)
        case TFalse():
            return Rel.empty(bindings.space)
        case TName(name):
            try:
                return bindings.tests[name]
            except KeyError:
                raise ModelError(f"unbound test {name!r}") from None
        case TNot(a):
            return eval_test(a, bindings).complement_test()
        case TAnd(l, r):
            return eval_test(l, bindings).intersect(eval_test(r, bindings))
        case TOr(l, r):
            return eval_test(l, bindings).union(eval_test(r, bindings))
    raise TypeError(f"not a test expression: {expr!r}")


def denote(prog: Program, bindings: Bindings) -> Rel:
    match prog:
        case Skip():
            return Rel.identity(bindings.space)
        case Atom(name):
            try:
                return bindings.atoms[name]
            except KeyError:
                raise ModelError(f"unbound atomic command {name!r}") from None
        case Seq(a, b):
            return denote(a, bindings).compose(denote(b, bindings))
        case If(guard, then, orelse):
            t = eval_test(guard, bindings)
            return (t.compose(denote(then, bindings))
                    .union(t.complement_test().compose(denote(orelse, bindings))))
        case While(guard, body, _):
            t = eval_test(guard, bindings)
            loop = t.compose(denote(body, bindings))
            return loop.star().compose(t.complement_test())
    raise TypeError(f"not a program: {prog!r}")


def _check_test(rel: Rel, what: str):
    if not rel.is_subidentity():
        raise ModelError(f"{what} must be a subidentity test")


def _triple_holds(pre: Rel, rel: Rel, post: Rel) -> bool:
    return pre.compose(rel).compose(post.complement_test()).is_empty()


def holds(triple: HoareTriple, bindings: Bindings) -> bool:
    """{p} x {q} iff p ; X ; !q is empty."""
    _check_test(triple.pre, "precondition")
    _check_test(triple.post, "postcondition")
    return _triple_holds(triple.pre, denote(triple.prog, bindings), triple.post)


def wlp(prog: Program, post: Rel, bindings: Bindings) -> Rel:
    """Weakest liberal precondition [X]post of the program's denotation."""
    _check_test(post, "postcondition")
    return denote(prog, bindings).box(post)


# ---------------------------------------------------------------------------
# verification conditions

@dataclass(frozen=True)
class VerificationCondition:
    name: str
    lhs: Rel
    rhs: Rel

    @property
    def holds(self) -> bool:
        return self.lhs.leq(self.rhs)


@dataclass(frozen=True)
class VcReport:
    precondition: Rel
    conditions: tuple[VerificationCondition, ...]

    @property
    def valid(self) -> bool:
        return all(c.holds for c in self.conditions)


def vcgen(pre: Rel, prog: Program, post: Rel, bindings: Bindings) -> VcReport:
    """Generate and evaluate verification conditions for {pre} prog {post}.

    Loops with an invariant annotation contribute preservation and exit
    conditions and their invariant becomes the computed precondition;
    unannotated loops use the exact loop wlp.
    """
    _check_test(pre, "precondition")
    _check_test(post, "postcondition")
    counter = [0]

    def wp(p: Program, q: Rel):
        match p:
            case Skip():
                return q, []
            case Atom(_):
                return denote(p, bindings).box(q), []
            case Seq(a, b):
                wb, vb = wp(b, q)
                wa, va = wp(a, wb)
                return wa, va + vb
            case If(guard, then, orelse):
                t = eval_test(guard, bindings)
                wt, vt = wp(then, q)
                we, ve = wp(orelse, q)
                pre_if = t.intersect(wt).union(t.complement_test().intersect(we))
                return pre_if, vt + ve
            case While(guard, body, invariant):
                if invariant is None:
                    return denote(p, bindings).box(q), []
                counter[0] += 1
                k = counter[0]
                inv = eval_test(invariant, bindings)
                t = eval_test(guard, bindings)
                wbody, vbody = wp(body, inv)
                vcs = [
                    VerificationCondition(f"while{k}-preserve",
                                          inv.intersect(t), wbody),
                    VerificationCondition(f"while{k}-exit",
                                          inv.intersect(t.complement_test()), q),
                ]
                return inv, vcs + vbody
        raise TypeError(f"not a program: {p!r}")

    precondition, vcs = wp(prog, post)
    head = VerificationCondition("precondition", pre, precondition)
    return VcReport(precondition, tuple([head] + vcs))


# ---------------------------------------------------------------------------
# intermediate-assertion synthesis

SYNTH_METHODS = ("wlp", "range", "meet")


def synth_mid(x: Program, y: Program, p: Rel, q: Rel, method: str,
              bindings: Bindings) -> Rel:
    """An intermediate test r with {p} x {r} and {r} y {q}.

    Requires the premise triple {p} x;y {q}; the three methods are the box
    of the second factor, the range of p through the first factor (via a
    double antirange), and their meet.
    """
    if method not in SYNTH_METHODS:
        raise ModelError(f"unknown synthesis method {method!r} "
                         f"(one of {', '.join(SYNTH_METHODS)})")
    _check_test(p, "precondition")
    _check_test(q, "postcondition")
    X = denote(x, bindings)
    Y = denote(y, bindings)
    if not _triple_holds(p, X.compose(Y), q):
        raise PremiseError("premise triple {p} x;y {q} does not hold")
    if method == "wlp":
        return Y.box(q)
    reach = p.compose(X).aran().aran()
    if method == "range":
        return reach
    return Y.box(q).intersect(reach)


# ---------------------------------------------------------------------------
# inference-rule checks

@dataclass(frozen=True)
class RuleDirection:
    name: str
    premise: bool
    conclusion: bool

    @property
    def holds(self) -> bool:
        return (not self.premise) or self.conclusion


@dataclass(frozen=True)
class RuleReport:
    rule: str
    directions: tuple[RuleDirection, ...]

    @property
    def all_hold(self) -> bool:
        return all(d.holds for d in self.directions)


def check_seq_rule(p: Rel, x: Program, y: Program, q: Rel,
                   bindings: Bindings) -> RuleReport:
    """{p} x;y {q} if and only if {p} x {[y]q}."""
    X = denote(x, bindings)
    Y = denote(y, bindings)
    whole = _triple_holds(p, X.compose(Y), q)
    factored = _triple_holds(p, X, Y.box(q))
    return RuleReport("seq", (
        RuleDirection("compose-to-factor", whole, factored),
        RuleDirection("factor-to-compose", factored, whole),
    ))


def check_if_rule(p: Rel, t: Rel, x: Program, y: Program, q: Rel,
                  bindings: Bindings) -> RuleReport:
    """{p&t} x {q} and {p&!t} y {q} if and only if {p} if t ... {q}."""
    _check_test(t, "guard")
    X = denote(x, bindings)
    Y = denote(y, bindings)
    tbar = t.complement_test()
    branches = (_triple_holds(p.intersect(t), X, q)
                and _triple_holds(p.intersect(tbar), Y, q))
    conditional = _triple_holds(
        p, t.compose(X).union(tbar.compose(Y)), q)
    return RuleReport("if", (
        RuleDirection("branches-to-if", branches, conditional),
        RuleDirection("if-to-branches", conditional, branches),
    ))


def check_while_rule(p: Rel, t: Rel, x: Program,
                     bindings: Bindings) -> RuleReport:
    """While rule, its invariant strengthening, and the inversion.

    The inversion recovers the body triple {p&t} x {p} from the
    strengthened consequent {p} (t;x)* {p}; the plain while consequent is
    too weak to invert (a nonterminating loop satisfies it vacuously).
    """
    _check_test(t, "guard")
    X = denote(x, bindings)
    tbar = t.complement_test()
    loop = t.compose(X)
    body = _triple_holds(p.intersect(t), X, p)
    whole = _triple_holds(p, loop.star().compose(tbar), p.intersect(tbar))
    invariant = _triple_holds(p, loop.star(), p)
    return RuleReport("while", (
        RuleDirection("while-rule", body, whole),
        RuleDirection("invariant-strengthen", body, invariant),
        RuleDirection("inversion", invariant, body),
    ))


def check_conseq_rule(p: Rel, p2: Rel, x: Program, q2: Rel, q: Rel,
                      bindings: Bindings) -> RuleReport:
    """p <= p2, {p2} x {q2}, q2 <= q entail {p} x {q}; inversion is trivial."""
    X = denote(x, bindings)
    premise = p.leq(p2) and _triple_holds(p2, X, q2) and q2.leq(q)
    conclusion = _triple_holds(p, X, q)
    # the inverse instantiates p2 = p and q2 = q, which restates the triple
    return RuleReport("conseq", (
        RuleDirection("consequence", premise, conclusion),
        RuleDirection("inversion", conclusion, conclusion),
    ))


_RULE_FIELDS = {
    "seq": ("p", "x", "y", "q"),
    "if": ("p", "t", "x", "y", "q"),
    "while": ("p", "t", "x"),
    "conseq": ("p", "p2", "x", "q2", "q"),
}


def check_rule_inversion(rule: str, instance: Mapping, bindings: Bindings
                         ) -> RuleReport:
    """Dispatch a rule check on a field mapping (see _RULE_FIELDS)."""
    if rule not in _RULE_FIELDS:
        raise ModelError(f"unknown rule {rule!r} "
                         f"(one of {', '.join(sorted(_RULE_FIELDS))})")
    missing = [f for f in _RULE_FIELDS[rule] if f not in instance]
    if missing:
        raise ModelError(f"rule {rule} instance missing {', '.join(missing)}")
    args = [instance[f] for f in _RULE_FIELDS[rule]]
    fn = {"seq": check_seq_rule, "if": check_if_rule,
          "while": check_while_rule, "conseq": check_conseq_rule}[rule]
    return fn(*args, bindings)
