"""Formula AST, concrete syntax, and the labelled subformula list.

Surface grammar (binary operators must be parenthesised)::

    f ::= atom | true | false | ~f | (f) | (f & f & ...) | (f | f | ...)
        | (f -> f) | (f <-> f) | D{a,b} f | K a f
        | [a,b ! f] f | <a,b ! f> f        partial communication
        | [{} ! f] f | <{} ! f> f          ... by the empty group
        | [* a,b] f | <* a,b> f            arbitrary partial communication
        | [! f] f | <! f> f                public announcement
        | [!*] f | <!*> f                  arbitrary announcement

Disjunction, implication, equivalence, ``false``, ``K`` and all diamonds are
sugar over the core constructors below.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import EmptyGroupError, ParseError, UnsupportedFragmentError


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class D(Formula):
    """Distributed knowledge of a non-empty group."""

    group: frozenset
    operand: Formula

    def __post_init__(self):
        object.__setattr__(self, "group", frozenset(self.group))
        if not self.group:
            raise ValueError("D needs a non-empty group")


@dataclass(frozen=True)
class PartialComm(Formula):
    """``[S!topic] operand``: agents in ``group`` share what they know about ``topic``."""

    group: frozenset
    topic: Formula
    operand: Formula

    def __post_init__(self):
        object.__setattr__(self, "group", frozenset(self.group))


@dataclass(frozen=True)
class ArbPartialComm(Formula):
    """``[*S] operand``: after every base-language topic shared by ``group``."""

    group: frozenset
    operand: Formula

    def __post_init__(self):
        object.__setattr__(self, "group", frozenset(self.group))


@dataclass(frozen=True)
class PubAnn(Formula):
    """Edge-deleting public announcement ``[topic!] operand``."""

    topic: Formula
    operand: Formula


@dataclass(frozen=True)
class ArbPubAnn(Formula):
    operand: Formula


TRUE = Top()
FALSE = Not(TRUE)


# --- smart constructors for the sugar -----------------------------------------


def Or(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def Implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def K(agent: str, f: Formula) -> Formula:
    return D(frozenset([agent]), f)


def Possible(group, f: Formula) -> Formula:
    """Dual of ``D``: some group-accessible world satisfies ``f``."""
    return Not(D(frozenset(group), Not(f)))


def conj(items) -> Formula:
    items = list(items)
    if not items:
        return TRUE
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


def disj(items) -> Formula:
    items = list(items)
    if not items:
        return FALSE
    out = items[0]
    for f in items[1:]:
        out = Or(out, f)
    return out


# --- traversal helpers ----------------------------------------------------------


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Top, Atom)):
        return ()
    if isinstance(f, (Not, D, ArbPartialComm, ArbPubAnn)):
        return (f.operand,)
    if isinstance(f, And):
        return (f.left, f.right)
    if isinstance(f, (PartialComm, PubAnn)):
        return (f.topic, f.operand)
    raise TypeError(f"not a formula: {f!r}")


def walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(children(g))


def atoms_of(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in walk(f) if isinstance(g, Atom))


def agents_of(f: Formula) -> frozenset[str]:
    out: set[str] = set()
    for g in walk(f):
        if isinstance(g, (D, PartialComm, ArbPartialComm)):
            out |= g.group
    return frozenset(out)


def has_quantifier(f: Formula) -> bool:
    return any(isinstance(g, (ArbPartialComm, ArbPubAnn)) for g in walk(f))


def is_update_free(f: Formula) -> bool:
    return not any(isinstance(g, (PartialComm, PubAnn, ArbPartialComm, ArbPubAnn)) for g in walk(f))


def is_boolean(f: Formula) -> bool:
    return all(isinstance(g, (Top, Atom, Not, And)) for g in walk(f))


def formula_size(f: Formula) -> int:
    if isinstance(f, (Top, Atom)):
        return 1
    if isinstance(f, (Not, D, ArbPartialComm, ArbPubAnn)):
        return formula_size(f.operand) + 1
    if isinstance(f, And):
        return formula_size(f.left) + formula_size(f.right) + 1
    if isinstance(f, (PartialComm, PubAnn)):
        return formula_size(f.topic) + formula_size(f.operand) + 1
    raise TypeError(f"not a formula: {f!r}")


# --- printing -------------------------------------------------------------------


def _group(g) -> str:
    return ",".join(sorted(g))


def _match_implies(f):
    if isinstance(f, Not) and isinstance(f.operand, And) and isinstance(f.operand.right, Not):
        return f.operand.left, f.operand.right.operand
    return None


def print_formula(f: Formula) -> str:
    """Render ``f`` in the surface grammar, re-sugaring common patterns."""
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, And):
        l, r = _match_implies(f.left), _match_implies(f.right)
        if l and r and l[0] == r[1] and l[1] == r[0]:
            return f"({print_formula(l[0])} <-> {print_formula(l[1])})"
        return f"({print_formula(f.left)} & {print_formula(f.right)})"
    if isinstance(f, Not):
        g = f.operand
        if isinstance(g, Top):
            return "false"
        if isinstance(g, And) and isinstance(g.left, Not) and isinstance(g.right, Not):
            return f"({print_formula(g.left.operand)} | {print_formula(g.right.operand)})"
        imp = _match_implies(f)
        if imp:
            return f"({print_formula(imp[0])} -> {print_formula(imp[1])})"
        if isinstance(g, PartialComm) and isinstance(g.operand, Not):
            return f"<{_comm_group(g.group)} ! {print_formula(g.topic)}> {print_formula(g.operand.operand)}"
        if isinstance(g, PubAnn) and isinstance(g.operand, Not):
            return f"<! {print_formula(g.topic)}> {print_formula(g.operand.operand)}"
        if isinstance(g, ArbPartialComm) and isinstance(g.operand, Not):
            return f"<{_star(g.group)}> {print_formula(g.operand.operand)}"
        if isinstance(g, ArbPubAnn) and isinstance(g.operand, Not):
            return f"<!*> {print_formula(g.operand.operand)}"
        return f"~{print_formula(g)}"
    if isinstance(f, D):
        if len(f.group) == 1:
            return f"K {next(iter(f.group))} {print_formula(f.operand)}"
        return f"D{{{_group(f.group)}}} {print_formula(f.operand)}"
    if isinstance(f, PartialComm):
        return f"[{_comm_group(f.group)} ! {print_formula(f.topic)}] {print_formula(f.operand)}"
    if isinstance(f, ArbPartialComm):
        return f"[{_star(f.group)}] {print_formula(f.operand)}"
    if isinstance(f, PubAnn):
        return f"[! {print_formula(f.topic)}] {print_formula(f.operand)}"
    if isinstance(f, ArbPubAnn):
        return f"[!*] {print_formula(f.operand)}"
    raise TypeError(f"not a formula: {f!r}")


def _comm_group(g) -> str:
    return _group(g) if g else "{}"


def _star(g) -> str:
    return f"* {_group(g)}" if g else "*"


# --- parsing --------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|[~&|()\[\]<>{}!*,])|(?P<id>[A-Za-z_][A-Za-z0-9_']*))"
)
_KEYWORDS = {"true", "false", "D", "K"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = "op" if m.group("op") else "id"
        value = m.group(kind)
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2])

    def expect(self, value: str):
        tok = self.next()
        if tok[1] != value or tok[0] == "eof":
            self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def ident(self, what: str) -> str:
        tok = self.next()
        if tok[0] != "id":
            self.error(f"expected {what}, found {tok[1] or 'end of input'!r}", tok)
        return tok[1]

    def agent_list(self, closer: tuple[str, ...]) -> frozenset:
        agents = []
        if self.peek()[1] in closer:
            return frozenset()
        agents.append(self.ident("agent"))
        while self.peek()[1] == ",":
            self.next()
            agents.append(self.ident("agent"))
        return frozenset(agents)

    def parse(self) -> Formula:
        f = self.formula()
        if self.peek()[0] != "eof":
            self.error(f"unexpected {self.peek()[1]!r} after formula")
        return f

    def formula(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "eof":
            self.error("unexpected end of input")
        if kind == "id":
            self.next()
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            if value == "K":
                agent = self.ident("agent after K")
                return K(agent, self.formula())
            if value == "D":
                self.expect("{")
                group = self.agent_list(("}",))
                close = self.expect("}")
                if not group:
                    raise EmptyGroupError("empty group under D", close[2])
                return D(group, self.formula())
            return Atom(value)
        if value == "~":
            self.next()
            return Not(self.formula())
        if value == "(":
            return self.parenthesised()
        if value in ("[", "<"):
            return self.modality()
        self.error(f"unexpected {value!r}")

    def parenthesised(self) -> Formula:
        self.expect("(")
        first = self.formula()
        op = self.peek()[1]
        if op == ")":
            self.next()
            return first
        if op not in ("&", "|", "->", "<->"):
            self.error(f"expected a binary operator or ')', found {op or 'end of input'!r}")
        self.next()
        second = self.formula()
        if op in ("->", "<->"):
            self.expect(")")
            return Implies(first, second) if op == "->" else Iff(first, second)
        operands = [first, second]
        while self.peek()[1] == op:
            self.next()
            operands.append(self.formula())
        self.expect(")")
        return conj(operands) if op == "&" else disj(operands)

    def modality(self) -> Formula:
        open_tok = self.next()
        box = open_tok[1] == "["
        closer = "]" if box else ">"
        nxt = self.peek()[1]
        if nxt == "!":
            self.next()
            if self.peek()[1] == "*":
                self.next()
                self.expect(closer)
                return _wrap(box, ArbPubAnn, self.formula())
            topic = self.formula()
            self.expect(closer)
            return _wrap(box, lambda op: PubAnn(topic, op), self.formula())
        if nxt == "*":
            self.next()
            group = self.agent_list((closer,))
            self.expect(closer)
            return _wrap(box, lambda op: ArbPartialComm(group, op), self.formula())
        if nxt == "{":
            self.next()
            group = self.agent_list(("}",))
            self.expect("}")
        else:
            group = self.agent_list(("!",))
        self.expect("!")
        topic = self.formula()
        self.expect(closer)
        return _wrap(box, lambda op: PartialComm(group, topic, op), self.formula())


def _wrap(box: bool, make, body: Formula) -> Formula:
    if box:
        return make(body)
    return Not(make(Not(body)))


def parse_formula(text: str) -> Formula:
    """Parse the surface syntax into an AST with all sugar expanded."""
    return _Parser(text).parse()


# --- labelled subformulas ---------------------------------------------------------


@dataclass(frozen=True)
class CommSymbol:
    """The bare modality ``[S!topic]`` as an element of the subformula list."""

    group: frozenset
    topic: Formula

    def __str__(self) -> str:
        return f"[{_comm_group(self.group)} ! {print_formula(self.topic)}]"


Label = tuple  # tuple[CommSymbol, ...]


@dataclass(frozen=True)
class LabelledSubformula:
    item: Union[Formula, CommSymbol]
    label: Label

    def __str__(self) -> str:
        base = str(self.item)
        if not self.label:
            return base
        return base + "^{" + ", ".join(map(str, self.label)) + "}"


def ordered_subformulas(f: Formula) -> list[LabelledSubformula]:
    """All subformula occurrences and communication symbols of ``f``, labelled
    with the enclosing communication sequence and ordered for bottom-up labelling.

    Topics come before their modality symbol, the symbol before anything in its
    scope, and every formula after its parts.  Occurrences with identical
    (formula, label) appear once.
    """
    out: list[LabelledSubformula] = []
    seen: set[LabelledSubformula] = set()

    def emit(item, label):
        entry = LabelledSubformula(item, label)
        if entry not in seen:
            seen.add(entry)
            out.append(entry)

    def visit(g: Formula, label: tuple):
        if isinstance(g, (ArbPartialComm, ArbPubAnn, PubAnn)):
            raise UnsupportedFragmentError(
                f"{type(g).__name__} is outside the partial-communication fragment"
            )
        if isinstance(g, PartialComm):
            visit(g.topic, label)
            sym = CommSymbol(g.group, g.topic)
            emit(sym, label)
            visit(g.operand, label + (sym,))
        else:
            for c in children(g):
                visit(c, label)
        emit(g, label)

    visit(f, ())
    return out
