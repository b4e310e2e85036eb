"""Quantified boolean formulas and their encoding as quantified model checking.

Text format: a prenex prefix followed by a colon and a boolean matrix in
the formula grammar, for example ``forall x1 exists x2 : (x1 <-> x2)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .model import KripkeModel, PointedModel
from .syntax import (
    And,
    ArbPartialComm,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Possible,
    Top,
    atoms_of,
    conj,
    disj,
    is_boolean,
    parse_formula,
)

QUANTIFIERS = ("forall", "exists")


@dataclass(frozen=True)
class QbfInstance:
    variables: tuple[str, ...]
    quantifiers: tuple[str, ...]
    matrix: Formula

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "quantifiers", tuple(self.quantifiers))
        if not self.variables:
            raise InputError("a QBF needs at least one variable")
        if len(self.variables) != len(self.quantifiers):
            raise InputError("variables and quantifiers differ in length")
        if len(set(self.variables)) != len(self.variables):
            raise InputError("a variable is quantified more than once")
        bad = [q for q in self.quantifiers if q not in QUANTIFIERS]
        if bad:
            raise InputError(f"unknown quantifier(s) {bad}")
        if not is_boolean(self.matrix):
            raise InputError("the matrix must be boolean")
        free = atoms_of(self.matrix) - set(self.variables)
        if free:
            raise InputError(f"free variable(s) {sorted(free)}")

    @property
    def n(self) -> int:
        return len(self.variables)

    def __str__(self) -> str:
        prefix = " ".join(f"{q} {x}" for q, x in zip(self.quantifiers, self.variables))
        return f"{prefix} : {self.matrix}"


_PREFIX = re.compile(r"\s*(forall|exists)\s+([A-Za-z_][A-Za-z0-9_]*)")


def parse_qbf(text: str) -> QbfInstance:
    head, sep, body = text.partition(":")
    if not sep:
        raise InputError("expected ':' between the prefix and the matrix")
    variables, quantifiers = [], []
    pos = 0
    while pos < len(head.rstrip()):
        match = _PREFIX.match(head, pos)
        if match is None:
            raise InputError(f"bad quantifier prefix near {head[pos:].strip()!r}")
        quantifiers.append(match.group(1))
        variables.append(match.group(2))
        pos = match.end()
    return QbfInstance(tuple(variables), tuple(quantifiers), parse_formula(body))


def load_qbf(path: str | Path) -> QbfInstance:
    lines = [ln.split("#", 1)[0].strip() for ln in Path(path).read_text().splitlines()]
    return parse_qbf(" ".join(ln for ln in lines if ln))


def matrix_from_table(variables, table) -> Formula:
    """A disjunctive normal form whose truth table is ``table``.

    ``table[k]`` is the value under the assignment whose bits, most
    significant first, give the variables' values (1 = true).
    """
    variables = list(variables)
    n = len(variables)
    if len(table) != 2**n:
        raise InputError(f"a table over {n} variables needs {2**n} entries")
    rows = []
    for k, value in enumerate(table):
        if value:
            bits = [(k >> (n - 1 - i)) & 1 for i in range(n)]
            rows.append(conj(Atom(x) if b else Not(Atom(x)) for x, b in zip(variables, bits)))
    return disj(rows)


def _boolean(f: Formula, env: dict[str, bool]) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Not):
        return not _boolean(f.operand, env)
    if isinstance(f, And):
        return _boolean(f.left, env) and _boolean(f.right, env)
    raise TypeError(f"not boolean: {f!r}")


def eval_qbf(q: QbfInstance) -> bool:
    """Truth of ``q`` by exhausting the quantifier tree."""

    def go(i: int, env: dict[str, bool]) -> bool:
        if i == q.n:
            return _boolean(q.matrix, env)
        branches = (go(i + 1, {**env, q.variables[i]: v}) for v in (True, False))
        return all(branches) if q.quantifiers[i] == "forall" else any(branches)

    return go(0, {})


# -- encoding -----------------------------------------------------------------

AGENT_A, AGENT_B = "a", "b"
CENTRE = "w0"


def true_world(i: int) -> str:
    return f"w{i}_1"


def false_world(i: int) -> str:
    return f"w{i}_0"


def gadget_model(n: int) -> KripkeModel:
    """The centre plus one world per truth value of each variable.

    Agent ``a`` links the centre with every other world; agent ``b`` only has
    loops.  Both relations are reflexive and symmetric.
    """
    if n < 1:
        raise InputError("n must be positive")
    worlds = [CENTRE] + [w for i in range(1, n + 1) for w in (true_world(i), false_world(i))]
    star = [(CENTRE, w) for w in worlds[1:]]
    valuation = {CENTRE: []}
    for i in range(1, n + 1):
        valuation[true_world(i)] = [f"p{i}"]
        valuation[false_world(i)] = [f"q{i}"]
    return KripkeModel(
        worlds,
        {AGENT_A: star, AGENT_B: []},
        valuation,
        closure=("reflexive", "symmetric"),
    )


def _sees(atom: str) -> Formula:
    return Possible({AGENT_A}, Atom(atom))


def chosen(k: int, n: int) -> Formula:
    """The first ``k`` variables have exactly one value reachable; the rest have both."""
    decided = [Iff(_sees(f"p{i}"), Not(_sees(f"q{i}"))) for i in range(1, k + 1)]
    open_ = [And(_sees(f"p{i}"), _sees(f"q{i}")) for i in range(k + 1, n + 1)]
    return conj(decided + open_)


def _substitute(f: Formula, table: dict[str, Formula]) -> Formula:
    if isinstance(f, Top):
        return f
    if isinstance(f, Atom):
        return table[f.name]
    if isinstance(f, Not):
        return Not(_substitute(f.operand, table))
    if isinstance(f, And):
        return And(_substitute(f.left, table), _substitute(f.right, table))
    raise TypeError(f"not boolean: {f!r}")


@dataclass(frozen=True)
class QbfEncoding:
    model: PointedModel
    formula: Formula


def encode(q: QbfInstance) -> QbfEncoding:
    """A pointed model and formula that hold together exactly when ``q`` is true.

    The quantifier for ``x_k`` becomes a universal or existential
    communication by ``{a, b}`` guarded by ``chosen(k)``; since ``b`` only
    has loops, each such communication can cut any set of ``a``-edges at the
    centre.  The first variable's quantifier is outermost.
    """
    n = q.n
    group = frozenset({AGENT_A, AGENT_B})
    table = {x: _sees(f"p{i}") for i, x in enumerate(q.variables, start=1)}
    body = _substitute(q.matrix, table)
    for k in range(n, 0, -1):
        guard = chosen(k, n)
        if q.quantifiers[k - 1] == "forall":
            body = ArbPartialComm(group, Implies(guard, body))
        else:
            body = Not(ArbPartialComm(group, Not(And(guard, body))))
    return QbfEncoding(PointedModel(gadget_model(n), CENTRE), body)
