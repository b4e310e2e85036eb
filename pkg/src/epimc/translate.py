"""Rewrite update modalities away, leaving an equivalent distributed-knowledge formula.

Rewriting is innermost-first: the topic and the body are translated before
the enclosing update is pushed through them, so every push sees a body
without updates.  Output size can grow exponentially with nesting.
"""
from __future__ import annotations

from collections.abc import Iterable

from .errors import InputError, UnsupportedFragmentError
from .syntax import (
    And,
    ArbPartialComm,
    ArbPubAnn,
    Atom,
    D,
    Formula,
    Implies,
    Not,
    PartialComm,
    PubAnn,
    Top,
)


def dgr(g: Iterable[str], topic: Formula, body: Formula) -> Formula:
    """The group knows, distributively, that the topic's truth value implies ``body``."""
    g = frozenset(g)
    if not g:
        raise InputError("dgr needs a non-empty group")
    return And(
        Implies(topic, D(g, Implies(topic, body))),
        Implies(Not(topic), D(g, Implies(Not(topic), body))),
    )


def _push_pc(group: frozenset, topic: Formula, f: Formula) -> Formula:
    """``[group ! topic] f`` for update-free ``f`` and ``topic``."""
    if isinstance(f, (Top, Atom)):
        return f
    if isinstance(f, Not):
        return Not(_push_pc(group, topic, f.operand))
    if isinstance(f, And):
        return And(_push_pc(group, topic, f.left), _push_pc(group, topic, f.right))
    if isinstance(f, D):
        inner = _push_pc(group, topic, f.operand)
        return And(D(group | f.group, inner), dgr(f.group, topic, inner))
    raise TypeError(f"unexpected formula {f!r}")


def _push_pa(topic: Formula, f: Formula) -> Formula:
    """``[! topic] f`` for update-free ``f`` and ``topic``."""
    if isinstance(f, Top):
        return f
    if isinstance(f, Atom):
        return Implies(topic, f)
    if isinstance(f, Not):
        return Implies(topic, Not(_push_pa(topic, f.operand)))
    if isinstance(f, And):
        return And(_push_pa(topic, f.left), _push_pa(topic, f.right))
    if isinstance(f, D):
        return Implies(topic, D(f.group, _push_pa(topic, f.operand)))
    raise TypeError(f"unexpected formula {f!r}")


def _translate(f: Formula, allow_pc: bool, allow_pa: bool) -> Formula:
    if isinstance(f, (Top, Atom)):
        return f
    if isinstance(f, Not):
        return Not(_translate(f.operand, allow_pc, allow_pa))
    if isinstance(f, And):
        return And(_translate(f.left, allow_pc, allow_pa), _translate(f.right, allow_pc, allow_pa))
    if isinstance(f, D):
        return D(f.group, _translate(f.operand, allow_pc, allow_pa))
    if isinstance(f, PartialComm) and allow_pc:
        body = _translate(f.operand, allow_pc, allow_pa)
        if not f.group:
            return body
        return _push_pc(f.group, _translate(f.topic, allow_pc, allow_pa), body)
    if isinstance(f, PubAnn) and allow_pa:
        body = _translate(f.operand, allow_pc, allow_pa)
        return _push_pa(_translate(f.topic, allow_pc, allow_pa), body)
    if isinstance(f, (ArbPartialComm, ArbPubAnn)):
        raise UnsupportedFragmentError("quantified modalities have no reduction")
    raise UnsupportedFragmentError(f"{type(f).__name__} is not handled by this translator")


def translate_pc(f: Formula) -> Formula:
    """Eliminate partial communication; announcements are rejected."""
    return _translate(f, allow_pc=True, allow_pa=False)


def translate_pa(f: Formula) -> Formula:
    """Eliminate public announcements; partial communication is rejected."""
    return _translate(f, allow_pc=False, allow_pa=True)


def translate(f: Formula) -> Formula:
    """Eliminate both kinds of update, in any mixture."""
    return _translate(f, allow_pc=True, allow_pa=True)
