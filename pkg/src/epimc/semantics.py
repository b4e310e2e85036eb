"""Reference evaluator.

A direct transcription of the satisfaction clauses: every update modality
builds the updated model and recurses into it, with no sharing of work.
It is slow on purpose and serves as the oracle for the labelling checker,
the translators and the quantified checker.
"""
from __future__ import annotations

import numpy as np

from .errors import InputError, UnsupportedFragmentError
from .model import KripkeModel, PointedModel, group_matrix
from .syntax import (
    And,
    ArbPartialComm,
    ArbPubAnn,
    Atom,
    D,
    Formula,
    Not,
    PartialComm,
    PubAnn,
    Top,
)
from .updates import pa_edge_update, partial_comm_update


def _holds(m: KripkeModel, w: str, f: Formula) -> bool:
    if isinstance(f, Top):
        return True
    if isinstance(f, Atom):
        return f.name in m.atoms_at(w)
    if isinstance(f, Not):
        return not _holds(m, w, f.operand)
    if isinstance(f, And):
        return _holds(m, w, f.left) and _holds(m, w, f.right)
    if isinstance(f, D):
        unknown = f.group - set(m.agents)
        if unknown:
            raise InputError(f"D over unknown agent(s) {sorted(unknown)}")
        row = group_matrix(m, f.group)[m.index(w)]
        return all(_holds(m, m.worlds[j], f.operand) for j in np.flatnonzero(row))
    if isinstance(f, PartialComm):
        updated = partial_comm_update(m, f.group, truthset(m, f.topic))
        return _holds(updated, w, f.operand)
    if isinstance(f, PubAnn):
        if not _holds(m, w, f.topic):
            return True
        return _holds(pa_edge_update(m, truthset(m, f.topic)), w, f.operand)
    if isinstance(f, (ArbPartialComm, ArbPubAnn)):
        raise UnsupportedFragmentError("quantified modalities need check_quantified")
    raise TypeError(f"not a formula: {f!r}")


def eval_formula(pm: PointedModel, f: Formula) -> bool:
    """Truth of ``f`` at the pointed model ``pm``."""
    return _holds(pm.model, pm.point, f)


def truthset(m: KripkeModel, f: Formula) -> frozenset[str]:
    return frozenset(w for w in m.worlds if _holds(m, w, f))


def valid_on_model(m: KripkeModel, f: Formula) -> bool:
    return all(_holds(m, w, f) for w in m.worlds)
