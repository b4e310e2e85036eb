"""Model-transforming operations.

All three take the topic as a set of worlds (its truthset) rather than a
formula, so they also apply to bipartitions that have no formula at hand.
World identifiers are preserved, so a point survives the update unchanged
(except for worlds removed by :func:`pa_world_update`).
"""
from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .errors import EmptyDomainError, InputError
from .model import KripkeModel, agreement_matrix, group_matrix


def _truth(m: KripkeModel, topic_truthset) -> np.ndarray:
    if isinstance(topic_truthset, np.ndarray):
        if topic_truthset.shape != (m.n,):
            raise InputError("truth mask does not match the model's worlds")
        return topic_truthset.astype(np.bool_, copy=False)
    return m.mask(topic_truthset)


def _check_agents(m: KripkeModel, group: Iterable[str]) -> frozenset[str]:
    group = frozenset(group)
    unknown = group - set(m.agents)
    if unknown:
        raise InputError(f"unknown agent(s) {sorted(unknown)}")
    return group


def partial_comm_update(m: KripkeModel, group: Iterable[str], topic_truthset) -> KripkeModel:
    """Agents in ``group`` share everything they know about the topic.

    Each relation becomes ``R_i & (R_group | agree)``, where ``agree`` links
    worlds on the same side of the topic's truthset.
    """
    group = _check_agents(m, group)
    if not group:
        return m
    truth = _truth(m, topic_truthset)
    keep = group_matrix(m, group) | agreement_matrix(truth)
    mats = {a: m.matrix(a) & keep for a in m.agents}
    return KripkeModel._from_arrays(m.worlds, m.agents, mats, m._val)


def pa_edge_update(m: KripkeModel, topic_truthset) -> KripkeModel:
    """Edge-deleting public announcement: cut every edge crossing the truthset boundary."""
    truth = _truth(m, topic_truthset)
    agree = agreement_matrix(truth)
    mats = {a: m.matrix(a) & agree for a in m.agents}
    return KripkeModel._from_arrays(m.worlds, m.agents, mats, m._val)


def pa_world_update(m: KripkeModel, topic_truthset) -> KripkeModel:
    """World-removing public announcement: restrict the model to the truthset."""
    truth = _truth(m, topic_truthset)
    if not truth.any():
        raise EmptyDomainError("announcement is false everywhere; the updated model would be empty")
    keep = np.flatnonzero(truth)
    worlds = tuple(m.worlds[i] for i in keep)
    mats = {a: m.matrix(a)[np.ix_(keep, keep)].copy() for a in m.agents}
    val = {w: m._val[w] for w in worlds}
    return KripkeModel._from_arrays(worlds, m.agents, mats, val)
