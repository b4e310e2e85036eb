"""Polynomial global model checking for the partial-communication language.

Worlds are labelled with subformulas and edges with the communication
sequences they survive.  The subformula list from
:func:`~epimc.syntax.ordered_subformulas` guarantees that a topic is
labelled before its modality is applied and that a modality's edge labels
exist before anything in its scope is evaluated.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import InputError
from .model import KripkeModel
from .syntax import (
    And,
    Atom,
    CommSymbol,
    D,
    Formula,
    Not,
    PartialComm,
    Top,
    agents_of,
    ordered_subformulas,
)


class _EdgeIndex:
    """Per-agent sorted edge lists plus cross-agent lookups."""

    def __init__(self, m: KripkeModel):
        n = m.n
        self.n = n
        self.src: dict[str, np.ndarray] = {}
        self.dst: dict[str, np.ndarray] = {}
        self.keys: dict[str, np.ndarray] = {}
        for a in m.agents:
            src, dst = np.nonzero(m.matrix(a))
            self.src[a] = src.astype(np.int64)
            self.dst[a] = dst.astype(np.int64)
            self.keys[a] = self.src[a] * n + self.dst[a]
        self._lookup: dict[tuple[str, str], np.ndarray] = {}

    def lookup(self, a: str, b: str) -> np.ndarray:
        """For each edge of ``a``, its index among ``b``'s edges, or -1."""
        key = (a, b)
        idx = self._lookup.get(key)
        if idx is None:
            kb, ka = self.keys[b], self.keys[a]
            if kb.shape[0] == 0:
                idx = np.full(ka.shape[0], -1, dtype=np.int64)
            else:
                pos = np.searchsorted(kb, ka)
                hit = kb[np.minimum(pos, kb.shape[0] - 1)] == ka
                idx = np.where(hit, pos, -1).astype(np.int64)
            self._lookup[key] = idx
        return idx


class Labelling:
    """World labels ``(formula, sigma) -> mask`` and edge labels ``(sigma, agent) -> alive``."""

    def __init__(self, m: KripkeModel):
        self.model = m
        self.edges = _EdgeIndex(m)
        self.world_labels: dict[tuple[Formula, tuple], np.ndarray] = {}
        self.edge_labels: dict[tuple[tuple, str], np.ndarray] = {
            ((), a): np.ones(self.edges.src[a].shape[0], dtype=np.bool_) for a in m.agents
        }

    def worlds_labelled(self, f: Formula, sigma: tuple = ()) -> frozenset[str]:
        return self.model.names(self.world_labels[(f, sigma)])

    def edges_labelled(self, agent: str, sigma: tuple = ()) -> frozenset[tuple[str, str]]:
        alive = self.edge_labels[(sigma, agent)]
        ws = self.model.worlds
        src, dst = self.edges.src[agent][alive], self.edges.dst[agent][alive]
        return frozenset((ws[i], ws[j]) for i, j in zip(src.tolist(), dst.tolist()))

    # -- the three labelling cases ----------------------------------------

    def _group_alive(self, group: frozenset, sigma: tuple) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Edges of the intersection relation that carry ``sigma`` for every member."""
        first, *rest = sorted(group)
        ei = self.edges
        alive = self.edge_labels[(sigma, first)]
        for b in rest:
            alive = alive & _kernels.gather(ei.lookup(first, b), self.edge_labels[(sigma, b)])
        return ei.src[first], ei.dst[first], alive

    def label_box(self, f: D, sigma: tuple) -> np.ndarray:
        src, dst, alive = self._group_alive(f.group, sigma)
        return _kernels.box(self.edges.n, src, dst, alive, self.world_labels[(f.operand, sigma)])

    def label_comm(self, sym: CommSymbol, sigma: tuple) -> None:
        truth = self.world_labels[(sym.topic, sigma)]
        ei = self.edges
        for a in self.model.agents:
            alive = self.edge_labels[(sigma, a)]
            # the empty group shares the full relation, so every edge qualifies
            sharers = np.ones(alive.shape[0], dtype=np.bool_)
            for j in sym.group:
                sharers &= _kernels.gather(ei.lookup(a, j), self.edge_labels[(sigma, j)])
            self.edge_labels[(sigma + (sym,), a)] = _kernels.survive(
                ei.src[a], ei.dst[a], alive, truth, sharers
            )


def _check_agents(m: KripkeModel, f: Formula) -> None:
    unknown = agents_of(f) - set(m.agents)
    if unknown:
        raise InputError(f"formula mentions unknown agent(s) {sorted(unknown)}")


def label_model(m: KripkeModel, f: Formula) -> Labelling:
    """Run the labelling pass for ``f`` and return all labels it produced."""
    _check_agents(m, f)
    lab = Labelling(m)
    labels = lab.world_labels
    for entry in ordered_subformulas(f):
        g, sigma = entry.item, entry.label
        if isinstance(g, CommSymbol):
            lab.label_comm(g, sigma)
        elif isinstance(g, Top):
            labels[(g, sigma)] = np.ones(m.n, dtype=np.bool_)
        elif isinstance(g, Atom):
            labels[(g, sigma)] = m.atom_vector(g.name)
        elif isinstance(g, Not):
            labels[(g, sigma)] = ~labels[(g.operand, sigma)]
        elif isinstance(g, And):
            labels[(g, sigma)] = labels[(g.left, sigma)] & labels[(g.right, sigma)]
        elif isinstance(g, D):
            labels[(g, sigma)] = lab.label_box(g, sigma)
        elif isinstance(g, PartialComm):
            sym = CommSymbol(g.group, g.topic)
            labels[(g, sigma)] = labels[(g.operand, sigma + (sym,))]
        else:  # pragma: no cover - ordered_subformulas rejects the rest
            raise TypeError(g)
    return lab


def global_mc(m: KripkeModel, f: Formula) -> frozenset[str]:
    """The set of worlds of ``m`` satisfying ``f`` (no quantifiers, no announcements)."""
    return label_model(m, f).worlds_labelled(f)


def global_mc_mask(m: KripkeModel, f: Formula) -> np.ndarray:
    return label_model(m, f).world_labels[(f, ())]
