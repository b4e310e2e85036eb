"""Recursive checking for the quantified layers.

``[*S]`` ranges over every base-language topic.  On a finite model the
truthset of such a topic is always a union of collective bisimulation
classes, and every such union is the truthset of some topic, so the
quantifier is decided by enumerating those unions.  Updated models are
built one at a time and dropped before the next one, so memory stays
polynomial while time may be exponential.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from itertools import product

import numpy as np

from .bisim import Partition, bisim_classes
from .errors import InputError
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


def _unions(part: Partition, fixed: int) -> Iterator[frozenset]:
    """Every union of blocks that contains block ``fixed``, largest first."""
    rest = [b for i, b in enumerate(part.blocks) if i != fixed]
    base = part.blocks[fixed]
    for picks in product((True, False), repeat=len(rest)):
        yield base.union(*(b for b, keep in zip(rest, picks) if keep))


class RestrictionEnumeration:
    """The models ``partial_comm_update(base, group, a)`` for bisimulation-closed ``a``.

    ``a`` and its complement give the same update, so only the unions that
    contain the block of the least world are produced.  The first item is
    always ``a = W``, the identity update.
    """

    def __init__(self, base: KripkeModel, group: Iterable[str]):
        group = frozenset(group)
        unknown = group - set(base.agents)
        if unknown:
            raise InputError(f"unknown agent(s) {sorted(unknown)}")
        self.base = base
        self.group = group
        self.classes = bisim_classes(base)

    def __len__(self) -> int:
        return 2 ** (len(self.classes) - 1)

    def topics(self) -> Iterator[frozenset]:
        return _unions(self.classes, 0)

    def items(self) -> Iterator[tuple[frozenset, KripkeModel]]:
        for a in self.topics():
            yield a, partial_comm_update(self.base, self.group, a)

    def __iter__(self) -> Iterator[KripkeModel]:
        return (n for _, n in self.items())


def enumerate_restrictions(m: KripkeModel, s: Iterable[str]) -> RestrictionEnumeration:
    return RestrictionEnumeration(m, s)


def announcement_topics(m: KripkeModel, w: str) -> Iterator[frozenset]:
    """Bisimulation-closed world sets that contain ``w``."""
    part = bisim_classes(m)
    return _unions(part, part.blocks.index(part.block_of(w)))


class _Checker:
    def __init__(self):
        # keyed by model identity; the model is held alongside so ids stay unique
        self._memo: dict[int, tuple[KripkeModel, dict]] = {}

    def _table(self, m: KripkeModel) -> dict:
        entry = self._memo.get(id(m))
        if entry is None:
            entry = (m, {})
            self._memo[id(m)] = entry
        return entry[1]

    def release(self, m: KripkeModel) -> None:
        self._memo.pop(id(m), None)

    def truth(self, m: KripkeModel, f: Formula) -> np.ndarray:
        return np.fromiter((self.holds(m, w, f) for w in m.worlds), dtype=np.bool_, count=m.n)

    def holds(self, m: KripkeModel, w: str, f: Formula) -> bool:
        table = self._table(m)
        key = (f, w)
        hit = table.get(key)
        if hit is None:
            hit = self._compute(m, w, f)
            table[key] = hit
        return hit

    def _in_update(self, n: KripkeModel, base: KripkeModel, w: str, f: Formula) -> bool:
        result = self.holds(n, w, f)
        if n is not base:
            self.release(n)
        return result

    def _compute(self, m: KripkeModel, w: str, f: Formula) -> bool:
        if isinstance(f, Top):
            return True
        if isinstance(f, Atom):
            return f.name in m.atoms_at(w)
        if isinstance(f, Not):
            return not self.holds(m, w, f.operand)
        if isinstance(f, And):
            return self.holds(m, w, f.left) and self.holds(m, w, f.right)
        if isinstance(f, D):
            unknown = f.group - set(m.agents)
            if unknown:
                raise InputError(f"D over unknown agent(s) {sorted(unknown)}")
            row = group_matrix(m, f.group)[m.index(w)]
            return all(self.holds(m, m.worlds[j], f.operand) for j in np.flatnonzero(row))
        if isinstance(f, PartialComm):
            n = partial_comm_update(m, f.group, self.truth(m, f.topic))
            return self._in_update(n, m, w, f.operand)
        if isinstance(f, PubAnn):
            if not self.holds(m, w, f.topic):
                return True
            return self._in_update(pa_edge_update(m, self.truth(m, f.topic)), m, w, f.operand)
        if isinstance(f, ArbPartialComm):
            return all(
                self._in_update(n, m, w, f.operand) for n in enumerate_restrictions(m, f.group)
            )
        if isinstance(f, ArbPubAnn):
            return all(
                self._in_update(pa_edge_update(m, a), m, w, f.operand)
                for a in announcement_topics(m, w)
            )
        raise TypeError(f"not a formula: {f!r}")


def check_quantified(pm: PointedModel, f: Formula) -> bool:
    """Truth of ``f`` at ``pm`` for every layer, quantified modalities included."""
    return _Checker().holds(pm.model, pm.point, f)


def truthset_quantified(m: KripkeModel, f: Formula) -> frozenset[str]:
    checker = _Checker()
    return frozenset(w for w in m.worlds if checker.holds(m, w, f))


def restriction_witness(pm: PointedModel, group: Iterable[str], body: Formula) -> frozenset | None:
    """A bisimulation-closed topic truthset under which ``body`` holds after
    ``group`` communicates, or ``None`` when there is none."""
    checker = _Checker()
    for a, n in enumerate_restrictions(pm.model, group).items():
        if checker.holds(n, pm.point, body):
            return a
        checker.release(n)
    return None
