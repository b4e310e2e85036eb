"""Collective bisimulation.

Forth/Back range over the intersection relation of every non-empty group,
so refinement splits on all ``2^|A| - 1`` group relations, not just the
individual agents' ones.  The refinement keeps its round-by-round history,
from which distinguishing formulas are read off.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import ClosureError, InputError, NoDistinguisherError
from .model import KripkeModel, PointedModel, disjoint_union, group_matrix
from .syntax import TRUE, FALSE, Atom, Formula, Not, Possible, conj, disj


@dataclass(frozen=True)
class Partition:
    """Disjoint, jointly exhaustive blocks of world names, ordered by least member."""

    blocks: tuple[frozenset, ...]

    @cached_property
    def _lookup(self) -> dict[str, int]:
        return {w: i for i, b in enumerate(self.blocks) for w in b}

    def block_of(self, world: str) -> frozenset:
        return self.blocks[self._lookup[world]]

    def same_block(self, u: str, v: str) -> bool:
        return self._lookup[u] == self._lookup[v]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


def nonempty_groups(agents: Iterable[str]) -> list[frozenset]:
    agents = sorted(agents)
    return [frozenset(c) for r in range(1, len(agents) + 1) for c in combinations(agents, r)]


def _edges(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    src, dst = np.nonzero(mat)
    return src.astype(np.int64), dst.astype(np.int64)


def _relabel(rows: np.ndarray) -> np.ndarray:
    """Dense block ids, numbered in order of first occurrence."""
    _, first, inverse = np.unique(rows, axis=0, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inverse.reshape(-1)].astype(np.int64)


class Refinement:
    """Coarsest stable partition of a model's worlds, with its split history.

    ``rounds[0]`` separates worlds by their ``atoms``-valuation; round ``r``
    further separates worlds by which round-``r-1`` blocks they reach through
    each group relation.  The last round is stable.
    """

    def __init__(self, m: KripkeModel, atoms: Iterable[str] | None = None):
        self.model = m
        self.atoms = tuple(sorted(m.atoms if atoms is None else set(atoms)))
        self.groups = nonempty_groups(m.agents)
        self._edges = [_edges(group_matrix(m, g)) for g in self.groups]
        n = m.n
        if self.atoms:
            val = np.stack([m.atom_vector(p) for p in self.atoms], axis=1)
        else:
            val = np.zeros((n, 1), dtype=np.bool_)
        block = _relabel(val)
        self.rounds: list[np.ndarray] = [block]
        self._features: list[np.ndarray] = []
        while True:
            k = int(block.max()) + 1
            feats = [_kernels.successor_blocks(n, k, src, dst, block) for src, dst in self._edges]
            feats = np.concatenate(feats, axis=1) if feats else np.zeros((n, 0), dtype=np.bool_)
            rows = np.concatenate([block[:, None], feats.astype(np.int64)], axis=1)
            new = _relabel(rows)
            self._features.append(feats)
            if int(new.max()) + 1 == k:
                break
            block = new
            self.rounds.append(block)
        self._memo: dict[tuple[int, int], Formula] = {}

    @property
    def block_ids(self) -> np.ndarray:
        return self.rounds[-1]

    @cached_property
    def partition(self) -> Partition:
        ws = self.model.worlds
        groups: dict[int, list[str]] = {}
        for i, b in enumerate(self.block_ids.tolist()):
            groups.setdefault(b, []).append(ws[i])
        blocks = sorted((frozenset(v) for v in groups.values()), key=min)
        return Partition(tuple(blocks))

    def _successors(self, g_index: int, i: int) -> np.ndarray:
        src, dst = self._edges[g_index]
        return dst[src == i]

    def distinguish(self, i: int, j: int) -> Formula:
        """A formula true at world index ``i`` and false at ``j``."""
        key = (i, j)
        if key in self._memo:
            return self._memo[key]
        r = next((r for r, b in enumerate(self.rounds) if b[i] != b[j]), None)
        if r is None:
            raise NoDistinguisherError(
                f"{self.model.worlds[i]} and {self.model.worlds[j]} are collectively bisimilar"
            )
        if r == 0:
            m = self.model
            for p in self.atoms:
                vi, vj = bool(m.atom_vector(p)[i]), bool(m.atom_vector(p)[j])
                if vi != vj:
                    f = Atom(p) if vi else Not(Atom(p))
                    break
        else:
            f = self._distinguish_modal(i, j, r)
        self._memo[key] = f
        return f

    def _distinguish_modal(self, i: int, j: int, r: int) -> Formula:
        prev = self.rounds[r - 1]
        k = int(prev.max()) + 1
        feats = self._features[r - 1]
        for g_index, group in enumerate(self.groups):
            cols = slice(g_index * k, (g_index + 1) * k)
            fi, fj = feats[i, cols], feats[j, cols]
            diff = np.flatnonzero(fi != fj)
            if diff.size == 0:
                continue
            c = int(diff[0])
            if fi[c]:
                witness = next(int(x) for x in self._successors(g_index, i) if prev[x] == c)
                others = self._successors(g_index, j)
                return Possible(group, conj(self.distinguish(witness, int(o)) for o in others))
            witness = next(int(x) for x in self._successors(g_index, j) if prev[x] == c)
            others = self._successors(g_index, i)
            return Not(Possible(group, conj(self.distinguish(witness, int(o)) for o in others)))
        raise AssertionError("worlds split in a round without a differing feature")


def _refinement(m: KripkeModel, atoms) -> Refinement:
    key = ("refinement", None if atoms is None else tuple(sorted(set(atoms))))
    ref = m._cache.get(key)
    if ref is None:
        ref = Refinement(m, atoms)
        m._cache[key] = ref
    return ref


def bisim_classes(m: KripkeModel, atoms: Iterable[str] | None = None) -> Partition:
    """Collective bisimulation classes of ``m`` w.r.t. ``atoms`` (default: all atoms of ``m``)."""
    return _refinement(m, atoms).partition


def is_bisimilar(pm1: PointedModel, pm2: PointedModel, atoms: Iterable[str] | None = None) -> bool:
    if atoms is None:
        atoms = set(pm1.model.atoms) | set(pm2.model.atoms)
    union = disjoint_union(pm1.model, pm2.model)
    return bisim_classes(union, atoms).same_block(f"1:{pm1.point}", f"2:{pm2.point}")


def bisim_witness(pm1: PointedModel, pm2: PointedModel, atoms: Iterable[str] | None = None):
    """The largest collective bisimulation between the two models as a set of
    cross-model pairs, or ``None`` when the points are not bisimilar."""
    if atoms is None:
        atoms = set(pm1.model.atoms) | set(pm2.model.atoms)
    union = disjoint_union(pm1.model, pm2.model)
    part = bisim_classes(union, atoms)
    if not part.same_block(f"1:{pm1.point}", f"2:{pm2.point}"):
        return None
    pairs = set()
    for block in part:
        left = [w[2:] for w in block if w.startswith("1:")]
        right = [w[2:] for w in block if w.startswith("2:")]
        pairs.update((u, v) for u in left for v in right)
    return frozenset(pairs)


def is_witness(m1: KripkeModel, m2: KripkeModel, pairs, atoms: Iterable[str] | None = None) -> bool:
    """Check Atoms/Forth/Back literally for every pair and every non-empty group."""
    pairs = set(pairs)
    if not pairs:
        return False
    if atoms is None:
        atoms = set(m1.atoms) | set(m2.atoms)
    atoms = set(atoms)
    agents = sorted(set(m1.agents) | set(m2.agents))

    def succ(m, group, w):
        if not set(group) <= set(m.agents):
            return set()
        row = group_matrix(m, group)[m.index(w)]
        return {m.worlds[j] for j in np.flatnonzero(row)}

    for u, v in pairs:
        if m1.atoms_at(u) & atoms != m2.atoms_at(v) & atoms:
            return False
        for g in nonempty_groups(agents):
            s1, s2 = succ(m1, g, u), succ(m2, g, v)
            if any(not any((x, y) in pairs for y in s2) for x in s1):
                return False
            if any(not any((x, y) in pairs for x in s1) for y in s2):
                return False
    return True


def quotient(m: KripkeModel, atoms: Iterable[str] | None = None) -> KripkeModel:
    """Collapse each bisimulation class to one world, lifting relations existentially.

    The result is a diagnostic only: it need not be collectively bisimilar
    to ``m``, since intersections of lifted relations can grow.
    """
    part = bisim_classes(m, atoms)
    name = {w: "[" + ",".join(sorted(b)) + "]" for b in part for w in b}
    relations = {a: {(name[u], name[v]) for u, v in m.relation(a)} for a in m.agents}
    valuation = {name[min(b)]: m.atoms_at(min(b)) for b in part}
    return KripkeModel(sorted(set(name.values())), relations, valuation, agents=m.agents)


def distinguishing_formula(m: KripkeModel, w: str, v: str, atoms: Iterable[str] | None = None) -> Formula:
    """A base-language formula over ``atoms`` true at ``w`` and false at ``v``."""
    ref = _refinement(m, atoms)
    return ref.distinguish(m.index(w), m.index(v))


def is_closed(m: KripkeModel, worlds: Iterable[str]) -> bool:
    part = bisim_classes(m)
    worlds = set(worlds)
    return all(b <= worlds or not (b & worlds) for b in part)


def characteristic_topic(m: KripkeModel, worlds: Iterable[str]) -> Formula:
    """A base-language formula whose truthset in ``m`` is exactly ``worlds``."""
    worlds = frozenset(worlds)
    unknown = worlds - set(m.worlds)
    if unknown:
        raise InputError(f"unknown world(s) {sorted(unknown)}")
    if not is_closed(m, worlds):
        raise ClosureError("world set is not a union of collective bisimulation classes")
    part = bisim_classes(m)
    if not worlds:
        return FALSE
    if worlds == frozenset(m.worlds):
        return TRUE
    ref = _refinement(m, None)
    reps = [m.index(min(b)) for b in part]
    chosen = [idx for b, idx in zip(part, reps) if b <= worlds]
    return disj(conj(ref.distinguish(r, o) for o in reps if o != r) for r in chosen)
