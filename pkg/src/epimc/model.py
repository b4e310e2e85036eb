"""Finite multi-agent Kripke models.

Relations are arbitrary directed pair sets (no built-in reflexivity or
symmetry).  Internally each agent's relation is a read-only boolean
adjacency matrix indexed by the sorted world list; the public API speaks in
world names and pair sets.
"""
from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import reduce
from itertools import product
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InputError

Pair = tuple[str, str]
Relation = frozenset  # frozenset[Pair]

CLOSURES = ("reflexive", "symmetric", "transitive")


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class KripkeModel:
    """Worlds, per-agent indistinguishability relations, and a valuation.

    ``closure`` names closures (``reflexive``, ``symmetric``, ``transitive``)
    applied to every agent relation at construction time; it is a loading
    convenience only, the stored relations are whatever results.
    """

    __slots__ = ("worlds", "agents", "_index", "_mats", "_val", "_hash", "_atom_vecs", "_cache")

    def __init__(
        self,
        worlds: Iterable[str],
        relations: Mapping[str, Iterable[Pair]],
        valuation: Mapping[str, Iterable[str]] | None = None,
        agents: Iterable[str] | None = None,
        closure: Iterable[str] = (),
    ):
        worlds = list(worlds)
        valuation = dict(valuation or {})
        agent_list = list(agents) if agents is not None else list(relations)
        raw = {
            "worlds": worlds,
            "agents": agent_list,
            "relations": {a: list(ps) for a, ps in relations.items()},
            "valuation": {w: list(v) for w, v in valuation.items()},
        }
        problems = validate(raw)
        bad_closure = [c for c in closure if c not in CLOSURES]
        if bad_closure:
            problems.append(f"unknown closure {bad_closure[0]!r}")
        if problems:
            raise InputError("invalid model: " + "; ".join(problems))

        self.worlds = tuple(sorted(set(worlds)))
        self.agents = tuple(sorted(set(agent_list)))
        self._index = {w: i for i, w in enumerate(self.worlds)}
        n = len(self.worlds)
        mats = {}
        for a in self.agents:
            mat = np.zeros((n, n), dtype=np.bool_)
            for u, v in raw["relations"].get(a, ()):
                mat[self._index[u], self._index[v]] = True
            mats[a] = _freeze(_close(mat, closure))
        self._mats = mats
        self._val = {w: frozenset(valuation.get(w, ())) for w in self.worlds}
        self._hash = None
        self._atom_vecs = {}
        self._cache = {}

    @classmethod
    def _from_arrays(cls, worlds, agents, mats, val) -> "KripkeModel":
        """Trusted constructor: ``worlds``/``agents`` sorted, matrices aligned."""
        m = cls.__new__(cls)
        m.worlds = worlds
        m.agents = agents
        m._index = {w: i for i, w in enumerate(worlds)}
        m._mats = {a: _freeze(mats[a]) for a in agents}
        m._val = val
        m._hash = None
        m._atom_vecs = {}
        m._cache = {}
        return m

    # -- accessors -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.worlds)

    def index(self, world: str) -> int:
        try:
            return self._index[world]
        except KeyError:
            raise InputError(f"unknown world {world!r}") from None

    def matrix(self, agent: str) -> np.ndarray:
        try:
            return self._mats[agent]
        except KeyError:
            raise InputError(f"unknown agent {agent!r}") from None

    def relation(self, agent: str) -> frozenset[Pair]:
        return self._pairs(self.matrix(agent))

    @property
    def relations(self) -> dict[str, frozenset[Pair]]:
        return {a: self.relation(a) for a in self.agents}

    @property
    def valuation(self) -> dict[str, frozenset[str]]:
        return dict(self._val)

    def atoms_at(self, world: str) -> frozenset[str]:
        self.index(world)
        return self._val[world]

    @property
    def atoms(self) -> tuple[str, ...]:
        """Atoms true somewhere in the model, sorted."""
        return tuple(sorted(set().union(*self._val.values())))

    def atom_vector(self, atom: str) -> np.ndarray:
        vec = self._atom_vecs.get(atom)
        if vec is None:
            vec = _freeze(np.array([atom in self._val[w] for w in self.worlds], dtype=np.bool_))
            self._atom_vecs[atom] = vec
        return vec

    def mask(self, worlds: Iterable[str]) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.bool_)
        for w in worlds:
            out[self.index(w)] = True
        return out

    def names(self, mask: np.ndarray) -> frozenset[str]:
        return frozenset(self.worlds[i] for i in np.flatnonzero(mask))

    def _pairs(self, mat: np.ndarray) -> frozenset[Pair]:
        rows, cols = np.nonzero(mat)
        ws = self.worlds
        return frozenset((ws[i], ws[j]) for i, j in zip(rows.tolist(), cols.tolist()))

    # -- equality --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KripkeModel):
            return NotImplemented
        if self is other:
            return True
        return (
            self.worlds == other.worlds
            and self.agents == other.agents
            and self._val == other._val
            and all(np.array_equal(self._mats[a], other._mats[a]) for a in self.agents)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    self.worlds,
                    self.agents,
                    tuple(self._mats[a].tobytes() for a in self.agents),
                    tuple(sorted((w, tuple(sorted(v))) for w, v in self._val.items())),
                )
            )
        return self._hash

    def __repr__(self) -> str:
        edges = sum(int(m.sum()) for m in self._mats.values())
        return f"KripkeModel(worlds={len(self.worlds)}, agents={list(self.agents)}, edges={edges})"

    # -- serialisation ---------------------------------------------------

    def to_dict(self, point: str | None = None) -> dict[str, Any]:
        data: dict[str, Any] = {
            "agents": list(self.agents),
            "worlds": list(self.worlds),
            "relations": {a: sorted(map(list, self.relation(a))) for a in self.agents},
            "valuation": {w: sorted(self._val[w]) for w in self.worlds},
        }
        if point is not None:
            data["point"] = point
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "KripkeModel":
        problems = validate(data)
        if problems:
            raise InputError("invalid model: " + "; ".join(problems))
        return cls(
            data["worlds"],
            {a: [tuple(p) for p in ps] for a, ps in data.get("relations", {}).items()},
            data.get("valuation", {}),
            agents=data.get("agents"),
            closure=data.get("closure", ()),
        )


@dataclass(frozen=True)
class PointedModel:
    model: KripkeModel
    point: str

    def __post_init__(self):
        if self.point not in self.model._index:
            raise InputError(f"point {self.point!r} is not a world of the model")


def _close(mat: np.ndarray, closure: Iterable[str]) -> np.ndarray:
    closure = set(closure)
    if "reflexive" in closure:
        np.fill_diagonal(mat, True)
    if "symmetric" in closure:
        mat |= mat.T
    if "transitive" in closure:
        while True:
            nxt = mat | ((mat.astype(np.int64) @ mat.astype(np.int64)) > 0)
            if np.array_equal(nxt, mat):
                break
            mat = nxt
    return mat


# --- validation -------------------------------------------------------------


def validate(m: KripkeModel | Mapping[str, Any]) -> list[str]:
    """Every invariant violation of ``m``; an empty list means the model is fine.

    Accepts a constructed model (always fine) or the raw JSON-shaped mapping.
    """
    if isinstance(m, KripkeModel):
        return []
    problems: list[str] = []
    worlds = m.get("worlds")
    if not isinstance(worlds, (list, tuple)) or not all(isinstance(w, str) for w in worlds):
        return ["worlds must be a list of strings"]
    if not worlds:
        problems.append("worlds must be non-empty")
    if len(set(worlds)) != len(worlds):
        problems.append("duplicate world identifiers")
    wset = set(worlds)
    relations = m.get("relations", {}) or {}
    if not isinstance(relations, Mapping):
        return problems + ["relations must map agents to pair lists"]
    agents = m.get("agents")
    if agents is None:
        agents = list(relations)
    if not agents:
        problems.append("agents must be non-empty")
    for a in relations:
        if a not in agents:
            problems.append(f"relation given for undeclared agent {a!r}")
    for a, pairs in relations.items():
        for pair in pairs:
            if len(pair) != 2:
                problems.append(f"agent {a!r}: malformed pair {list(pair)!r}")
                continue
            u, v = pair
            if u not in wset or v not in wset:
                problems.append(f"agent {a!r}: pair ({u}, {v}) has an endpoint outside worlds")
    valuation = m.get("valuation", {}) or {}
    for w in valuation:
        if w not in wset:
            problems.append(f"valuation given for unknown world {w!r}")
    point = m.get("point")
    if point is not None and point not in wset:
        problems.append(f"point {point!r} is not a world")
    return problems


# --- relation operations ----------------------------------------------------


def group_matrix(m: KripkeModel, group: Iterable[str]) -> np.ndarray:
    group = list(group)
    for a in group:
        m.matrix(a)
    if not group:
        return np.ones((m.n, m.n), dtype=np.bool_)
    return reduce(np.logical_and, (m.matrix(a) for a in group))


def group_relation(m: KripkeModel, group: Iterable[str]) -> frozenset[Pair]:
    """Intersection of the members' relations; the full relation for no members."""
    return m._pairs(group_matrix(m, group))


def agreement_matrix(truth: np.ndarray) -> np.ndarray:
    return truth[:, None] == truth[None, :]


def agreement_relation(m: KripkeModel, truth_set: Iterable[str]) -> frozenset[Pair]:
    """Pairs of worlds that agree on membership in ``truth_set``."""
    return m._pairs(agreement_matrix(m.mask(truth_set)))


def model_size(m: KripkeModel) -> int:
    return m.n + sum(int(m.matrix(a).sum()) for a in m.agents) + sum(len(v) for v in m._val.values())


def disjoint_union(m1: KripkeModel, m2: KripkeModel, tags: tuple[str, str] = ("1", "2")) -> KripkeModel:
    """Side-by-side union; world ``w`` of side ``k`` becomes ``f"{tag_k}:{w}"``."""
    t1, t2 = tags
    worlds = [f"{t1}:{w}" for w in m1.worlds] + [f"{t2}:{w}" for w in m2.worlds]
    agents = sorted(set(m1.agents) | set(m2.agents))
    relations = {}
    for a in agents:
        pairs = []
        if a in m1.agents:
            pairs += [(f"{t1}:{u}", f"{t1}:{v}") for u, v in m1.relation(a)]
        if a in m2.agents:
            pairs += [(f"{t2}:{u}", f"{t2}:{v}") for u, v in m2.relation(a)]
        relations[a] = pairs
    valuation = {f"{t1}:{w}": m1._val[w] for w in m1.worlds}
    valuation.update({f"{t2}:{w}": m2._val[w] for w in m2.worlds})
    return KripkeModel(worlds, relations, valuation, agents=agents)


def is_transitive(pairs: Iterable[Pair]) -> bool:
    pairs = set(pairs)
    succ: dict[str, set[str]] = {}
    for u, v in pairs:
        succ.setdefault(u, set()).add(v)
    return all((u, x) in pairs for u, v in pairs for x in succ.get(v, ()))


def full_relation(worlds: Iterable[str]) -> frozenset[Pair]:
    worlds = list(worlds)
    return frozenset(product(worlds, worlds))


# --- JSON I/O ---------------------------------------------------------------


def load_model(source: str | Path | Mapping[str, Any]) -> tuple[KripkeModel, str | None]:
    """Load a model (and its optional point) from a JSON file path or mapping."""
    if isinstance(source, Mapping):
        data = source
    else:
        try:
            data = json.loads(Path(source).read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{source}: not valid JSON ({exc})") from None
    if not isinstance(data, Mapping):
        raise InputError("model JSON must be an object")
    return KripkeModel.from_dict(data), data.get("point")


def dump_model(m: KripkeModel, point: str | None = None, **kwargs) -> str:
    return json.dumps(m.to_dict(point), **kwargs)
