"""Seeded random models and formulas for property tests and benchmarks."""
from __future__ import annotations

import os
import string

import numpy as np

from .model import KripkeModel
from .qbf import QbfInstance
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
    TRUE,
)

LAYERS = ("LD", "PC", "PA", "STAR", "APA")

AGENT_NAMES = tuple(string.ascii_lowercase[:8])
ATOM_NAMES = ("p", "q", "r", "s", "t", "u", "v", "x")


def default_seed() -> int:
    """Base seed for property runs, overridable through ``EPIMC_SEED``."""
    return int(os.environ.get("EPIMC_SEED", "0"))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_model(
    seed,
    max_worlds: int = 6,
    max_agents: int = 3,
    max_atoms: int = 3,
    *,
    min_worlds: int = 1,
    min_agents: int = 1,
    density: float | None = None,
    closure: tuple[str, ...] = (),
) -> KripkeModel:
    rng = _rng(seed)
    n = int(rng.integers(min_worlds, max_worlds + 1))
    k = int(rng.integers(min_agents, max_agents + 1))
    n_atoms = int(rng.integers(0, max_atoms + 1))
    worlds = [f"w{i}" for i in range(n)]
    agents = list(AGENT_NAMES[:k])
    atoms = ATOM_NAMES[:n_atoms]
    relations = {}
    for a in agents:
        dens = float(rng.uniform(0.2, 0.8)) if density is None else density
        mat = rng.random((n, n)) < dens
        relations[a] = [(worlds[i], worlds[j]) for i, j in zip(*np.nonzero(mat))]
    valuation = {w: [p for p in atoms if rng.random() < 0.5] for w in worlds}
    return KripkeModel(worlds, relations, valuation, agents=agents, closure=closure)


def random_group(rng, agents, allow_empty: bool = False) -> frozenset:
    agents = list(agents)
    while True:
        g = frozenset(a for a in agents if rng.random() < 0.5)
        if g or allow_empty:
            return g


def random_formula(
    seed,
    depth: int,
    layer: str = "LD",
    agents=("a", "b"),
    atoms=("p", "q"),
    *,
    max_quantifiers: int = 2,
) -> Formula:
    """A random formula of the given layer with modal/boolean depth at most ``depth``.

    Layers: ``LD`` (distributed knowledge only), ``PC`` (plus partial
    communication), ``PA`` (plus public announcements), ``STAR`` (partial
    communication plus arbitrary partial communication), ``APA``
    (announcements plus arbitrary announcements).
    """
    if layer not in LAYERS:
        raise ValueError(f"unknown layer {layer!r}")
    rng = _rng(seed)
    agents = list(agents)
    atoms = list(atoms) or ["p"]
    budget = [max_quantifiers]

    def gen(d: int, root: bool = False) -> Formula:
        if d <= 0 or (not root and rng.random() < 0.15):
            return Atom(atoms[int(rng.integers(len(atoms)))]) if rng.random() < 0.92 else TRUE
        choices = ["not", "and", "D"]
        if layer in ("PC", "STAR"):
            choices += ["pc", "pc"]
        if layer in ("PA", "APA"):
            choices += ["pa", "pa"]
        if layer == "STAR" and budget[0] > 0:
            choices.append("star")
        if layer == "APA" and budget[0] > 0:
            choices.append("apa")
        kind = choices[int(rng.integers(len(choices)))]
        if kind == "not":
            return Not(gen(d - 1))
        if kind == "and":
            return And(gen(d - 1), gen(d - 1))
        if kind == "D":
            return D(random_group(rng, agents), gen(d - 1))
        if kind == "pc":
            return PartialComm(random_group(rng, agents, allow_empty=True), gen(d - 2), gen(d - 1))
        if kind == "pa":
            return PubAnn(gen(d - 2), gen(d - 1))
        budget[0] -= 1
        if kind == "star":
            return ArbPartialComm(random_group(rng, agents, allow_empty=True), gen(d - 1))
        return ArbPubAnn(gen(d - 1))

    return gen(depth, root=True)


def random_boolean(seed, depth: int, atoms=("p", "q")) -> Formula:
    """A random formula built from atoms, negation and conjunction only."""
    rng = _rng(seed)
    atoms = list(atoms)

    def gen(d):
        if d <= 0 or rng.random() < 0.25:
            return Atom(atoms[int(rng.integers(len(atoms)))])
        if rng.random() < 0.4:
            return Not(gen(d - 1))
        return And(gen(d - 1), gen(d - 1))

    return gen(depth)


def random_qbf(seed, n: int, depth: int = 4):
    """A prenex QBF over ``x1..xn`` with a random matrix and prefix."""
    rng = _rng(seed)
    variables = tuple(f"x{i}" for i in range(1, n + 1))
    quantifiers = tuple("forall" if rng.random() < 0.5 else "exists" for _ in variables)
    return QbfInstance(variables, quantifiers, random_boolean(rng, depth, variables))
