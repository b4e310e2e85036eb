"""Bundled example models and QBF instances."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..model import KripkeModel, PointedModel, load_model


def path(name: str) -> Path:
    """Filesystem path of a bundled fixture (``.json`` is implied for bare names)."""
    if "." not in name:
        name += ".json"
    target = resources.files(__name__) / name
    if not target.is_file():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return Path(str(target))


def names() -> list[str]:
    return sorted(p.name for p in resources.files(__name__).iterdir() if p.name.endswith((".json", ".txt")))


def load(name: str) -> KripkeModel:
    return load_model(path(name))[0]


def load_pointed(name: str) -> PointedModel:
    m, point = load_model(path(name))
    return PointedModel(m, point)
