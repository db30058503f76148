"""Bundled schema files and name lookup across them."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..env import DefEnv

CATEGORIES = DefEnv.CATEGORIES

# lookup order when a name is asked for without naming a file
FILES = ("examples.sch", "growth.sch", "implchain.sch")


def text(filename: str) -> str:
    return resources.files(__name__).joinpath(filename).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(filename: str) -> DefEnv:
    from ..dsl import parse
    return parse(text(filename))


def find(name: str, category: str | None = None) -> DefEnv:
    """The environment of the first bundled file defining `name`."""
    cats = (category,) if category else CATEGORIES
    for f in FILES:
        env = load(f)
        if any(name in getattr(env, c) for c in cats):
            return env
    raise KeyError(f"no bundled file defines {name!r}")


def all_envs() -> dict[str, DefEnv]:
    return {f: load(f) for f in FILES}
