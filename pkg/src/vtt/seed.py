"""Loader for the packaged seed definition source."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from . import dsl
from .model import Registry

__all__ = ["seed_source", "seed_document", "seed_registry"]


def seed_source() -> dsl.DefinitionSource:
    text = resources.files(__package__).joinpath("seed.vtt").read_text("utf-8")
    return dsl.DefinitionSource(text=text, path="seed.vtt")


def seed_document() -> dsl.Document:
    return dsl.parse(seed_source())


@lru_cache(maxsize=1)
def seed_registry() -> Registry:
    return dsl.compile_document(seed_document())
