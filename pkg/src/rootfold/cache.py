"""Memoized constructors for root systems, stabilizers, and foldings.

The underlying builders are pure functions of their arguments, so results are
safe to share.  All returned objects are immutable (frozen dataclasses with
internal caches keyed by value), which makes process-wide memoization sound.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Tuple

from .folding import FoldedRootSystem, FoldingContext, fold_root_system, make_context
from .root_systems import RootSystem, TypeLabel, build
from .weyl import StabilizerElement, build_stabilizer


@lru_cache(maxsize=None)
def get_system(label: TypeLabel, max_rank: int = 12) -> RootSystem:
    return build(label, max_rank)


@lru_cache(maxsize=None)
def get_stabilizer(label: TypeLabel, max_rank: int = 12) -> Tuple[StabilizerElement, ...]:
    return tuple(build_stabilizer(get_system(label, max_rank)))


@lru_cache(maxsize=None)
def get_context(label: TypeLabel, j: int, max_rank: int = 12) -> FoldingContext:
    rs = get_system(label, max_rank)
    element = next((e for e in get_stabilizer(label, max_rank) if e.j == j), None)
    return make_context(rs, j, element)


@lru_cache(maxsize=None)
def get_fold(label: TypeLabel, j: int, max_rank: int = 12) -> FoldedRootSystem:
    return fold_root_system(get_context(label, j, max_rank))


def clear() -> None:
    for fn in (get_system, get_stabilizer, get_context, get_fold):
        fn.cache_clear()
