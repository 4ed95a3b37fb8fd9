"""Search space registry; see docs/grammars.md for encodings and grammars."""

from __future__ import annotations

from ..core import UnsupportedSpaceError
from .base import SpaceCodec
from .darts import DARTSSpace
from .macro import MNV3Space, ResNet50Space, TransformerSpace
from .nats import NATSSpace
from .nb101 import NB101Space
from .nb201 import NB201Space

_REGISTRY: dict[str, SpaceCodec] = {}

for _cls in (
    NB101Space,
    NB201Space,
    NATSSpace,
    DARTSSpace,
    ResNet50Space,
    TransformerSpace,
    MNV3Space,
):
    _codec = _cls()
    _REGISTRY[_codec.name] = _codec

SPACE_NAMES = tuple(_REGISTRY)


def get_space(name: str) -> SpaceCodec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnsupportedSpaceError(
            f"unknown space {name!r}; known: {', '.join(SPACE_NAMES)}"
        ) from None


__all__ = ["SpaceCodec", "SPACE_NAMES", "get_space"]
