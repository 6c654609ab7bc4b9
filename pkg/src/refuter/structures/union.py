"""Disjoint unions of two structures over the same vocabulary."""

import logging

from ..errors import StructureError
from .models import Side, Structure, UnionStructure

logger = logging.getLogger(__name__)


def disjoint_union(left: Structure, right: Structure, *, require_connected: bool = True) -> UnionStructure:
    """
    Build G ⊎ H with the RIGHT universe shifted by the LEFT size.

    Raises VOCAB_MISMATCH when the vocabularies or colour flags differ and
    NOT_CONNECTED naming the offending side.
    """
    if left.vocabulary != right.vocabulary or left.colors != right.colors:
        raise StructureError(
            f"vocabularies differ: {sorted(left.vocabulary)} vs {sorted(right.vocabulary)}",
            code="VOCAB_MISMATCH",
        )
    if require_connected:
        for side, part in ((Side.LEFT, left), (Side.RIGHT, right)):
            if not part.is_connected():
                raise StructureError(f"{side.value} structure is not connected", code="NOT_CONNECTED")

    shift = left.universe_size
    relations = {
        name: list(left.relations[name]) + [(u + shift, v + shift) for u, v in right.relations[name]]
        for name in left.vocabulary
    }
    combined = Structure.create(left.universe_size + right.universe_size, relations, left.colors)
    logger.debug(f"Built union of sizes {left.universe_size} + {right.universe_size}")
    return UnionStructure(structure=combined, left_size=left.universe_size, right_size=right.universe_size)
