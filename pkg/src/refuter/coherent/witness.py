"""Separation witnesses between two ordered pairs."""

from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel

from ..structures.models import Pair
from .history import ColorHistory


class SeparationWitness(BaseModel):
    """
    First layer separating two pairs.

    Inside the type layers the pairs differ in type and there is no
    witness; otherwise s1/s2 are layer ``iteration - 1`` colour ids.
    """

    iteration: int
    s1: Optional[int] = None
    s2: Optional[int] = None
    counts: Optional[Tuple[int, int]] = None


def path_counts(h: ColorHistory, pair: Pair, layer: int) -> np.ndarray:
    """Counts of (colour(u,x), colour(x,v)) codes over x at one layer"""
    colours = h.layers[layer]
    k = h.colour_count(layer)
    u, v = pair
    return np.bincount(colours[u, :] * k + colours[:, v], minlength=k * k)


def first_separation(h: ColorHistory, first: Pair, second: Pair) -> Optional[SeparationWitness]:
    """
    Minimal layer at which the pairs get different colours, or None.

    The witness is the least (s1, s2) code whose path counts differ.
    """
    iteration = next(
        (i for i, layer in enumerate(h.layers) if layer[first] != layer[second]), None
    )
    if iteration is None:
        return None
    if iteration < h.type_layers:
        return SeparationWitness(iteration=iteration)

    k = h.colour_count(iteration - 1)
    left = path_counts(h, first, iteration - 1)
    right = path_counts(h, second, iteration - 1)
    code = int(np.flatnonzero(left != right)[0])
    return SeparationWitness(
        iteration=iteration,
        s1=code // k,
        s2=code % k,
        counts=(int(left[code]), int(right[code])),
    )
