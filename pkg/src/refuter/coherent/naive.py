"""
Naive recount refinement, an independent oracle for ``refine``.

Colours are plain Python tuples renumbered by first appearance; every round
recounts all (colour(u,x), colour(x,v)) pairs over all middle vertices.
"""

from collections import Counter
from typing import Union

import numpy as np

from ..structures.models import Structure, UnionStructure


def naive_refine(target: Union[Structure, UnionStructure]) -> np.ndarray:
    """Stable colouring as an n×n array of first-appearance class ids"""
    union = target if isinstance(target, UnionStructure) else None
    structure = target.structure if union is not None else target
    n = structure.universe_size
    members = {
        (u, v): tuple(name for name in structure.vocabulary if (u, v) in structure.relations[name])
        for u in range(n)
        for v in range(n)
    }

    def initial(u: int, v: int) -> tuple:
        if union is not None and union.is_crossing(u, v):
            return ("cross",)
        return (u == v, members[(u, v)], members[(v, u)])

    colours = _renumber({(u, v): initial(u, v) for u in range(n) for v in range(n)}, n)
    while True:
        signatures = {
            (u, v): (
                colours[(u, v)],
                tuple(sorted(Counter((colours[(u, x)], colours[(x, v)]) for x in range(n)).items())),
            )
            for u in range(n)
            for v in range(n)
        }
        refined = _renumber(signatures, n)
        if len(set(refined.values())) == len(set(colours.values())):
            break
        colours = refined

    result = np.empty((n, n), dtype=np.int64)
    for (u, v), colour in colours.items():
        result[u, v] = colour
    return result


def _renumber(values: dict, n: int) -> dict:
    palette: dict = {}
    return {
        (u, v): palette.setdefault(values[(u, v)], len(palette)) for u in range(n) for v in range(n)
    }


def same_partition(first: np.ndarray, second: np.ndarray) -> bool:
    """True when two colourings induce the same partition of pairs"""
    if first.shape != second.shape:
        return False
    joint = np.unique(np.stack([first.reshape(-1), second.reshape(-1)]), axis=1)
    return joint.shape[1] == len(np.unique(first)) == len(np.unique(second))
