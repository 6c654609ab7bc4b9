"""
Iterated 2-WL refinement with canonical colour naming.

Layer 0 gives every diagonal pair one colour, every crossing pair of a union
one colour and every other pair the colour of its atomic type. When the full
quantifier-free type (loop relations and the converse pair) is finer, layer 1
splits layer 0 by it. Each later layer colours a pair by its previous colour
together with the multiset of (colour(u,x), colour(x,v)) over all middle
vertices x.

Colour ids at every layer are ranks of canonical keys, so isomorphic inputs
get identical ids. Refinement stops at the first round that does not split a
class; that round is not stored.
"""

import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

import numpy as np

from ..errors import ConfigurationError
from ..structures.models import Pair, Structure, UnionStructure, name_text

logger = logging.getLogger(__name__)

KEY_LENGTH = 32


@dataclass(frozen=True)
class ColorHistory:
    """
    Every refinement layer of a structure or a union.

    ``layers[i][u, v]`` is the layer-i colour id of (u,v); ``keys[i][c]`` is
    the canonical key of colour c at layer i; ``parents[i][c]`` is the
    layer-(i-1) colour containing c (``parents[0]`` is empty). The first
    ``type_layers`` layers split by quantifier-free type only; every later
    layer splits by path counts over the layer before it.
    """

    structure: Structure
    union: Optional[UnionStructure]
    layers: tuple[np.ndarray, ...]
    keys: tuple[tuple[str, ...], ...]
    parents: tuple[np.ndarray, ...]
    type_layers: int = 1

    @property
    def size(self) -> int:
        return self.structure.universe_size

    @property
    def stable_index(self) -> int:
        return len(self.layers) - 1

    @property
    def stable(self) -> np.ndarray:
        return self.layers[-1]

    @property
    def stable_keys(self) -> tuple[str, ...]:
        return self.keys[-1]

    def colour_count(self, layer: int = -1) -> int:
        return len(self.keys[layer])

    def colour(self, pair: Pair, layer: int = -1) -> int:
        return int(self.layers[layer][pair])

    def diagonal_colour(self, v: int, layer: int = -1) -> int:
        return int(self.layers[layer][v, v])

    def key_of(self, colour: int, layer: int = -1) -> str:
        return self.keys[layer][colour]

    def colour_by_key(self, key: str) -> Optional[int]:
        """Stable colour id carrying ``key``, or None"""
        return self._key_index.get(key)

    @cached_property
    def _key_index(self) -> dict[str, int]:
        return {key: c for c, key in enumerate(self.stable_keys)}

    @cached_property
    def representatives(self) -> tuple[Pair, ...]:
        """Least pair of every stable colour"""
        flat = self.stable.reshape(-1)
        _, first = np.unique(flat, return_index=True)
        return tuple(divmod(int(i), self.size) for i in first)

    @cached_property
    def converse(self) -> tuple[int, ...]:
        """Stable colour of the converse pairs, per stable colour"""
        return tuple(int(self.stable[v, u]) for u, v in self.representatives)

    def is_diagonal(self, colour: int) -> bool:
        u, v = self.representatives[colour]
        return u == v

    def is_crossing(self, colour: int) -> bool:
        u, v = self.representatives[colour]
        return self.union is not None and self.union.is_crossing(u, v)

    def pairs_of(self, colour: int, layer: int = -1) -> list[Pair]:
        """All pairs of one colour, in lexicographic order"""
        us, vs = np.nonzero(self.layers[layer] == colour)
        return [(int(u), int(v)) for u, v in zip(us, vs)]

    def ancestor(self, colour: int, layer: int) -> int:
        """Colour at ``layer`` containing a stable colour"""
        current = colour
        for i in range(self.stable_index, layer, -1):
            current = int(self.parents[i][current])
        return current


def _names(names: tuple[bytes, ...]) -> str:
    return ",".join(name_text(n) for n in names)


def _crossing_mask(n: int, union: Optional[UnionStructure]) -> np.ndarray:
    if union is None:
        return np.zeros((n, n), dtype=bool)
    return union.side_mask[:, None] != union.side_mask[None, :]


def _initial_layer(
    structure: Structure, union: Optional[UnionStructure]
) -> tuple[np.ndarray, tuple[str, ...]]:
    """One diagonal colour, one crossing colour, one colour per atomic type of the rest"""
    types = structure.atomic_types
    n = structure.universe_size
    classes = types.ids.astype(np.int64) + 2
    np.fill_diagonal(classes, 0)
    classes[_crossing_mask(n, union)] = 1

    unique, inverse = np.unique(classes.reshape(-1), return_inverse=True)
    texts = []
    for c in unique.tolist():
        if c == 0:
            texts.append("d:")
        elif c == 1:
            texts.append("x:")
        else:
            texts.append(f"o:{_names(types.names[c - 2])}")
    return _rank(inverse.reshape(n, n), texts)


def _type_split(
    structure: Structure, union: Optional[UnionStructure], colours: np.ndarray
) -> tuple[np.ndarray, tuple[str, ...], np.ndarray]:
    """
    Split the initial colouring by full quantifier-free type: a diagonal pair
    by the relations on its loop, a side-internal pair by the relations on
    (u,v), (v,u) and on both loops, a crossing pair by the loop relations of
    its endpoints.
    """
    types = structure.atomic_types
    n = structure.universe_size
    atp = types.ids
    loops = np.diag(atp)
    rows = np.stack(
        [
            atp,
            atp.T,
            np.broadcast_to(loops[:, None], (n, n)),
            np.broadcast_to(loops[None, :], (n, n)),
        ],
        axis=-1,
    ).copy()
    kind = np.ones((n, n), dtype=np.int64)
    np.fill_diagonal(kind, 0)
    crossing = _crossing_mask(n, union)
    kind[crossing] = 2
    rows[crossing, 0:2] = -1
    rows[kind == 0, 1:] = -1
    rows = np.concatenate([kind[..., None], rows], axis=-1).reshape(n * n, 5)

    unique, inverse = np.unique(rows, axis=0, return_inverse=True)
    texts = []
    for kind_id, a, at, du, dv in unique.tolist():
        if kind_id == 0:
            texts.append(f"d:{_names(types.names[a])}")
        elif kind_id == 1:
            texts.append(
                f"o:{_names(types.names[a])}/{_names(types.names[at])}"
                f"/{_names(types.names[du])}/{_names(types.names[dv])}"
            )
        else:
            texts.append(f"x:{_names(types.names[du])}/{_names(types.names[dv])}")
    layer, keys = _rank(inverse.reshape(n, n), texts)

    parents = np.empty(len(keys), dtype=np.int64)
    parents[layer.reshape(-1)] = colours.reshape(-1)
    return layer, keys, parents


def _rank(classes: np.ndarray, texts: list[str]) -> tuple[np.ndarray, tuple[str, ...]]:
    """Renumber classes by the sorted order of their keys"""
    order = sorted(range(len(texts)), key=texts.__getitem__)
    if len(set(texts)) != len(texts):
        raise ConfigurationError("canonical key collision during refinement")
    rank = np.empty(len(texts), dtype=np.int64)
    rank[order] = np.arange(len(texts))
    return rank[classes], tuple(texts[i] for i in order)


def _signature_rows(colours: np.ndarray, k: int, rows_of: range) -> np.ndarray:
    block = []
    for u in rows_of:
        codes = colours[u][:, None] * k + colours
        block.append(np.sort(codes, axis=0).T)
    return np.concatenate(block, axis=0)


def _refine_step(
    colours: np.ndarray, keys: tuple[str, ...], jobs: int
) -> tuple[np.ndarray, tuple[str, ...], np.ndarray]:
    n = colours.shape[0]
    k = len(keys)
    if jobs > 1 and n > 1:
        width = max(n // jobs, 1)
        chunks = [range(start, min(start + width, n)) for start in range(0, n, width)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda rows: _signature_rows(colours, k, rows), chunks))
        signatures = np.concatenate(parts, axis=0)
    else:
        signatures = _signature_rows(colours, k, range(n))
    rows = np.concatenate([colours.reshape(n * n, 1), signatures], axis=1)
    unique, inverse = np.unique(rows, axis=0, return_inverse=True)

    texts = []
    for row in unique:
        codes, counts = np.unique(row[1:], return_counts=True)
        body = ";".join(
            f"{keys[c // k]},{keys[c % k]},{m}" for c, m in zip(codes.tolist(), counts.tolist())
        )
        digest = hashlib.sha256(f"{keys[row[0]]}|{body}".encode("utf-8")).hexdigest()
        texts.append(digest[:KEY_LENGTH])
    layer, new_keys = _rank(inverse.reshape(n, n), texts)

    parents = np.empty(len(new_keys), dtype=np.int64)
    parents[layer.reshape(-1)] = colours.reshape(-1)
    return layer, new_keys, parents


def refine(target: Union[Structure, UnionStructure], jobs: int = 1) -> ColorHistory:
    """
    Refine to the coarsest coherent configuration, keeping every layer.

    ``jobs`` > 1 computes the signature rows in worker threads.
    """
    union = target if isinstance(target, UnionStructure) else None
    structure = target.structure if union is not None else target
    colours, keys = _initial_layer(structure, union)
    layers = [colours]
    key_layers = [keys]
    parents: list[np.ndarray] = [np.empty(0, dtype=np.int64)]

    split, split_keys, split_parents = _type_split(structure, union, colours)
    if len(split_keys) > len(keys):
        layers.append(split)
        key_layers.append(split_keys)
        parents.append(split_parents)
    type_layers = len(layers)

    while True:
        layer, new_keys, parent = _refine_step(layers[-1], key_layers[-1], jobs)
        if len(new_keys) == len(key_layers[-1]):
            break
        layers.append(layer)
        key_layers.append(new_keys)
        parents.append(parent)

    logger.debug(
        f"Refined {structure.universe_size} vertices in {len(layers)} layers "
        f"to {len(key_layers[-1])} colours"
    )
    return ColorHistory(
        structure=structure,
        union=union,
        layers=tuple(layers),
        keys=tuple(key_layers),
        parents=tuple(parents),
        type_layers=type_layers,
    )
