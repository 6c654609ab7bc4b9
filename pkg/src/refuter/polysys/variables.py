"""Variable identifiers for isomorphism polynomials."""

import re
from enum import IntEnum
from typing import NamedTuple

from ..errors import AlgebraError

VARIABLE_TEXT = re.compile(r"^(?:x\[(\d+),(\d+)\]|e\[(\d+)\])$")


class VariableKind(IntEnum):
    """Original pair variable or extension variable"""

    ORIG = 0
    EXT = 1


class VariableId(NamedTuple):
    """
    ORIG(v, w) for a LEFT vertex v and a RIGHT vertex w, both numbered inside
    their own side, or EXT(k) for the k-th extension variable.
    """

    kind: VariableKind
    a: int
    b: int = 0

    @classmethod
    def orig(cls, v: int, w: int) -> "VariableId":
        return cls(VariableKind.ORIG, v, w)

    @classmethod
    def ext(cls, index: int) -> "VariableId":
        return cls(VariableKind.EXT, index, 0)

    @property
    def is_ext(self) -> bool:
        return self.kind == VariableKind.EXT

    def __str__(self) -> str:
        if self.is_ext:
            return f"e[{self.a}]"
        return f"x[{self.a},{self.b}]"


def parse_variable(text: str) -> VariableId:
    match = VARIABLE_TEXT.match(text.strip())
    if not match:
        raise AlgebraError(f"malformed variable {text!r}")
    if match.group(3) is not None:
        return VariableId.ext(int(match.group(3)))
    return VariableId.orig(int(match.group(1)), int(match.group(2)))
