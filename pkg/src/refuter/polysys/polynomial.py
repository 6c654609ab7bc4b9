"""
Sparse multivariate polynomials over exact rationals.

A monomial is a sorted tuple of variables with repetitions, so X² is
``(X, X)`` and the constant monomial is ``()``. Coefficients are
``Fraction`` values; zero coefficients are never stored.
"""

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

from ..errors import AlgebraError
from .variables import VariableId, parse_variable

Monomial = tuple[VariableId, ...]
Rational = Union[int, Fraction]

COEFFICIENT = re.compile(r"^(-?\d+)/(\d+)$")


def _monomial_order(monomial: Monomial) -> tuple[int, Monomial]:
    return len(monomial), monomial


class Polynomial:
    """Immutable sparse polynomial; equality is structural"""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Rational]] = None):
        self._terms: dict[Monomial, Fraction] = {}
        if terms:
            for monomial, coefficient in terms.items():
                if coefficient != 0:
                    self._terms[tuple(sorted(monomial))] = Fraction(coefficient)
        self._hash: Optional[int] = None

    @classmethod
    def _from_clean(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value: Rational) -> "Polynomial":
        return cls({(): value})

    @classmethod
    def variable(cls, x: VariableId) -> "Polynomial":
        return cls({(x,): 1})

    @classmethod
    def monomial(cls, variables: Iterable[VariableId], coefficient: Rational = 1) -> "Polynomial":
        return cls({tuple(sorted(variables)): coefficient})

    @classmethod
    def linear(cls, variables: Iterable[VariableId], coefficient: Rational = 1, constant: Rational = 0) -> "Polynomial":
        terms: dict[Monomial, Fraction] = {}
        for x in variables:
            terms[(x,)] = terms.get((x,), Fraction(0)) + coefficient
        if constant:
            terms[()] = Fraction(constant)
        return cls(terms)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in canonical order"""
        for monomial in sorted(self._terms, key=_monomial_order):
            yield monomial, self._terms[monomial]

    @property
    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(): Fraction(1)}

    def size(self) -> int:
        """Number of monomial occurrences"""
        return len(self._terms)

    def bits(self) -> int:
        """Bits of the largest coefficient, numerator plus denominator"""
        return max(
            (abs(c.numerator).bit_length() + c.denominator.bit_length() for c in self._terms.values()),
            default=0,
        )

    def variables(self) -> set[VariableId]:
        return {x for monomial in self._terms for x in monomial}

    def coefficient(self, monomial: Iterable[VariableId]) -> Fraction:
        return self._terms.get(tuple(sorted(monomial)), Fraction(0))

    def add_scaled(self, other: "Polynomial", a: Rational, b: Rational) -> "Polynomial":
        return add_scaled(self, other, a, b)

    def mul_var(self, x: VariableId) -> "Polynomial":
        return mul_var(self, x)

    def rename(self, mapping: Mapping[VariableId, VariableId]) -> "Polynomial":
        """Substitute variables one for one"""
        terms: dict[Monomial, Fraction] = {}
        for monomial, coefficient in self._terms.items():
            renamed = tuple(sorted(mapping.get(x, x) for x in monomial))
            terms[renamed] = terms.get(renamed, Fraction(0)) + coefficient
        return Polynomial(terms)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return add_scaled(self, other, 1, 1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return add_scaled(self, other, 1, -1)

    def __neg__(self) -> "Polynomial":
        return add_scaled(self, self, -1, 0)

    def __mul__(self, other: Union["Polynomial", Rational]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return add_scaled(self, self, other, 0)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                product = tuple(sorted(m1 + m2))
                terms[product] = terms.get(product, Fraction(0)) + c1 * c2
        return Polynomial(terms)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()})"

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for monomial, coefficient in self.items():
            head = f"{coefficient.numerator}/{coefficient.denominator}"
            parts.append(" * ".join([head, *(str(x) for x in monomial)]))
        return " + ".join(parts)


def add_scaled(p: Polynomial, q: Polynomial, a: Rational, b: Rational) -> Polynomial:
    """a·p + b·q"""
    a, b = Fraction(a), Fraction(b)
    terms: dict[Monomial, Fraction] = {}
    if a:
        terms = {m: a * c for m, c in p.terms.items()}
    if b:
        for monomial, coefficient in q.terms.items():
            value = terms.get(monomial, Fraction(0)) + b * coefficient
            if value:
                terms[monomial] = value
            else:
                terms.pop(monomial, None)
    return Polynomial._from_clean(terms)


def mul_var(p: Polynomial, x: VariableId) -> Polynomial:
    """x·p; the degree grows by exactly one unless p is zero"""
    return Polynomial._from_clean({tuple(sorted((*m, x))): c for m, c in p.terms.items()})


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of ``Polynomial.to_text``"""
    stripped = text.strip()
    if stripped == "0":
        return Polynomial()
    terms: dict[Monomial, Fraction] = {}
    for raw in stripped.split(" + "):
        factors = [factor.strip() for factor in raw.split("*")]
        match = COEFFICIENT.match(factors[0])
        if not match or int(match.group(2)) == 0:
            raise AlgebraError(f"malformed coefficient in term {raw!r}")
        monomial = tuple(sorted(parse_variable(factor) for factor in factors[1:]))
        if monomial in terms:
            raise AlgebraError(f"repeated monomial in term {raw!r}")
        coefficient = Fraction(int(match.group(1)), int(match.group(2)))
        if coefficient == 0:
            raise AlgebraError(f"zero coefficient in term {raw!r}")
        terms[monomial] = coefficient
    return Polynomial(terms)
