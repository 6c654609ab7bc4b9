"""
Monomial derivations driven by the colour history of a union.

A position is a set of at most two pebbles (v, w) with v on the LEFT and w on
the RIGHT. It is separated when the stable colours of (v, v') and (w, w')
differ; its separation index is the first layer where they do. The deriver
builds a degree-3 proof of the monomial X_π by induction on that index:

* index inside the type layers: the pebbles are not a local isomorphism, so
  a LOCAL axiom names X_π (a square is reduced to X with the Boolean axiom).
* later index s, own-side witness: some code (c1, c2) at layer s-1 is realised
  by a different number of middle vertices on each side. Summing COL over
  the LEFT realisers and ROW over the RIGHT ones and cancelling the mixed
  products through positions separated strictly earlier leaves a nonzero
  multiple of X_π.
* later index s, no own-side witness: the difference lies in the crossing
  middle vertices, so some diagonal colour at layer s-1 has different sizes
  on the two sides. The same summation over that colour derives the
  constant 1, which is multiplied up to X_π.

Every recursive request is to a position with a strictly smaller index.
"""

import logging
from collections import Counter
from fractions import Fraction
from typing import Iterable, Optional

import networkx as nx
import numpy as np

from ..coherent.history import ColorHistory
from ..coherent.sketch import AlgebraicSketch
from ..config import get_settings
from ..errors import DerivationError, SizeLimitError
from ..polysys.piso import IsoAxioms
from ..polysys.polynomial import Polynomial
from ..polysys.variables import VariableId
from ..prooflog.builder import ProofBuilder
from ..prooflog.checker import check
from ..prooflog.models import Proof, ProofMode
from ..structures.models import Pair
from .oracle import derivable_closure_oracle
from .system import AxiomSystem

logger = logging.getLogger(__name__)

Position = frozenset[Pair]


class MonomialDeriver:
    """
    Derives monomials and the constant 1 into the builder of ``system``.

    ``history`` must be the colour history of ``system.union``. With
    ``sketches_equal`` set the caller asserts that both sides have the same
    restricted sketch; a request that would need the crossing-colour case
    then raises, and ``one`` goes straight to the game oracle.
    """

    def __init__(self, history: ColorHistory, system: AxiomSystem, *, sketches_equal: bool = False):
        if history.union is None:
            raise DerivationError("derivations need the history of a union", code="NOT_A_UNION")
        self.history = history
        self.system = system
        self.builder = system.builder
        self.union = history.union
        self.sketches_equal = sketches_equal
        self.memo: dict[Position, int] = {}

        self.left = np.array(self.union.left_vertices)
        self.right = np.array(self.union.right_vertices)
        self.partners: dict[int, list[int]] = {v: [] for v in range(self.union.size)}
        for v, w in sorted(system.variables):
            self.partners[v].append(w)
            self.partners[w].append(v)

    # --- separation -------------------------------------------------------

    @staticmethod
    def _ends(position: Position) -> tuple[Pair, Pair]:
        pebbles = sorted(position)
        return pebbles[0], pebbles[-1]

    def separation(self, position: Iterable[Pair]) -> Optional[int]:
        """First layer where the LEFT and RIGHT pairs of the position differ"""
        position = frozenset(position)
        if not position:
            return None
        (v, w), (v2, w2) = self._ends(position)
        for i, layer in enumerate(self.history.layers):
            if layer[v, v2] != layer[w, w2]:
                return i
        return None

    # --- entry points -----------------------------------------------------

    def derive(self, position: Iterable[Pair], bound: Optional[int] = None) -> int:
        """
        Step index whose polynomial is exactly X_π.

        ``bound`` is the separation index of the requesting position; the
        request is refused unless this position separates strictly earlier.
        """
        position = frozenset(position)
        if position in self.memo:
            return self.memo[position]
        if not 1 <= len(position) <= 2:
            raise DerivationError(f"positions hold one or two pebbles, got {len(position)}")
        for pebble in position:
            if not self.system.has_var(pebble):
                raise DerivationError(f"no variable for pebble {pebble}", code="NO_VARIABLE")

        s = self.separation(position)
        if s is None:
            raise DerivationError(f"position {sorted(position)} is not separated")
        if bound is not None and s >= bound:
            raise DerivationError(
                f"measure did not decrease: {sorted(position)} separates at {s}, bound {bound}",
                code="MEASURE",
            )

        if s < self.history.type_layers:
            step = self._base(position)
        else:
            step = self._inductive(position, s)
        self._expect(step, Polynomial.monomial(self._vars(position)))
        self.memo[position] = step
        return step

    def one(self) -> int:
        """
        Step deriving the constant 1 for a union whose sides are told apart.

        Without a one-sided or unbalanced diagonal stable colour the
        brute-force game closure decides; SKETCHES_EQUAL when it does not
        derive 1 or the union is too large for it.
        """
        if frozenset() in self.memo:
            return self.memo[frozenset()]

        step = None if self.sketches_equal else self._stable_one()
        if step is None:
            step = self._oracle_one()
        self._expect(step, Polynomial.constant(1))
        self.memo[frozenset()] = step
        return step

    def _stable_one(self) -> Optional[int]:
        """1 from a one-sided or unbalanced diagonal stable colour, if there is one"""
        h = self.history
        stable = h.stable
        side = self.union.side_mask
        for colour, (u, v) in enumerate(h.representatives):
            if h.is_crossing(colour):
                continue
            members = stable == colour
            on_left = bool(np.any(members[np.ix_(side, side)]))
            on_right = bool(np.any(members[np.ix_(~side, ~side)]))
            if on_left == on_right:
                continue
            logger.debug(f"Deriving 1 from one-sided colour {colour} at {(u, v)}")
            if u == v:
                return self._diagonal_one(colour, h.stable_index, None)
            return self._product_one((u, v), on_left)
        colour = self._unbalanced_diagonal(h.stable_index)
        if colour is None:
            return None
        return self._diagonal_one(colour, h.stable_index, None)

    def _oracle_one(self) -> int:
        """
        1 guided by the game closure: the single placements Duplicator may
        still use split into components, and a component with more vertices
        on one side gives the same summation as an unbalanced diagonal colour.
        """
        try:
            closure = derivable_closure_oracle(self.union)
        except SizeLimitError as e:
            logger.warning(f"Oracle fallback skipped: {e}")
            raise DerivationError(
                "no one-sided colour and no unbalanced diagonal colour", code="SKETCHES_EQUAL"
            ) from e
        if frozenset() not in closure:
            raise DerivationError("restricted sketches are equal and the oracle agrees", code="SKETCHES_EQUAL")

        graph = nx.Graph()
        graph.add_nodes_from(("l", x) for x in self.union.left_vertices)
        graph.add_nodes_from(("r", y) for y in self.union.right_vertices)
        for x in self.union.left_vertices:
            for y in self.union.right_vertices:
                if frozenset([(x, y)]) not in closure:
                    graph.add_edge(("l", x), ("r", y))
        for component in sorted(nx.connected_components(graph), key=min):
            a = sorted(v for kind, v in component if kind == "l")
            b = sorted(v for kind, v in component if kind == "r")
            if len(a) != len(b):
                logger.info(f"Deriving 1 from the oracle: component with {len(a)} LEFT and {len(b)} RIGHT vertices")
                return self._balance_one(a, b, None)
        raise DerivationError("oracle derives 1 but every placement component is balanced", code="INTERNAL")

    # --- cases ------------------------------------------------------------

    def _vars(self, pebbles: Iterable[Pair]) -> list[VariableId]:
        return [self.system.var(p) for p in pebbles]

    def _expect(self, step: int, target: Polynomial) -> None:
        got = self.builder.polynomial(step)
        if got != target:
            raise DerivationError(
                f"derived {got.to_text()} instead of {target.to_text()}", code="INTERNAL"
            )

    def _base(self, position: Position) -> int:
        first, second = self._ends(position)
        local = self.system.local(first, second)
        if local is None:
            raise DerivationError(f"no LOCAL axiom for {sorted(position)}", code="INTERNAL")
        if first != second:
            return local
        x = self.system.var(first)
        # vertices created by one operation share their loop relations
        if x.is_ext:
            raise DerivationError(f"extension pebble {first} separated by type", code="INTERNAL")
        return self.builder.lin(local, self.builder.boolean(x), 1, -1)

    def _inductive(self, position: Position, s: int) -> int:
        i = s - 1
        layer = self.history.layers[i]
        k = self.history.colour_count(i)
        (v, w), (v2, w2) = self._ends(position)

        left_codes = layer[v, self.left] * k + layer[self.left, v2]
        right_codes = layer[w, self.right] * k + layer[self.right, w2]
        left_counts = np.bincount(left_codes, minlength=k * k)
        right_counts = np.bincount(right_codes, minlength=k * k)
        differing = np.flatnonzero(left_counts != right_counts)
        if differing.size:
            code = int(differing[0])
            a = {int(x) for x in self.left[left_codes == code]}
            b = {int(y) for y in self.right[right_codes == code]}
            return self._own_side(position, s, a, b)

        if self.sketches_equal:
            raise DerivationError(
                f"position {sorted(position)} needs a crossing-colour argument but the "
                f"restricted sketches are equal",
                code="SKETCHES_EQUAL",
            )
        colour = self._unbalanced_diagonal(i)
        if colour is None:
            raise DerivationError(f"no witness for {sorted(position)} at layer {i}", code="INTERNAL")
        one = self.memo.get(frozenset())
        if one is None:
            one = self._diagonal_one(colour, i, s)
            self.memo[frozenset()] = one
        return self.builder.mul_monomial(one, self._vars(position))

    def _cancel(self, position: Position, extra: Pair, layer: np.ndarray, s: int) -> int:
        """Step for X_π·X_extra through a sub-position separated before s"""
        (v, w), (v2, w2) = self._ends(position)
        x, y = extra
        sub = frozenset(((v, w), extra)) if layer[v, x] != layer[w, y] else frozenset((extra, (v2, w2)))
        step = self.derive(sub, bound=s)
        rest = Counter(position) + Counter([extra]) - Counter(sub)
        return self.builder.mul_monomial(step, self._vars(rest.elements()))

    def _own_side(self, position: Position, s: int, a: set[int], b: set[int]) -> int:
        layer = self.history.layers[s - 1]
        scale = Fraction(1, len(b) - len(a))
        pebble_vars = self._vars(sorted(position))
        terms: list[tuple[int, Fraction]] = []
        for x in sorted(a):
            terms.append((self.builder.mul_monomial(self.system.col(x), pebble_vars), scale))
        for y in sorted(b):
            terms.append((self.builder.mul_monomial(self.system.row(y), pebble_vars), -scale))
        for x in sorted(a):
            for y in self.partners[x]:
                if y not in b:
                    terms.append((self._cancel(position, (x, y), layer, s), -scale))
        for y in sorted(b):
            for x in self.partners[y]:
                if x not in a:
                    terms.append((self._cancel(position, (x, y), layer, s), scale))
        return self.builder.linear_chain(terms)

    def _unbalanced_diagonal(self, i: int) -> Optional[int]:
        diagonal = np.diag(self.history.layers[i])
        k = self.history.colour_count(i)
        left = np.bincount(diagonal[self.left], minlength=k)
        right = np.bincount(diagonal[self.right], minlength=k)
        differing = np.flatnonzero(left != right)
        return int(differing[0]) if differing.size else None

    def _diagonal_one(self, colour: int, i: int, bound: Optional[int]) -> int:
        diagonal = np.diag(self.history.layers[i])
        d_left = [int(x) for x in self.left[diagonal[self.left] == colour]]
        d_right = [int(y) for y in self.right[diagonal[self.right] == colour]]
        return self._balance_one(d_left, d_right, bound)

    def _balance_one(self, d_left: list[int], d_right: list[int], bound: Optional[int]) -> int:
        """Σ COL over ``d_left`` minus Σ ROW over ``d_right``, pebbles leaving the block cancelled"""
        scale = Fraction(1, len(d_right) - len(d_left))
        left_set, right_set = set(d_left), set(d_right)
        terms: list[tuple[int, Fraction]] = []
        terms.extend((self.system.col(x), scale) for x in d_left)
        terms.extend((self.system.row(y), -scale) for y in d_right)
        for x in d_left:
            for y in self.partners[x]:
                if y not in right_set:
                    terms.append((self.derive([(x, y)], bound=bound), -scale))
        for y in d_right:
            for x in self.partners[y]:
                if x not in left_set:
                    terms.append((self.derive([(x, y)], bound=bound), scale))
        return self.builder.linear_chain(terms)

    def _product_one(self, pair: Pair, on_left: bool) -> int:
        """
        1 from a non-diagonal colour realised on one side only: for its least
        pair (u, u') every product X_{u·}·X_{u'·} is separated.
        """
        u, u2 = pair
        anchor = self.system.col if on_left else self.system.row
        terms: list[tuple[int, Fraction]] = []
        for t2 in self.partners[u2]:
            second = (u2, t2) if on_left else (t2, u2)
            terms.append((self.builder.mul(anchor(u), self.system.var(second)), Fraction(-1)))
            for t in self.partners[u]:
                first = (u, t) if on_left else (t, u)
                terms.append((self.derive([first, second]), Fraction(1)))
        terms.append((anchor(u2), Fraction(-1)))
        return self.builder.linear_chain(terms)


def _recheck(proof: Proof, axioms: IsoAxioms) -> None:
    if not get_settings().recheck_fragments:
        return
    verdict = check(proof, axioms.polynomials())
    if not verdict.accepted:
        raise DerivationError(
            f"emitted fragment rejected: {verdict.summary()}", code="FRAGMENT_REJECTED"
        )


def derive_monomial(history: ColorHistory, axioms: IsoAxioms, position: Iterable[Pair]) -> Proof:
    """
    MC3 proof whose last line is X_π for a separated position.

    A position with a pebble that has no variable yields an empty proof.
    """
    position = frozenset(position)
    if any(pebble not in axioms.variables for pebble in position):
        logger.warning(f"Position {sorted(position)} has a pebble without a variable")
        return Proof(mode=ProofMode.MC3)
    builder = ProofBuilder(axioms.polynomials(), ProofMode.MC3)
    deriver = MonomialDeriver(history, AxiomSystem.from_axioms(axioms, builder))
    step = deriver.derive(position)
    if step != len(builder) - 1:
        builder.lin(step, step, 1, 0)
    proof = builder.build()
    _recheck(proof, axioms)
    return proof


def derive_one(
    history: ColorHistory,
    left_sketch: AlgebraicSketch,
    right_sketch: AlgebraicSketch,
    axioms: IsoAxioms,
) -> Proof:
    """
    MC3 refutation of P_iso for a union whose restricted sketches differ.

    Equal sketches are checked against the game oracle before giving up
    with SKETCHES_EQUAL.
    """
    builder = ProofBuilder(axioms.polynomials(), ProofMode.MC3)
    deriver = MonomialDeriver(
        history, AxiomSystem.from_axioms(axioms, builder), sketches_equal=left_sketch.same_as(right_sketch)
    )
    step = deriver.one()
    if step != len(builder) - 1:
        builder.lin(step, step, 1, 0)
    proof = builder.build()
    _recheck(proof, axioms)
    return proof
