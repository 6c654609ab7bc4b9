"""
Derivation of the next state's isomorphism axioms from the previous one.

The lifter appends, to the shared proof builder, one EXT step per planned
extension variable followed by a derivation of every ROW, COL and LOCAL
axiom of P_iso(next). Old variables keep their proof names and new pairs
are named by their extension variables, so the lifted system stays closed
over the proof's own variables; ``renaming`` maps these names onto the
variables of piso(next) for the faithfulness comparison.
"""

import logging
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from ..derive.deriver import MonomialDeriver, Position
from ..derive.system import AxiomSystem
from ..dwl.models import CloudState, OpKind
from ..errors import LiftError
from ..polysys.piso import AxiomKind, IsoAxioms, piso
from ..polysys.variables import VariableId
from ..structures.models import Pair
from .plan import LiftPlan, plan

logger = logging.getLogger(__name__)

Split = tuple[Position, Counter]
Terms = list[tuple[int, Fraction]]


@dataclass
class LiftResult:
    """The lifted system plus bookkeeping for reports"""

    system: AxiomSystem
    axioms: IsoAxioms
    plan: LiftPlan
    extension_count: int
    steps_appended: int
    seconds: float


class AxiomLifter:
    """Lifts one operation; use ``run`` once per instance"""

    def __init__(self, prev: CloudState, next_state: CloudState, system: AxiomSystem, lift_plan: LiftPlan):
        self.prev = prev
        self.next = next_state
        self.system = system
        self.plan = lift_plan
        self.builder = system.builder
        self.deriver = MonomialDeriver(prev.history, system, sketches_equal=prev.sketches_equal)
        self.pebble_of = {x: p for p, x in system.variables.items()}
        self.partners: dict[int, list[int]] = {v: [] for v in range(prev.union.size)}
        for v, w in sorted(system.variables):
            self.partners[v].append(w)
            self.partners[w].append(v)

        self.colour = prev.history.colour_by_key(lift_plan.colour)
        carried = {old for old in next_state.carried if old is not None}
        self.removed = set(range(prev.union.size)) - carried
        self.in_components = {
            x for v in lift_plan.new_left + lift_plan.new_right for x in next_state.provenance[v].sources
        }

        self.variables: dict[Pair, VariableId] = {}
        self.ext_steps: dict[Pair, int] = {}
        self._plans: dict[tuple[Pair, Pair], Optional[list[tuple[Split, Fraction]]]] = {}
        self._products: dict[tuple[Pair, Pair], int] = {}

    # --- helpers ----------------------------------------------------------

    def _old(self, pebble: Pair) -> Optional[Pair]:
        v, w = pebble
        cv, cw = self.next.carried[v], self.next.carried[w]
        if cv is None or cw is None:
            return None
        return cv, cw

    def _split(self, pebbles: Sequence[Pair]) -> Optional[Split]:
        """A separated sub-position of the multiset and the pebbles left over"""
        counter = Counter(pebbles)
        distinct = sorted(counter)
        candidates = [frozenset([p]) for p in distinct] + [frozenset(c) for c in combinations(distinct, 2)]
        for sub in candidates:
            if self.deriver.separation(sub) is not None:
                return sub, counter - Counter(sub)
        return None

    def _emit(self, split: Split) -> int:
        sub, rest = split
        step = self.deriver.derive(sub)
        return self.builder.mul_monomial(step, [self.system.var(p) for p in rest.elements()])

    def _monomial(self, pebbles: Sequence[Pair]) -> int:
        split = self._split(pebbles)
        if split is None:
            raise LiftError(f"monomial over {list(pebbles)} has no separated sub-position")
        return self._emit(split)

    def _chain(self, terms: Terms) -> int:
        return self.builder.linear_chain(terms)

    # --- extension products -----------------------------------------------

    def _times_plan(self, new: Pair, old: Pair) -> Optional[list[tuple[Split, Fraction]]]:
        key = (new, old)
        if key not in self._plans:
            pending: Optional[list[tuple[Split, Fraction]]] = []
            for monomial, c in self.plan.descriptors[new].definition.items():
                split = self._split([old] + [self.pebble_of[x] for x in monomial])
                if split is None:
                    pending = None
                    break
                pending.append((split, c))
            self._plans[key] = pending
        return self._plans[key]

    def _times(self, new: Pair, old: Pair) -> int:
        """X_f(new)·X_old from the extension axiom of ``new`` times X_old"""
        key = (new, old)
        if key not in self._products:
            pending = self._times_plan(new, old)
            if pending is None:
                raise LiftError(f"cannot separate X_f{new} from X{old}")
            terms: Terms = [(self.builder.mul(self.ext_steps[new], self.system.var(old)), Fraction(1))]
            terms.extend((self._emit(split), c) for split, c in pending)
            self._products[key] = self._chain(terms)
        return self._products[key]

    def _ext_product(self, first: Pair, second: Pair) -> int:
        """X_f(first)·X_f(second) from the extension axiom of one times the other"""
        for a, b in ((first, second), (second, first)):
            choices = []
            for monomial, c in self.plan.descriptors[b].definition.items():
                pebbles = [self.pebble_of[x] for x in monomial]
                for i, q in enumerate(pebbles):
                    if self._times_plan(a, q) is not None:
                        choices.append((q, pebbles[:i] + pebbles[i + 1 :], c))
                        break
                else:
                    break
            else:
                terms: Terms = [(self.builder.mul(self.ext_steps[b], self.variables[a]), Fraction(1))]
                for q, rest, c in choices:
                    step = self.builder.mul_monomial(self._times(a, q), [self.system.var(r) for r in rest])
                    terms.append((step, c))
                return self._chain(terms)
        raise LiftError(f"cannot derive the product of X_f{first} and X_f{second}")

    # --- axiom families ---------------------------------------------------

    def _old_line(self, vertex: int, is_row: bool) -> int:
        """A surviving row or column minus the variables into contracted vertices"""
        base = self.system.row(vertex) if is_row else self.system.col(vertex)
        terms: Terms = [(base, Fraction(1))]
        for other in self.partners[vertex]:
            if other in self.removed:
                pebble = (other, vertex) if is_row else (vertex, other)
                terms.append((self._monomial([pebble]), Fraction(-1)))
        return self._chain(terms)

    def _new_pair_line(self, vertex: int, is_row: bool) -> int:
        """Row (or column) of a new pair vertex, from the row of its second parent"""
        first, second = self.next.provenance[vertex].sources
        anchor = self.system.row if is_row else self.system.col
        stable = self.prev.history.stable
        terms: Terms = []
        for x1 in self.partners[first]:
            p1 = (x1, first) if is_row else (first, x1)
            terms.append((self.builder.mul(anchor(second), self.system.var(p1)), Fraction(1)))
            for x2 in self.partners[second]:
                if stable[x1, x2] != self.colour:
                    p2 = (x2, second) if is_row else (second, x2)
                    terms.append((self._monomial([p1, p2]), Fraction(-1)))
        terms.append((anchor(first), Fraction(1)))
        terms.extend((self.ext_steps[p], Fraction(1)) for p in self._new_line_pebbles(vertex, is_row))
        return self._chain(terms)

    def _new_scc_line(self, vertex: int, is_row: bool) -> int:
        """Averaged rows (or columns) of the members of a contracted component"""
        members = self.next.provenance[vertex].sources
        anchor = self.system.row if is_row else self.system.col
        scale = Fraction(1, len(members))
        terms: Terms = []
        for member in members:
            terms.append((anchor(member), scale))
            for other in self.partners[member]:
                if other not in self.in_components:
                    pebble = (other, member) if is_row else (member, other)
                    terms.append((self._monomial([pebble]), -scale))
        terms.extend((self.ext_steps[p], Fraction(1)) for p in self._new_line_pebbles(vertex, is_row))
        return self._chain(terms)

    def _new_line_pebbles(self, vertex: int, is_row: bool) -> list[Pair]:
        if is_row:
            return [(v, vertex) for v in self.plan.new_left if (v, vertex) in self.plan.descriptors]
        return [(vertex, w) for w in self.plan.new_right if (vertex, w) in self.plan.descriptors]

    def _line(self, vertex: int, is_row: bool) -> int:
        if self.next.carried[vertex] is not None:
            return self._old_line(self.next.carried[vertex], is_row)
        if self.plan.op == OpKind.PAIR:
            return self._new_pair_line(vertex, is_row)
        return self._new_scc_line(vertex, is_row)

    def _local(self, first: Pair, second: Pair) -> int:
        old_first, old_second = self._old(first), self._old(second)
        if old_first is not None and old_second is not None:
            step = self.system.local(old_first, old_second)
            if step is None:
                raise LiftError(f"no LOCAL axiom for the surviving pebbles {old_first}, {old_second}")
            return step
        if old_first is not None:
            return self._times(second, old_first)
        if old_second is not None:
            return self._times(first, old_second)
        return self._ext_product(first, second)

    # --- driver -----------------------------------------------------------

    def run(self) -> LiftResult:
        started = time.perf_counter()
        first_step = len(self.builder)
        target = piso(self.next.union)

        for pebble in sorted(target.variables):
            old = self._old(pebble)
            if old is not None:
                if old not in self.system.variables:
                    raise LiftError(f"surviving pebble {pebble} had no variable before the operation")
                self.variables[pebble] = self.system.var(old)
            elif pebble in self.plan.descriptors:
                x, step = self.builder.extension(self.plan.descriptors[pebble].definition)
                self.variables[pebble] = x
                self.ext_steps[pebble] = step
            else:
                raise LiftError(f"pebble {pebble} mixes a surviving and a new vertex")

        lifted = AxiomSystem(union=self.next.union, builder=self.builder, variables=dict(self.variables))
        for axiom in target.axioms:
            if axiom.kind == AxiomKind.ROW:
                (w,) = axiom.anchor
                lifted.rows[w] = self._line(w, is_row=True)
            elif axiom.kind == AxiomKind.COL:
                (v,) = axiom.anchor
                lifted.cols[v] = self._line(v, is_row=False)
            else:
                first, second = axiom.anchor
                lifted.locals[frozenset((first, second))] = self._local(first, second)

        self.plan.renaming = {x: target.variables[p] for p, x in self.variables.items()}
        self._compare(lifted, target)

        result = LiftResult(
            system=lifted,
            axioms=target,
            plan=self.plan,
            extension_count=len(self.ext_steps),
            steps_appended=len(self.builder) - first_step,
            seconds=time.perf_counter() - started,
        )
        logger.info(
            f"Lifted {len(target)} axioms over {self.plan.op.value}({self.plan.colour[:12]}) with "
            f"{result.extension_count} extensions and {result.steps_appended} steps"
        )
        return result

    def _compare(self, lifted: AxiomSystem, target: IsoAxioms) -> None:
        for axiom in target.axioms:
            if axiom.kind == AxiomKind.ROW:
                step = lifted.rows[axiom.anchor[0]]
            elif axiom.kind == AxiomKind.COL:
                step = lifted.cols[axiom.anchor[0]]
            else:
                step = lifted.locals[frozenset(axiom.anchor)]
            got = self.builder.polynomial(step).rename(self.plan.renaming)
            if got != axiom.polynomial:
                logger.error(f"Lifted {axiom.line()} came out as {got.to_text()}")
                raise LiftError(
                    f"lifted {axiom.kind.name} axiom at {axiom.anchor} is {got.to_text()}, "
                    f"expected {axiom.polynomial.to_text()}"
                )


def lift_axioms(prev: CloudState, next_state: CloudState, system: AxiomSystem) -> LiftResult:
    """Plan and derive P_iso(next) inside the builder of ``system``"""
    return AxiomLifter(prev, next_state, system, plan(prev, next_state, system)).run()
