"""
Independent proof checker.

Each step is recomputed from its justification alone and compared with the
stated polynomial. The checker trusts nothing the producer computed apart
from the stated polynomials it compares against.
"""

import logging
from typing import Optional, Sequence

from ..polysys.extension import ExtensionKind, classify_extension
from ..polysys.polynomial import Polynomial, add_scaled, mul_var
from ..polysys.variables import VariableId
from .builder import MAX_DEGREE
from .models import Proof, ProofMetrics, ProofMode, Rejection, Rule, Verdict

logger = logging.getLogger(__name__)


class _Reject(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class ProofChecker:
    """Checks one proof against one axiom list"""

    def __init__(self, proof: Proof, axioms: Sequence[Polynomial]):
        self.proof = proof
        self.axioms = axioms
        self.seen: set[VariableId] = set()
        for axiom in axioms:
            self.seen |= axiom.variables()
        self.introduced: set[int] = set()
        self.axiom_products: list[bool] = []

    def run(self) -> Verdict:
        metrics = ProofMetrics(
            steps=len(self.proof.steps), extension_count=0, size=0, bit_complexity=0, max_degree=0
        )
        for index, step in enumerate(self.proof.steps):
            try:
                expected = self._recompute(index)
            except _Reject as e:
                return self._rejected(e.code, index, e.message, metrics)
            if expected.degree > MAX_DEGREE:
                return self._rejected(
                    "DEGREE_EXCEEDED", index, f"degree {expected.degree} exceeds {MAX_DEGREE}", metrics
                )
            if expected != step.polynomial:
                return self._rejected(
                    "POLY_MISMATCH",
                    index,
                    f"stated {step.polynomial.to_text()} but rule gives {expected.to_text()}",
                    metrics,
                )
            self.seen |= expected.variables()
            metrics.size += expected.size()
            metrics.bit_complexity = max(metrics.bit_complexity, expected.bits())
            metrics.max_degree = max(metrics.max_degree, expected.degree)
            if step.justification.rule == Rule.EXT:
                metrics.extension_count += 1

        last = self.proof.last
        refutation = last is not None and last.is_one()
        logger.debug(f"Accepted proof with {metrics.steps} steps, refutation={refutation}")
        return Verdict(accepted=True, refutation=refutation, metrics=metrics)

    def _rejected(self, code: str, step: int, message: str, metrics: ProofMetrics) -> Verdict:
        logger.info(f"Proof rejected at step {step}: {code} {message}")
        return Verdict(
            accepted=False,
            metrics=metrics,
            rejection=Rejection(code=code, step=step, message=message),
        )

    def _premise(self, index: int, premise: int) -> Polynomial:
        if not 0 <= premise < index:
            raise _Reject("BAD_PREMISE", f"premise {premise} does not precede step {index}")
        return self.proof.steps[premise].polynomial

    def _require_known(self, x: VariableId) -> None:
        if x.is_ext and x.a not in self.introduced:
            raise _Reject("BAD_PREMISE", f"extension variable {x} used before its definition")

    def _recompute(self, index: int) -> Polynomial:
        justification = self.proof.steps[index].justification
        rule = justification.rule
        tagged = False

        if rule == Rule.AXIOM:
            k = justification.index
            if k is None or not 0 <= k < len(self.axioms):
                raise _Reject("BAD_PREMISE", f"no axiom with index {k}")
            result = self.axioms[k]
            tagged = True

        elif rule == Rule.BOOLEAN:
            x = justification.variable
            if x is None or x.is_ext:
                raise _Reject("BAD_EXT_FORM", f"Boolean axiom does not apply to {x}")
            result = Polynomial({(x, x): 1, (x,): -1})
            tagged = True

        elif rule == Rule.MUL:
            (premise,) = justification.premises
            x = justification.variable
            if x is None:
                raise _Reject("BAD_PREMISE", "multiplication without a variable")
            base = self._premise(index, premise)
            self._require_known(x)
            if self.proof.mode == ProofMode.MC3:
                if not (base.size() <= 1 or self.axiom_products[premise]):
                    raise _Reject(
                        "MC_MUL_VIOLATION",
                        f"premise {premise} is neither a monomial nor a monomial times an axiom",
                    )
                tagged = self.axiom_products[premise]
            result = mul_var(base, x)

        elif rule == Rule.LIN:
            p, q = justification.premises
            a, b = justification.coefficients
            result = add_scaled(self._premise(index, p), self._premise(index, q), a, b)

        elif rule == Rule.EXT:
            result = self._extension(index, justification.index)

        else:
            raise _Reject("BAD_PREMISE", f"unknown rule {rule}")

        self.axiom_products.append(tagged)
        return result

    def _extension(self, index: int, k: Optional[int]) -> Polynomial:
        if self.proof.mode != ProofMode.EPC3:
            raise _Reject("BAD_EXT_FORM", f"extension steps need epc3 mode, not {self.proof.mode.value}")
        if k is None or k not in self.proof.ext_table:
            raise _Reject("BAD_PREMISE", f"no extension definition with index {k}")
        definition = self.proof.ext_table[k]
        x = VariableId.ext(k)
        if k in self.introduced or x in self.seen or x in definition.variables():
            raise _Reject("NOT_FRESH", f"{x} is not fresh")
        for y in definition.variables():
            self._require_known(y)
        if self.proof.restricted_ext and classify_extension(definition).kind == ExtensionKind.GENERAL:
            raise _Reject("BAD_EXT_FORM", f"definition of {x} is neither X·Y nor an averaged sum")
        self.introduced.add(k)
        return Polynomial.variable(x) - definition


def check(proof: Proof, axioms: Sequence[Polynomial]) -> Verdict:
    """Recompute every step; ACCEPT iff all steps match and respect the bounds"""
    return ProofChecker(proof, axioms).run()
