"""
Proof file format.

    epcproof v1 mode=<mc3|pc3|epc3> restricted=<0|1>
    ext <k> := <polynomial>
    step <i> axiom <k> :: <polynomial>
    step <i> boolean <var> :: <polynomial>
    step <i> mul <premise> <var> :: <polynomial>
    step <i> lin <p> <q> <a> <b> :: <polynomial>
    step <i> ext <k> :: <polynomial>

Extension entries precede all steps; steps are numbered from 0 without gaps.
"""

import re
from fractions import Fraction
from pathlib import Path
from typing import Union

from ..errors import AlgebraError, ProofFormatError
from ..polysys.polynomial import parse_polynomial
from ..polysys.variables import parse_variable
from .models import Justification, Proof, ProofMode, ProofStep, Rule

HEADER = re.compile(r"^epcproof v1 mode=(mc3|pc3|epc3) restricted=([01])$")
EXT_LINE = re.compile(r"^ext (\d+) := (.+)$")
STEP_LINE = re.compile(r"^step (\d+) (axiom|boolean|mul|lin|ext) ([^:]*?) :: (.+)$")


def _fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _justification_text(j: Justification) -> str:
    if j.rule in (Rule.AXIOM, Rule.EXT):
        return f"{j.rule.value} {j.index}"
    if j.rule == Rule.BOOLEAN:
        return f"boolean {j.variable}"
    if j.rule == Rule.MUL:
        return f"mul {j.premises[0]} {j.variable}"
    a, b = j.coefficients
    return f"lin {j.premises[0]} {j.premises[1]} {_fraction_text(a)} {_fraction_text(b)}"


def dump_proof(proof: Proof) -> str:
    """Canonical text form of a proof"""
    lines = [f"epcproof v1 mode={proof.mode.value} restricted={int(proof.restricted_ext)}"]
    for k in sorted(proof.ext_table):
        lines.append(f"ext {k} := {proof.ext_table[k].to_text()}")
    for i, step in enumerate(proof.steps):
        lines.append(f"step {i} {_justification_text(step.justification)} :: {step.polynomial.to_text()}")
    return "\n".join(lines) + "\n"


def _parse_fraction(text: str, line: int) -> Fraction:
    try:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as e:
        raise ProofFormatError(f"bad coefficient {text!r}", line) from e


def _parse_justification(rule: Rule, args: list[str], line: int) -> Justification:
    expected = {Rule.AXIOM: 1, Rule.EXT: 1, Rule.BOOLEAN: 1, Rule.MUL: 2, Rule.LIN: 4}[rule]
    if len(args) != expected:
        raise ProofFormatError(f"{rule.value} takes {expected} arguments", line)
    try:
        if rule == Rule.AXIOM:
            return Justification.axiom(int(args[0]))
        if rule == Rule.EXT:
            return Justification.ext(int(args[0]))
        if rule == Rule.BOOLEAN:
            return Justification.boolean(parse_variable(args[0]))
        if rule == Rule.MUL:
            return Justification.mul(int(args[0]), parse_variable(args[1]))
        return Justification.lin(
            int(args[0]),
            int(args[1]),
            _parse_fraction(args[2], line),
            _parse_fraction(args[3], line),
        )
    except (ValueError, AlgebraError) as e:
        raise ProofFormatError(str(e), line) from e


def load_proof(text: str) -> Proof:
    """Parse a proof file; raises PROOF_FORMAT with the offending line"""
    lines = text.splitlines()
    if not lines:
        raise ProofFormatError("empty proof file", 1)
    header = HEADER.match(lines[0].strip())
    if not header:
        raise ProofFormatError("expected 'epcproof v1 mode=<mode> restricted=<0|1>'", 1)
    proof = Proof(mode=ProofMode(header.group(1)), restricted_ext=header.group(2) == "1")

    for number, raw in enumerate(lines[1:], start=2):
        stripped = raw.strip()
        if not stripped:
            continue
        ext = EXT_LINE.match(stripped)
        if ext:
            if proof.steps:
                raise ProofFormatError("extension entries must precede steps", number)
            k = int(ext.group(1))
            if k in proof.ext_table:
                raise ProofFormatError(f"extension {k} defined twice", number)
            try:
                proof.ext_table[k] = parse_polynomial(ext.group(2))
            except AlgebraError as e:
                raise ProofFormatError(e.message, number) from e
            continue
        step = STEP_LINE.match(stripped)
        if not step:
            raise ProofFormatError(f"unrecognised line {stripped[:40]!r}", number)
        if int(step.group(1)) != len(proof.steps):
            raise ProofFormatError(f"expected step {len(proof.steps)}", number)
        justification = _parse_justification(Rule(step.group(2)), step.group(3).split(), number)
        try:
            polynomial = parse_polynomial(step.group(4))
        except AlgebraError as e:
            raise ProofFormatError(e.message, number) from e
        proof.steps.append(ProofStep(polynomial, justification))
    return proof


def save_proof(proof: Proof, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_proof(proof), encoding="utf-8")


def read_proof(path: Union[str, Path]) -> Proof:
    return load_proof(Path(path).read_text(encoding="utf-8"))
