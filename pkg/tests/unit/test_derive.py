"""
Unit tests for derive: monomial derivations, derivations of 1 and the
brute-force derivability oracle.
"""

from itertools import combinations

import pytest

from src.refuter.coherent.history import refine
from src.refuter.coherent.sketch import restrict_sketch
from src.refuter.config import reset_settings
from src.refuter.derive.deriver import MonomialDeriver, derive_monomial, derive_one
from src.refuter.derive.oracle import derivable_closure_oracle
from src.refuter.derive.system import AxiomSystem
from src.refuter.errors import DerivationError, SizeLimitError
from src.refuter.polysys.piso import piso
from src.refuter.polysys.polynomial import Polynomial
from src.refuter.polysys.variables import VariableId
from src.refuter.prooflog.builder import ProofBuilder
from src.refuter.prooflog.checker import check
from src.refuter.prooflog.models import ProofMode
from src.refuter.structures.library import EDGE
from src.refuter.structures.models import Side, Structure
from src.refuter.structures.union import disjoint_union


def setup(left: Structure, right: Structure):
    gh = disjoint_union(left, right)
    return gh, refine(gh), piso(gh)


@pytest.mark.unit
class TestAxiomSystem:
    """Test the proof-side axiom lookups"""

    def test_axioms_load_lazily(self, k2):
        """Test axioms become AXIOM steps on first use only"""
        gh, _, axioms = setup(k2, k2)
        builder = ProofBuilder(axioms.polynomials())
        system = AxiomSystem.from_axioms(axioms, builder)
        assert len(builder) == 0
        step = system.row(2)
        assert builder.polynomial(step) == axioms.polynomials()[axioms.row_index[2]]
        assert system.row(2) == step
        assert len(builder) == 1

    def test_local_lookup(self, k2):
        """Test LOCAL lookups return None for local isomorphisms"""
        _, _, axioms = setup(k2, k2)
        system = AxiomSystem.from_axioms(axioms, ProofBuilder(axioms.polynomials()))
        assert system.local((0, 2), (1, 3)) is None
        assert system.local((0, 2), (0, 3)) is not None

    def test_missing_row(self, k2):
        """Test an unknown anchor raises KeyError"""
        _, _, axioms = setup(k2, k2)
        system = AxiomSystem.from_axioms(axioms, ProofBuilder(axioms.polynomials()))
        with pytest.raises(KeyError):
            system.row(0)


@pytest.mark.unit
class TestMonomialDeriver:
    """Test derivations of separated monomials"""

    def test_separation_index(self, prism, k33):
        """Test a prism edge against a K3,3 edge separates at layer 1"""
        gh, h, axioms = setup(prism, k33)
        deriver = MonomialDeriver(h, AxiomSystem.from_axioms(axioms, ProofBuilder(axioms.polynomials())))
        assert deriver.separation([(0, 6), (1, 9)]) == 1
        assert deriver.separation([(0, 6), (0, 7)]) == 0

    def test_layer_one_monomial(self, prism, k33):
        """Test X_{0,0}·X_{1,3} is derived and accepted in MC3"""
        gh, h, axioms = setup(prism, k33)
        proof = derive_monomial(h, axioms, [(0, 6), (1, 9)])
        assert proof.mode == ProofMode.MC3
        assert proof.last == Polynomial.monomial([VariableId.orig(0, 0), VariableId.orig(1, 3)])
        assert check(proof, axioms.polynomials()).accepted

    def test_local_axiom_monomial(self, c5):
        """Test a layer-0 position is a single LOCAL axiom"""
        gh, h, axioms = setup(c5, c5)
        proof = derive_monomial(h, axioms, [(0, 5), (1, 7)])
        assert len(proof) == 1
        assert proof.last == Polynomial.monomial([VariableId.orig(0, 0), VariableId.orig(1, 2)])

    def test_square_reduced_with_boolean_axiom(self):
        """Test a separated single pebble derives X from X² and the Boolean axiom"""
        looped = Structure.create(2, {EDGE: [(0, 0), (0, 1), (1, 0)]})
        gh, h, axioms = setup(looped, looped)
        proof = derive_monomial(h, axioms, [(0, 3)])
        assert proof.last == Polynomial.variable(VariableId.orig(0, 1))
        assert check(proof, axioms.polynomials()).accepted

    def test_isomorphic_sides_with_equal_sketches(self, c5):
        """Test every separated position of C5 ⊎ C5 derives without the crossing case"""
        gh, h, axioms = setup(c5, c5.relabel([2, 0, 3, 1, 4]))
        builder = ProofBuilder(axioms.polynomials())
        deriver = MonomialDeriver(h, AxiomSystem.from_axioms(axioms, builder), sketches_equal=True)
        pebbles = sorted(axioms.variables)
        derived = 0
        for position in [frozenset([p]) for p in pebbles] + [frozenset(c) for c in combinations(pebbles, 2)]:
            if deriver.separation(position) is None:
                continue
            step = deriver.derive(position)
            expected = Polynomial.monomial([axioms.variables[p] for p in position])
            assert builder.polynomial(step) == expected
            derived += 1
        assert derived > 0
        assert check(builder.build(), axioms.polynomials()).accepted

    def test_memoised(self, prism, k33):
        """Test a repeated request returns the same step"""
        gh, h, axioms = setup(prism, k33)
        deriver = MonomialDeriver(h, AxiomSystem.from_axioms(axioms, ProofBuilder(axioms.polynomials())))
        assert deriver.derive([(0, 6), (1, 9)]) == deriver.derive([(1, 9), (0, 6)])

    def test_not_separated(self, c5):
        """Test a position of two matching edges is NOT_SEPARATED"""
        gh, h, axioms = setup(c5, c5)
        with pytest.raises(DerivationError) as excinfo:
            derive_monomial(h, axioms, [(0, 5), (1, 6)])
        assert excinfo.value.code == "NOT_SEPARATED"

    def test_measure_guard(self, c5):
        """Test a request not below its bound is refused"""
        gh, h, axioms = setup(c5, c5)
        deriver = MonomialDeriver(h, AxiomSystem.from_axioms(axioms, ProofBuilder(axioms.polynomials())))
        with pytest.raises(DerivationError) as excinfo:
            deriver.derive([(0, 5), (1, 7)], bound=0)
        assert excinfo.value.code == "MEASURE"

    def test_pebble_without_variable(self):
        """Test a position with a cross-colour pebble yields an empty proof"""
        coloured = Structure.create(2, {EDGE: [(0, 1), (1, 0)], b"a": [(0, 0)], b"b": [(1, 1)]}, {b"a", b"b"})
        gh, h, axioms = setup(coloured, coloured)
        proof = derive_monomial(h, axioms, [(0, 3)])
        assert len(proof) == 0

    def test_needs_union(self, c5):
        """Test a plain-structure history is NOT_A_UNION"""
        _, _, axioms = setup(c5, c5)
        system = AxiomSystem.from_axioms(axioms, ProofBuilder(axioms.polynomials()))
        with pytest.raises(DerivationError) as excinfo:
            MonomialDeriver(refine(c5), system)
        assert excinfo.value.code == "NOT_A_UNION"


@pytest.mark.unit
class TestDeriveOne:
    """Test derivations of the constant 1"""

    def test_prism_vs_k33(self, prism, k33):
        """Test prism vs K3,3 is refuted in MC3"""
        gh, h, axioms = setup(prism, k33)
        proof = derive_one(h, restrict_sketch(h, Side.LEFT), restrict_sketch(h, Side.RIGHT), axioms)
        assert proof.last.is_one()
        verdict = check(proof, axioms.polynomials())
        assert verdict.accepted and verdict.refutation
        assert verdict.metrics.max_degree <= 3

    def test_different_sizes(self, c5, c6):
        """Test C5 vs C6 is refuted through an unbalanced diagonal colour"""
        gh, h, axioms = setup(c5, c6)
        proof = derive_one(h, restrict_sketch(h, Side.LEFT), restrict_sketch(h, Side.RIGHT), axioms)
        assert check(proof, axioms.polynomials()).refutation

    def test_equal_sketches(self, c5):
        """Test equal sketches are SKETCHES_EQUAL"""
        gh, h, axioms = setup(c5, c5)
        with pytest.raises(DerivationError) as excinfo:
            derive_one(h, restrict_sketch(h, Side.LEFT), restrict_sketch(h, Side.RIGHT), axioms)
        assert excinfo.value.code == "SKETCHES_EQUAL"

    def test_oracle_fallback_derives_one(self, prism, k33):
        """Test a deriver told the sketches are equal still refutes through the game closure"""
        gh, h, axioms = setup(prism, k33)
        builder = ProofBuilder(axioms.polynomials(), ProofMode.MC3)
        deriver = MonomialDeriver(h, AxiomSystem.from_axioms(axioms, builder), sketches_equal=True)
        step = deriver.one()
        assert builder.polynomial(step) == Polynomial.constant(1)
        if step != len(builder) - 1:
            builder.lin(step, step, 1, 0)
        assert check(builder.build(), axioms.polynomials()).refutation

    def test_oracle_fallback_is_consulted(self, monkeypatch, c5):
        """Test equal sketches ask the oracle before SKETCHES_EQUAL"""
        calls = []

        def closure(gh):
            calls.append(gh)
            return derivable_closure_oracle(gh)

        monkeypatch.setattr("src.refuter.derive.deriver.derivable_closure_oracle", closure)
        gh, h, axioms = setup(c5, c5)
        with pytest.raises(DerivationError) as excinfo:
            derive_one(h, restrict_sketch(h, Side.LEFT), restrict_sketch(h, Side.RIGHT), axioms)
        assert excinfo.value.code == "SKETCHES_EQUAL"
        assert len(calls) == 1 and calls[0] is gh

    def test_oracle_fallback_over_size_limit(self, monkeypatch, c5):
        """Test a union above the oracle limit keeps the SKETCHES_EQUAL verdict"""
        monkeypatch.setenv("REFUTER_ORACLE_MAX_SIDE", "3")
        reset_settings()
        gh, h, axioms = setup(c5, c5)
        with pytest.raises(DerivationError) as excinfo:
            derive_one(h, restrict_sketch(h, Side.LEFT), restrict_sketch(h, Side.RIGHT), axioms)
        assert excinfo.value.code == "SKETCHES_EQUAL"


@pytest.mark.unit
class TestOracle:
    """Test the bijective-game closure oracle"""

    def test_single_vertices(self, k1):
        """Test K1 ⊎ K1 has no derivable position"""
        assert derivable_closure_oracle(disjoint_union(k1, k1)) == set()

    def test_prism_vs_k33_derives_one(self, prism, k33):
        """Test the empty position is derivable for prism vs K3,3"""
        assert frozenset() in derivable_closure_oracle(disjoint_union(prism, k33))

    def test_isomorphic_closure_is_separation(self, c5):
        """Test on C5 ⊎ C5 the closure is exactly the separated positions"""
        gh, h, axioms = setup(c5, c5)
        deriver = MonomialDeriver(h, AxiomSystem.from_axioms(axioms, ProofBuilder(axioms.polynomials())))
        closure = derivable_closure_oracle(gh)
        assert frozenset() not in closure
        pebbles = sorted(axioms.variables)
        for position in [frozenset([p]) for p in pebbles] + [frozenset(c) for c in combinations(pebbles, 2)]:
            assert (position in closure) == (deriver.separation(position) is not None)

    def test_size_limit(self, c5):
        """Test sides above the limit are SIZE_LIMIT"""
        with pytest.raises(SizeLimitError) as excinfo:
            derivable_closure_oracle(disjoint_union(c5, c5), max_side=4)
        assert excinfo.value.code == "SIZE_LIMIT"
