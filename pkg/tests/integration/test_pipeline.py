"""
Integration tests for the refutation pipeline.

Runs refine, derive, check and the proof file format together on pairs of
small structures that 2-WL tells apart, on CFI companions that need one
pair operation first, and on isomorphic pairs where no refutation may be
produced.
"""

from itertools import combinations

import networkx as nx
import pytest
import yaml

from src.refuter.dwl.models import DwlOp, DwlTrace, OpKind
from src.refuter.dwl.operations import initial_state
from src.refuter.pipeline.refute import refute
from src.refuter.pipeline.report import RefutationOutcome, RefutationReport
from src.refuter.polysys.piso import piso
from src.refuter.prooflog.checker import check
from src.refuter.prooflog.serialization import read_proof
from src.refuter.structures.isomorphism import is_isomorphic
from src.refuter.structures.library import (
    EDGE,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    directed_cycle,
    directed_path,
    from_graph,
    path_graph,
    prism_graph,
)
from src.refuter.structures.models import Structure
from src.refuter.structures.union import disjoint_union

DISTINGUISHABLE = {
    "prism-k33": (prism_graph, lambda: complete_bipartite_graph(3, 3)),
    "c5-c6": (lambda: cycle_graph(5), lambda: cycle_graph(6)),
    "p3-k3": (lambda: path_graph(3), lambda: complete_graph(3)),
    "c4-k4": (lambda: cycle_graph(4), lambda: complete_graph(4)),
    "p4-star": (lambda: path_graph(4), lambda: complete_bipartite_graph(1, 3)),
    "c4-p4": (lambda: cycle_graph(4), lambda: path_graph(4)),
    "c6-p6": (lambda: cycle_graph(6), lambda: path_graph(6)),
    "dcycle-dpath": (lambda: directed_cycle(3), lambda: directed_path(3)),
    "k1-k2": (lambda: complete_graph(1), lambda: complete_graph(2)),
    "k23-c5": (lambda: complete_bipartite_graph(2, 3), lambda: cycle_graph(5)),
    "c3-c4": (lambda: cycle_graph(3), lambda: cycle_graph(4)),
    "cube-c8": (lambda: from_graph(nx.hypercube_graph(3)), lambda: cycle_graph(8)),
}


def compact_cfi_k4(twisted: bool) -> Structure:
    """CFI companion of K4 with adjacent vertex gadgets joined directly"""
    edges = list(combinations(range(4), 2))
    index: dict[tuple[int, frozenset], int] = {}
    colours: dict[bytes, list] = {}
    for v in range(4):
        incident = [e for e in edges if v in e]
        name = f"cv{v}".encode("ascii")
        colours[name] = []
        for size in (0, 2):
            for subset in combinations(incident, size):
                vertex = len(index)
                index[(v, frozenset(subset))] = vertex
                colours[name].append((vertex, vertex))
    adjacency = []
    for (v, s), a in index.items():
        for (w, t), b in index.items():
            if v < w:
                e = (v, w)
                if ((e in s) == (e in t)) != (twisted and e == edges[0]):
                    adjacency.extend([(a, b), (b, a)])
    return Structure.create(len(index), {EDGE: adjacency, **colours}, set(colours))


@pytest.mark.integration
class TestRefutationPipeline:
    """Test end-to-end refutations without DWL operations"""

    @pytest.mark.parametrize("name", sorted(DISTINGUISHABLE))
    def test_distinguishable_pairs_are_refuted(self, tmp_path, name):
        """Test every 2-WL distinguishable pair yields an accepted MC3 refutation"""
        make_left, make_right = DISTINGUISHABLE[name]
        left, right = make_left(), make_right()
        path = tmp_path / f"{name}.proof"
        result = refute(left, right, DwlTrace(), proof_path=path)

        assert result.report.outcome == RefutationOutcome.REFUTED
        assert result.report.mode == "mc3"
        assert result.report.exit_code == 0
        assert result.proof.last.is_one()

        axioms = piso(disjoint_union(left, right)).polynomials()
        reread = read_proof(path)
        verdict = check(reread, axioms)
        assert verdict.refutation
        assert verdict.metrics == result.report.metrics
        assert verdict.metrics.max_degree <= 3

    def test_prism_vs_k33_metrics(self, tmp_path):
        """Test reported size is the monomial recount and coefficients stay small"""
        result = refute(prism_graph(), complete_bipartite_graph(3, 3), DwlTrace(), proof_path=tmp_path / "p.proof")
        metrics = result.report.metrics
        assert metrics.steps == len(result.proof)
        assert metrics.size == sum(step.polynomial.size() for step in result.proof.steps)
        assert metrics.bit_complexity <= 64
        assert metrics.extension_count == 0
        assert result.report.lifts == []

    def test_isomorphic_pair_has_no_proof(self, tmp_path):
        """Test C5 against a relabelled copy is NOT_DISTINGUISHED"""
        c5 = cycle_graph(5)
        path = tmp_path / "none.proof"
        result = refute(c5, c5.relabel([4, 2, 0, 3, 1]), DwlTrace(), proof_path=path)
        assert result.report.outcome == RefutationOutcome.NOT_DISTINGUISHED
        assert result.report.exit_code == 1
        assert result.proof is None
        assert not path.exists()

    def test_report_yaml_round_trip(self, tmp_path):
        """Test a saved report reloads into the same model"""
        result = refute(cycle_graph(3), cycle_graph(4), DwlTrace())
        report_path = tmp_path / "report.yaml"
        result.report.save(report_path)
        loaded = RefutationReport.model_validate(yaml.safe_load(report_path.read_text(encoding="utf-8")))
        assert loaded == result.report
        assert loaded.summary().startswith("REFUTED mode=mc3")

    @pytest.mark.slow
    def test_cfi_k4_is_not_refuted_by_refinement(self, cfi_k4):
        """Test the K4 CFI companions survive an empty trace"""
        left, right = cfi_k4
        result = refute(left, right, DwlTrace())
        assert result.report.outcome == RefutationOutcome.NOT_DISTINGUISHED


@pytest.mark.integration
@pytest.mark.slow
class TestTraceRefutation:
    """Test refutations that need a DWL operation before the sides differ"""

    def test_compact_cfi_k4_companions(self):
        """Test the companions are connected, not isomorphic and not told apart by 2-WL"""
        left, right = compact_cfi_k4(False), compact_cfi_k4(True)
        assert left.universe_size == right.universe_size == 16
        assert left.is_connected() and right.is_connected()
        assert not is_isomorphic(left, right)
        assert initial_state(left, right).sketches_equal

    def test_pair_on_adjacent_gadgets_refutes(self, tmp_path):
        """Test pairing adjacent gadget vertices yields a checked EPC3 refutation with extensions"""
        left, right = compact_cfi_k4(False), compact_cfi_k4(True)
        history = initial_state(left, right).history
        # vertex 0 is (0, {}) and vertex 4 is (1, {}); they are adjacent on the untwisted side
        trace = DwlTrace(ops=[DwlOp(kind=OpKind.PAIR, colour=history.key_of(history.colour((0, 4))))])
        path = tmp_path / "cfi.proof"
        result = refute(left, right, trace, proof_path=path)

        assert result.report.outcome == RefutationOutcome.REFUTED
        assert result.report.operations_run == 1
        assert result.report.mode == "epc3"
        assert result.proof.last.is_one()
        assert result.proof.ext_table
        assert result.report.metrics.extension_count == len(result.proof.ext_table)
        assert result.report.metrics.extension_count <= result.report.extension_bound
        assert [lift.op for lift in result.report.lifts] == ["pair"]

        verdict = check(read_proof(path), piso(disjoint_union(left, right)).polynomials())
        assert verdict.accepted and verdict.refutation
        assert verdict.metrics.max_degree <= 3
