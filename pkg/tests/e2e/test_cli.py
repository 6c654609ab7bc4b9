"""
End-to-end tests for the refuter command line.

Drives ``main`` with argument lists over graph and trace files written to a
temporary directory and checks printed output, written files and exit codes.
"""

import pytest
import yaml

from src.refuter.cli import EXIT_DOMAIN, EXIT_USAGE, main
from src.refuter.structures.parser import load_structure


@pytest.fixture
def prism_k33(graph_file, prism, k33):
    return graph_file(prism, "prism"), graph_file(k33, "k33")


@pytest.mark.e2e
class TestRefuteAndCheck:
    """Test refute followed by an independent check"""

    def test_round_trip(self, tmp_path, prism_k33, empty_trace_file, capsys):
        """Test a refutation is written, reported and accepted by check"""
        g, h = prism_k33
        proof = tmp_path / "prism.epcproof"
        report = tmp_path / "prism.yaml"
        code = main(["refute", str(g), str(h), str(empty_trace_file), "-o", str(proof), "--report", str(report)])
        assert code == 0
        assert capsys.readouterr().out.startswith("REFUTED mode=mc3")
        assert proof.exists()
        assert yaml.safe_load(report.read_text(encoding="utf-8"))["outcome"] == "REFUTED"

        code = main(["check", str(proof), "--axioms", str(g), str(h), "--restricted"])
        assert code == 0
        assert capsys.readouterr().out.startswith("REFUTATION")

    def test_check_against_other_axioms(self, tmp_path, prism_k33, empty_trace_file, graph_file, c6, capsys):
        """Test a proof checked against the wrong graphs is rejected"""
        g, h = prism_k33
        proof = tmp_path / "prism.epcproof"
        main(["refute", str(g), str(h), str(empty_trace_file), "-o", str(proof)])
        other = graph_file(c6, "c6")
        code = main(["check", str(proof), "--axioms", str(other), str(other)])
        assert code == 2
        assert "REJECT" in capsys.readouterr().out

    def test_isomorphic_inputs(self, tmp_path, graph_file, c5, empty_trace_file, capsys):
        """Test an isomorphic pair exits 1 without a proof file"""
        g = graph_file(c5, "c5")
        h = graph_file(c5.relabel([1, 2, 3, 4, 0]), "c5b")
        proof = tmp_path / "none.epcproof"
        assert main(["refute", str(g), str(h), str(empty_trace_file), "-o", str(proof)]) == 1
        assert capsys.readouterr().out.startswith("NOT_DISTINGUISHED")
        assert not proof.exists()

    def test_malformed_graph(self, tmp_path, graph_file, c5, empty_trace_file, capsys):
        """Test a malformed graph file is a domain error"""
        bad = tmp_path / "bad.graph"
        bad.write_text("rel E\n0 1\n", encoding="utf-8")
        g = graph_file(c5, "c5")
        code = main(["refute", str(bad), str(g), str(empty_trace_file), "-o", str(tmp_path / "x.epcproof")])
        assert code == EXIT_DOMAIN
        assert "ERROR PARSE_ERROR" in capsys.readouterr().out

    def test_budget_override(self, tmp_path, prism_k33, empty_trace_file, capsys):
        """Test --budget-vertices below the union size is BUDGET_EXCEEDED"""
        g, h = prism_k33
        code = main(
            ["--budget-vertices", "4", "refute", str(g), str(h), str(empty_trace_file), "-o", str(tmp_path / "p")]
        )
        assert code == EXIT_DOMAIN
        assert "BUDGET_EXCEEDED" in capsys.readouterr().out


@pytest.mark.e2e
class TestInspectionCommands:
    """Test refine, piso, dwl, oracle and validate"""

    def test_piso_k1(self, graph_file, k1, capsys):
        """Test K1 ⊎ K1 prints exactly its two axioms"""
        g = graph_file(k1, "k1")
        assert main(["piso", str(g), str(g)]) == 0
        assert capsys.readouterr().out.splitlines() == [
            "row :: -1/1 + 1/1 * x[0,0]",
            "col :: -1/1 + 1/1 * x[0,0]",
        ]

    def test_refine(self, graph_file, c5, capsys):
        """Test the sketch of C5 is printed"""
        assert main(["refine", str(graph_file(c5, "c5"))]) == 0
        assert capsys.readouterr().out

    def test_dwl(self, prism_k33, empty_trace_file, capsys):
        """Test dwl prints state 0 and the outcome"""
        g, h = prism_k33
        assert main(["dwl", str(g), str(h), str(empty_trace_file)]) == 0
        out = capsys.readouterr().out
        assert out.startswith("# state 0 (initial) vertices=12")
        assert out.rstrip().endswith("DISTINGUISHED")

    def test_oracle(self, graph_file, k1, capsys):
        """Test the closure of K1 ⊎ K1 is empty"""
        g = graph_file(k1, "k1")
        assert main(["oracle", str(g), str(g)]) == 1
        assert capsys.readouterr().out.strip() == "# 0 derivable positions; 1 derivable: no"

    def test_validate(self, graph_file, prism, capsys):
        """Test the prism's stable colouring validates"""
        assert main(["validate", "--layers", str(graph_file(prism, "prism"))]) == 0
        assert "FAIL" not in capsys.readouterr().out


@pytest.mark.e2e
class TestCfiCommand:
    """Test CFI companion generation"""

    def test_writes_companions(self, tmp_path, graph_file, k3, capsys):
        """Test --out writes two loadable graph files"""
        base = graph_file(k3, "k3")
        out = tmp_path / "cfi"
        assert main(["cfi", str(base), "--twist", "--shuffle", "--out", str(out)]) == 0
        left = load_structure(f"{out}.left.graph")
        right = load_structure(f"{out}.right.graph")
        assert left.universe_size == right.universe_size == 3 * 2 + 3 * 2


@pytest.mark.e2e
class TestUsage:
    """Test usage errors"""

    def test_no_command(self, capsys):
        """Test a missing command prints help and exits 64"""
        assert main([]) == EXIT_USAGE

    def test_unknown_option(self, capsys):
        """Test argparse errors exit 64"""
        assert main(["refute", "--bogus"]) == EXIT_USAGE

    def test_missing_file(self, tmp_path, capsys):
        """Test a missing graph file exits 64"""
        assert main(["refine", str(tmp_path / "absent.graph")]) == EXIT_USAGE
